"""Shared helpers: an independent dense nullspace oracle.

The oracle deliberately avoids the package's sparse elimination and its
structure-constant index manipulation: it evaluates the defining law of a
derivation-type map on elementary matrices via ``bracket``/``apply`` and
runs a plain dense Gaussian elimination written here.
"""

from __future__ import annotations

from deltader.linmap import LinearMap


def dense_gauss_nullspace(field, rows, ncols):
    """Nullspace basis of the matrix given by ``rows`` (list of dense rows),
    computed by textbook Gauss-Jordan elimination."""
    F = field
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(mat)):
            if not F.is_zero(mat[i][c]):
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = F.inv(mat[r][c])
        mat[r] = [F.mul(inv, x) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not F.is_zero(mat[i][c]):
                f = mat[i][c]
                mat[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero()] * ncols
        v[fc] = F.one()
        for pr, pc in enumerate(pivots):
            v[pc] = F.neg(mat[pr][fc])
        basis.append(v)
    return basis


def elementary_map(field, n, k, l):
    rows = [[field.zero()] * n for _ in range(n)]
    rows[k][l] = field.one()
    return LinearMap(field, rows)


def derivation_defect(alg, D, delta):
    """Concatenated defect D([e_i,e_j]) - delta([D e_i, e_j] + [e_i, D e_j])
    over all ordered pairs (i, j)."""
    F = alg.field
    out = []
    for i in range(alg.dim):
        ei = alg.unit_vector(i)
        for j in range(alg.dim):
            ej = alg.unit_vector(j)
            br = alg.bracket(ei, ej)
            lhs = D.apply(br)
            t1 = alg.bracket(D.apply(ei), ej)
            t2 = alg.bracket(ei, D.apply(ej))
            for a, b, c in zip(lhs, t1, t2):
                out.append(F.sub(a, F.mul(delta, F.add(b, c))))
    return out


def oracle_delta_derivations(alg, delta):
    """Independent computation of Der_delta: nullspace of the defect map on
    elementary matrices.  Returns a list of flat n^2 coefficient vectors."""
    F = alg.field
    n = alg.dim
    cols = []
    for k in range(n):
        for l in range(n):
            cols.append(derivation_defect(alg, elementary_map(F, n, k, l), delta))
    # transpose: equations are rows
    nrows = len(cols[0])
    rows = [[cols[c][r] for c in range(n * n)] for r in range(nrows)]
    return dense_gauss_nullspace(F, rows, n * n)


def spans_equal(field, vecs_a, vecs_b):
    from deltader.linalg import same_span

    return same_span(list(vecs_a), list(vecs_b), field)
