"""Exact linear algebra: sparse reduced echelon forms and fraction-free elimination.

The solver's systems are large but very sparse (a handful of nonzeros per
row), so the workhorse here is an incremental sparse RREF over an exact
field: rows are dicts {column: coefficient}.  The resulting reduced row
space is canonical (independent of insertion order), which makes nullspace
bases reproducible byte-for-byte.

For linear systems with a polynomial parameter we use one-step fraction-free
(Bareiss) elimination with column pivoting: entries stay polynomials, no
division by parameter-dependent quantities ever happens, and the pivots are
minors whose base-field roots bound the set of parameter values where the
rank can drop.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import (
    Field,
    PrimeField,
    Rationals,
    poly_deg,
    poly_divmod,
    poly_eval,
    poly_mul,
    poly_sub,
    poly_trim,
)


# ---------------------------------------------------------------------------
# sparse RREF and nullspaces


def sparse_rref(rows, field: Field) -> dict[int, dict]:
    """Reduced row echelon form of a sparse system.

    ``rows`` is an iterable of dicts {col: coeff} (zeros absent).  Returns
    {pivot_col: row} where each stored row has coefficient 1 at its pivot
    column and contains no other pivot column.
    """
    F = field
    pivots: dict[int, dict] = {}
    for row in rows:
        row = {c: v for c, v in row.items() if not F.is_zero(v)}
        # eliminate every pivot column present (stored rows contain no
        # other pivot columns, so one pass suffices)
        for c in [c for c in row if c in pivots]:
            coef = row.pop(c, None)
            if coef is None:
                continue
            for j, v in pivots[c].items():
                if j == c:
                    continue
                nv = F.sub(row.get(j, F.zero()), F.mul(coef, v))
                if F.is_zero(nv):
                    row.pop(j, None)
                else:
                    row[j] = nv
        if not row:
            continue
        p = min(row)
        inv = F.inv(row[p])
        row = {j: F.mul(inv, v) for j, v in row.items()}
        row[p] = F.one()
        for q, prow in pivots.items():
            if p in prow:
                coef = prow.pop(p)
                for j, v in row.items():
                    if j == p:
                        continue
                    nv = F.sub(prow.get(j, F.zero()), F.mul(coef, v))
                    if F.is_zero(nv):
                        prow.pop(j, None)
                    else:
                        prow[j] = nv
        pivots[p] = row
    return pivots


def sparse_nullspace(rows, ncols: int, field: Field) -> list[list]:
    """Canonical nullspace basis (dense vectors) of a sparse homogeneous system."""
    F = field
    pivots = sparse_rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for c in free:
        v = [F.zero()] * ncols
        v[c] = F.one()
        for p, row in pivots.items():
            if c in row:
                v[p] = F.neg(row[c])
        basis.append(v)
    return basis


def sparse_rank(rows, field: Field) -> int:
    return len(sparse_rref(rows, field))


def dense_to_sparse(matrix: list[list], field: Field) -> list[dict]:
    return [
        {j: v for j, v in enumerate(row) if not field.is_zero(v)} for row in matrix
    ]


def dense_nullspace(matrix: list[list], field: Field) -> list[list]:
    """Nullspace {v : matrix @ v = 0} for a dense matrix (rows are equations)."""
    if not matrix:
        return []
    return sparse_nullspace(dense_to_sparse(matrix, field), len(matrix[0]), field)


def kernel_of_map(rows: list[list], field: Field) -> list[list]:
    """Basis of {v : v @ rows = 0}; ``rows[i]`` is the image of e_i."""
    nrows = len(rows)
    if nrows == 0:
        return []
    ncols = len(rows[0])
    eqs = []
    for j in range(ncols):
        eq = {i: rows[i][j] for i in range(nrows) if not field.is_zero(rows[i][j])}
        eqs.append(eq)
    return sparse_nullspace(eqs, nrows, field)


# ---------------------------------------------------------------------------
# span bookkeeping


class SpanSolver:
    """Echelonized span of a list of vectors, with coordinate recovery."""

    def __init__(self, field: Field, vectors: list[list] | None = None):
        self.field = field
        self._rows: dict[int, tuple[list, list]] = {}  # pivot -> (row, coords)
        self.nvecs = 0
        for v in vectors or []:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def _reduce(self, v: list):
        """Return (residual, combination) with v = residual + sum comb_i * vec_i."""
        F = self.field
        v = list(v)
        comb = [F.zero()] * self.nvecs
        for p, (row, coords) in self._rows.items():
            c = v[p]
            if F.is_zero(c):
                continue
            for j, w in enumerate(row):
                if not F.is_zero(w):
                    v[j] = F.sub(v[j], F.mul(c, w))
            for j, w in enumerate(coords):
                if not F.is_zero(w):
                    comb[j] = F.add(comb[j], F.mul(c, w))
        return v, comb

    def add(self, v: list) -> bool:
        """Insert a vector; True if it enlarged the span."""
        F = self.field
        idx = self.nvecs
        self.nvecs += 1
        for _, (_, coords) in self._rows.items():
            coords.append(F.zero())
        res, comb = self._reduce(v)
        piv = next((j for j, c in enumerate(res) if not F.is_zero(c)), None)
        if piv is None:
            return False
        inv = F.inv(res[piv])
        res = [F.mul(inv, c) for c in res]
        coords = [F.neg(F.mul(inv, c)) for c in comb]
        coords[idx] = F.add(coords[idx], inv)
        self._rows[piv] = (res, coords)
        return True

    def contains(self, v: list) -> bool:
        res, _ = self._reduce(v)
        return all(self.field.is_zero(c) for c in res)

    def coordinates(self, v: list):
        """Coefficients over the *inserted* vectors, or None if v not in span."""
        res, comb = self._reduce(v)
        if any(not self.field.is_zero(c) for c in res):
            return None
        return comb


def rref_dense(vectors: list[list], field: Field) -> list[list]:
    """Canonical (RREF) basis of the span of the given dense vectors."""
    if not vectors:
        return []
    ncols = len(vectors[0])
    pivots = sparse_rref(dense_to_sparse(vectors, field), field)
    out = []
    for p in sorted(pivots):
        v = [field.zero()] * ncols
        for j, c in pivots[p].items():
            v[j] = c
        out.append(v)
    return out


def same_span(a: list[list], b: list[list], field: Field) -> bool:
    return rref_dense(a, field) == rref_dense(b, field)


# ---------------------------------------------------------------------------
# fraction-free elimination over polynomial entries


def _poly_exact_div(base: Field, f: list, g: list) -> list:
    q, r = poly_divmod(base, f, g)
    if r:
        raise ArithmeticError("non-exact division in fraction-free elimination")
    return q


def fraction_free_pivots(
    base: Field, rows: list[list[list]], ncols: int
) -> tuple[int, list[list]]:
    """Bareiss elimination on a matrix of polynomials over ``base``.

    ``rows[i][j]`` is a coefficient list (may be empty = zero).  Returns
    (rank, pivots) where each pivot is a nonzero polynomial minor; the rank
    is the generic rank, and any specialization where the rank drops is a
    common root of at least one pivot.
    """
    m = [list(r) for r in rows if any(r)]
    nrows = len(m)
    prev = [base.one()]
    pivots: list[list] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        best = None
        for i in range(r, nrows):
            if m[i][c]:
                if best is None or poly_deg(m[i][c]) < poly_deg(m[best][c]):
                    best = i
        if best is None:
            continue
        m[r], m[best] = m[best], m[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            mic = m[i][c]
            for j in range(c + 1, ncols):
                num = poly_sub(
                    base, poly_mul(base, piv, m[i][j]), poly_mul(base, mic, m[r][j])
                )
                m[i][j] = _poly_exact_div(base, num, prev) if num else []
            m[i][c] = []
        prev = piv
        pivots.append(piv)
        r += 1
    return r, pivots


def charpoly(field: Field, matrix: list[list]) -> list:
    """Characteristic polynomial det(xI - M), coefficient list low-degree-first."""
    n = len(matrix)
    if n == 0:
        return [field.one()]
    polys = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = [field.neg(matrix[i][j])]
            if i == j:
                entry.append(field.one())
            row.append(poly_trim(field, entry))
        polys.append(row)
    # fraction-free determinant: the final pivot of full Bareiss elimination
    m = [list(r) for r in polys]
    prev = [field.one()]
    sign = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c]), None)
        if pr is None:
            return []  # singular over K[x]: cannot happen for xI - M
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        piv = m[c][c]
        for i in range(c + 1, n):
            mic = m[i][c]
            for j in range(c + 1, n):
                num = poly_sub(
                    field, poly_mul(field, piv, m[i][j]), poly_mul(field, mic, m[c][j])
                )
                m[i][j] = _poly_exact_div(field, num, prev) if num else []
            m[i][c] = []
        prev = piv
    det = m[n - 1][n - 1]
    if sign < 0:
        det = [field.neg(c) for c in det]
    return det


# ---------------------------------------------------------------------------
# root finding in the base field


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def base_field_roots(base: Field, f: list) -> list:
    """All roots of the polynomial f (over ``base``) lying in ``base``."""
    f = poly_trim(base, list(f))
    if not f or poly_deg(f) == 0:
        return []
    if isinstance(base, PrimeField):
        return [a for a in range(base.p) if base.is_zero(poly_eval(base, f, a))]
    if isinstance(base, Rationals):
        # clear denominators, then rational root theorem
        den = 1
        for c in f:
            den = den * c.denominator // _gcd(den, c.denominator)
        ints = [int(c * den) for c in f]
        while ints and ints[0] == 0:
            ints = ints[1:]  # factor out x; x=0 handled below
        roots = set()
        if base.is_zero(poly_eval(base, f, Fraction(0))):
            roots.add(Fraction(0))
        if ints:
            a0, lead = ints[0], ints[-1]
            for p in _divisors(a0):
                for q in _divisors(lead):
                    for cand in (Fraction(p, q), Fraction(-p, q)):
                        if base.is_zero(poly_eval(base, f, cand)):
                            roots.add(cand)
        return sorted(roots)
    raise TypeError("root search is supported over Q and GF(p) only")


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
