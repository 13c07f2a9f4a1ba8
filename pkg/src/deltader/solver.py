"""Linear-system solvers for delta-derivations and their relatives.

For an algebra with structure constants C_ij^k and D(e_i) = sum_j d_ij e_j,
the condition D(xy) = delta (D(x) y) + delta (x D(y)), written for every
basis pair i < j and every target coordinate l, is the homogeneous system

    sum_k C_ij^k d_kl  -  delta sum_k C_kj^l d_ik  +  delta sum_k C_ki^l d_jk  =  0

of n^2 (n-1)/2 equations in the n^2 unknowns d_ij (unknown order
d_11, ..., d_1n, d_21, ..., i.e. column k*n + l holds d_kl, 0-based).
Variants of the same assembly solve module-valued delta-derivations, the
centroid, quasiderivation pairs, delta-superderivations and the
supercentroid.  The parametric solver treats delta as an indeterminate and
finds the generic solution dimension together with the special values of
delta where it jumps.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebras import Algebra, AlgebraError, GradingMissing, InvalidAction, ModuleAction
from .fields import Field, FieldElement, QuotientRing, poly_trim
from .linalg import (
    SpanSolver,
    base_field_roots,
    fraction_free_pivots,
    rref_dense,
    sparse_nullspace,
)
from .linmap import LinearMap


class NilpotencyTooDeep(ArithmeticError):
    pass


class ParityMismatch(AlgebraError):
    pass


def _payload(field: Field, value):
    if isinstance(value, FieldElement):
        if value.field != field:
            raise ValueError("scalar from a different field")
        return value.payload
    return field.coerce(value)


def _acc(row: dict, col: int, val, field: Field):
    nv = field.add(row.get(col, field.zero()), val)
    if field.is_zero(nv):
        row.pop(col, None)
    else:
        row[col] = nv


def _equation_pairs(alg: Algebra):
    """Basis pairs whose defining equation is assembled.

    For anticommutative algebras the (j, i) equation is the negative of the
    (i, j) one, so i < j suffices; graded and associative flavors get all
    ordered pairs (plus the odd diagonal) since reversal is not a global sign.
    """
    n = alg.dim
    if alg.flavor == "lie":
        return [(i, j) for i in range(n) for j in range(i + 1, n)]
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    if alg.flavor == "super":
        pairs += [(i, i) for i in range(n) if alg.grading[i]]
    return pairs


@dataclass
class LinearSystem:
    rows: list
    nrows: int
    ncols: int

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)


def _derivation_rows(alg: Algebra, delta, parity: int | None = None) -> list[dict]:
    F = alg.field
    n = alg.dim
    out = []
    for (i, j) in _equation_pairs(alg):
        sgn_delta = delta
        if parity is not None and parity and alg.grading[i]:
            sgn_delta = F.neg(delta)
        rows = [dict() for _ in range(n)]
        for k, c in alg.product(i, j).items():
            for l in range(n):
                _acc(rows[l], k * n + l, c, F)
        neg_delta = F.neg(delta)
        for k in range(n):
            for l, c in alg.product(k, j).items():
                _acc(rows[l], i * n + k, F.mul(neg_delta, c), F)
            for l, c in alg.product(i, k).items():
                _acc(rows[l], j * n + k, F.mul(F.neg(sgn_delta), c), F)
        out.extend(rows)
    return out


def assemble_system(alg: Algebra, delta) -> LinearSystem:
    """The sparse equation rows of the delta-derivation system; for an
    anticommutative algebra of dimension n the shape is n^2(n-1)/2 x n^2."""
    delta = _payload(alg.field, delta)
    rows = _derivation_rows(alg, delta)
    return LinearSystem(rows, len(rows), alg.dim * alg.dim)


class SolutionSpace:
    """Canonical basis of a solved space of maps (or pairs of maps)."""

    def __init__(self, algebra: Algebra, kind: str, delta, basis, parity=None):
        self.algebra = algebra
        self.kind = kind
        self.delta = delta  # payload, or None when not applicable
        self.basis = basis
        self.parity = parity
        self._span = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _flat(self, item) -> list:
        if isinstance(item, tuple):
            return [c for part in item for c in part.flat()]
        return item.flat()

    def contains(self, item) -> bool:
        if self._span is None:
            self._span = SpanSolver(
                self.algebra.field, [self._flat(b) for b in self.basis]
            )
        return self._span.contains(self._flat(item))

    def coordinates(self, item):
        self.contains(item)  # populate span
        return self._span.coordinates(self._flat(item))

    def d_component(self) -> list[LinearMap]:
        """For quasiderivation pairs: canonical basis of the D-projections."""
        if self.kind != "quasider":
            raise ValueError("d_component is defined for quasiderivation spaces")
        F = self.algebra.field
        n = self.algebra.dim
        flats = [d.flat() for (d, _) in self.basis]
        return [LinearMap.from_flat(F, v, n, n) for v in rref_dense(flats, F)]

    def to_json(self) -> dict:
        F = self.algebra.field
        data = {
            "kind": self.kind,
            "delta": None if self.delta is None else F.fmt(self.delta),
            "dim": self.dim,
        }
        if self.parity is not None:
            data["parity"] = self.parity
        if self.kind == "quasider":
            data["basis"] = [
                {"d": d.to_json(), "f": f.to_json()} for (d, f) in self.basis
            ]
        else:
            data["basis"] = [m.to_json() for m in self.basis]
        return data


def solve_delta_derivations(alg: Algebra, delta) -> SolutionSpace:
    F = alg.field
    n = alg.dim
    delta = _payload(F, delta)
    rows = _derivation_rows(alg, delta)
    basis = [
        LinearMap.from_flat(F, v, n, n)
        for v in sparse_nullspace(rows, n * n, F)
    ]
    return SolutionSpace(alg, "delta_der", delta, basis)


def solve_module_valued(alg: Algebra, M: ModuleAction, delta) -> SolutionSpace:
    """Delta-derivations D: L -> M, i.e. D(xy) = delta x.D(y) - delta y.D(x)
    for the left action of the algebra on the module."""
    rep = M.validate()
    if not rep.ok:
        raise InvalidAction(f"action fails the bracket law on {rep.violations[0][0]}")
    F = alg.field
    n, m = alg.dim, M.mdim
    delta = _payload(F, delta)
    neg_delta = F.neg(delta)
    out = []
    for (i, j) in _equation_pairs(alg):
        rows = [dict() for _ in range(m)]
        for k, c in alg.product(i, j).items():
            for l in range(m):
                _acc(rows[l], k * m + l, c, F)
        for k in range(m):
            for l, c in M.act(i, k).items():
                _acc(rows[l], j * m + k, F.mul(neg_delta, c), F)
            for l, c in M.act(j, k).items():
                _acc(rows[l], i * m + k, F.mul(delta, c), F)
        out.extend(rows)
    basis = [
        LinearMap.from_flat(F, v, n, m) for v in sparse_nullspace(out, n * m, F)
    ]
    return SolutionSpace(alg, "module_valued", delta, basis)


def solve_centroid(alg: Algebra) -> SolutionSpace:
    """Maps commuting with all multiplications: chi(ab) = chi(a)b = a chi(b)."""
    F = alg.field
    n = alg.dim
    out = []
    for (i, j) in _equation_pairs(alg):
        left = [dict() for _ in range(n)]
        right = [dict() for _ in range(n)]
        for k, c in alg.product(i, j).items():
            for l in range(n):
                _acc(left[l], k * n + l, c, F)
                _acc(right[l], k * n + l, c, F)
        for k in range(n):
            for l, c in alg.product(k, j).items():
                _acc(left[l], i * n + k, F.neg(c), F)
            for l, c in alg.product(i, k).items():
                _acc(right[l], j * n + k, F.neg(c), F)
        out.extend(left)
        out.extend(right)
    basis = [
        LinearMap.from_flat(F, v, n, n) for v in sparse_nullspace(out, n * n, F)
    ]
    return SolutionSpace(alg, "centroid", None, basis)


def _parity_constraints(alg: Algebra, parity: int) -> list[dict]:
    F = alg.field
    n = alg.dim
    rows = []
    for i in range(n):
        for j in range(n):
            if alg.grading[j] != (alg.grading[i] + parity) % 2:
                rows.append({i * n + j: F.one()})
    return rows


def solve_superderivations(alg: Algebra, delta, parity: int) -> SolutionSpace:
    """Homogeneous delta-superderivations of the given parity:
    D(ab) = delta D(a)b + delta (-1)^(parity * deg a) a D(b)."""
    if alg.grading is None:
        raise GradingMissing("superderivations need a graded algebra")
    if parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    F = alg.field
    n = alg.dim
    delta = _payload(F, delta)
    rows = _derivation_rows(alg, delta, parity=parity)
    rows += _parity_constraints(alg, parity)
    basis = [
        LinearMap.from_flat(F, v, n, n) for v in sparse_nullspace(rows, n * n, F)
    ]
    return SolutionSpace(alg, "super_der", delta, basis, parity=parity)


def solve_supercentroid(alg: Algebra, parity: int | None = None) -> SolutionSpace:
    """Homogeneous maps with chi(ab) = chi(a)b = (-1)^(parity * deg a) a chi(b);
    with parity None, the direct sum over both parities."""
    if alg.grading is None:
        raise GradingMissing("the supercentroid needs a graded algebra")
    if parity is None:
        even = solve_supercentroid(alg, 0)
        odd = solve_supercentroid(alg, 1)
        return SolutionSpace(alg, "supercentroid", None, even.basis + odd.basis)
    F = alg.field
    n = alg.dim
    out = []
    for (i, j) in _equation_pairs(alg):
        sgn = F.neg(F.one()) if (parity and alg.grading[i]) else F.one()
        left = [dict() for _ in range(n)]
        right = [dict() for _ in range(n)]
        for k, c in alg.product(i, j).items():
            for l in range(n):
                _acc(left[l], k * n + l, c, F)
                _acc(right[l], k * n + l, c, F)
        for k in range(n):
            for l, c in alg.product(k, j).items():
                _acc(left[l], i * n + k, F.neg(c), F)
            for l, c in alg.product(i, k).items():
                _acc(right[l], j * n + k, F.neg(F.mul(sgn, c)), F)
        out.extend(left)
        out.extend(right)
    out += _parity_constraints(alg, parity)
    basis = [
        LinearMap.from_flat(F, v, n, n) for v in sparse_nullspace(out, n * n, F)
    ]
    return SolutionSpace(alg, "supercentroid", None, basis, parity=parity)


def solve_quasiderivations(alg: Algebra) -> SolutionSpace:
    """Pairs (D, F) with F(xy) = D(x)y + x D(y); joint system in 2n^2 unknowns
    (D in columns 0..n^2-1, F in columns n^2..2n^2-1)."""
    F = alg.field
    n = alg.dim
    nn = n * n
    out = []
    for (i, j) in _equation_pairs(alg):
        rows = [dict() for _ in range(n)]
        for k, c in alg.product(i, j).items():
            for l in range(n):
                _acc(rows[l], nn + k * n + l, c, F)
        for k in range(n):
            for l, c in alg.product(k, j).items():
                _acc(rows[l], i * n + k, F.neg(c), F)
            for l, c in alg.product(i, k).items():
                _acc(rows[l], j * n + k, F.neg(c), F)
        out.extend(rows)
    basis = []
    for v in sparse_nullspace(out, 2 * nn, F):
        basis.append(
            (
                LinearMap.from_flat(F, v[:nn], n, n),
                LinearMap.from_flat(F, v[nn:], n, n),
            )
        )
    return SolutionSpace(alg, "quasider", None, basis)


def is_delta_derivation(alg: Algebra, D: LinearMap, delta, parity=None) -> bool:
    """Direct check of D(xy) = delta (D(x) y) + delta (x D(y)) on all basis
    pairs (with the super sign when a parity is given)."""
    F = alg.field
    n = alg.dim
    delta = _payload(F, delta)
    for i in range(n):
        for j in range(n):
            lhs = D.apply(alg.product_vec(i, j))
            t1 = alg.bracket(D.rows[i], alg.unit_vector(j))
            t2 = alg.bracket(alg.unit_vector(i), D.rows[j])
            sgn = delta
            if parity is not None and parity and alg.grading[i]:
                sgn = F.neg(delta)
            rhs = [F.add(F.mul(delta, a), F.mul(sgn, b)) for a, b in zip(t1, t2)]
            if any(not F.eq(a, b) for a, b in zip(lhs, rhs)):
                return False
    return True


# ---------------------------------------------------------------------------
# parametric delta


@dataclass
class ParametricResult:
    generic_dim: int
    specials: list  # (delta payload in the base field, dimension)

    def special_deltas(self) -> list:
        return [d for (d, _) in self.specials]

    def to_json(self, field: Field) -> dict:
        return {
            "generic_dim": self.generic_dim,
            "specials": [[field.fmt(d), dim] for (d, dim) in self.specials],
        }


def _parametric_rows(alg: Algebra) -> list[dict]:
    """Rows of the derivation system with delta an indeterminate; entries are
    coefficient lists [constant, delta-coefficient] over the base field."""
    F = alg.field
    n = alg.dim

    def acc(row, col, const, lin):
        cur = row.get(col, [])
        c0 = cur[0] if len(cur) > 0 else F.zero()
        c1 = cur[1] if len(cur) > 1 else F.zero()
        c0 = F.add(c0, const)
        c1 = F.add(c1, lin)
        entry = poly_trim(F, [c0, c1])
        if entry:
            row[col] = entry
        else:
            row.pop(col, None)

    out = []
    for (i, j) in _equation_pairs(alg):
        rows = [dict() for _ in range(n)]
        for k, c in alg.product(i, j).items():
            for l in range(n):
                acc(rows[l], k * n + l, c, F.zero())
        for k in range(n):
            for l, c in alg.product(k, j).items():
                acc(rows[l], i * n + k, F.zero(), F.neg(c))
            for l, c in alg.product(i, k).items():
                acc(rows[l], j * n + k, F.zero(), c)
        out.extend(rows)
    return out


def solve_parametric(alg: Algebra) -> ParametricResult:
    """Generic nullspace dimension of the delta-derivation system over K[delta],
    plus the special base-field values of delta where the dimension jumps.

    Fraction-free elimination keeps all entries polynomial in delta; the
    pivots are minors of the system, so every specialization where the rank
    drops is a root of some pivot.  The candidate set is the base-field roots
    of the pivots together with {-1, 0, 1/2, 1}, each confirmed pointwise.
    """
    F = alg.field
    if isinstance(F, QuotientRing):
        raise ValueError("parametric solving needs a rational or prime base field")
    n = alg.dim
    ncols = n * n
    sparse = _parametric_rows(alg)
    dense = []
    for row in sparse:
        r = [[] for _ in range(ncols)]
        for c, poly in row.items():
            r[c] = poly
        dense.append(r)
    rank, pivots = fraction_free_pivots(F, dense, ncols)
    generic = ncols - rank
    candidates = set()
    for piv in pivots:
        candidates.update(base_field_roots(F, piv))
    half = F.div(F.one(), F.from_int(2))
    candidates.update([F.from_int(-1), F.zero(), half, F.one()])
    specials = []
    for cand in sorted(candidates):
        d = solve_delta_derivations(alg, cand).dim
        if d > generic:
            specials.append((cand, d))
    return ParametricResult(generic, specials)


# ---------------------------------------------------------------------------
# Grassmann lifts and exponentials


def lift_grassmann(env: Algebra, D: LinearMap, g: tuple = ()) -> LinearMap:
    """Lift a delta-superderivation D of L to the Grassmann envelope:
    D^(x (x) h) = D(x) (x) g h, where g is a Grassmann monomial whose parity
    matches the parity of D."""
    from .algebras import grassmann_mul

    basis = env.meta.get("envelope_basis")
    L = env.meta.get("envelope_source")
    if basis is None or L is None:
        raise AlgebraError("the algebra is not a Grassmann envelope")
    g = tuple(sorted(g))
    q = len(g) % 2
    F = env.field
    for i in range(L.dim):
        for j in range(L.dim):
            if not F.is_zero(D.rows[i][j]) and L.grading[j] != (L.grading[i] + q) % 2:
                raise ParityMismatch(
                    f"map sends parity {L.grading[i]} to parity {L.grading[j]}, "
                    f"but the monomial has parity {q}"
                )
    index = {b: p for p, b in enumerate(basis)}
    rows = []
    for (i, h) in basis:
        row = [F.zero()] * env.dim
        gh = grassmann_mul(g, h)
        if gh is not None:
            sign, mono = gh
            sgn = F.from_int(sign)
            for j in range(L.dim):
                c = D.rows[i][j]
                if F.is_zero(c):
                    continue
                tgt = index.get((j, mono))
                if tgt is not None:
                    row[tgt] = F.add(row[tgt], F.mul(c, sgn))
        rows.append(row)
    return LinearMap(F, rows)


@dataclass
class ExpResult:
    phi: LinearMap
    psi: LinearMap
    verified: bool


def _exp_nilpotent(field: Field, M: LinearMap, index: int) -> LinearMap:
    acc = LinearMap.identity(field, M.nrows)
    term = LinearMap.identity(field, M.nrows)
    fact = field.one()
    for k in range(1, index):
        term = term.compose(M)
        fact = field.mul(fact, field.from_int(k))
        acc = acc.add(term.scale(field.inv(fact)))
    return acc


def _check_index(field: Field, M: LinearMap, limit: int) -> int:
    idx = M.nilpotency_index(limit)
    if idx is None:
        raise NilpotencyTooDeep("map is not nilpotent")
    if field.char and idx >= field.char:
        raise NilpotencyTooDeep(
            f"nilpotency index {idx} is not less than the characteristic {field.char}"
        )
    return idx


def exp_quasiautomorphism(
    alg: Algebra, D: LinearMap, delta=None, F_map: LinearMap | None = None
) -> ExpResult:
    """Exponentiate a nilpotent delta-derivation (or quasiderivation pair).

    For a delta-derivation D: phi = exp(delta D), psi = exp(D), and
    psi(xy) = phi(x) phi(y) is verified on all basis pairs.  For a
    quasiderivation pair (D, F): phi = exp(D), psi = exp(F).  Requires
    nilpotency index less than the characteristic (any index in char 0).
    """
    F = alg.field
    n = alg.dim
    if F_map is None:
        if delta is None:
            raise ValueError("a delta-derivation exponential needs delta")
        delta = _payload(F, delta)
        idx = _check_index(F, D, n + 1)
        phi = _exp_nilpotent(F, D.scale(delta), idx)
        psi = _exp_nilpotent(F, D, idx)
    else:
        idx_d = _check_index(F, D, n + 1)
        idx_f = _check_index(F, F_map, n + 1)
        phi = _exp_nilpotent(F, D, idx_d)
        psi = _exp_nilpotent(F, F_map, idx_f)
    ok = True
    for i in range(n):
        for j in range(n):
            lhs = psi.apply(alg.product_vec(i, j))
            rhs = alg.bracket(phi.rows[i], phi.rows[j])
            if any(not F.eq(a, b) for a, b in zip(lhs, rhs)):
                ok = False
                break
        if not ok:
            break
    return ExpResult(phi, psi, ok)
