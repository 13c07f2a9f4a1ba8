"""Root-space decompositions induced by commuting delta-derivations.

Given a set of pairwise commuting delta-derivations, the algebra decomposes
into joint generalized eigenspaces L_lambda.  Products of root spaces obey
[L_lambda, L_mu] <= L_(delta(lambda+mu)), so the roots carry the partial
operation lambda o mu = delta(lambda + mu), defined on pairs whose product
space is nonzero.  For delta outside {0, 1} this operation is frequently
impossible to embed into a semigroup; the checkers here certify that by
exhibiting associativity contradictions on defined triples.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebras import Algebra, AlgebraError, NotADerivation
from .linalg import SpanSolver, base_field_roots, charpoly, kernel_of_map, rref_dense
from .linmap import LinearMap
from .solver import _payload, is_delta_derivation
from .fields import poly_deg, poly_divmod, poly_trim


class NonCommuting(AlgebraError):
    pass


class NonSplitting(AlgebraError):
    """A characteristic polynomial has an irreducible factor of degree > 1
    over the given field; extend the field to proceed."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class BadDelta(ValueError):
    pass


@dataclass
class RootDecomposition:
    algebra: Algebra
    delta: object  # field payload
    derivations: list  # the commuting maps
    roots: list  # tuples of eigenvalue payloads, one entry per derivation
    spaces: list  # per-root list of basis vectors (algebra coordinates)
    defined: set  # pairs (a, b) of root indices with [L_a, L_b] != 0

    @property
    def complete(self) -> bool:
        return sum(len(s) for s in self.spaces) == self.algebra.dim

    def root_index(self, root: tuple):
        F = self.algebra.field
        for idx, r in enumerate(self.roots):
            if all(F.eq(x, y) for x, y in zip(r, root)):
                return idx
        return None

    def circ(self, a: int, b: int):
        """lambda_a o lambda_b = delta(lambda_a + lambda_b) as a root index,
        or None when the pair is undefined ([L_a, L_b] = 0)."""
        if (a, b) not in self.defined:
            return None
        F = self.algebra.field
        target = tuple(
            F.mul(self.delta, F.add(x, y))
            for x, y in zip(self.roots[a], self.roots[b])
        )
        return self.root_index(target)

    def to_json(self) -> dict:
        F = self.algebra.field
        return {
            "delta": F.fmt(self.delta),
            "roots": [[F.fmt(c) for c in r] for r in self.roots],
            "dims": [len(s) for s in self.spaces],
            "defined": sorted([a, b] for (a, b) in self.defined),
            "complete": self.complete,
        }


def _poly_splits(field, f: list, roots: list):
    """Deflate f by its base-field roots; return (multiplicities, residual)."""
    mult = {}
    residual = list(f)
    for r in roots:
        linear = [field.neg(r), field.one()]
        while True:
            q, rem = poly_divmod(field, residual, linear)
            if poly_trim(field, rem):
                break
            residual = q
            mult[r] = mult.get(r, 0) + 1
    return mult, residual


def root_decompose(alg: Algebra, D_set: list[LinearMap], delta) -> RootDecomposition:
    """Joint generalized eigenspace decomposition for commuting
    delta-derivations, with the product inclusion
    [L_lambda, L_mu] <= L_(delta(lambda+mu)) verified on every defined pair."""
    F = alg.field
    n = alg.dim
    delta = _payload(F, delta)
    for a, Da in enumerate(D_set):
        if not is_delta_derivation(alg, Da, delta):
            raise NotADerivation(f"map {a} is not a delta-derivation for this delta")
        for b in range(a + 1, len(D_set)):
            if Da.compose(D_set[b]) != D_set[b].compose(Da):
                raise NonCommuting(f"maps {a} and {b} do not commute")

    # start from the whole space and refine by one derivation at a time
    pieces = [((), [alg.unit_vector(i) for i in range(n)])]
    for D in D_set:
        refined = []
        for (root, vecs) in pieces:
            span = SpanSolver(F, vecs)
            # restriction of D to the invariant subspace spanned by vecs
            mat = []
            for v in vecs:
                img = D.apply(v)
                coords = span.coordinates(img)
                if coords is None:
                    raise NonCommuting(
                        "subspace is not invariant; the maps do not commute"
                    )
                mat.append(coords)
            cp = charpoly(F, mat)
            roots = base_field_roots(F, cp)
            mult, residual = _poly_splits(F, cp, roots)
            if poly_deg(residual) > 0:
                raise NonSplitting(
                    "characteristic polynomial does not split over the field",
                    factor=residual,
                )
            s = len(vecs)
            for lam in sorted(mult):
                shifted = [
                    [F.sub(mat[i][j], delta_ij(F, i, j, lam)) for j in range(s)]
                    for i in range(s)
                ]
                power = LinearMap(F, shifted).power(s)
                kern = kernel_of_map(power.rows, F)
                lifted = []
                for k in kern:
                    vec = [F.zero()] * n
                    for c, v in zip(k, vecs):
                        if not F.is_zero(c):
                            for t in range(n):
                                vec[t] = F.add(vec[t], F.mul(c, v[t]))
                    lifted.append(vec)
                refined.append((root + (lam,), rref_dense(lifted, F)))
        pieces = refined

    roots = [r for (r, _) in pieces]
    spaces = [s for (_, s) in pieces]

    # verify product inclusions and record the defined mask
    spans = [SpanSolver(F, s) for s in spaces]
    defined = set()
    for a in range(len(roots)):
        for b in range(len(roots)):
            nonzero = False
            target = tuple(
                F.mul(delta, F.add(x, y)) for x, y in zip(roots[a], roots[b])
            )
            tgt_idx = None
            for idx, r in enumerate(roots):
                if all(F.eq(x, y) for x, y in zip(r, target)):
                    tgt_idx = idx
                    break
            for u in spaces[a]:
                for v in spaces[b]:
                    w = alg.bracket(u, v)
                    if all(F.is_zero(c) for c in w):
                        continue
                    nonzero = True
                    if tgt_idx is None or not spans[tgt_idx].contains(w):
                        raise AlgebraError(
                            "product of root spaces escapes the expected root space"
                        )
            if nonzero:
                defined.add((a, b))
    return RootDecomposition(alg, delta, list(D_set), roots, spaces, defined)


def delta_ij(field, i, j, lam):
    return lam if i == j else field.zero()


@dataclass
class SemigroupVerdict:
    non_semigroup: bool
    witness: dict | None

    @property
    def verdict(self) -> str:
        return "NonSemigroup" if self.non_semigroup else "SemigroupConsistent"


def check_semigroup(dec: RootDecomposition) -> SemigroupVerdict:
    """Search for associativity contradictions in the partial operation
    lambda o mu = delta(lambda + mu) on defined pairs.

    NonSemigroup means a derivable contradiction was found (a direct
    associativity violation on defined triples, or the triple-product
    mechanism of check_prop_root1); SemigroupConsistent means none was found,
    which is not a proof of embeddability.
    """
    F = dec.algebra.field
    k = len(dec.roots)
    for a in range(k):
        for b in range(k):
            ab = dec.circ(a, b)
            if ab is None:
                continue
            for c in range(k):
                bc = dec.circ(b, c)
                if bc is None:
                    continue
                left = dec.circ(ab, c)
                right = dec.circ(a, bc)
                if left is None or right is None:
                    continue
                if left != right:
                    fmt = lambda idx: [F.fmt(x) for x in dec.roots[idx]]
                    return SemigroupVerdict(
                        True,
                        {
                            "triple": [fmt(a), fmt(b), fmt(c)],
                            "left": fmt(left),
                            "right": fmt(right),
                        },
                    )
    one = F.one()
    if not F.eq(dec.delta, F.zero()) and not F.eq(dec.delta, one):
        wit = check_prop_root1(dec)
        if wit["condition_i_witness"] or wit["condition_ii_witness"]:
            return SemigroupVerdict(
                True,
                {
                    "triple_product": wit["condition_i_witness"]
                    or wit["condition_ii_witness"]
                },
            )
    return SemigroupVerdict(False, None)


def _triple_product_nonzero(dec: RootDecomposition, a: int, b: int, c: int) -> bool:
    alg = dec.algebra
    F = alg.field
    for u in dec.spaces[a]:
        for v in dec.spaces[b]:
            w = alg.bracket(u, v)
            if all(F.is_zero(x) for x in w):
                continue
            for z in dec.spaces[c]:
                t = alg.bracket(w, z)
                if any(not F.is_zero(x) for x in t):
                    return True
    return False


def check_prop_root1(dec: RootDecomposition) -> dict:
    """Witnesses for the two sufficient non-semigroup conditions
    (delta outside {0, 1}):

    (i)  three pairwise distinct roots with [[L_lambda, L_mu], L_eta] != 0;
    (ii) two distinct roots with [[L_lambda, L_lambda], L_mu] != 0.
    """
    F = dec.algebra.field
    if F.eq(dec.delta, F.zero()) or F.eq(dec.delta, F.one()):
        raise BadDelta("the criterion applies only for delta outside {0, 1}")
    k = len(dec.roots)
    fmt = lambda idx: [F.fmt(x) for x in dec.roots[idx]]
    wit_i = None
    wit_ii = None
    for a in range(k):
        for b in range(k):
            if a == b:
                continue
            if wit_ii is None and _triple_product_nonzero(dec, a, a, b):
                wit_ii = [fmt(a), fmt(a), fmt(b)]
            for c in range(k):
                if c in (a, b) or wit_i is not None:
                    continue
                if _triple_product_nonzero(dec, a, b, c):
                    wit_i = [fmt(a), fmt(b), fmt(c)]
    return {"condition_i_witness": wit_i, "condition_ii_witness": wit_ii}


def check_root_sum(field, roots: list, delta) -> dict:
    """For every root eta, is there a pair lambda, mu in the root list with
    eta = delta (lambda + mu)?  A violation shows that no perfect algebra
    realizes this root set for this delta."""
    delta = _payload(field, delta)
    if field.is_zero(delta):
        raise BadDelta("delta must be nonzero")
    roots = [_payload(field, r) for r in roots]
    violations = []
    for eta in roots:
        ok = any(
            field.eq(eta, field.mul(delta, field.add(lam, mu)))
            for lam in roots
            for mu in roots
        )
        if not ok:
            violations.append(eta)
    return {
        "satisfiable": not violations,
        "violations": [field.fmt(v) for v in violations],
    }


def grading_report(dec: RootDecomposition) -> dict:
    verdict = check_semigroup(dec)
    data = dec.to_json()
    data["verdict"] = verdict.verdict
    data["witness"] = verdict.witness
    return data
