"""Deciding when a Lie module of L(V_n) = so_{n+1} prolongs to an n-Lie
module of V_n, plus the supporting checks (module axioms, irreducibility,
dimension formula, span of the quadratic obstructions)."""

from __future__ import annotations

import itertools
import os
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Callable, Sequence

from .basiclie import LieAlgebra, basic_lie_algebra, iso_to_so, so_algebra, so_pairs, wedge_basis
from .errors import ConsistencyError, IndexPatternError, ShapeError
from .exact import (
    EchelonBasis,
    Matrix,
    commutator,
    kernel_basis,
    linear_combination,
    span_dimension,
    to_dense,
    vec_axpy,
    vec_scale,
)
from .nlie import NLieAlgebra, is_filippov, semidirect_sum, sort_with_sign, vector_product_algebra, wedge_expand
from .reports import CheckReport, jsonable
from .sorep import (
    LieRep,
    direct_sum,
    harmonic_module,
    is_so,
    polynomial_module,
    pullback,
    so4_tensor_module,
    wedge2_module,
)
from .basiclie import adjoint_representation_matrices

__all__ = [
    "ObstructionIndex",
    "Witness",
    "ProlongReport",
    "obstruction_indices",
    "r_operator",
    "can_prolong",
    "prolong_check_general",
    "rep_action",
    "check_module_axioms",
    "to_basic",
    "to_so",
    "nlie_adjoint_module",
    "adjoint_module",
    "prolongs_by_semidirect",
    "IrreducibilityReport",
    "is_irreducible",
    "invariant_closure",
    "commutant_basis",
    "minimal_polynomial",
    "direct_sum",
    "dimension_formula",
    "nlie_dimension",
    "family_module",
    "predicted_prolongs",
    "nlie_highest_weight",
    "q2_vectors",
    "q2_span_dimension",
    "q2_spans",
]


@dataclass(frozen=True)
class ObstructionIndex:
    """(i; j, s, k) with j < s < k and i outside {j, s, k}; 0-based."""

    i: int
    j: int
    s: int
    k: int

    def __post_init__(self):
        if not (self.j < self.s < self.k):
            raise IndexPatternError(f"need j < s < k, got {self.one_based()}")
        if self.i in (self.j, self.s, self.k):
            raise IndexPatternError(f"i must lie outside {{j, s, k}}, got {self.one_based()}")
        if min(self.i, self.j) < 0:
            raise IndexPatternError("negative index")

    @classmethod
    def unchecked(cls, i, j, s, k) -> "ObstructionIndex":
        obj = object.__new__(cls)
        for name, value in zip("ijsk", (i, j, s, k)):
            object.__setattr__(obj, name, value)
        return obj

    def one_based(self) -> tuple[int, int, int, int]:
        return (self.i + 1, self.j + 1, self.s + 1, self.k + 1)

    def __str__(self):
        return "R_" + "".join(str(x) for x in self.one_based())


def obstruction_indices(m: int) -> list[ObstructionIndex]:
    """All valid indices for so_m, lexicographic in (i, j, s, k)."""
    out = []
    for i in range(m):
        for j, s, k in itertools.combinations(range(m), 3):
            if i not in (j, s, k):
                out.append(ObstructionIndex(i, j, s, k))
    return out


def _so_size(rep: LieRep) -> int:
    m = is_so(rep.algebra)
    if m is None:
        raise ShapeError("representation is not over an so_m algebra")
    return m


def _e(rep: LieRep, m: int, a: int, b: int) -> Matrix:
    """rho(e_ab) with e_ba = -e_ab and e_aa = 0."""
    if a == b:
        return Matrix.zeros(rep.dim)
    if a < b:
        return rep.matrices[so_pairs(m).index((a, b))]
    return -rep.matrices[so_pairs(m).index((b, a))]


def r_operator(rep: LieRep, idx: ObstructionIndex) -> Matrix:
    """rho(e_ij) rho(e_sk) + rho(e_is) rho(e_kj) + rho(e_ik) rho(e_js).

    For i outside {j, s, k} this equals the commutator form
    -e_ij [e_is, e_ik] - e_is [e_ik, e_ij] - e_ik [e_ij, e_is].  Indices with
    i in {j, s, k} (only reachable through ObstructionIndex.unchecked) are
    evaluated in the commutator form, which vanishes there; the product
    form would instead collapse to the degree-one element [e_ik, e_is].
    """
    m = _so_size(rep)
    i, j, s, k = idx.i, idx.j, idx.s, idx.k
    if any(not (0 <= x < m) for x in (i, j, s, k)):
        raise IndexPatternError(f"index {idx.one_based()} out of range for so{m}")
    e = lambda a, b: _e(rep, m, a, b)  # noqa: E731
    if i in (j, s, k):
        return -(
            e(i, j) @ commutator(e(i, s), e(i, k))
            + e(i, s) @ commutator(e(i, k), e(i, j))
            + e(i, k) @ commutator(e(i, j), e(i, s))
        )
    return e(i, j) @ e(s, k) + e(i, s) @ e(k, j) + e(i, k) @ e(j, s)


@dataclass
class Witness:
    index: object  # ObstructionIndex, or a tuple of basis-tuple labels for the general check
    basis_label: str
    residual: tuple
    column: int = 0

    def to_dict(self) -> dict:
        if isinstance(self.index, ObstructionIndex):
            out = dict(zip("ijsk", self.index.one_based()))
        else:
            out = {"tuple": self.index}
        out["basis_label"] = self.basis_label
        out["residual"] = self.residual
        return jsonable(out)


@dataclass
class ProlongReport:
    verdict: bool
    witness: Witness | None = None
    n: int | None = None
    module: dict = field(default_factory=dict)
    elapsed_ms: float | None = None
    method: str = "R"

    def __post_init__(self):
        if self.verdict != (self.witness is None):
            raise ConsistencyError("verdict must be False exactly when a witness is present")

    def __bool__(self):
        return self.verdict

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "verdict": self.verdict,
            "n": self.n,
            "module": jsonable(self.module),
            "witness": self.witness.to_dict() if self.witness else None,
            "elapsed_ms": round(self.elapsed_ms, 3) if (timing and self.elapsed_ms is not None) else None,
        }


def _describe(rep: LieRep) -> dict:
    return {"kind": rep.kind, "params": rep.params, "dim": rep.dim}


def can_prolong(rep: LieRep) -> ProlongReport:
    """R-criterion: every obstruction operator must kill every basis vector."""
    start = time.perf_counter()
    m = _so_size(rep)
    for idx in obstruction_indices(m):
        R = r_operator(rep, idx)
        if R.is_zero():
            continue
        c = min(c for _, c, _ in R.nonzero_entries())
        residual = R.apply({c: Fraction(1)})
        assert residual, "witness residual must be nonzero"
        witness = Witness(idx, rep.label(c), to_dense(residual, rep.dim), c)
        return ProlongReport(False, witness, m - 1, _describe(rep), _ms(start))
    return ProlongReport(True, None, m - 1, _describe(rep), _ms(start))


def _ms(start):
    return (time.perf_counter() - start) * 1000.0


# ---------------------------------------------------------------- general criterion


def _wedge_positions(alg: NLieAlgebra) -> dict:
    return {w: k for k, w in enumerate(wedge_basis(alg.arity, alg.dim))}


def _rho_wedge(rep: LieRep, position: dict, factors: Sequence[dict]) -> Matrix:
    terms = [(c, rep.matrices[position[key]]) for key, c in wedge_expand(factors).items()]
    return linear_combination(terms, rep.dim, rep.dim)


def prolong_check_general(alg: NLieAlgebra, rep: LieRep) -> ProlongReport:
    """Check, on increasing basis tuples a1<..<an and c1<..<c_{n-2},

        rho([a1..an] ^ c) = sum_i (-1)^(i+n) rho(a1..^a_i..an) rho(a_i ^ c).
    """
    start = time.perf_counter()
    n, d = alg.arity, alg.dim
    if rep.algebra != basic_lie_algebra(alg):
        raise ShapeError("representation is not over the basic Lie algebra of this n-Lie algebra")
    position = _wedge_positions(alg)
    unit = [{k: Fraction(1)} for k in range(d)]
    for a in itertools.combinations(range(d), n):
        product = alg.basis_bracket(a)
        for c in itertools.combinations(range(d), n - 2):
            cf = [unit[k] for k in c]
            lhs = _rho_wedge(rep, position, [product] + cf)
            rhs = Matrix.zeros(rep.dim)
            for i in range(1, n + 1):
                rest = a[: i - 1] + a[i:]
                right = _rho_wedge(rep, position, [unit[a[i - 1]]] + cf)
                if right.is_zero():
                    continue
                rhs = rhs + (rep.matrices[position[rest]] @ right).scale((-1) ** (i + n))
            diff = lhs - rhs
            if not diff.is_zero():
                col = min(cc for _, cc, _ in diff.nonzero_entries())
                residual = to_dense(diff.apply({col: Fraction(1)}), rep.dim)
                label = (tuple(k + 1 for k in a), tuple(k + 1 for k in c))
                witness = Witness(label, rep.label(col), residual, col)
                return ProlongReport(False, witness, n, _describe(rep), _ms(start), method="eq1")
    return ProlongReport(True, None, n, _describe(rep), _ms(start), method="eq1")


# ---------------------------------------------------------------- transport along L(V_n) = so_{n+1}


def to_basic(rep: LieRep) -> LieRep:
    """so_{n+1}-module -> L(V_n)-module along the explicit isomorphism."""
    m = _so_size(rep)
    n = m - 1
    return pullback(rep, iso_to_so(n), basic_lie_algebra(vector_product_algebra(n)))


def to_so(rep: LieRep, n: int) -> LieRep:
    phi = iso_to_so(n)
    return pullback(rep, phi.T, so_algebra(n + 1))


def nlie_adjoint_module(alg: NLieAlgebra) -> LieRep:
    """A acting on itself: rho(a1^..^a_{n-1}) b = [a1..a_{n-1}, b]."""
    return LieRep(
        basic_lie_algebra(alg),
        adjoint_representation_matrices(alg),
        tuple(alg.basis_labels()),
        "adjoint",
        {"n": alg.arity},
    )


def adjoint_module(n: int) -> LieRep:
    """The n-Lie adjoint module of V_n as an so_{n+1}-module."""
    return to_so(nlie_adjoint_module(vector_product_algebra(n)), n)


def prolongs_by_semidirect(rep: LieRep) -> bool:
    """Third decider: is V_n + M a Filippov algebra?"""
    m = _so_size(rep)
    return is_filippov(semidirect_sum(vector_product_algebra(m - 1), to_basic(rep))).passed


# ---------------------------------------------------------------- module axioms


def rep_action(alg: NLieAlgebra, rep: LieRep) -> Callable[[Sequence[dict], dict], dict]:
    """omega_n(a1, .., a_{n-1}, m) = rho(a1^..^a_{n-1}) m, on sparse vectors."""
    if rep.algebra.dim != len(wedge_basis(alg.arity, alg.dim)):
        raise ShapeError("representation does not match the basic Lie algebra")
    position = _wedge_positions(alg)

    def action(args, vec):
        return _rho_wedge(rep, position, list(args)).apply(vec)

    return action


def _random_vector(rng: random.Random, dim: int) -> dict:
    out = {}
    for k in range(dim):
        x = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        if x:
            out[k] = x
    return out


def check_module_axioms(alg: NLieAlgebra, action, dim_m: int, seed: int = 0) -> CheckReport:
    """Verify the four n-Lie module axioms for omega_n = ``action``.

    omega_p (module vector in slot p) is obtained from omega_n by moving the
    module vector to the last slot: omega_p = (-1)^(n-p) omega_n(...).
    """
    n, d = alg.arity, alg.dim
    unit_a = [{k: Fraction(1)} for k in range(d)]
    unit_m = [{k: Fraction(1)} for k in range(dim_m)]
    rng = random.Random(seed)
    checked = 0

    def omega(p, algebra_args, vec):
        # p is 1-based; algebra_args are the n-1 algebra arguments in order
        return vec_scale((-1) ** (n - p), action(algebra_args, vec))

    def fail(bullet, **info):
        return CheckReport("module axioms", False, {"axiom": bullet, **info}, checked)

    # linearity, spot-checked on random rational combinations
    for _ in range(3):
        args = [_random_vector(rng, d) for _ in range(n - 1)]
        vec = _random_vector(rng, dim_m)
        alpha, beta = Fraction(rng.randint(1, 5), rng.randint(1, 3)), Fraction(rng.randint(-5, -1), 2)
        y = _random_vector(rng, d)
        slot = rng.randrange(n - 1)
        mixed = list(args)
        mixed[slot] = vec_axpy(vec_scale(alpha, args[slot]), beta, y)
        other = list(args)
        other[slot] = y
        expected = vec_axpy(vec_scale(alpha, action(args, vec)), beta, action(other, vec))
        checked += 1
        if action(mixed, vec) != expected:
            return fail("linearity", slot=slot + 1)
        w = _random_vector(rng, dim_m)
        checked += 1
        lhs = action(args, vec_axpy(vec_scale(alpha, vec), beta, w))
        if lhs != vec_axpy(vec_scale(alpha, action(args, vec)), beta, action(args, w)):
            return fail("linearity", slot="module")

    for a in itertools.combinations(range(d), n - 1):
        args = [unit_a[k] for k in a]
        for mv in range(dim_m):
            base = action(args, unit_m[mv])
            # (a) skew-symmetry in the algebra arguments
            for p in range(n - 2):
                swapped = list(args)
                swapped[p], swapped[p + 1] = swapped[p + 1], swapped[p]
                checked += 1
                if action(swapped, unit_m[mv]) != vec_scale(-1, base):
                    return fail("skew-symmetry", args=tuple(k + 1 for k in a), module=mv + 1)
            if n > 2:
                repeated = [args[0]] + args[:-1]
                checked += 1
                if action(repeated, unit_m[mv]):
                    return fail("skew-symmetry", args=tuple(k + 1 for k in a), module=mv + 1)
            # (b) omega_p(.., m, a_{p+1}, ..) = -omega_{p+1}(.., a_{p+1}, m, ..)
            for p in range(1, n):
                checked += 1
                if omega(p, args, unit_m[mv]) != vec_scale(-1, omega(p + 1, args, unit_m[mv])):
                    return fail("adjacent swap", slot=p)

    # (c) [a, [b, m]] = sum_i [b1..[a, b_i]..b_{n-1}, m] + [b, [a, m]]
    for a in itertools.combinations(range(d), n - 1):
        aa = [unit_a[k] for k in a]
        for b in itertools.combinations(range(d), n - 1):
            bb = [unit_a[k] for k in b]
            for mv in range(dim_m):
                checked += 1
                lhs = action(aa, action(bb, unit_m[mv]))
                rhs = dict(action(bb, action(aa, unit_m[mv])))
                for i in range(n - 1):
                    inner = alg.bracket_sparse(aa + [bb[i]])
                    if inner:
                        vec_axpy(rhs, 1, action(bb[:i] + [inner] + bb[i + 1:], unit_m[mv]))
                if lhs != rhs:
                    return fail(
                        "omega_n Leibniz", first=tuple(k + 1 for k in a), second=tuple(k + 1 for k in b), module=mv + 1
                    )

    # (d) omega_{n-1}(a', m, [b1..bn]) = sum_p omega_p(b1.., omega_{n-1}(a', m, b_p), ..bn)
    for a in itertools.combinations(range(d), n - 2):
        aa = [unit_a[k] for k in a]
        for b in itertools.combinations(range(d), n):
            bb = [unit_a[k] for k in b]
            product = alg.basis_bracket(b)
            for mv in range(dim_m):
                checked += 1
                lhs = omega(n - 1, aa + [product], unit_m[mv]) if product else {}
                rhs: dict = {}
                for p in range(1, n + 1):
                    x = omega(n - 1, aa + [bb[p - 1]], unit_m[mv])
                    if x:
                        vec_axpy(rhs, 1, omega(p, bb[: p - 1] + bb[p:], x))
                if lhs != rhs:
                    return fail(
                        "omega_{n-1} mixed", first=tuple(k + 1 for k in a), second=tuple(k + 1 for k in b), module=mv + 1
                    )
    return CheckReport("module axioms", True, None, checked)


# ---------------------------------------------------------------- irreducibility


@dataclass
class IrreducibilityReport:
    irreducible: bool
    witness: list | None = None  # basis (sparse dicts) of a proper invariant subspace
    commutant_dim: int | None = None

    def __bool__(self):
        return self.irreducible


def invariant_closure(matrices: Sequence[Matrix], vectors: Sequence[dict], dim: int) -> EchelonBasis:
    """Smallest subspace containing ``vectors`` and stable under ``matrices``."""
    basis = EchelonBasis(dim)
    queue = []
    for v in vectors:
        if basis.add(v):
            queue.append(v)
    while queue:
        v = queue.pop()
        for mat in matrices:
            w = mat.apply(v)
            if w and basis.add(w):
                queue.append(w)
        if len(basis) == dim:
            break
    return basis


def _is_invariant(matrices, rows, dim) -> bool:
    basis = EchelonBasis(dim)
    for r in rows:
        basis.add(r)
    return all(mat.apply(r) in basis for mat in matrices for r in rows)


def default_seed() -> int:
    return int(os.environ.get("NLIE_KIT_SEED", "0"))


def is_irreducible(rep: LieRep, seed: int | None = None, probes: int = 5) -> IrreducibilityReport:
    """Search for a proper invariant subspace.

    Tried in order: the common kernel of all matrices; cyclic subspaces of
    each basis vector and of ``probes`` seeded random vectors; the same
    cyclic search for the transposed action (a proper invariant subspace
    there gives its annihilator here); finally the commutant.  Every module
    here is over a semisimple algebra, so a one-dimensional commutant proves
    absolute irreducibility, while a larger one supplies commuting maps
    whose eigenspaces are tried as witnesses.  Any witness is verified
    invariant.  A commutant of dimension > 1 with no rational splitting
    found (a non-split division algebra) is reported irreducible with
    ``commutant_dim`` recording it.
    """
    dim = rep.dim
    if dim == 0:
        return IrreducibilityReport(False, [])
    mats = list(rep.matrices)

    stacked = Matrix(
        dim * len(mats),
        dim,
        {(q * dim + r, c): x for q, mat in enumerate(mats) for r, c, x in mat.nonzero_entries()},
    )
    fixed = [dict((k, x) for k, x in enumerate(v) if x) for v in kernel_basis(stacked)]
    if 0 < len(fixed) < dim:
        return _verified(mats, fixed, dim)
    if len(fixed) == dim and dim > 1:
        return _verified(mats, [{0: Fraction(1)}], dim)

    rng = random.Random(default_seed() if seed is None else seed)
    probe_vectors = [{k: Fraction(1)} for k in range(dim)]
    probe_vectors += [v for v in (_random_vector(rng, dim) for _ in range(probes)) if v]
    for v in probe_vectors:
        closure = invariant_closure(mats, [v], dim)
        if len(closure) < dim:
            return _verified(mats, closure.rows(), dim)
    transposed = [mat.T for mat in mats]
    for v in probe_vectors:
        closure = invariant_closure(transposed, [v], dim)
        if len(closure) < dim:
            annihilator = Matrix.from_columns(dim, closure.rows()).T
            rows = [dict((k, x) for k, x in enumerate(u) if x) for u in kernel_basis(annihilator)]
            return _verified(mats, rows, dim)
    comm = commutant_basis(mats, dim)
    if len(comm) > 1:
        for X in comm:
            candidates = {X[k, k] for k in range(dim)} | {Fraction(0)} | set(_rational_roots(minimal_polynomial(X)))
            for lam in sorted(candidates, key=str):
                shifted = X - Matrix.identity(dim).scale(lam)
                rows = [dict((k, x) for k, x in enumerate(u) if x) for u in kernel_basis(shifted)]
                if 0 < len(rows) < dim:
                    report = _verified(mats, rows, dim)
                    report.commutant_dim = len(comm)
                    return report
    return IrreducibilityReport(True, None, len(comm))


def minimal_polynomial(X: Matrix) -> list:
    """Coefficients c_0..c_k (c_k = 1) of the minimal polynomial of X."""
    dim = X.rows
    powers = [Matrix.identity(dim)]
    span = EchelonBasis(dim * dim)
    flat = lambda M: {r * dim + c: x for r, c, x in M.nonzero_entries()}  # noqa: E731
    span.add(flat(powers[0]))
    while True:
        nxt = powers[-1] @ X
        if not span.add(flat(nxt)):
            powers.append(nxt)
            break
        powers.append(nxt)
    cols = Matrix.from_columns(dim * dim, [flat(M) for M in powers])
    (v,) = kernel_basis(cols)
    lead = v[-1]
    return [x / lead for x in v]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def _rational_roots(coeffs: Sequence, bound: int = 10**6) -> list[Fraction]:
    """Rational roots of a polynomial with Fraction coefficients (low degree first)."""
    if any(not isinstance(c, (int, Fraction)) for c in coeffs):
        return []
    coeffs = [Fraction(c) for c in coeffs]
    roots = []
    while coeffs and coeffs[0] == 0:
        roots.append(Fraction(0))
        coeffs = coeffs[1:]
    if len(coeffs) <= 1:
        return roots
    scale = 1
    for c in coeffs:
        scale = scale * c.denominator // gcd(scale, c.denominator)
    ints = [int(c * scale) for c in coeffs]
    if abs(ints[0]) > bound or abs(ints[-1]) > bound:
        return roots
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and sum(c * cand**k for k, c in enumerate(ints)) == 0:
                    roots.append(cand)
    return roots


def commutant_basis(mats: Sequence[Matrix], dim: int) -> list[Matrix]:
    """Basis of {X : X A = A X for every A in mats}."""
    entries = {}
    row = 0
    for A in mats:
        cols = [A.column(c) for c in range(dim)]
        for r in range(dim):
            arow = A.row(r)
            for c in range(dim):
                # (A X - X A)[r, c]
                eq: dict = {}
                for k, x in arow.items():
                    eq[k * dim + c] = eq.get(k * dim + c, 0) + x
                for k, x in cols[c].items():
                    eq[r * dim + k] = eq.get(r * dim + k, 0) - x
                for col, x in eq.items():
                    if x:
                        entries[(row, col)] = x
                row += 1
    system = Matrix(row, dim * dim, entries)
    out = []
    for v in kernel_basis(system):
        out.append(Matrix(dim, dim, {(q // dim, q % dim): x for q, x in enumerate(v) if x}))
    return out


def _verified(mats, rows, dim) -> IrreducibilityReport:
    if not rows or len(rows) >= dim or not _is_invariant(mats, rows, dim):
        raise ConsistencyError("invariant-subspace witness failed verification")
    return IrreducibilityReport(False, rows)


# ---------------------------------------------------------------- dimensions and Q2


def dimension_formula(n: int, t: int) -> int:
    """(n+2t-1)/(n+t-1) * C(n+t-1, t)."""
    if n < 2 or t < 0:
        raise ValueError(f"need n >= 2 and t >= 0, got n={n}, t={t}")
    value = Fraction(n + 2 * t - 1, n + t - 1) * comb(n + t - 1, t)
    if value.denominator != 1:
        raise ConsistencyError(f"dimension formula is not integral at n={n}, t={t}: {value}")
    return int(value)


def q2_vectors(n: int, with_commutators: bool = False) -> list[tuple]:
    """Each R_ijsk as a vector in S^2(so_{n+1}), optionally followed by its
    degree-one part (1/2 the commutators) in so_{n+1}.

    e_p e_q = e_p.e_q + [e_p, e_q]/2, where e_p.e_q is the symmetric product.
    """
    m = n + 1
    so = so_algebra(m)
    pairs = so_pairs(m)
    position = {p: k for k, p in enumerate(pairs)}
    sym = {pq: k for k, pq in enumerate(itertools.combinations_with_replacement(range(len(pairs)), 2))}
    width = len(sym) + (len(pairs) if with_commutators else 0)

    def e(a, b):
        sign, key = sort_with_sign((a, b))
        return sign, position.get(key)

    out = []
    for idx in obstruction_indices(m):
        i, j, s, k = idx.i, idx.j, idx.s, idx.k
        vec: dict = {}
        for (a, b), (c, dd) in (((i, j), (s, k)), ((i, s), (k, j)), ((i, k), (j, s))):
            s1, p = e(a, b)
            s2, q = e(c, dd)
            if not (s1 and s2):
                continue
            vec_axpy(vec, s1 * s2, {sym[(min(p, q), max(p, q))]: Fraction(1)})
            if with_commutators:
                comm = so.basis_bracket(p, q)
                vec_axpy(vec, Fraction(s1 * s2, 2), {len(sym) + r: x for r, x in comm.items()})
        out.append(to_dense(vec, width))
    return out


def q2_span_dimension(n: int) -> int:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    vs = q2_vectors(n)
    return span_dimension(vs) if vs else 0


def q2_spans(n: int) -> tuple[int, int]:
    """(symbol span in S^2, span including the commutator corrections)."""
    full = q2_vectors(n, with_commutators=True)
    return q2_span_dimension(n), (span_dimension(full) if full else 0)


# ---------------------------------------------------------------- module families


def family_module(kind: str, n: int, t: int = 0, r: int = 0) -> LieRep:
    """Named test modules over so_{n+1}."""
    m = n + 1
    if kind == "harmonic":
        return harmonic_module(m, t)
    if kind == "polynomial":
        return polynomial_module(m, t)
    if kind == "tensor":
        if m != 4:
            raise ShapeError("tensor modules M_{t,r} exist for n = 3 only")
        return so4_tensor_module(t, r)
    if kind == "adjoint":
        return adjoint_module(n)
    if kind == "wedge2":
        return wedge2_module(m)
    raise ValueError(f"unknown module family {kind!r}")


def predicted_prolongs(kind: str, n: int, t: int = 0, r: int = 0) -> bool:
    if n == 2:
        return True
    if kind in ("harmonic", "polynomial", "adjoint"):
        return True
    if kind == "tensor":
        return t == r
    if kind == "wedge2":
        return False
    raise ValueError(f"no prediction for {kind!r}")


def nlie_highest_weight(kind: str, n: int, t: int = 0, r: int = 0) -> int | None:
    """n-Lie highest weight of a prolongable family member, None if it does not prolong."""
    if not predicted_prolongs(kind, n, t, r):
        return None
    if kind == "harmonic":
        return 2 * t if n == 2 else t
    if kind == "tensor":
        return t
    if kind == "adjoint":
        return 2 if n == 2 else 1
    if kind == "wedge2":  # only reached for n = 2, where it is the adjoint of so_3
        return 2
    return None


def nlie_dimension(n: int, t: int) -> int:
    """Dimension of the irreducible n-Lie V_n-module with n-Lie highest weight t.

    For n >= 3 this is the closed formula.  V_2 is sl_2, whose module with
    highest weight t has dimension t + 1; the closed formula at n = 2 counts
    the so_3 module t*pi_1 instead, which is the sl_2 module of weight 2t.
    """
    if n == 2:
        if t < 0:
            raise ValueError(f"need t >= 0, got {t}")
        return t + 1
    return dimension_formula(n, t)
