"""Representations by matrices: polynomial and harmonic so_m modules, sl2
modules in the f-basis, so4 tensor modules, Casimirs, and module plumbing
(restriction, direct sums, wedge squares, pullbacks, JSON export)."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .basiclie import LieAlgebra, so_algebra, so_pairs
from .errors import ConsistencyError, ParseError, ShapeError
from .exact import (
    I,
    EchelonBasis,
    Matrix,
    block_diag,
    commutator,
    format_scalar,
    kernel_basis,
    kron,
    linear_combination,
    parse_scalar,
    rank,
    to_sparse,
)
from .reports import CheckReport


@dataclass(frozen=True)
class LieRep:
    """One square matrix per basis element of ``algebra``.

    Construction verifies rho([x, y]) = [rho x, rho y] on every basis pair
    exactly and raises ConsistencyError otherwise.
    """

    algebra: LieAlgebra
    matrices: tuple
    labels: tuple = field(default=(), compare=False)
    kind: str = field(default="", compare=False)
    params: dict = field(default_factory=dict, compare=False)
    verify: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "matrices", tuple(self.matrices))
        if len(self.matrices) != self.algebra.dim:
            raise ShapeError(f"{len(self.matrices)} matrices for a {self.algebra.dim}-dimensional algebra")
        shapes = {m.shape for m in self.matrices}
        if len(shapes) > 1 or any(r != c for r, c in shapes):
            raise ShapeError(f"module matrices must be square and equal-sized, got {sorted(shapes)}")
        if self.verify:
            report = homomorphism_check(self)
            if not report:
                raise ConsistencyError(f"not a representation: {report.witness}")

    @property
    def dim(self) -> int:
        if self.matrices:
            return self.matrices[0].rows
        return len(self.labels)

    def label(self, k: int) -> str:
        return self.labels[k] if self.labels else f"v{k + 1}"

    def act(self, x: dict) -> Matrix:
        """Matrix of a general algebra element (sparse coordinates)."""
        return linear_combination(((c, self.matrices[k]) for k, c in x.items()), self.dim, self.dim)


def homomorphism_check(rep: LieRep) -> CheckReport:
    L = rep.algebra
    checked = 0
    for i, j in itertools.combinations(range(L.dim), 2):
        checked += 1
        lhs = rep.act(L.basis_bracket(i, j))
        rhs = commutator(rep.matrices[i], rep.matrices[j])
        if lhs != rhs:
            return CheckReport("representation", False, {"pair": (L.label(i), L.label(j))}, checked)
    return CheckReport("representation", True, None, checked)


def zero_rep(algebra: LieAlgebra, dim: int) -> LieRep:
    return LieRep(algebra, [Matrix.zeros(dim)] * algebra.dim, tuple(f"z{k + 1}" for k in range(dim)), "zero", {"dim": dim})


# ---------------------------------------------------------------- polynomials


def monomials(m: int, t: int) -> list[tuple[int, ...]]:
    """Degree-t exponent vectors over m variables, ordered as x1^t, x1^(t-1) x2, ..."""
    out = []
    for combo in itertools.combinations_with_replacement(range(m), t):
        exps = [0] * m
        for k in combo:
            exps[k] += 1
        out.append(tuple(exps))
    return out


def monomial_label(exps: Sequence[int]) -> str:
    parts = []
    for k, e in enumerate(exps):
        if e == 1:
            parts.append(f"x{k + 1}")
        elif e > 1:
            parts.append(f"x{k + 1}^{e}")
    return "*".join(parts) if parts else "1"


def _vector_field_column(exps, i, j, position) -> dict:
    """(x_i d_j - x_j d_i) applied to one monomial."""
    out: dict = {}
    for a, b, sign in ((i, j, 1), (j, i, -1)):
        if exps[b]:
            new = list(exps)
            new[b] -= 1
            new[a] += 1
            k = position[tuple(new)]
            y = out.get(k, 0) + sign * exps[b]
            if y:
                out[k] = Fraction(y)
            else:
                out.pop(k, None)
    return out


def polynomial_module(m: int, t: int) -> LieRep:
    """so_m acting on degree-t homogeneous polynomials by e_ij = x_i d_j - x_j d_i."""
    if m < 3 or t < 0:
        raise ShapeError(f"need m >= 3 and t >= 0, got m={m}, t={t}")
    basis = monomials(m, t)
    position = {e: k for k, e in enumerate(basis)}
    mats = [
        Matrix.from_columns(len(basis), [_vector_field_column(e, i, j, position) for e in basis])
        for i, j in so_pairs(m)
    ]
    labels = tuple(monomial_label(e) for e in basis)
    return LieRep(so_algebra(m), mats, labels, "polynomial", {"m": m, "t": t})


def laplacian_matrix(m: int, t: int) -> Matrix:
    """sum_i d_i^2 from degree-t to degree-(t-2) monomials."""
    source = monomials(m, t)
    if t < 2:
        return Matrix.zeros(0, len(source))
    target = {e: k for k, e in enumerate(monomials(m, t - 2))}
    entries = {}
    for c, exps in enumerate(source):
        for i, e in enumerate(exps):
            if e >= 2:
                new = list(exps)
                new[i] -= 2
                entries[(target[tuple(new)], c)] = e * (e - 1)
    return Matrix(len(target), len(source), entries)


def laplacian_kernel_dim(m: int, t: int) -> int:
    lap = laplacian_matrix(m, t)
    return lap.cols - rank(lap)


def restrict(rep: LieRep, vectors: Sequence, labels: Sequence[str] | None = None, kind: str = "", params=None):
    """Restrict to the span of ``vectors``, which must be invariant.

    Returns (subrep, basis) where ``basis`` is the reduced echelon basis
    (sparse dicts) the submodule matrices are written against.
    """
    echelon = EchelonBasis(rep.dim)
    for v in vectors:
        echelon.add(v if isinstance(v, dict) else to_sparse(v))
    basis = echelon.rows()
    mats = []
    for mat in rep.matrices:
        cols = []
        for b in basis:
            image = mat.apply(b)
            try:
                cols.append(echelon.coordinates(image))
            except ValueError:
                raise ConsistencyError("subspace is not invariant") from None
        mats.append(Matrix.from_columns(len(basis), cols))
    if labels is None:
        labels = tuple(f"u{k + 1}" for k in range(len(basis)))
    sub = LieRep(rep.algebra, mats, tuple(labels), kind or f"sub({rep.kind})", dict(params or {}))
    return sub, basis


def harmonic_basis(m: int, t: int) -> list[tuple]:
    return kernel_basis(laplacian_matrix(m, t))


def harmonic_module(m: int, t: int) -> LieRep:
    """The harmonic degree-t polynomials: irreducible so_m module of highest weight t*pi_1."""
    poly = polynomial_module(m, t)
    sub, _ = restrict(poly, harmonic_basis(m, t), kind="harmonic", params={"m": m, "t": t})
    return sub


# ---------------------------------------------------------------- sl2 and so4


def sl2_algebra() -> LieAlgebra:
    """Basis f1, f2, f3 with [f1,f2] = -f3, [f1,f3] = f2, [f2,f3] = -f1."""
    structure = {
        (0, 1): {2: Fraction(-1)},
        (0, 2): {1: Fraction(1)},
        (1, 2): {0: Fraction(-1)},
    }
    return LieAlgebra(3, structure, name="sl2", labels=("f1", "f2", "f3"))


def _weight_basis_action(t: int) -> tuple[Matrix, Matrix, Matrix]:
    """E, F, H on v_0..v_t: H v_k = (t-2k) v_k, F v_k = v_{k+1}, E v_k = k(t-k+1) v_{k-1}."""
    size = t + 1
    E = Matrix(size, size, {(k - 1, k): k * (t - k + 1) for k in range(1, size)})
    F = Matrix(size, size, {(k + 1, k): 1 for k in range(t)})
    H = Matrix(size, size, {(k, k): t - 2 * k for k in range(size)})
    return E, F, H


def sl2_module(t: int) -> LieRep:
    """The (t+1)-dimensional irreducible module in the f-basis.

    Even t: harmonic polynomials of degree t/2 in three variables, with
    f1, f2, f3 = e12, e13, e23 (rational entries).  Odd t: the relations
    describe a compact form whose 2-dimensional module does not exist over Q,
    so f1 = i(E+F)/2, f2 = (E-F)/2, f3 = iH/2 with Gaussian-rational entries.
    """
    if t < 0:
        raise ShapeError(f"t must be >= 0, got {t}")
    if t % 2 == 0:
        h = harmonic_module(3, t // 2)
        return LieRep(sl2_algebra(), h.matrices, tuple(f"w{k}" for k in range(t + 1)), "sl2", {"t": t})
    E, F, H = _weight_basis_action(t)
    half = Fraction(1, 2)
    f1 = (E + F).scale(I * half)
    f2 = (E - F).scale(half)
    f3 = H.scale(I * half)
    return LieRep(sl2_algebra(), [f1, f2, f3], tuple(f"w{k}" for k in range(t + 1)), "sl2", {"t": t})


# f-basis of so4 in e-coordinates (e12, e13, e14, e23, e24, e34)
F_BASIS = (
    {0: Fraction(1, 2), 5: Fraction(1, 2)},
    {1: Fraction(1, 2), 4: Fraction(-1, 2)},
    {2: Fraction(1, 2), 3: Fraction(1, 2)},
    {0: Fraction(-1, 2), 5: Fraction(1, 2)},
    {1: Fraction(1, 2), 4: Fraction(1, 2)},
    {2: Fraction(-1, 2), 3: Fraction(1, 2)},
)

# e_ij in f-coordinates, same order
E_FROM_F = (
    {0: 1, 3: -1},  # e12 = f1 - f4
    {1: 1, 4: 1},  # e13 = f2 + f5
    {2: 1, 5: -1},  # e14 = f3 - f6
    {2: 1, 5: 1},  # e23 = f3 + f6
    {1: -1, 4: 1},  # e24 = -f2 + f5
    {0: 1, 3: 1},  # e34 = f1 + f4
)


def so4_tensor_module(t: int, r: int) -> LieRep:
    """M_t (x) M_r as an so4 module.

    f1..f3 act on the left factor by sl2_module(t).  The second copy obeys
    [f4,f5] = f6 (cyclic), the opposite sign, so f4..f6 act on the right
    factor by the negated sl2_module(r) matrices.
    """
    left = sl2_module(t)
    right = sl2_module(r)
    id_left = Matrix.identity(t + 1)
    id_right = Matrix.identity(r + 1)
    f = [kron(m, id_right) for m in left.matrices] + [kron(id_left, -m) for m in right.matrices]
    size = (t + 1) * (r + 1)
    mats = [linear_combination(((c, f[k]) for k, c in combo.items()), size, size) for combo in E_FROM_F]
    labels = tuple(f"w{a}.w{b}" for a in range(t + 1) for b in range(r + 1))
    return LieRep(so_algebra(4), mats, labels, "tensor", {"t": t, "r": r})


def f_matrices(rep: LieRep) -> list[Matrix]:
    if rep.algebra != so_algebra(4):
        raise ShapeError("f-basis needs an so4 representation")
    return [rep.act(combo) for combo in F_BASIS]


def casimir_values(rep: LieRep) -> tuple:
    """(C1, C2) for C1 = f1^2+f2^2+f3^2 and C2 = f4^2+f5^2+f6^2, both checked to be scalar."""
    f = f_matrices(rep)
    out = []
    for group in (f[:3], f[3:]):
        c = group[0] @ group[0] + group[1] @ group[1] + group[2] @ group[2]
        value = c.scalar_value()
        if value is None:
            raise ConsistencyError("Casimir is not a scalar matrix on this module")
        out.append(value)
    return tuple(out)


def casimir_matrices(rep: LieRep) -> tuple[Matrix, Matrix]:
    f = f_matrices(rep)
    return tuple(g[0] @ g[0] + g[1] @ g[1] + g[2] @ g[2] for g in (f[:3], f[3:]))


# ---------------------------------------------------------------- module plumbing


def direct_sum(r1: LieRep, r2: LieRep) -> LieRep:
    if r1.algebra != r2.algebra:
        raise ShapeError("direct sum of representations of different algebras")
    mats = [block_diag(a, b) for a, b in zip(r1.matrices, r2.matrices)]
    labels = tuple(f"[1]{l}" for l in _labels(r1)) + tuple(f"[2]{l}" for l in _labels(r2))
    return LieRep(r1.algebra, mats, labels, "sum", {"left": _describe(r1), "right": _describe(r2)})


def _labels(rep):
    return [rep.label(k) for k in range(rep.dim)]


def _describe(rep):
    return {"kind": rep.kind, "params": rep.params, "dim": rep.dim}


def wedge_square(rep: LieRep) -> LieRep:
    """Second exterior power: X(u ^ v) = Xu ^ v + u ^ Xv."""
    pairs = list(itertools.combinations(range(rep.dim), 2))
    position = {p: k for k, p in enumerate(pairs)}
    mats = []
    for mat in rep.matrices:
        cols = [mat.column(c) for c in range(rep.dim)]
        wcols = []
        for a, b in pairs:
            out: dict = {}
            for k, x in cols[a].items():  # Xu_a ^ u_b
                if k != b:
                    key, sign = ((k, b), 1) if k < b else ((b, k), -1)
                    out[position[key]] = out.get(position[key], 0) + sign * x
            for k, x in cols[b].items():  # u_a ^ Xu_b
                if k != a:
                    key, sign = ((a, k), 1) if a < k else ((k, a), -1)
                    out[position[key]] = out.get(position[key], 0) + sign * x
            wcols.append({k: v for k, v in out.items() if v})
        mats.append(Matrix.from_columns(len(pairs), wcols))
    labels = tuple(f"{rep.label(a)}^{rep.label(b)}" for a, b in pairs)
    return LieRep(rep.algebra, mats, labels, "wedge2", {"of": _describe(rep)})


def wedge2_module(m: int) -> LieRep:
    """Lambda^2 of the vector module of so_m (the Lie adjoint module)."""
    rep = wedge_square(polynomial_module(m, 1))
    return LieRep(rep.algebra, rep.matrices, rep.labels, "wedge2", {"m": m}, verify=False)


def pullback(rep: LieRep, phi: Matrix, algebra: LieAlgebra, kind: str | None = None) -> LieRep:
    """rho'(x_c) = sum_k phi[k, c] rho(y_k) for phi: algebra -> rep.algebra."""
    if phi.shape != (rep.algebra.dim, algebra.dim):
        raise ShapeError(f"map shape {phi.shape} does not match {algebra.dim} -> {rep.algebra.dim}")
    mats = [rep.act(phi.column(c)) for c in range(algebra.dim)]
    return LieRep(algebra, mats, rep.labels, kind or rep.kind, dict(rep.params))


def is_so(algebra: LieAlgebra) -> int | None:
    """m if ``algebra`` is so_algebra(m) (by structure constants), else None."""
    m = 3
    while m * (m - 1) // 2 < algebra.dim:
        m += 1
    if m * (m - 1) // 2 == algebra.dim and algebra == so_algebra(m):
        return m
    return None


# ---------------------------------------------------------------- JSON export


def rep_to_json(rep: LieRep) -> dict:
    m = is_so(rep.algebra)
    if m is None:
        raise ShapeError("only so_m representations can be exported")
    return {
        "algebra": "so",
        "m": m,
        "basis": [rep.label(k) for k in range(rep.dim)],
        "matrices": {
            f"e_{i + 1}_{j + 1}": [[format_scalar(x) for x in row] for row in mat.to_lists()]
            for (i, j), mat in zip(so_pairs(m), rep.matrices)
        },
    }


def rep_from_json(obj: dict) -> LieRep:
    try:
        if obj["algebra"] != "so":
            raise ParseError(f"unsupported algebra {obj['algebra']!r}")
        m = int(obj["m"])
        labels = tuple(obj["basis"])
        mats = []
        for i, j in so_pairs(m):
            rows = obj["matrices"][f"e_{i + 1}_{j + 1}"]
            mats.append(Matrix.from_lists([[parse_scalar(x) for x in row] for row in rows]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed module JSON: {exc}") from None
    if any(mat.shape != (len(labels), len(labels)) for mat in mats):
        raise ParseError("matrix size does not match the basis length")
    return LieRep(so_algebra(m), mats, labels, "file", {"m": m})


def dumps_rep(rep: LieRep) -> str:
    return json.dumps(rep_to_json(rep), indent=1, sort_keys=True) + "\n"


def loads_rep(text: str) -> LieRep:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return rep_from_json(obj)


def tensor_dim(t: int, r: int) -> int:
    return (t + 1) * (r + 1)


def polynomial_dim(m: int, t: int) -> int:
    return comb(m + t - 1, t)
