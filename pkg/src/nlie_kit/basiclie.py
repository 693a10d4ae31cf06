"""Lie algebras by structure constants, the basic Lie algebra of an n-Lie
algebra, and the explicit isomorphism L(V_n) -> so_{n+1}."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import ArityError, ShapeError
from .exact import Matrix, rank, to_dense, to_sparse, vec_axpy
from .nlie import NLieAlgebra, sort_with_sign, vector_product_algebra, wedge_expand
from .reports import CheckReport


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants on pairs i < j; [j, i] = -[i, j] and [i, i] = 0."""

    dim: int
    structure: dict
    name: str = field(default="", compare=False)
    labels: tuple = field(default=(), compare=False)

    def basis_bracket(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if i < j:
            return dict(self.structure.get((i, j), {}))
        return {k: -x for k, x in self.structure.get((j, i), {}).items()}

    def bracket_sparse(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                vec = self.structure.get((i, j)) if i < j else self.structure.get((j, i))
                if vec:
                    vec_axpy(out, a * b if i < j else -a * b, vec)
        return out

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        if len(x) != self.dim or len(y) != self.dim:
            raise ShapeError("element length does not match algebra dimension")
        return to_dense(self.bracket_sparse(to_sparse(x), to_sparse(y)), self.dim)

    def ad(self, i: int) -> Matrix:
        return Matrix.from_columns(self.dim, [self.basis_bracket(i, j) for j in range(self.dim)])

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"x{i + 1}"


def wedge_basis(arity: int, dim: int) -> list[tuple]:
    """Increasing (arity-1)-tuples in lexicographic order (0-based)."""
    if arity - 1 > dim:
        return []
    return list(itertools.combinations(range(dim), arity - 1))


def _wedge_label(w: tuple) -> str:
    return "^".join(f"e{k + 1}" for k in w) if w else "1"


def basic_bracket_table(alg: NLieAlgebra, formula: int = 1) -> dict[tuple[int, int], dict]:
    """[w_a, w_b] for every ordered pair of wedge basis elements.

    formula 1: sum_i (-1)^(i+1) [a1..a_{n-1}, b_i] ^ b1..^b_i..b_{n-1}
    formula 2: sum_i (-1)^(i+n) a1..^a_i..a_{n-1} ^ [a_i, b1..b_{n-1}]
    """
    n = alg.arity
    basis = wedge_basis(n, alg.dim)
    position = {w: k for k, w in enumerate(basis)}
    unit = [{k: Fraction(1)} for k in range(alg.dim)]
    table = {}
    for ia, a in enumerate(basis):
        for ib, b in enumerate(basis):
            out: dict = {}
            for i in range(1, n):
                if formula == 1:
                    inner = alg.bracket_sparse([unit[k] for k in a] + [unit[b[i - 1]]])
                    factors = [inner] + [unit[k] for p, k in enumerate(b) if p != i - 1]
                    sign = (-1) ** (i + 1)
                elif formula == 2:
                    inner = alg.bracket_sparse([unit[a[i - 1]]] + [unit[k] for k in b])
                    factors = [unit[k] for p, k in enumerate(a) if p != i - 1] + [inner]
                    sign = (-1) ** (i + n)
                else:
                    raise ValueError(f"unknown formula {formula}")
                for key, coeff in wedge_expand(factors).items():
                    vec_axpy(out, sign * coeff, {position[key]: Fraction(1)})
            table[(ia, ib)] = out
    return table


def basic_lie_algebra(alg: NLieAlgebra) -> LieAlgebra:
    """L(A) on the wedge basis of (n-1)-vectors, with the first bracket formula."""
    table = basic_bracket_table(alg, formula=1)
    dim = len(wedge_basis(alg.arity, alg.dim))
    structure = {(i, j): v for (i, j), v in table.items() if i < j and v}
    labels = tuple(_wedge_label(w) for w in wedge_basis(alg.arity, alg.dim))
    return LieAlgebra(dim, structure, name=f"L({alg.name})" if alg.name else "L(A)", labels=labels)


def is_antisymmetric_table(table: dict) -> bool:
    for (i, j), v in table.items():
        w = table[(j, i)]
        if {k: -x for k, x in v.items()} != w:
            return False
    return True


def jacobi_check(L: LieAlgebra) -> CheckReport:
    """[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0 on all basis triples x<y<z.

    The Jacobiator of an antisymmetric bracket is alternating, so increasing
    triples cover everything.
    """
    unit = [{k: Fraction(1)} for k in range(L.dim)]
    checked = 0
    for x, y, z in itertools.combinations(range(L.dim), 3):
        checked += 1
        total: dict = {}
        vec_axpy(total, 1, L.bracket_sparse(unit[x], L.basis_bracket(y, z)))
        vec_axpy(total, 1, L.bracket_sparse(unit[y], L.basis_bracket(z, x)))
        vec_axpy(total, 1, L.bracket_sparse(unit[z], L.basis_bracket(x, y)))
        if total:
            witness = {"triple": (x + 1, y + 1, z + 1), "jacobiator": to_dense(total, L.dim)}
            return CheckReport("jacobi", False, witness, checked)
    return CheckReport("jacobi", True, None, checked)


def killing_form(L: LieAlgebra) -> Matrix:
    ads = [L.ad(i) for i in range(L.dim)]
    return Matrix(L.dim, L.dim, {(i, j): (ads[i] @ ads[j]).trace() for i in range(L.dim) for j in range(L.dim)})


def so_pairs(m: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(m), 2))


def so_algebra(m: int) -> LieAlgebra:
    """so_m with basis e_ij = x_i d_j - x_j d_i (i<j, lexicographic).

    [e_ab, e_cd] = d_bc e_ad - d_ac e_bd - d_bd e_ac + d_ad e_bc,
    which gives [e_ij, e_is] = -e_js, [e_ij, e_js] = e_is, [e_is, e_js] = -e_ij
    and zero on four distinct indices.
    """
    if m < 3:
        raise ShapeError(f"so_m needs m >= 3, got {m}")
    pairs = so_pairs(m)
    position = {p: k for k, p in enumerate(pairs)}

    def e(a, b):
        if a == b:
            return {}
        if a < b:
            return {position[(a, b)]: Fraction(1)}
        return {position[(b, a)]: Fraction(-1)}

    structure = {}
    for (p, (a, b)), (q, (c, d)) in itertools.combinations(enumerate(pairs), 2):
        out: dict = {}
        if b == c:
            vec_axpy(out, 1, e(a, d))
        if a == c:
            vec_axpy(out, -1, e(b, d))
        if b == d:
            vec_axpy(out, -1, e(a, c))
        if a == d:
            vec_axpy(out, 1, e(b, c))
        if out:
            structure[(p, q)] = out
    labels = tuple(f"e_{i + 1}_{j + 1}" for i, j in pairs)
    return LieAlgebra(len(pairs), structure, name=f"so{m}", labels=labels)


def iso_to_so(n: int) -> Matrix:
    """Signed permutation sending the wedge whose complement is {i, j} (i<j)
    to (-1)^(i+j+n+1) e_ij, as a matrix from L(V_n) coordinates to so_{n+1}
    coordinates."""
    if n < 2:
        raise ArityError(f"n must be >= 2, got {n}")
    m = n + 1
    position = {p: k for k, p in enumerate(so_pairs(m))}
    entries = {}
    for col, w in enumerate(wedge_basis(n, m)):
        i, j = (k for k in range(m) if k not in w)
        entries[(position[(i, j)], col)] = (-1) ** ((i + 1) + (j + 1) + n + 1)
    return Matrix(len(position), len(position), entries)


def is_lie_homomorphism(source: LieAlgebra, target: LieAlgebra, phi: Matrix) -> CheckReport:
    """phi([x, y]) == [phi x, phi y] on all basis pairs."""
    if phi.shape != (target.dim, source.dim):
        raise ShapeError(f"map of shape {phi.shape} between dims {source.dim} -> {target.dim}")
    images = [phi.column(k) for k in range(source.dim)]
    checked = 0
    for x in range(source.dim):
        for y in range(source.dim):
            checked += 1
            lhs = phi.apply(source.basis_bracket(x, y))
            rhs = target.bracket_sparse(images[x], images[y])
            if lhs != rhs:
                witness = {"pair": (x + 1, y + 1), "lhs": to_dense(lhs, target.dim), "rhs": to_dense(rhs, target.dim)}
                return CheckReport("homomorphism", False, witness, checked)
    return CheckReport("homomorphism", True, None, checked)


def verify_iso_to_so(n: int) -> CheckReport:
    """Bijective homomorphism check for iso_to_so(n), inverse included."""
    L = basic_lie_algebra(vector_product_algebra(n))
    so = so_algebra(n + 1)
    phi = iso_to_so(n)
    name = f"iso so{n + 1}"
    if L.dim != so.dim or rank(phi) != so.dim:
        return CheckReport(name, False, {"reason": "not bijective"})
    forward = is_lie_homomorphism(L, so, phi)
    if not forward:
        return CheckReport(name, False, forward.witness, forward.checked)
    # signed permutation: inverse is the transpose
    if phi @ phi.T != Matrix.identity(so.dim):
        return CheckReport(name, False, {"reason": "not a signed permutation"})
    backward = is_lie_homomorphism(so, L, phi.T)
    return CheckReport(name, bool(backward), backward.witness, forward.checked + backward.checked)


def adjoint_representation_matrices(alg: NLieAlgebra) -> list[Matrix]:
    """ad{w} for each wedge basis element w of L(A), acting on A."""
    unit = [{k: Fraction(1)} for k in range(alg.dim)]
    return [
        Matrix.from_columns(alg.dim, alg.ad_columns([unit[k] for k in w]))
        for w in wedge_basis(alg.arity, alg.dim)
    ]


def expected_basic_dim(n: int) -> int:
    return comb(n + 1, n - 1)


__all__ = [
    "LieAlgebra",
    "wedge_basis",
    "basic_bracket_table",
    "basic_lie_algebra",
    "is_antisymmetric_table",
    "expected_basic_dim",
    "jacobi_check",
    "killing_form",
    "so_pairs",
    "so_algebra",
    "iso_to_so",
    "is_lie_homomorphism",
    "verify_iso_to_so",
    "adjoint_representation_matrices",
    "sort_with_sign",
]
