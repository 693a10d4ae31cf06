"""n-Lie (Filippov) algebras stored as structure constants.

Basis indices are 0-based internally; the text format and all printed
labels are 1-based (``e1 .. e_dim``).
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ArityError, ParseError, ShapeError
from .exact import Matrix, as_scalar, format_scalar, parse_scalar, to_dense, to_sparse, vec_axpy
from .reports import CheckReport


def sort_with_sign(idx: Sequence[int]) -> tuple[int, tuple | None]:
    """Sort an index tuple, returning (sign of the sorting permutation, sorted).

    A repeated index gives (0, None).
    """
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    # insertion sort counts transpositions
    for a in range(1, len(idx)):
        b = a
        while b > 0 and idx[b - 1] > idx[b]:
            idx[b - 1], idx[b] = idx[b], idx[b - 1]
            sign = -sign
            b -= 1
    return sign, tuple(idx)


def wedge_expand(factors: Sequence[dict]) -> dict[tuple, object]:
    """Expand f1 ^ f2 ^ ... (sparse vectors) into increasing basis tuples."""
    out: dict[tuple, object] = {}
    for combo in itertools.product(*(sorted(f.items()) for f in factors)):
        idx = [k for k, _ in combo]
        sign, key = sort_with_sign(idx)
        if not sign:
            continue
        coeff = Fraction(sign)
        for _, x in combo:
            coeff = coeff * x
        y = out.get(key, 0) + coeff
        if y:
            out[key] = y
        else:
            out.pop(key, None)
    return out


@dataclass(frozen=True)
class NLieAlgebra:
    arity: int
    dim: int
    structure: dict = field(compare=True)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.arity < 2:
            raise ArityError(f"arity must be >= 2, got {self.arity}")
        if self.dim < 0:
            raise ShapeError("negative dimension")
        for key, vec in self.structure.items():
            if len(key) != self.arity or list(key) != sorted(set(key)):
                raise ShapeError(f"structure key {key} is not a strictly increasing {self.arity}-tuple")
            if key and not (0 <= key[0] and key[-1] < self.dim):
                raise ShapeError(f"structure key {key} out of range")
            if any(not (0 <= k < self.dim) for k in vec) or not vec:
                raise ShapeError(f"bad structure vector for {key}")

    @classmethod
    def from_constants(cls, arity: int, dim: int, entries: Iterable[tuple[Sequence[int], object]], name=""):
        """Build from (index tuple, value) pairs in any order.

        Tuples are normalized to increasing order with the permutation sign
        absorbed; values may be dense sequences or sparse dicts.  Two entries
        that disagree after normalization are rejected.
        """
        structure: dict[tuple, dict] = {}
        seen: set[tuple] = set()
        for idx, value in entries:
            idx = tuple(idx)
            if len(idx) != arity:
                raise ArityError(f"tuple {idx} has {len(idx)} indices, expected {arity}")
            if any(not (0 <= k < dim) for k in idx):
                raise ShapeError(f"index out of range in {idx}")
            vec = dict(value) if isinstance(value, dict) else to_sparse(value)
            vec = {k: as_scalar(x) for k, x in vec.items() if x}
            if any(not (0 <= k < dim) for k in vec):
                raise ShapeError(f"coefficient vector for {idx} has wrong length")
            sign, key = sort_with_sign(idx)
            if not sign:
                if vec:
                    raise ShapeError(f"repeated index in {idx} with nonzero value")
                continue
            vec = {k: sign * x for k, x in vec.items()}
            if key in seen:
                if structure.get(key, {}) != vec:
                    raise ShapeError(f"conflicting entries for {key}")
                continue
            seen.add(key)
            if vec:
                structure[key] = vec
        return cls(arity, dim, structure, name)

    def basis_bracket(self, idx: Sequence[int]) -> dict:
        sign, key = sort_with_sign(idx)
        if not sign:
            return {}
        vec = self.structure.get(key)
        if not vec:
            return {}
        if sign == 1:
            return dict(vec)
        return {k: -x for k, x in vec.items()}

    def bracket_sparse(self, args: Sequence[dict]) -> dict:
        if len(args) != self.arity:
            raise ArityError(f"expected {self.arity} arguments, got {len(args)}")
        out: dict = {}
        for key, coeff in wedge_expand(args).items():
            vec = self.structure.get(key)
            if vec:
                vec_axpy(out, coeff, vec)
        return out

    def ad_columns(self, args: Sequence[dict]) -> list[dict]:
        """Columns of b -> [args..., b] on the basis."""
        if len(args) != self.arity - 1:
            raise ArityError(f"expected {self.arity - 1} arguments, got {len(args)}")
        return [self.bracket_sparse(list(args) + [{b: Fraction(1)}]) for b in range(self.dim)]

    def basis_labels(self) -> list[str]:
        return [f"e{k + 1}" for k in range(self.dim)]


def basis_vector(dim: int, k: int) -> tuple:
    return tuple(Fraction(int(i == k)) for i in range(dim))


def vector_product_algebra(n: int) -> NLieAlgebra:
    """V_n: [e1..^ei..e_{n+1}] = (-1)^i e_i on the (n+1)-dimensional space."""
    if n < 2:
        raise ArityError(f"vector product algebra needs n >= 2, got {n}")
    structure = {}
    for i in range(1, n + 2):
        key = tuple(k for k in range(n + 1) if k != i - 1)
        structure[key] = {i - 1: Fraction((-1) ** i)}
    return NLieAlgebra(n, n + 1, structure, name=f"V{n}")


def zero_algebra(arity: int, dim: int) -> NLieAlgebra:
    return NLieAlgebra(arity, dim, {}, name=f"zero({arity},{dim})")


def _check_element(alg: NLieAlgebra, x: Sequence) -> dict:
    if len(x) != alg.dim:
        raise ShapeError(f"element of length {len(x)} in a {alg.dim}-dimensional algebra")
    return to_sparse(x)


def bracket(alg: NLieAlgebra, args: Sequence[Sequence]) -> tuple:
    if len(args) != alg.arity:
        raise ArityError(f"expected {alg.arity} arguments, got {len(args)}")
    return to_dense(alg.bracket_sparse([_check_element(alg, a) for a in args]), alg.dim)


def adjoint_map(alg: NLieAlgebra, args: Sequence[Sequence]) -> Matrix:
    """Matrix of ad{a1..a_{n-1}}: b -> [a1, .., a_{n-1}, b]."""
    if len(args) != alg.arity - 1:
        raise ArityError(f"expected {alg.arity - 1} arguments, got {len(args)}")
    cols = alg.ad_columns([_check_element(alg, a) for a in args])
    return Matrix.from_columns(alg.dim, cols)


def _derivation_defect(alg: NLieAlgebra, dcols: Sequence[dict], idx: tuple) -> tuple[dict, dict]:
    """(D[b1..bn], sum_p [b1..D b_p..bn]) for a basis tuple."""
    lhs: dict = {}
    for k, x in alg.basis_bracket(idx).items():
        vec_axpy(lhs, x, dcols[k])
    rhs: dict = {}
    for p, b in enumerate(idx):
        for c, x in dcols[b].items():
            vec_axpy(rhs, x, alg.basis_bracket(idx[:p] + (c,) + idx[p + 1:]))
    return lhs, rhs


def is_derivation(alg: NLieAlgebra, D: Matrix) -> bool:
    if D.shape != (alg.dim, alg.dim):
        raise ShapeError(f"derivation must be {alg.dim}x{alg.dim}, got {D.shape}")
    dcols = [D.column(c) for c in range(alg.dim)]
    for idx in itertools.combinations(range(alg.dim), alg.arity):
        lhs, rhs = _derivation_defect(alg, dcols, idx)
        if lhs != rhs:
            return False
    return True


def is_filippov(alg: NLieAlgebra) -> CheckReport:
    """Exhaustively check the Leibniz rule

        [a1..a_{n-1}, [b1..bn]] = sum_p [b1.., [a1..a_{n-1}, b_p], ..bn].

    Both sides are multilinear and separately antisymmetric in the a's and
    the b's, so increasing basis tuples a1<..<a_{n-1}, b1<..<bn suffice.
    Tuples are further pruned without loss: if ad{a} is zero both sides
    vanish, and for a fixed ad{a} a b-tuple can only give a nonzero side if
    it is a stored tuple or differs from one in a single slot through ad{a}.
    The reported witness is the lexicographically first violation.
    """
    n, dim = alg.arity, alg.dim
    support = sorted(alg.structure)
    firsts = sorted({sub for key in support for sub in itertools.combinations(key, n - 1)})
    checked = 0
    for first in firsts:
        dcols = [alg.basis_bracket(first + (b,)) for b in range(dim)]
        preimage = defaultdict(list)
        for c, col in enumerate(dcols):
            for k in col:
                preimage[k].append(c)
        candidates = set(support)
        for key in support:
            for p, k in enumerate(key):
                for c in preimage.get(k, ()):
                    sign, srt = sort_with_sign(key[:p] + (c,) + key[p + 1:])
                    if sign:
                        candidates.add(srt)
        for second in sorted(candidates):
            checked += 1
            lhs, rhs = _derivation_defect(alg, dcols, second)
            if lhs != rhs:
                witness = {
                    "first": tuple(k + 1 for k in first),
                    "second": tuple(k + 1 for k in second),
                    "lhs": to_dense(lhs, dim),
                    "rhs": to_dense(rhs, dim),
                }
                return CheckReport("filippov", False, witness, checked)
    return CheckReport("filippov", True, None, checked)


def leibniz_sides(alg: NLieAlgebra, first: Sequence[int], second: Sequence[int], form: str = "derivation"):
    """Both sides of the Leibniz rule on basis indices, in one of its written forms.

    ``derivation``: sum_i [b1.., [a, b_i], ..bn]
    ``front``:      sum_i (-1)^(n+i) [[a, b_i], b1..^b_i..bn]  (i counted from n)
    ``front_intro``: the same with sign (-1)^i
    """
    n = alg.arity
    a = [{k: Fraction(1)} for k in first]
    b = [{k: Fraction(1)} for k in second]
    lhs = alg.bracket_sparse(a + [alg.bracket_sparse(b)])
    rhs: dict = {}
    for p in range(n):
        inner = alg.bracket_sparse(a + [b[p]])
        if form == "derivation":
            term = alg.bracket_sparse(b[:p] + [inner] + b[p + 1:])
            sign = 1
        else:
            term = alg.bracket_sparse([inner] + b[:p] + b[p + 1:])
            i = n + p
            sign = (-1) ** (n + i) if form == "front" else (-1) ** i
        vec_axpy(rhs, sign, term)
    return lhs, rhs


def semidirect_sum(alg: NLieAlgebra, rep) -> NLieAlgebra:
    """A + M with M abelian, from a representation of the basic Lie algebra.

    ``rep.matrices[w]`` is the action of the w-th wedge basis element
    (lexicographic (n-1)-tuples).  With M indices placed after A's, the only
    new increasing tuples are (a1<..<a_{n-1}, m), whose bracket is
    rep(a1^..^a_{n-1}) m; tuples with two or more M slots are zero.
    """
    n, d = alg.arity, alg.dim
    wedges = list(itertools.combinations(range(d), n - 1))
    if len(rep.matrices) != len(wedges):
        raise ShapeError(
            f"representation has {len(rep.matrices)} matrices, basic algebra has dimension {len(wedges)}"
        )
    dim_m = rep.dim
    structure = {k: dict(v) for k, v in alg.structure.items()}
    for w, mat in zip(wedges, rep.matrices):
        if mat.shape != (dim_m, dim_m):
            raise ShapeError(f"module matrix of shape {mat.shape}, expected {dim_m}x{dim_m}")
        for c in range(dim_m):
            col = mat.column(c)
            if col:
                structure[w + (d + c,)] = {d + r: x for r, x in col.items()}
    return NLieAlgebra(n, d + dim_m, structure, name=f"{alg.name}+M{dim_m}")


# ---------------------------------------------------------------- text format


def dumps(alg: NLieAlgebra) -> str:
    lines = [f"nlie {alg.arity} {alg.dim}"]
    for key in sorted(alg.structure):
        vec = alg.structure[key]
        coeffs = " ".join(format_scalar(vec.get(k, Fraction(0))) for k in range(alg.dim))
        lines.append(" ".join(str(k + 1) for k in key) + " -> " + coeffs)
    return "\n".join(lines) + "\n"


def loads(text: str) -> NLieAlgebra:
    header = None
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        col0 = len(line) - len(line.lstrip()) + 1
        if header is None:
            parts = line.split()
            if len(parts) != 3 or parts[0] != "nlie":
                raise ParseError("expected header 'nlie <arity> <dim>'", lineno, col0)
            try:
                arity, dim = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("arity and dimension must be integers", lineno, col0) from None
            if arity < 2:
                raise ParseError(f"invalid arity {arity}", lineno, col0)
            if dim < 0:
                raise ParseError(f"invalid dimension {dim}", lineno, col0)
            header = (arity, dim)
            continue
        arity, dim = header
        if "->" not in line:
            raise ParseError("expected 'i1 .. in -> c1 .. cdim'", lineno, col0)
        lhs, rhs = line.split("->", 1)
        idx_tokens = lhs.split()
        coeff_tokens = rhs.split()
        if len(idx_tokens) != arity:
            raise ParseError(f"expected {arity} indices, got {len(idx_tokens)}", lineno, col0)
        if len(coeff_tokens) != dim:
            col = line.index("->") + 3
            raise ParseError(f"expected {dim} coefficients, got {len(coeff_tokens)}", lineno, col)
        idx = []
        for tok in idx_tokens:
            col = line.index(tok) + 1
            if not tok.isdigit() or not (1 <= int(tok) <= dim):
                raise ParseError(f"bad basis index {tok!r}", lineno, col)
            idx.append(int(tok) - 1)
        coeffs = []
        search_from = line.index("->") + 2
        for tok in coeff_tokens:
            col = line.index(tok, search_from) + 1
            search_from = col - 1 + len(tok)
            try:
                coeffs.append(parse_scalar(tok))
            except ParseError as exc:
                raise ParseError(str(exc), lineno, col) from None
        entries.append((lineno, tuple(idx), coeffs))
    if header is None:
        raise ParseError("empty input: missing 'nlie <arity> <dim>' header", 1, 1)
    arity, dim = header
    try:
        return NLieAlgebra.from_constants(arity, dim, [(i, c) for _, i, c in entries])
    except (ShapeError, ArityError) as exc:
        raise ParseError(str(exc)) from None


def read(path) -> NLieAlgebra:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write(alg: NLieAlgebra, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(alg))
