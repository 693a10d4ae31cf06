"""Exact scalars, sparse matrices and the elimination kernel.

Scalars are :class:`fractions.Fraction`. A handful of sl2 modules have no
realization over the rationals in the required dimension, so a minimal
Gaussian-rational type (a + b*i with rational a, b) is also supported; any
arithmetic result whose imaginary part vanishes collapses back to a
``Fraction``.  Nothing in the package ever touches floats.

Sparse vectors are plain ``dict[int, scalar]`` with zero entries dropped.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import ParseError, ShapeError


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _parts(x):
        if isinstance(x, GaussianRational):
            return x.re, x.im
        if isinstance(x, (int, Fraction)):
            return Fraction(x), Fraction(0)
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return gaussian(self.re + p[0], self.im + p[1])

    __radd__ = __add__

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return gaussian(self.re - p[0], self.im - p[1])

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return gaussian(p[0] - self.re, p[1] - self.im)

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a, b = p
        return gaussian(self.re * a - self.im * b, self.re * b + self.im * a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a, b = p
        norm = a * a + b * b
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        return gaussian((self.re * a + self.im * b) / norm, (self.im * a - self.re * b) / norm)

    def __rtruediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return GaussianRational(*p) / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return self.re == p[0] and self.im == p[1]

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self):
        return gaussian(self.re, -self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, GaussianRational]

I = GaussianRational(0, 1)


def gaussian(re, im=0) -> Scalar:
    """Build a + b*i, collapsing to ``Fraction`` when b == 0."""
    if im == 0:
        return Fraction(re)
    return GaussianRational(re, im)


def as_scalar(x) -> Scalar:
    if isinstance(x, (Fraction, GaussianRational)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"not an exact scalar: {x!r} ({type(x).__name__})")


def format_scalar(x) -> str:
    """Render as ``p/q`` (or ``p/q+r/si`` for Gaussian values)."""
    if isinstance(x, GaussianRational):
        im = x.im
        sign = "-" if im < 0 else "+"
        return f"{_fmt_q(x.re)}{sign}{_fmt_q(abs(im))}i"
    return _fmt_q(Fraction(x))


def _fmt_q(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


_Q = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(rf"^({_Q})(?:([+-])(\d+(?:/\d+)?)i)?$")


def parse_scalar(text: str) -> Scalar:
    m = _SCALAR_RE.match(text.strip())
    if not m:
        raise ParseError(f"malformed rational {text!r}")
    try:
        re_part = Fraction(m.group(1))
        if m.group(2) is None:
            return re_part
        im_part = Fraction(m.group(3))
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}") from None
    if m.group(2) == "-":
        im_part = -im_part
    return gaussian(re_part, im_part)


# ---------------------------------------------------------------- sparse vectors


def vec_axpy(acc: dict, coeff, v: dict) -> dict:
    """acc += coeff * v, in place; returns acc."""
    if not coeff:
        return acc
    for k, x in v.items():
        y = acc.get(k, 0) + coeff * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def vec_sub(a: dict, b: dict) -> dict:
    return vec_axpy(dict(a), -1, b)


def vec_scale(coeff, v: dict) -> dict:
    if not coeff:
        return {}
    return {k: coeff * x for k, x in v.items()}


def to_dense(v: dict, length: int) -> tuple:
    zero = Fraction(0)
    return tuple(v.get(k, zero) for k in range(length))


def to_sparse(v: Sequence) -> dict:
    return {k: as_scalar(x) for k, x in enumerate(v) if x}


# ---------------------------------------------------------------- matrices


class Matrix:
    """Immutable sparse matrix; unset entries are zero."""

    __slots__ = ("rows", "cols", "_data", "_columns")

    def __init__(self, rows: int, cols: int, entries: dict | None = None):
        if rows < 0 or cols < 0:
            raise ShapeError("negative matrix size")
        self.rows = rows
        self.cols = cols
        data: dict[int, dict[int, Scalar]] = {}
        for (r, c), x in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise ShapeError(f"entry ({r}, {c}) outside {rows}x{cols}")
            x = as_scalar(x)
            if x:
                data.setdefault(r, {})[c] = x
        self._data = data
        self._columns = None

    @classmethod
    def _from_rowdicts(cls, rows, cols, data):
        m = cls.__new__(cls)
        m.rows, m.cols = rows, cols
        m._data = {r: d for r, d in data.items() if d}
        m._columns = None
        return m

    @classmethod
    def from_lists(cls, lists: Sequence[Sequence]) -> "Matrix":
        rows = len(lists)
        cols = len(lists[0]) if rows else 0
        entries = {}
        for r, row in enumerate(lists):
            if len(row) != cols:
                raise ShapeError("ragged row list")
            for c, x in enumerate(row):
                if x:
                    entries[(r, c)] = x
        return cls(rows, cols, entries)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[dict]) -> "Matrix":
        data: dict[int, dict] = {}
        for c, col in enumerate(columns):
            for r, x in col.items():
                if x:
                    data.setdefault(r, {})[c] = x
        return cls._from_rowdicts(rows, len(columns), data)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._from_rowdicts(n, n, {i: {i: Fraction(1)} for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        return cls._from_rowdicts(rows, rows if cols is None else cols, {})

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, rc):
        r, c = rc
        return self._data.get(r, {}).get(c, Fraction(0))

    def row(self, r: int) -> dict:
        return dict(self._data.get(r, {}))

    def column(self, c: int) -> dict:
        return dict(self._column_dicts()[c])

    def _column_dicts(self):
        if self._columns is None:
            cols: list[dict] = [{} for _ in range(self.cols)]
            for r, d in self._data.items():
                for c, x in d.items():
                    cols[c][r] = x
            self._columns = cols
        return self._columns

    def nonzero_entries(self):
        for r in sorted(self._data):
            d = self._data[r]
            for c in sorted(d):
                yield r, c, d[c]

    def nnz(self) -> int:
        return sum(len(d) for d in self._data.values())

    def apply(self, v: dict) -> dict:
        """Matrix times sparse column vector."""
        out: dict = {}
        cols = self._column_dicts()
        for c, x in v.items():
            vec_axpy(out, x, cols[c])
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        data = {}
        odata = other._data
        for r, d in self._data.items():
            acc: dict = {}
            for k, x in d.items():
                orow = odata.get(k)
                if orow:
                    vec_axpy(acc, x, orow)
            if acc:
                data[r] = acc
        return Matrix._from_rowdicts(self.rows, other.cols, data)

    def _combine(self, other: "Matrix", coeff) -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        data = {r: dict(d) for r, d in self._data.items()}
        for r, d in other._data.items():
            acc = data.setdefault(r, {})
            vec_axpy(acc, coeff, d)
        return Matrix._from_rowdicts(self.rows, self.cols, data)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, coeff) -> "Matrix":
        coeff = as_scalar(coeff)
        return Matrix._from_rowdicts(
            self.rows, self.cols, {r: vec_scale(coeff, d) for r, d in self._data.items()}
        )

    def __mul__(self, coeff):
        if isinstance(coeff, Matrix):
            return NotImplemented
        return self.scale(coeff)

    __rmul__ = __mul__

    @property
    def T(self) -> "Matrix":
        return Matrix.from_columns(self.cols, [dict(d) for d in self._row_list()])

    def _row_list(self):
        return [self._data.get(r, {}) for r in range(self.rows)]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.nonzero_entries())))

    def is_zero(self) -> bool:
        return not self._data

    def trace(self):
        return sum((self[i, i] for i in range(min(self.rows, self.cols))), Fraction(0))

    def scalar_value(self):
        """Return c if the matrix equals c * identity, else None."""
        if self.rows != self.cols:
            return None
        if self.rows == 0:
            return Fraction(0)
        c = self[0, 0]
        for r in range(self.rows):
            d = self._data.get(r, {})
            expected = {r: c} if c else {}
            if d != expected:
                return None
        return c

    def to_lists(self) -> list[list]:
        return [list(to_dense(self._data.get(r, {}), self.cols)) for r in range(self.rows)]

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, nnz={self.nnz()})"


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


def kron(a: Matrix, b: Matrix) -> Matrix:
    entries = {}
    for r1, c1, x in a.nonzero_entries():
        for r2, c2, y in b.nonzero_entries():
            entries[(r1 * b.rows + r2, c1 * b.cols + c2)] = x * y
    return Matrix(a.rows * b.rows, a.cols * b.cols, entries)


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    entries = {(r, c): x for r, c, x in a.nonzero_entries()}
    for r, c, x in b.nonzero_entries():
        entries[(a.rows + r, a.cols + c)] = x
    return Matrix(a.rows + b.rows, a.cols + b.cols, entries)


def linear_combination(terms: Iterable[tuple[object, Matrix]], rows: int, cols: int) -> Matrix:
    data: dict[int, dict] = {}
    for coeff, m in terms:
        if not coeff:
            continue
        for r, d in m._data.items():
            vec_axpy(data.setdefault(r, {}), coeff, d)
    return Matrix._from_rowdicts(rows, cols, data)


# ---------------------------------------------------------------- elimination


class EchelonBasis:
    """Incrementally maintained reduced row echelon basis of a subspace.

    Every stored row has a leading 1 in its pivot column and zeros in all
    other pivot columns, so reduction of a vector is order-independent.
    """

    def __init__(self, length: int):
        self.length = length
        self._rows: dict[int, dict] = {}

    def __len__(self):
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def reduce(self, v: dict) -> dict:
        out = dict(v)
        for p, row in self._rows.items():
            c = out.get(p)
            if c:
                vec_axpy(out, -c, row)
        return out

    def add(self, v: dict) -> bool:
        """Insert v; return True if it enlarged the span."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        r = vec_scale(1 / r[p], r)
        for q, row in self._rows.items():
            c = row.get(p)
            if c:
                vec_axpy(row, -c, r)
        self._rows[p] = r
        return True

    def __contains__(self, v: dict) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: dict) -> dict:
        """Coordinates of v against :meth:`rows`; raises if v is not in the span."""
        if self.reduce(v):
            raise ValueError("vector is not in the span")
        return {k: v[p] for k, p in enumerate(self.pivots) if v.get(p)}

    def rows(self) -> list[dict]:
        return [dict(self._rows[p]) for p in self.pivots]


def _check_vectors(vs: Sequence[Sequence]) -> int:
    lengths = {len(v) for v in vs}
    if len(lengths) > 1:
        raise ShapeError(f"vectors of different lengths: {sorted(lengths)}")
    return lengths.pop() if lengths else 0


def rank(m: Matrix) -> int:
    basis = EchelonBasis(m.cols)
    for r in range(m.rows):
        row = m._data.get(r)
        if row:
            basis.add(row)
    return len(basis)


def rref(m: Matrix) -> tuple[list[dict], list[int]]:
    basis = EchelonBasis(m.cols)
    for r in range(m.rows):
        row = m._data.get(r)
        if row:
            basis.add(row)
    return basis.rows(), basis.pivots


def kernel_basis(m: Matrix) -> list[tuple]:
    """Basis of {v : m v = 0}; one vector per free column, 1 at that column."""
    rows, pivots = rref(m)
    pivot_set = set(pivots)
    out = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = {f: Fraction(1)}
        for p, row in zip(pivots, rows):
            c = row.get(f)
            if c:
                v[p] = -c
        out.append(to_dense(v, m.cols))
    return out


def span_dimension(vs: Sequence[Sequence]) -> int:
    length = _check_vectors(vs)
    basis = EchelonBasis(length)
    for v in vs:
        basis.add(to_sparse(v))
    return len(basis)
