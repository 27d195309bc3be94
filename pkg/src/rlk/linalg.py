"""Exact linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction` entries; there is no
floating point anywhere.  Matrices and subspaces are immutable.  A subspace
is stored through its reduced row-echelon basis, so two subspaces are equal
exactly when their stored bases are equal.

    >>> m = RationalMatrix.from_rows([[1, 1, 1, 0], [0, 0, 1, 1]])
    >>> rank(m)
    2
    >>> kernel(RationalMatrix.from_rows([[1, 1]])).basis
    ((Fraction(1, 1), Fraction(-1, 1)),)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
Number = Union[int, Fraction]

__all__ = [
    "DimensionMismatch",
    "Rational",
    "RationalMatrix",
    "Subspace",
    "as_vector",
    "contains",
    "image",
    "intersect",
    "kernel",
    "membership",
    "rank",
    "rref",
    "subspace_equal",
]


class DimensionMismatch(ValueError):
    """Raised when operands live in spaces of different dimension."""


def as_vector(values: Iterable[Number]) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class RationalMatrix:
    """A rows x cols matrix over Q, stored row-major.

    ``rows`` and ``cols`` are kept explicitly so that empty matrices
    (0 x n or n x 0) still carry their shape.
    """

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entries do not form a {self.rows}x{self.cols} grid")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]], cols: int | None = None) -> RationalMatrix:
        data = tuple(as_vector(r) for r in rows)
        if cols is None:
            if not data:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Number]], rows: int | None = None) -> RationalMatrix:
        cols = [as_vector(c) for c in columns]
        if rows is None:
            if not cols:
                raise ValueError("rows must be given for a matrix with no columns")
            rows = len(cols[0])
        if any(len(c) != rows for c in cols):
            raise ValueError("columns have inconsistent length")
        return cls(rows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RationalMatrix:
        zero = Fraction(0)
        return cls(rows, cols, tuple((zero,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls(n, n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, diag: Sequence[Number]) -> RationalMatrix:
        d = as_vector(diag)
        n = len(d)
        return cls(n, n, tuple(tuple(d[i] if i == j else Fraction(0) for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> RationalMatrix:
        return RationalMatrix(self.cols, self.rows, tuple(self.columns()))

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        other_cols = other.columns()
        return RationalMatrix(
            self.rows,
            other.cols,
            tuple(tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in other_cols) for r in self.entries),
        )

    def apply(self, v: Sequence[Number]) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for matrix with {self.cols} columns")
        vec = as_vector(v)
        return tuple(sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self.entries)

    def vstack(self, other: RationalMatrix) -> RationalMatrix:
        if self.cols != other.cols:
            raise DimensionMismatch("cannot stack matrices with different column counts")
        return RationalMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries) + "]"


def _rref_rows(rows: list[list[Fraction]], cols: int) -> tuple[list[list[Fraction]], list[int]]:
    """In-place Gauss-Jordan elimination; returns nonzero rows and pivot columns."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(cols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pivot_row = rows[r]
        inv = 1 / pivot_row[c]
        if inv != 1:
            pivot_row = rows[r] = [x * inv for x in pivot_row]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [a - f * b for a, b in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m: RationalMatrix) -> RationalMatrix:
    """Reduced row-echelon form of ``m`` (zero rows kept at the bottom)."""
    nonzero, _ = _rref_rows([list(r) for r in m.entries], m.cols)
    zero_row = (Fraction(0),) * m.cols
    return RationalMatrix(m.rows, m.cols, tuple(tuple(r) for r in nonzero) + (zero_row,) * (m.rows - len(nonzero)))


def rank(m: RationalMatrix) -> int:
    return len(_rref_rows([list(r) for r in m.entries], m.cols)[1])


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^n in canonical form.

    ``basis`` is the list of nonzero rows of a reduced row-echelon matrix,
    so dataclass equality is subspace equality.  Build instances with
    :meth:`span` rather than the raw constructor.
    """

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Number]], ambient_dim: int) -> Subspace:
        rows = [list(as_vector(v)) for v in vectors]
        if any(len(r) != ambient_dim for r in rows):
            raise DimensionMismatch(f"spanning vectors must have length {ambient_dim}")
        nonzero, _ = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in nonzero))

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, RationalMatrix.identity(ambient_dim).entries)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.basis)

    def basis_matrix(self) -> RationalMatrix:
        return RationalMatrix(self.dim, self.ambient_dim, self.basis)

    def annihilator(self) -> Subspace:
        """Subspace of functionals (as vectors) vanishing on ``self``."""
        return kernel(self.basis_matrix())

    def __contains__(self, v: Sequence[Number]) -> bool:
        return membership(v, self)

    def __str__(self) -> str:
        inner = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.basis)
        return f"span{{{inner}}} <= Q^{self.ambient_dim}"


def image(m: RationalMatrix) -> Subspace:
    """Column space of ``m`` as a subspace of Q^rows."""
    return Subspace.span(m.columns(), m.rows)


def kernel(m: RationalMatrix) -> Subspace:
    """Null space {x : m x = 0} as a subspace of Q^cols."""
    nonzero, pivots = _rref_rows([list(r) for r in m.entries], m.cols)
    pivot_set = set(pivots)
    vectors = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for row, p in zip(nonzero, pivots):
            v[p] = -row[free]
        vectors.append(v)
    return Subspace.span(vectors, m.cols)


def _check_same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def subspace_equal(a: Subspace, b: Subspace) -> bool:
    _check_same_ambient(a, b)
    return a.basis == b.basis


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """a ∩ b, computed as the kernel of the stacked annihilators."""
    _check_same_ambient(a, b)
    n = a.ambient_dim
    constraints = a.annihilator().basis + b.annihilator().basis
    return kernel(RationalMatrix(len(constraints), n, constraints))


def contains(big: Subspace, small: Subspace) -> bool:
    """True iff ``small`` is a subspace of ``big``."""
    _check_same_ambient(big, small)
    return all(membership(v, big) for v in small.basis)


def membership(v: Sequence[Number], s: Subspace) -> bool:
    if len(v) != s.ambient_dim:
        raise DimensionMismatch(f"vector of length {len(v)} tested against subspace of Q^{s.ambient_dim}")
    residual = list(as_vector(v))
    for row, p in zip(s.basis, s.pivots):
        f = residual[p]
        if f:
            residual = [x - f * y for x, y in zip(residual, row)]
    return not any(residual)
