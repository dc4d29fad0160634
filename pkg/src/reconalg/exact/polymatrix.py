"""Dense matrices of :class:`BivarPoly` entries."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import ShapeError
from .bivar import BivarPoly, Coeff


def _as_poly(e) -> BivarPoly:
    return e if isinstance(e, BivarPoly) else BivarPoly.const(e)


class PolyMatrix:
    """Immutable rows x cols grid of polynomials."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[BivarPoly | Coeff]]) -> None:
        grid = tuple(tuple(_as_poly(e) for e in row) for row in entries)
        if not grid or not grid[0]:
            raise ShapeError("a PolyMatrix needs at least one row and one column")
        if any(len(r) != len(grid[0]) for r in grid):
            raise ShapeError("ragged rows")
        self.rows = len(grid)
        self.cols = len(grid[0])
        self.entries = grid

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "PolyMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def scalar(cls, p: BivarPoly | Coeff) -> "PolyMatrix":
        return cls([[p]])

    @classmethod
    def row(cls, *items) -> "PolyMatrix":
        return cls([list(items)])

    @classmethod
    def col(cls, *items) -> "PolyMatrix":
        return cls([[i] for i in items])

    @classmethod
    def diag(cls, *items) -> "PolyMatrix":
        n = len(items)
        return cls([[items[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> BivarPoly:
        i, j = ij
        return self.entries[i][j]

    def to_poly(self) -> BivarPoly:
        if self.shape != (1, 1):
            raise ShapeError(f"only 1x1 matrices convert to polynomials, got {self.shape}")
        return self.entries[0][0]

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return matrix_mul(self, other)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return PolyMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix([[-a for a in r] for r in self.entries])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def scale(self, c: Coeff | BivarPoly) -> "PolyMatrix":
        return PolyMatrix([[a * c for a in r] for r in self.entries])

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.entries for e in r)

    def max_terms(self) -> int:
        return max(len(e) for r in self.entries for e in r)

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix([[fn(e) for e in r] for r in self.entries])

    def evaluate(self, x: Coeff, y: Coeff) -> list[list[Fraction]]:
        return [[Fraction(e.evaluate(x, y)) for e in r] for r in self.entries]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(e) for e in r) for r in self.entries) + "]"

    def __repr__(self) -> str:
        return f"PolyMatrix({self})"


def matrix_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    """Exact product; raises :class:`ShapeError` naming both shapes on mismatch."""
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    out = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = BivarPoly.zero()
            for k in range(a.cols):
                l, r = a.entries[i][k], b.entries[k][j]
                if l.terms and r.terms:
                    acc = acc + l * r
            row.append(acc)
        out.append(row)
    return PolyMatrix(out)


def product(mats: Iterable[PolyMatrix]) -> PolyMatrix:
    it = iter(mats)
    acc = next(it)
    for m in it:
        acc = matrix_mul(acc, m)
    return acc
