"""Formal paths in a quiver and rational linear combinations of them.

Composition convention: the word ``a b`` means *a followed by b*.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import StructuralError

Num = Union[int, Fraction]


@dataclass(frozen=True, order=True)
class PathWord:
    """A path given by its arrow names; empty ``arrows`` is the trivial path e_source."""

    arrows: tuple[str, ...]
    source: str
    target: str

    def __post_init__(self) -> None:
        if not self.arrows and self.source != self.target:
            raise StructuralError("a trivial path must start and end at the same vertex")

    @classmethod
    def trivial(cls, vertex: str) -> "PathWord":
        return cls((), vertex, vertex)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def __len__(self) -> int:
        return len(self.arrows)

    def __mul__(self, other: "PathWord") -> "PathWord":
        if self.target != other.source:
            raise StructuralError(
                f"cannot compose path ending at {self.target} with path starting at {other.source}"
            )
        return PathWord(self.arrows + other.arrows, self.source, other.target)

    def sort_key(self) -> tuple:
        return (len(self.arrows), self.arrows)

    def __str__(self) -> str:
        return " ".join(self.arrows) if self.arrows else f"e_{self.source}"


class PathSum:
    """Immutable finite sum  sum_i c_i * p_i  of parallel paths."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[PathWord, Num] | Iterable[tuple[PathWord, Num]] = ()) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[PathWord, Fraction] = {}
        for p, c in items:
            acc[p] = acc.get(p, Fraction(0)) + Fraction(c)
        self.terms = {p: c for p, c in acc.items() if c}
        ends = {(p.source, p.target) for p in self.terms}
        if len(ends) > 1:
            raise StructuralError(f"paths in a sum are not parallel: {sorted(ends)}")

    @classmethod
    def of(cls, path: PathWord, coeff: Num = 1) -> "PathSum":
        return cls({path: coeff})

    @property
    def endpoints(self) -> tuple[str, str] | None:
        for p in self.terms:
            return (p.source, p.target)
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "PathSum") -> "PathSum":
        return PathSum(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "PathSum":
        return PathSum({p: -c for p, c in self.terms.items()})

    def __sub__(self, other: "PathSum") -> "PathSum":
        return self + (-other)

    def scale(self, c: Num) -> "PathSum":
        return PathSum({p: v * c for p, v in self.terms.items()})

    def __rmul__(self, c: Num) -> "PathSum":
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, PathWord):
            other = PathSum.of(other)
        out: list[tuple[PathWord, Fraction]] = []
        for p, c in self.terms.items():
            for r, d in other.terms.items():
                out.append((p * r, c * d))
        return PathSum(out)

    def sorted_terms(self) -> list[tuple[PathWord, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def canonical(self) -> "PathSum":
        """Overall sign fixed so that the first term in canonical order is positive."""
        st = self.sorted_terms()
        if st and st[0][1] < 0:
            return -self
        return self

    def max_length(self) -> int:
        return max((len(p) for p in self.terms), default=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PathSum):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for i, (p, c) in enumerate(self.sorted_terms()):
            mag = -c if c < 0 else c
            coeff = "" if mag == 1 else (f"{mag} " if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator} ")
            body = coeff + str(p)
            if i == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"PathSum({self})"
