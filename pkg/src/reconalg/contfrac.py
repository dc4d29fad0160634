"""Jung-Hirzebruch continued fractions and the case split for (n, q)."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd

from .errors import ParameterError

COMPANION_MESSAGE = (
    "n > 2q (nu = 0) is the companion family and is out of scope; "
    "this toolkit handles n < 2q only"
)


class CaseTag(str, Enum):
    CASE_A = "CaseA"  # 0 < nu < N-1
    CASE_B = "CaseB"  # nu = N-1
    OUT_OF_SCOPE = "OutOfScope"  # nu = 0


@dataclass(frozen=True)
class JHExpansion:
    alphas: tuple[int, ...]

    @property
    def N(self) -> int:
        return len(self.alphas)

    def alpha(self, i: int) -> int:
        """1-based access, alpha_1 .. alpha_N."""
        return self.alphas[i - 1]

    def value(self) -> Fraction:
        return evaluate(self.alphas)


@dataclass(frozen=True)
class DualExpansion:
    """n/(n-q) = [a_2, ..., a_{e-1}]."""

    values: tuple[int, ...]

    @property
    def e(self) -> int:
        return len(self.values) + 2

    def a(self, j: int) -> int:
        """Indexed from 2, matching a_2 .. a_{e-1}."""
        if not 2 <= j <= self.e - 1:
            raise IndexError(f"a_{j} is outside 2..{self.e - 1}")
        return self.values[j - 2]

    def value(self) -> Fraction:
        return evaluate(self.values)


@dataclass(frozen=True)
class GroupParams:
    n: int
    q: int
    nu: int
    case_tag: CaseTag
    jh: JHExpansion
    dual: DualExpansion

    @property
    def m(self) -> int:
        return self.n - self.q

    @property
    def N(self) -> int:
        return self.jh.N

    @property
    def e(self) -> int:
        return self.dual.e

    def require_in_scope(self) -> None:
        if self.case_tag is CaseTag.OUT_OF_SCOPE:
            raise ParameterError(f"D({self.n},{self.q}): {COMPANION_MESSAGE}")


def validate(n: int, q: int) -> None:
    if not isinstance(n, int) or not isinstance(q, int):
        raise ParameterError("n and q must be integers")
    if not 1 < q:
        raise ParameterError(f"need 1 < q, got q={q}")
    if not q < n:
        raise ParameterError(f"need q < n, got n={n}, q={q}")
    if gcd(n, q) != 1:
        raise ParameterError(f"need gcd(n, q) = 1, got gcd({n},{q}) = {gcd(n, q)}")


def expand(num: int, den: int) -> tuple[int, ...]:
    """Ceiling-division expansion of num/den > 1 (den >= 1)."""
    out = []
    while den:
        alpha = -(-num // den)
        out.append(alpha)
        num, den = den, alpha * den - num
    return tuple(out)


def evaluate(alphas) -> Fraction:
    """alpha_1 - 1/(alpha_2 - 1/(...))."""
    if not alphas:
        raise ValueError("empty continued fraction")
    value = Fraction(alphas[-1])
    for a in reversed(alphas[:-1]):
        value = a - 1 / value
    return value


def jh_expand(n: int, q: int) -> JHExpansion:
    validate(n, q)
    return JHExpansion(expand(n, q))


def dual_expand(n: int, q: int) -> DualExpansion:
    validate(n, q)
    return DualExpansion(expand(n, n - q))


def classify(n: int, q: int) -> GroupParams:
    jh = jh_expand(n, q)
    dual = dual_expand(n, q)
    lead = 0
    for a in jh.alphas:
        if a != 2:
            break
        lead += 1
    nu = min(lead, jh.N - 1)
    if nu == 0:
        tag = CaseTag.OUT_OF_SCOPE
    elif nu == jh.N - 1:
        tag = CaseTag.CASE_B
    else:
        tag = CaseTag.CASE_A
    return GroupParams(n, q, nu, tag, jh, dual)


def in_scope_pairs(max_n: int, min_n: int = 3):
    """All coprime (n, q) with n < 2q and q < n, for min_n <= n <= max_n."""
    for n in range(min_n, max_n + 1):
        for q in range(n // 2 + 1, n):
            if gcd(n, q) == 1 and n < 2 * q:
                yield n, q
