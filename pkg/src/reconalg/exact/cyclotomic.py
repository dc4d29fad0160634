"""Elements of the cyclotomic field Q(zeta_m), reduced modulo Phi_m."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

Scalar = Union[int, Fraction]


def totient(m: int) -> int:
    result, k, p = m, m, 2
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials given low-to-high, den monic."""
    num = list(num)
    dn = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    quot = [0] * (len(num) - dn)
    for k in range(len(quot) - 1, -1, -1):
        c = num[k + dn]
        quot[k] = c
        if c:
            for j, dc in enumerate(den):
                num[k + j] -= c * dc
    if any(num[:dn]):
        raise ArithmeticError("division is not exact")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_coeffs(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError(f"cyclotomic order must be positive, got {m}")
    num = [-1] + [0] * (m - 1) + [1]
    for d in _divisors(m)[:-1]:
        num = _poly_divexact(num, list(cyclotomic_coeffs(d)))
    return tuple(num)


def cyclotomic_polynomial(m: int, var: str = "x"):
    """Phi_m as a one-variable :class:`MultiPoly`."""
    from .multipoly import MultiPoly

    coeffs = cyclotomic_coeffs(m)
    return MultiPoly((var,), {(k,): c for k, c in enumerate(coeffs) if c})


_POWERS: dict[int, list[tuple[int, ...]]] = {}


def _power_basis(m: int, k: int) -> tuple[int, ...]:
    """Reduction of x^k modulo Phi_m as an integer coefficient vector."""
    phi = cyclotomic_coeffs(m)
    deg = len(phi) - 1
    k %= m
    table = _POWERS.setdefault(m, [])
    if not table:
        for j in range(deg):
            vec = [0] * deg
            vec[j] = 1
            table.append(tuple(vec))
    while len(table) <= k:
        # multiply by x: shift, then reduce x^deg = -sum phi_j x^j
        prev = table[-1]
        top = prev[-1]
        vec = [0] + list(prev[:-1])
        if top:
            for j in range(deg):
                vec[j] -= top * phi[j]
        table.append(tuple(vec))
    return table[k]


def _scalar(c):
    """Integral values stay ints so the common integer case avoids Fraction overhead."""
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class Cyclotomic:
    """Immutable element sum_j c_j zeta^j of Q(zeta_m), 0 <= j < phi(m); c_j are ints or Fractions."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs) -> None:
        deg = len(cyclotomic_coeffs(order)) - 1
        vec = [_scalar(c) for c in coeffs]
        if len(vec) > deg:
            vec = list(_reduce(order, vec))
        vec += [0] * (deg - len(vec))
        self.order = order
        self.coeffs = tuple(vec)
        self._hash = None

    @classmethod
    def _trusted(cls, order: int, coeffs: tuple) -> "Cyclotomic":
        """Skip normalization; ``coeffs`` is already a reduced vector of ints/Fractions."""
        obj = object.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, order: int) -> "Cyclotomic":
        return cls(order, ())

    @classmethod
    def one(cls, order: int) -> "Cyclotomic":
        return cls(order, (1,))

    @classmethod
    def scalar(cls, order: int, value: Scalar) -> "Cyclotomic":
        return cls(order, (value,))

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> "Cyclotomic":
        """zeta_order ** k."""
        return cls._trusted(order, _power_basis(order, k))

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                from ..errors import StructuralError

                raise StructuralError(
                    f"cyclotomic order mismatch: {self.order} vs {other.order}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.scalar(self.order, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic._trusted(self.order, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic._trusted(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic._trusted(self.order, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._trusted(self.order, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        deg = len(self.coeffs)
        prod = [0] * (2 * deg - 1 if deg else 0)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return Cyclotomic(self.order, _reduce(self.order, prod))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Cyclotomic":
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = Cyclotomic.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.rational_value() == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            if not any(self.coeffs[1:]):
                self._hash = hash(self.coeffs[0]) if self.coeffs else 0
            else:
                self._hash = hash((self.order, self.coeffs))
        return self._hash

    def rational_value(self) -> Fraction | None:
        """The rational number this element equals, or None if irrational."""
        if any(self.coeffs[1:]):
            return None
        return Fraction(self.coeffs[0]) if self.coeffs else Fraction(0)

    def __repr__(self) -> str:
        return f"Cyclotomic({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if j == 0 else ("z" if j == 1 else f"z^{j}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return "(" + " + ".join(parts) + ")" if parts else "0"


def _reduce(order: int, vec) -> tuple[Fraction, ...]:
    phi = cyclotomic_coeffs(order)
    deg = len(phi) - 1
    work = [_scalar(c) for c in vec]
    for k in range(len(work) - 1, deg - 1, -1):
        c = work[k]
        if c:
            work[k] = 0
            for j in range(deg):
                if phi[j]:
                    work[k - deg + j] -= c * phi[j]
    return tuple(work[:deg]) + (0,) * max(0, deg - len(work))


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out
