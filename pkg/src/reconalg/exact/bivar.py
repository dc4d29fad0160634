"""Sparse polynomials in x and y with exact coefficients.

Coefficients are Python ints, :class:`fractions.Fraction` or
:class:`~reconalg.exact.cyclotomic.Cyclotomic`.  Integral fractions are
stored as ints so that integer-only products can be routed to the int64
kernels in :mod:`reconalg.exact.kernels`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

import numpy as np

from . import kernels
from .cyclotomic import Cyclotomic

Coeff = Union[int, Fraction, Cyclotomic]
Exp = tuple[int, int]

# Products with fewer term pairs than this stay in pure Python; converting
# to arrays costs more than it saves on tiny inputs.
KERNEL_MIN_PAIRS = 400


def _norm(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _is_zero(c: Coeff) -> bool:
    if isinstance(c, Cyclotomic):
        return c.is_zero()
    return c == 0


class BivarPoly:
    """Immutable sparse polynomial sum c_(a,b) x^a y^b."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Exp, Coeff] | Iterable[tuple[Exp, Coeff]] = ()) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exp, Coeff] = {}
        for (a, b), c in items:
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in x^{a}*y^{b}")
            if (a, b) in clean:
                c = clean[(a, b)] + c
            clean[(a, b)] = c
        self.terms: dict[Exp, Coeff] = {
            k: _norm(c) for k, c in clean.items() if not _is_zero(c)
        }
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exp, Coeff]) -> "BivarPoly":
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls) -> "BivarPoly":
        return cls._raw({})

    @classmethod
    def const(cls, c: Coeff) -> "BivarPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, a: int, b: int, c: Coeff = 1) -> "BivarPoly":
        return cls({(a, b): c})

    @classmethod
    def x(cls) -> "BivarPoly":
        return cls._raw({(1, 0): 1})

    @classmethod
    def y(cls) -> "BivarPoly":
        return cls._raw({(0, 1): 1})

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "BivarPoly":
        if isinstance(other, BivarPoly):
            return other
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return BivarPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for k, c in o.terms.items():
            if k in out:
                s = _norm(out[k] + c)
                if _is_zero(s):
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = c
        return BivarPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "BivarPoly":
        return BivarPoly._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Coeff) -> "BivarPoly":
        if _is_zero(c):
            return BivarPoly.zero()
        return BivarPoly._raw({k: _norm(v * c) for k, v in self.terms.items()})

    def shift(self, a: int, b: int) -> "BivarPoly":
        """Multiply by the monomial x^a y^b."""
        return BivarPoly._raw({(p + a, r + b): c for (p, r), c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self.scale(other)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.terms or not o.terms:
            return BivarPoly.zero()
        if len(o.terms) == 1:
            ((a, b), c), = o.terms.items()
            return self.shift(a, b) if c == 1 else self.shift(a, b).scale(c)
        if len(self.terms) == 1:
            ((a, b), c), = self.terms.items()
            return o.shift(a, b) if c == 1 else o.shift(a, b).scale(c)
        if len(self.terms) * len(o.terms) >= KERNEL_MIN_PAIRS:
            fast = _kernel_mul(self.terms, o.terms)
            if fast is not None:
                return fast
        return BivarPoly._raw(_dict_mul(self.terms, o.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BivarPoly":
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = BivarPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        return max((a + b for a, b in self.terms), default=-1)

    def coeff(self, a: int, b: int) -> Coeff:
        return self.terms.get((a, b), 0)

    def sorted_terms(self) -> list[tuple[Exp, Coeff]]:
        """Terms in degree-lex order: higher total degree first, then higher x-power."""
        return sorted(self.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = BivarPoly.const(other)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def evaluate(self, x: Coeff, y: Coeff) -> Coeff:
        total: Coeff = 0
        for (a, b), c in self.terms.items():
            total = total + c * (x**a) * (y**b)
        return _norm(total)

    def map_coeffs(self, fn) -> "BivarPoly":
        return BivarPoly({k: fn(c) for k, c in self.terms.items()})

    def substitute_monomial(self, u: Coeff, v: Coeff, swap: bool) -> "BivarPoly":
        """Apply x -> u*x, y -> v*y (or x -> u*y, y -> v*x when ``swap``)."""
        out: dict[Exp, Coeff] = {}
        for (a, b), c in self.terms.items():
            key = (b, a) if swap else (a, b)
            out[key] = c * (u**a) * (v**b)
        return BivarPoly(out)

    # text ---------------------------------------------------------------
    def __str__(self) -> str:
        return format_bivar(self)

    def __repr__(self) -> str:
        return f"BivarPoly({format_bivar(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "BivarPoly":
        return parse_bivar(text)


def _dict_mul(p: Mapping[Exp, Coeff], q: Mapping[Exp, Coeff]) -> dict[Exp, Coeff]:
    out: dict[Exp, Coeff] = {}
    get = out.get
    for (a1, b1), c1 in p.items():
        for (a2, b2), c2 in q.items():
            k = (a1 + a2, b1 + b2)
            out[k] = get(k, 0) + c1 * c2
    return {k: _norm(c) for k, c in out.items() if not _is_zero(c)}


def _kernel_mul(p: Mapping[Exp, Coeff], q: Mapping[Exp, Coeff]) -> BivarPoly | None:
    """Route an integer product through the int64 kernels, or return None."""
    pc = list(p.values())
    qc = list(q.values())
    if not pc or not qc:
        return BivarPoly.zero()
    if not all(type(c) is int for c in pc) or not all(type(c) is int for c in qc):
        return None
    max_p = max(abs(c) for c in pc)
    max_q = max(abs(c) for c in qc)
    if not kernels.fits_int64(max_p, max_q, min(len(pc), len(qc))):
        return None
    stride = max(b for _, b in p) + max(b for _, b in q) + 1
    akey = np.fromiter((a * stride + b for a, b in p), dtype=np.int64, count=len(pc))
    bkey = np.fromiter((a * stride + b for a, b in q), dtype=np.int64, count=len(qc))
    keys, coefs = kernels.sparse_mul(
        akey, np.asarray(pc, dtype=np.int64), bkey, np.asarray(qc, dtype=np.int64)
    )
    out = {
        (k // stride, k % stride): c
        for k, c in zip(keys.tolist(), coefs.tolist())
    }
    return BivarPoly._raw(out)


def _format_coeff(c: Coeff) -> str:
    if isinstance(c, Cyclotomic):
        return str(c)
    f = Fraction(c)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _format_mono(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("x" if a == 1 else f"x^{a}")
    if b:
        parts.append("y" if b == 1 else f"y^{b}")
    return "*".join(parts)


def format_bivar(p: BivarPoly) -> str:
    """Deterministic text: degree-lex order, coefficients as p/q."""
    if not p.terms:
        return "0"
    out = []
    for i, ((a, b), c) in enumerate(p.sorted_terms()):
        mono = _format_mono(a, b)
        negative = not isinstance(c, Cyclotomic) and c < 0
        mag = -c if negative else c
        if mono and not isinstance(mag, Cyclotomic) and mag == 1:
            body = mono
        elif mono:
            body = f"{_format_coeff(mag)}*{mono}"
        else:
            body = _format_coeff(mag)
        if i == 0:
            out.append(("-" if negative else "") + body)
        else:
            out.append((" - " if negative else " + ") + body)
    return "".join(out)


_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?((?:[xy](?:\^\d+)?\s*\*?\s*)*)"
)


def parse_bivar(text: str) -> BivarPoly:
    """Inverse of :func:`format_bivar` for rational coefficients."""
    text = text.strip()
    if text == "0":
        return BivarPoly.zero()
    terms: dict[Exp, Coeff] = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        sign, coeff, mono = m.groups()
        if coeff is None and not mono.strip():
            raise ValueError(f"empty term near {text[pos:]!r}")
        c = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        a = b = 0
        for var, exp in re.findall(r"([xy])(?:\^(\d+))?", mono):
            e = int(exp) if exp else 1
            if var == "x":
                a += e
            else:
                b += e
        terms[(a, b)] = terms.get((a, b), 0) + c
        pos = m.end()
    return BivarPoly(terms)


X = BivarPoly.x()
Y = BivarPoly.y()
ONE = BivarPoly.const(1)
ZERO = BivarPoly.zero()
