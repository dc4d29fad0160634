"""Multivariate rational Laurent polynomials over an explicit, ordered variable set."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Union

Num = Union[int, Fraction]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class MultiPoly:
    """Immutable sum of c * prod v_i^e_i.  Exponents may be negative (Laurent)."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple[int, ...], Num] = ()) -> None:
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"repeated variable names in {variables}")
        self.variables = variables
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, c in dict(terms).items():
            exps = tuple(exps)
            if len(exps) != len(variables):
                raise ValueError("exponent vector length does not match variables")
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
        self.terms = {k: v for k, v in clean.items() if v}
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls((name,), {(1,): 1})

    @classmethod
    def const(cls, c: Num, variables: Iterable[str] = ()) -> "MultiPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def zero(cls, variables: Iterable[str] = ()) -> "MultiPoly":
        return cls(tuple(variables), {})

    # alignment ----------------------------------------------------------
    def with_variables(self, variables: Iterable[str]) -> "MultiPoly":
        """Re-express over ``variables`` (must contain every used variable)."""
        variables = tuple(variables)
        idx = {v: i for i, v in enumerate(variables)}
        used = self.used_variables()
        missing = [v for v in used if v not in idx]
        if missing:
            raise ValueError(f"variables {missing} are not in the target set")
        out = {}
        for exps, c in self.terms.items():
            new = [0] * len(variables)
            for v, e in zip(self.variables, exps):
                if e:
                    new[idx[v]] = e
            out[tuple(new)] = c
        return MultiPoly(variables, out)

    def _align(self, other: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        if self.variables == other.variables:
            return self, other
        merged = self.variables + tuple(v for v in other.variables if v not in self.variables)
        return self.with_variables(merged), other.with_variables(merged)

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other, self.variables)
        return NotImplemented

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self._align(o)
        out = dict(a.terms)
        for k, c in b.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return MultiPoly(a.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.variables, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiPoly(self.variables, {k: c * other for k, c in self.terms.items()})
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self._align(o)
        out: dict[tuple[int, ...], Fraction] = {}
        for k1, c1 in a.terms.items():
            for k2, c2 in b.terms.items():
                k = tuple(x + y for x, y in zip(k1, k2))
                out[k] = out.get(k, Fraction(0)) + c1 * c2
        return MultiPoly(a.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials can be raised to negative powers")
            (exps, c), = self.terms.items()
            return MultiPoly(self.variables, {tuple(e * k for e in exps): Fraction(1) / c ** (-k)})
        result = MultiPoly.const(1, self.variables)
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

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return all(not any(k) for k in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def used_variables(self) -> tuple[str, ...]:
        return tuple(
            v for i, v in enumerate(self.variables) if any(k[i] for k in self.terms)
        )

    def trimmed(self) -> "MultiPoly":
        """Drop variables that do not occur."""
        return self.with_variables(self.used_variables())

    def degree_in(self, name: str) -> int:
        if name not in self.variables:
            return 0
        i = self.variables.index(name)
        return max((k[i] for k in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(k) for k in self.terms), default=-1)

    def is_laurent(self) -> bool:
        return any(e < 0 for k in self.terms for e in k)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Degree-lex order: higher total degree first, then lex on exponent vector."""
        return sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0])))

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        return self.sorted_terms()[0]

    def as_dict(self) -> dict[frozenset, Fraction]:
        """Variable-order independent view used for equality."""
        out = {}
        for exps, c in self.terms.items():
            key = frozenset((v, e) for v, e in zip(self.variables, exps) if e)
            out[key] = c
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.as_dict().items()))
        return self._hash

    # transformations ----------------------------------------------------
    def subs(self, mapping: Mapping[str, "MultiPoly | Num"]) -> "MultiPoly":
        """Simultaneous substitution of variables by polynomials.

        Negative exponents are allowed only where the replacement is a monomial.
        """
        if not mapping:
            return self
        mapping = {
            k: (v if isinstance(v, MultiPoly) else MultiPoly.const(v))
            for k, v in mapping.items()
        }
        keep = tuple(v for v in self.variables if v not in mapping)
        cache: dict[tuple[str, int], MultiPoly] = {}
        result = MultiPoly.zero(keep)
        for exps, c in self.terms.items():
            keep_exps = []
            term = MultiPoly.const(c, keep)
            for v, e in zip(self.variables, exps):
                if v in mapping:
                    if e:
                        key = (v, e)
                        if key not in cache:
                            cache[key] = mapping[v] ** e
                        term = term * cache[key]
                else:
                    keep_exps.append(e)
            term = term * MultiPoly(keep, {tuple(keep_exps): 1})
            result = result + term
        return result

    def min_exponents(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * len(self.variables)
        return tuple(min(k[i] for k in self.terms) for i in range(len(self.variables)))

    def monomial_shift(self, shift: Iterable[int]) -> "MultiPoly":
        shift = tuple(shift)
        return MultiPoly(
            self.variables,
            {tuple(e + s for e, s in zip(k, shift)): c for k, c in self.terms.items()},
        )

    def strip_monomial(self) -> tuple["MultiPoly", tuple[int, ...]]:
        """Divide out the largest monomial factor (Laurent-aware); return it too."""
        mins = self.min_exponents()
        return self.monomial_shift(tuple(-m for m in mins)), mins

    def primitive(self) -> "MultiPoly":
        """Scale to integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = _lcm(den, c.denominator)
        g = 0
        for c in self.terms.values():
            g = gcd(g, (c * den).numerator)
        factor = Fraction(den, g)
        if self.leading()[1] < 0:
            factor = -factor
        return self * factor

    def divide_exact(self, other: "MultiPoly") -> "MultiPoly | None":
        """Quotient if ``other`` divides ``self`` exactly (polynomial ring), else None."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        a, b = self._align(other)
        if a.is_laurent() or b.is_laurent():
            raise ValueError("exact division is defined for polynomials only")
        n = len(a.variables)

        def lex_key(k):
            return k

        lead_b = max(b.terms, key=lex_key)
        lc_b = b.terms[lead_b]
        rem = dict(a.terms)
        quot: dict[tuple[int, ...], Fraction] = {}
        while rem:
            lead_r = max(rem, key=lex_key)
            diff = tuple(lead_r[i] - lead_b[i] for i in range(n))
            if any(d < 0 for d in diff):
                return None
            c = rem[lead_r] / lc_b
            quot[diff] = quot.get(diff, Fraction(0)) + c
            for k, cb in b.terms.items():
                kk = tuple(k[i] + diff[i] for i in range(n))
                v = rem.get(kk, Fraction(0)) - c * cb
                if v:
                    rem[kk] = v
                else:
                    rem.pop(kk, None)
        return MultiPoly(a.variables, quot)

    def __str__(self) -> str:
        return format_multipoly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({format_multipoly(self)!r})"


def format_multipoly(p: MultiPoly) -> str:
    if not p.terms:
        return "0"
    out = []
    for i, (exps, c) in enumerate(p.sorted_terms()):
        factors = []
        for v, e in zip(p.variables, exps):
            if e == 1:
                factors.append(v)
            elif e:
                factors.append(f"{v}^{e}")
        mono = "*".join(factors)
        mag = -c if c < 0 else c
        mag_s = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag_s}*{mono}"
        else:
            body = mag_s
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def variables(*names: str) -> tuple[MultiPoly, ...]:
    """Convenience: ``a, b = variables("a", "b")``."""
    return tuple(MultiPoly.var(n) for n in names)
