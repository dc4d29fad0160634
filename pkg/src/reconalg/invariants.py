"""The group D(n, q) over a cyclotomic field and invariance of its generating polynomials.

Every entry is a power of one primitive M-th root of unity zeta, so a
monomial matrix is stored as (shape, exponent, exponent) with exponents
taken mod M.  The action on polynomials is substitution,
``act(g, p)(x, y) = p(g . (x, y)^T)``, which is a right action:
``act(g h, p) = act(h, act(g, p))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .contfrac import GroupParams
from .errors import StructuralError
from .exact import BivarPoly, Cyclotomic
from .exact.cyclotomic import lcm
from .matrep import InvariantPolys
from .report import CheckReport
from .series import SeriesTable


class Shape(str, Enum):
    DIAGONAL = "diag"
    ANTIDIAGONAL = "anti"


@dataclass(frozen=True, order=True)
class GroupElement:
    shape: Shape
    u: int
    v: int
    order: int

    @classmethod
    def diag(cls, order: int, u: int, v: int) -> "GroupElement":
        return cls(Shape.DIAGONAL, u % order, v % order, order)

    @classmethod
    def anti(cls, order: int, u: int, v: int) -> "GroupElement":
        return cls(Shape.ANTIDIAGONAL, u % order, v % order, order)

    @classmethod
    def identity(cls, order: int) -> "GroupElement":
        return cls.diag(order, 0, 0)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if self.order != other.order:
            raise StructuralError(f"cyclotomic order mismatch: {self.order} vs {other.order}")
        M, a, b, c, d = self.order, self.u, self.v, other.u, other.v
        if self.shape is Shape.DIAGONAL:
            make = GroupElement.diag if other.shape is Shape.DIAGONAL else GroupElement.anti
            return make(M, a + c, b + d)
        if other.shape is Shape.DIAGONAL:
            return GroupElement.anti(M, a + d, b + c)
        return GroupElement.diag(M, a + d, b + c)

    def entries(self) -> tuple[Cyclotomic, Cyclotomic]:
        return Cyclotomic.zeta(self.order, self.u), Cyclotomic.zeta(self.order, self.v)

    def matrix(self) -> list[list[Cyclotomic]]:
        u, v = self.entries()
        z = Cyclotomic.zero(self.order)
        if self.shape is Shape.DIAGONAL:
            return [[u, z], [z, v]]
        return [[z, u], [v, z]]

    def __str__(self) -> str:
        return f"{self.shape.value}(z^{self.u}, z^{self.v}) [z^{self.order}=1]"


@dataclass(frozen=True)
class GroupPresentation:
    n: int
    q: int
    order: int
    generators: dict[str, GroupElement]

    @property
    def expected_size(self) -> int:
        return 4 * (self.n - self.q) * self.q


def ambient_order(n: int, q: int) -> int:
    m = n - q
    return lcm(2 * q, 4, 2 * m) if m % 2 else lcm(2 * q, 4 * m, 4)


def group_presentation(params: GroupParams) -> GroupPresentation:
    n, q, m = params.n, params.q, params.m
    M = ambient_order(n, q)

    def eps(k: int) -> int:
        return M // k

    gens = {f"psi_{2 * q}": GroupElement.diag(M, eps(2 * q), -eps(2 * q))}
    tau = GroupElement.anti(M, eps(4), eps(4))
    if m % 2:
        gens["tau"] = tau
        gens[f"phi_{2 * m}"] = GroupElement.diag(M, eps(2 * m), eps(2 * m))
    else:
        gens[f"tau*phi_{4 * m}"] = tau * GroupElement.diag(M, eps(4 * m), eps(4 * m))
    return GroupPresentation(n, q, M, gens)


def enumerate_group(pres: GroupPresentation) -> set[GroupElement]:
    """Closure of the generators under multiplication."""
    limit = 2 * pres.expected_size
    seen = {GroupElement.identity(pres.order)}
    frontier = list(seen)
    gens = list(pres.generators.values())
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = g * h
                if gh not in seen:
                    seen.add(gh)
                    nxt.append(gh)
        if len(seen) > limit:
            raise StructuralError(f"group closure exceeded {limit} elements")
        frontier = nxt
    return seen


def act(g: GroupElement, p: BivarPoly) -> BivarPoly:
    """p(g . (x, y)^T): diagonal (u, v) sends x -> u x, y -> v y; antidiagonal sends x -> u y, y -> v x."""
    M = g.order
    swap = g.shape is Shape.ANTIDIAGONAL
    out = {}
    for (a, b), c in p.terms.items():
        key = (b, a) if swap else (a, b)
        out[key] = Cyclotomic.zeta(M, a * g.u + b * g.v) * c
    return BivarPoly(out)


def is_invariant(g: GroupElement, p: BivarPoly) -> bool:
    return act(g, p) == p


@dataclass(frozen=True)
class GeneratingInvariants:
    """w1^{2m} plus the families w1^{r_t} w2^{c_t} w3^{d_t} and w1^{r_t} v2^{c_t} v3^{d_t}, 2 <= t <= e."""

    base: BivarPoly
    w_family: dict[int, BivarPoly]
    v_family: dict[int, BivarPoly]


def generating_invariants(params: GroupParams, table: SeriesTable) -> GeneratingInvariants:
    inv = InvariantPolys.build(params.q, params.dual.a(2))
    xy = inv.w1
    wf, vf = {}, {}
    for t in range(2, params.e + 1):
        r, c, d = table.r[t], table.c[t], table.d[t]
        wf[t] = xy**r * inv.w2**c * inv.w3**d
        vf[t] = xy**r * inv.v2**c * inv.v3**d
    return GeneratingInvariants(xy ** (2 * params.m), wf, vf)


def check_generating_invariants(params: GroupParams, table: SeriesTable) -> CheckReport:
    rep = CheckReport(f"invariants D({params.n},{params.q})")
    pres = group_presentation(params)
    gi = generating_invariants(params, table)
    polys = [(f"w1^{2 * params.m}", gi.base)]
    polys += [(f"w-family t={t}", p) for t, p in gi.w_family.items()]
    polys += [(f"v-family t={t}", p) for t, p in gi.v_family.items()]
    for label, p in polys:
        for gname, g in pres.generators.items():
            rep.add(f"{label} under {gname}", is_invariant(g, p))
    return rep


def check_group_order(params: GroupParams) -> CheckReport:
    rep = CheckReport(f"group order D({params.n},{params.q})")
    pres = group_presentation(params)
    size = len(enumerate_group(pres))
    rep.add("|G| = 4(n-q)q", size == pres.expected_size, f"{size} vs {pres.expected_size}")
    return rep
