"""Dual graph, fundamental cycle and the quiver Q with its auxiliary tables.

Vertices are strings: ``"*"`` for the extended vertex, ``"+"``, ``"-"`` for
the two horns and ``"1" .. "N"`` along the chain.  Inside arrow names the
extended vertex is written ``0``, so ``g_{1,0}`` runs from vertex 1 to ``*``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from enum import Enum
from fractions import Fraction

from .contfrac import CaseTag, GroupParams
from .errors import StructuralError
from .paths import PathSum, PathWord
from .report import CheckReport
from .series import SeriesTable

STAR = "*"
HORNS = ("+", "-")


class Presentation(str, Enum):
    MODULI = "moduli"
    SYMMETRIC = "symmetric"


def _label(v: str) -> str:
    return "0" if v == STAR else v


def arrow_name(kind: str, s: str, t: str) -> str:
    return f"{kind}_{{{_label(s)},{_label(t)}}}"


# ---------------------------------------------------------------------------
# dual graph and cycles


@dataclass(frozen=True)
class DualGraph:
    vertices: tuple[str, ...]
    self_intersections: dict[str, int]
    edges: tuple[tuple[str, str], ...]

    @cached_property
    def neighbours(self) -> dict[str, tuple[str, ...]]:
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for s, t in self.edges:
            adj[s].append(t)
            adj[t].append(s)
        return {v: tuple(ns) for v, ns in adj.items()}

    def dot(self, s: str, t: str) -> int:
        if s == t:
            return self.self_intersections[s]
        return 1 if t in self.neighbours[s] else 0

    def cycle_dot(self, z: dict[str, Fraction | int], t: str):
        return z[t] * self.self_intersections[t] + sum(z[s] for s in self.neighbours[t])


def build_dual_graph(params: GroupParams) -> DualGraph:
    params.require_in_scope()
    N = params.N
    chain = tuple(str(t) for t in range(1, N + 1))
    verts = HORNS + chain
    si = {"+": -2, "-": -2}
    for t in range(1, N + 1):
        si[str(t)] = -params.jh.alpha(t)
    edges = [("+", "1"), ("-", "1")] + [(str(t), str(t + 1)) for t in range(1, N)]
    return DualGraph(verts, si, tuple(edges))


def fundamental_cycle(g: DualGraph) -> dict[str, int]:
    """Laufer's algorithm from the all-ones cycle."""
    z = {v: 1 for v in g.vertices}
    bound = 2 * len(g.vertices)
    for _ in range(bound + 1):
        bad = next((t for t in g.vertices if g.cycle_dot(z, t) > 0), None)
        if bad is None:
            return z
        z[bad] += 1
    raise StructuralError(f"Laufer's algorithm did not stop within {bound} steps")


def _solve(matrix: list[list[Fraction | int]], rhs: list[Fraction | int]) -> list[Fraction]:
    """Exact elimination with back-substitution; banded inputs stay sparse."""
    n = len(matrix)
    a = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise StructuralError("singular intersection matrix")
        a[col], a[piv] = a[piv], a[col]
        nz = [j for j in range(col, n + 1) if a[col][j]]
        for r in range(col + 1, n):
            if a[r][col]:
                f = Fraction(a[r][col]) / a[col][col]
                for j in nz:
                    a[r][j] -= f * a[col][j]
    x: list[Fraction] = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(a[i][n])
        for j in range(i + 1, n):
            if a[i][j]:
                acc -= a[i][j] * x[j]
        x[i] = acc / a[i][i]
    return x


def canonical_cycle(g: DualGraph) -> dict[str, Fraction]:
    """Rational cycle Z_K with Z_K . E_t = E_t^2 + 2 for every t."""
    vs = g.vertices
    mat = [[g.dot(s, t) for s in vs] for t in vs]
    rhs = [g.self_intersections[t] + 2 for t in vs]
    return dict(zip(vs, _solve(mat, rhs)))


def is_negative_definite(g: DualGraph) -> bool:
    """Sylvester's criterion on -M via exact leading minors."""
    vs = g.vertices
    n = len(vs)
    a = [[-g.dot(s, t) for s in vs] for t in vs]
    for k in range(n):
        if a[k][k] <= 0:
            return False
        nz = [j for j, y in enumerate(a[k]) if y]
        for r in range(k + 1, n):
            if a[r][k]:
                f = Fraction(a[r][k]) / a[k][k]
                for j in nz:
                    a[r][j] -= f * a[k][j]
    return True


# ---------------------------------------------------------------------------
# the quiver


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str
    kind: str  # f, g, an, cl, k
    index: int | None = None


@dataclass(frozen=True)
class Quiver:
    n: int
    q: int
    case_tag: CaseTag
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    ranks: dict[str, int]
    _by_name: dict[str, Arrow] = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self) -> None:
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise StructuralError("arrow names are not unique")
        self._by_name.update({a.name: a for a in self.arrows})

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise StructuralError(f"no arrow named {name} in the quiver of D({self.n},{self.q})") from None

    def has_arrow(self, name: str) -> bool:
        return name in self._by_name

    def arrows_between(self, s: str, t: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == s and a.target == t]

    def path(self, *names: str) -> PathWord:
        if not names:
            raise StructuralError("use PathWord.trivial for the empty path")
        first = self.arrow(names[0])
        word = PathWord((names[0],), first.source, first.target)
        for nm in names[1:]:
            a = self.arrow(nm)
            word = word * PathWord((nm,), a.source, a.target)
        return word

    def k_arrows(self) -> list[Arrow]:
        return [a for a in self.arrows if a.kind == "k"]


@dataclass(frozen=True)
class ExtraArrowTables:
    """CaseA bookkeeping for the k-arrows.  k_1 and k_{S+1} are aliases."""

    S: int
    k_names: dict[int, str]
    B: dict[int, int]
    u: dict[int, int]
    v: dict[int, int]
    W: dict[int, int]
    V: dict[int, int]

    def k(self, j: int) -> str:
        return self.k_names[j]

    @classmethod
    def empty(cls) -> "ExtraArrowTables":
        return cls(0, {}, {}, {}, {}, {}, {})


@dataclass(frozen=True)
class CompositePathDefs:
    """Resolved composite paths.  ``pr``/``CLr`` are keyed by presentation."""

    FF: PathSum
    GG: PathSum
    AN: dict[int, PathSum]
    pr: dict[Presentation, dict[str, PathSum]]
    CLr: dict[Presentation, dict[int, PathSum]]


def _rank2_vertices(params: GroupParams) -> range:
    top = params.nu if params.case_tag is CaseTag.CASE_A else params.N - 1
    return range(1, top + 1)


def build_quiver(
    params: GroupParams, table: SeriesTable
) -> tuple[Quiver, ExtraArrowTables, CompositePathDefs]:
    params.require_in_scope()
    if params.case_tag is CaseTag.CASE_A:
        return _build_case_a(params, table)
    return _build_case_b(params)


def _horns_and_chain(top: int) -> list[Arrow]:
    arrows = [
        Arrow(arrow_name("g", "+", "1"), "+", "1", "g"),
        Arrow(arrow_name("f", "1", "+"), "1", "+", "f"),
        Arrow(arrow_name("g", "-", "1"), "-", "1", "g"),
        Arrow(arrow_name("f", "1", "-"), "1", "-", "f"),
    ]
    for t in range(1, top):
        s, r = str(t), str(t + 1)
        arrows.append(Arrow(arrow_name("f", s, r), s, r, "f"))
        arrows.append(Arrow(arrow_name("g", r, s), r, s, "g"))
    return arrows


def _ranks(params: GroupParams) -> dict[str, int]:
    ranks = {STAR: 1, "+": 1, "-": 1}
    two = set(_rank2_vertices(params))
    for t in range(1, params.N + 1):
        ranks[str(t)] = 2 if t in two else 1
    return ranks


def _vertices(N: int) -> tuple[str, ...]:
    return (STAR,) + HORNS + tuple(str(t) for t in range(1, N + 1))


def _ps(quiver: Quiver, *names: str) -> PathSum:
    return PathSum.of(quiver.path(*names))


def _ff_gg(quiver: Quiver, top: int) -> tuple[PathSum, PathSum]:
    if top == 1:
        e1 = PathSum.of(PathWord.trivial("1"))
        return e1, e1
    ff = _ps(quiver, *(arrow_name("f", str(t), str(t + 1)) for t in range(1, top)))
    gg = _ps(quiver, *(arrow_name("g", str(t + 1), str(t)) for t in range(top - 1, 0, -1)))
    return ff, gg


def _horn_cycles(quiver: Quiver) -> dict[str, PathSum]:
    hp = _ps(quiver, "f_{1,+}", "g_{+,1}")
    hm = _ps(quiver, "f_{1,-}", "g_{-,1}")
    return {"+": hp, "-": hm, "sym": (hp + hm).scale(Fraction(1, 2))}


def _build_case_a(params: GroupParams, table: SeriesTable):
    nu, N = params.nu, params.N
    alphas = params.jh.alphas
    S = table.S
    arrows = _horns_and_chain(nu)
    sv, sv1 = str(nu), str(nu + 1)
    arrows += [
        Arrow(arrow_name("g", sv, STAR), sv, STAR, "g"),
        Arrow(arrow_name("f", STAR, sv), STAR, sv, "f"),
        Arrow(arrow_name("g", sv, sv1), sv, sv1, "g"),
        Arrow(arrow_name("f", sv1, sv), sv1, sv, "f"),
    ]
    for t in range(nu + 1, N):
        s, r = str(t), str(t + 1)
        arrows.append(Arrow(arrow_name("cl", s, r), s, r, "cl"))
        arrows.append(Arrow(arrow_name("an", r, s), r, s, "an"))
    arrows.append(Arrow(arrow_name("cl", str(N), STAR), str(N), STAR, "cl"))
    arrows.append(Arrow(arrow_name("an", STAR, str(N)), STAR, str(N), "an"))

    # extra arrows, labelled k_2 .. k_S left to right
    butts: list[int] = []
    for i in range(nu + 1, N + 1):
        extra = alphas[i - 1] - (3 if i == nu + 1 else 2)
        butts += [i] * max(extra, 0)
    if len(butts) != max(S - 1, 0):
        raise StructuralError(f"expected {S - 1} extra arrows, built {len(butts)}")
    k_names = {1: arrow_name("g", sv, STAR), S + 1: arrow_name("cl", str(N), STAR)}
    B = {1: nu, S + 1: N}
    for j, i in enumerate(butts, start=2):
        arrows.append(Arrow(f"k_{j}", str(i), STAR, "k", j))
        k_names[j] = f"k_{j}"
        B[j] = i
    for r in range(2, S + 2):
        if B[r] != table.b[r]:
            raise StructuralError(f"butt B_{r}={B[r]} disagrees with b_{r}={table.b[r]}")

    u, v = {nu: 1}, {}
    for i in range(nu + 1, N + 1):
        js = [j for j in range(2, S + 2) if B[j] == i]
        if js:
            u[i], v[i] = max(js), min(js)
    has_extra = set(butts)
    W = {nu + 1: nu}
    for i in range(nu + 2, N + 1):
        left = [j for j in range(1, i) if j in has_extra]
        W[i] = max(left) if left else nu
    V = {i: u[W[i]] for i in W}
    tables = ExtraArrowTables(S, k_names, B, u, v, W, V)

    quiver = Quiver(params.n, params.q, params.case_tag, _vertices(N), tuple(arrows), _ranks(params))
    FF, GG = _ff_gg(quiver, nu)
    H = _horn_cycles(quiver)
    AN = {}
    for t in range(nu + 1, N + 1):
        names = [arrow_name("an", STAR, str(N))] + [
            arrow_name("an", str(s + 1), str(s)) for s in range(N - 1, t - 1, -1)
        ]
        AN[t] = _ps(quiver, *names)
    f_nu1_nu = _ps(quiver, arrow_name("f", sv1, sv))
    g_nu_nu1 = _ps(quiver, arrow_name("g", sv, sv1))
    f_0_nu = _ps(quiver, arrow_name("f", STAR, sv))
    pr, CLr = {}, {}
    for pres in Presentation:
        plus = H["+"] if pres is Presentation.MODULI else H["sym"]
        minus = H["-"] if pres is Presentation.MODULI else H["sym"]
        pr[pres] = {sv1: f_nu1_nu * GG * plus * FF * g_nu_nu1}
        clr = {nu: f_0_nu * GG * minus * FF, nu + 1: f_0_nu * GG * plus * FF * g_nu_nu1}
        for t in range(nu + 2, N + 1):
            clr[t] = clr[t - 1] * _ps(quiver, arrow_name("cl", str(t - 1), str(t)))
        CLr[pres] = clr
    return quiver, tables, CompositePathDefs(FF, GG, AN, pr, CLr)


def _build_case_b(params: GroupParams):
    N = params.N
    top = N - 1
    st, sN = str(top), str(N)
    arrows = _horns_and_chain(top)
    arrows += [
        Arrow(arrow_name("g", st, STAR), st, STAR, "g"),
        Arrow(arrow_name("f", STAR, st), STAR, st, "f"),
        Arrow(arrow_name("g", st, sN), st, sN, "g"),
        Arrow(arrow_name("f", sN, st), sN, st, "f"),
    ]
    n_extra = params.jh.alpha(N) - 2
    for j in range(1, n_extra + 1):
        arrows.append(Arrow(f"k_{j}", sN, STAR, "k", j))
    quiver = Quiver(params.n, params.q, params.case_tag, _vertices(N), tuple(arrows), _ranks(params))

    FF, GG = _ff_gg(quiver, top)
    H = _horn_cycles(quiver)
    f0 = _ps(quiver, arrow_name("f", STAR, st))
    g_to_N = _ps(quiver, arrow_name("g", st, sN))
    g_to_0 = _ps(quiver, arrow_name("g", st, STAR))
    fN = _ps(quiver, arrow_name("f", sN, st))
    AN = {N: (f0 * g_to_N).scale(Fraction(1, 2))}
    pr, CLr = {}, {}
    for pres in Presentation:
        plus = H["+"] if pres is Presentation.MODULI else H["sym"]
        minus = H["-"] if pres is Presentation.MODULI else H["sym"]
        pr[pres] = {
            STAR: f0 * GG * minus * FF * g_to_0,
            sN: fN * GG * plus * FF * g_to_N,
        }
        CLr[pres] = {N: f0 * GG * plus * FF * g_to_N}
    return quiver, ExtraArrowTables.empty(), CompositePathDefs(FF, GG, AN, pr, CLr)


# ---------------------------------------------------------------------------
# intersection-theory cross-check


def expected_zk_minus_zf(params: GroupParams) -> dict[str, int]:
    """The (Z_K - Z_f).E_t column as tabulated for each case."""
    N, nu = params.N, params.nu
    out = {"+": 0, "-": 0}
    for t in range(1, N + 1):
        out[str(t)] = 0
    if params.case_tag is CaseTag.CASE_A:
        out[str(nu)] = 1
        out[str(nu + 1)] = -1
        out[str(N)] = 1
    else:
        out[str(N - 1)] = 1
    return out


def arrow_counts_check(
    params: GroupParams, g: DualGraph, zf: dict[str, int], quiver: Quiver
) -> CheckReport:
    rep = CheckReport(f"arrow counts D({params.n},{params.q})")
    zk = canonical_cycle(g)
    expected = expected_zk_minus_zf(params)
    for t in g.vertices:
        out_star = len(quiver.arrows_between(t, STAR))
        into = len(quiver.arrows_between(STAR, t))
        minus_zf = -g.cycle_dot(zf, t)
        diff = g.cycle_dot(zk, t) - g.cycle_dot(zf, t)
        rep.add(f"-Zf.E_{t} = #arrows {t}->*", minus_zf == out_star, f"{minus_zf} vs {out_star}")
        rep.add(f"(Zk-Zf).E_{t} table", diff == expected[t], f"{diff} vs {expected[t]}")
        rep.add(f"#arrows *->{t} = max(0,(Zk-Zf).E_{t})", into == max(0, diff), f"{into} vs {diff}")
    return rep
