"""Relations of the reconstruction algebra in the moduli and symmetric presentations."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .contfrac import CaseTag, GroupParams
from .errors import StructuralError
from .paths import PathSum, PathWord
from .quiver import (
    STAR,
    CompositePathDefs,
    ExtraArrowTables,
    Presentation,
    Quiver,
    arrow_name,
    expected_zk_minus_zf,
)
from .report import CheckReport


@dataclass(frozen=True)
class RelationElement:
    """One relation stored as the formal difference ``lhs - rhs``."""

    source: str
    target: str
    terms: PathSum
    lhs: PathSum
    rhs: PathSum
    label: str = ""

    @classmethod
    def from_sides(cls, lhs: PathSum, rhs: PathSum, label: str = "") -> "RelationElement":
        ends = {e for e in (lhs.endpoints, rhs.endpoints) if e is not None}
        if len(ends) != 1:
            raise StructuralError(f"relation sides are not parallel: {lhs} = {rhs}")
        (s, t), = ends
        terms = lhs - rhs
        if terms.is_zero():
            raise StructuralError(f"relation is trivially zero: {lhs} = {rhs}")
        return cls(s, t, terms, lhs, rhs, label)

    def canonical(self) -> PathSum:
        return self.terms.canonical()

    def same_up_to_sign(self, other: "RelationElement") -> bool:
        return self.canonical() == other.canonical()

    @property
    def is_cycle(self) -> bool:
        return self.source == self.target

    def machine_terms(self) -> list[tuple[str, list[str]]]:
        return [(str(c), list(p.arrows)) for p, c in self.terms.sorted_terms()]

    def __str__(self) -> str:
        return f"{_side(self.lhs)} = {_side(self.rhs)}"


def _side(p: PathSum) -> str:
    return str(p)


# ---------------------------------------------------------------------------
# generation


class _Builder:
    def __init__(self, quiver: Quiver) -> None:
        self.quiver = quiver
        self.out: list[RelationElement] = []

    def P(self, *names: str) -> PathSum:
        return PathSum.of(self.quiver.path(*names))

    def add(self, lhs: PathSum, rhs: PathSum | None, label: str) -> None:
        self.out.append(RelationElement.from_sides(lhs, rhs if rhs is not None else PathSum(), label))


def _preprojective(b: _Builder, top: int) -> None:
    """Zero cycles and mesh relations on the doubled type-D part ending at ``top``."""
    P = b.P
    st, sr = str(top), str(top + 1)
    g0, f0 = arrow_name("g", st, STAR), arrow_name("f", STAR, st)
    gr, fr = arrow_name("g", st, sr), arrow_name("f", sr, st)
    b.add(P("g_{+,1}", "f_{1,+}"), None, "zero +")
    b.add(P(f0, g0), None, "zero *")
    b.add(P("g_{-,1}", "f_{1,-}"), None, "zero -")
    b.add(P(fr, gr), None, f"zero {sr}")
    if top == 1:
        b.add(
            P(g0, f0) - P(gr, fr),
            P("f_{1,+}", "g_{+,1}") - P("f_{1,-}", "g_{-,1}"),
            "mesh 1",
        )
        return
    b.add(
        P("f_{1,+}", "g_{+,1}") - P("f_{1,-}", "g_{-,1}"),
        P("f_{1,2}", "g_{2,1}").scale(2),
        "mesh 1",
    )
    for t in range(2, top):
        s, u, w = str(t - 1), str(t), str(t + 1)
        b.add(
            P(arrow_name("g", u, s), arrow_name("f", s, u)),
            P(arrow_name("f", u, w), arrow_name("g", w, u)),
            f"mesh {t}",
        )
    sl = str(top - 1)
    b.add(
        P(g0, f0) - P(gr, fr),
        P(arrow_name("g", st, sl), arrow_name("f", sl, st)).scale(2),
        f"mesh {top}",
    )


def relations(
    params: GroupParams,
    quiver: Quiver,
    tables: ExtraArrowTables,
    defs: CompositePathDefs,
    presentation: Presentation | str,
) -> list[RelationElement]:
    """The full relation list, in a fixed order."""
    presentation = Presentation(presentation)
    params.require_in_scope()
    b = _Builder(quiver)
    if params.case_tag is CaseTag.CASE_A:
        _case_a(params, b, tables, defs, presentation)
    else:
        _case_b(params, b, defs, presentation)
    return b.out


def _case_a(params: GroupParams, b: _Builder, T: ExtraArrowTables, D: CompositePathDefs, pres) -> None:
    nu, N = params.nu, params.N
    P = b.P
    sv, sv1 = str(nu), str(nu + 1)
    AN, CLr = D.AN, D.CLr[pres]
    pr = D.pr[pres][sv1]

    def k(j: int) -> PathSum:
        return P(T.k(j))

    def cl(s: int, t) -> PathSum:
        return P(arrow_name("cl", str(s), str(t)))

    def an(s, t: int) -> PathSum:
        return P(arrow_name("an", str(s), str(t)))

    b.add(P(arrow_name("f", STAR, sv), arrow_name("g", sv, sv1)), AN[nu + 1].scale(2), "star")
    _preprojective(b, nu)

    # Step nu+1
    i = nu + 1
    if params.jh.alpha(i) == 3:
        b.add(cl(i, i + 1) * an(i + 1, i), pr, f"step {i}")
    else:
        b.add(k(2) * AN[i], pr, f"step {i}")
        b.add(AN[i] * k(2), CLr[nu] * k(1), f"step {i}")
        for t in range(2, T.u[i]):
            b.add(k(t) * CLr[i], k(t + 1) * AN[i], f"step {i}")
            b.add(CLr[i] * k(t), AN[i] * k(t + 1), f"step {i}")
        b.add(k(T.u[i]) * CLr[i], cl(i, i + 1) * an(i + 1, i), f"step {i}")

    # Steps nu+2 .. N-1
    for i in range(nu + 2, N):
        if params.jh.alpha(i) == 2:
            b.add(cl(i, i + 1) * an(i + 1, i), an(i, i - 1) * cl(i - 1, i), f"step {i}")
            continue
        vi, ui = T.v[i], T.u[i]
        b.add(k(vi) * AN[i], an(i, i - 1) * cl(i - 1, i), f"step {i}")
        b.add(AN[i] * k(vi), CLr[T.B[T.V[i]]] * k(T.V[i]), f"step {i}")
        for t in range(vi, ui):
            b.add(k(t) * CLr[i], k(t + 1) * AN[i], f"step {i}")
            b.add(CLr[i] * k(t), AN[i] * k(t + 1), f"step {i}")
        b.add(k(ui) * CLr[i], cl(i, i + 1) * an(i + 1, i), f"step {i}")

    # Step N
    a0N = an(STAR, N)
    back = CLr[T.B[T.V[N]]] * k(T.V[N])
    if params.jh.alpha(N) == 2:
        b.add(cl(N, STAR) * a0N, an(N, N - 1) * cl(N - 1, N), f"step {N}")
        b.add(a0N * cl(N, STAR), back, f"step {N}")
    else:
        vN, uN = T.v[N], T.u[N]
        b.add(k(vN) * a0N, an(N, N - 1) * cl(N - 1, N), f"step {N}")
        b.add(a0N * k(vN), back, f"step {N}")
        for t in range(vN, uN):
            b.add(k(t) * CLr[N], k(t + 1) * a0N, f"step {N}")
            b.add(CLr[N] * k(t), a0N * k(t + 1), f"step {N}")


def _case_b(params: GroupParams, b: _Builder, D: CompositePathDefs, pres) -> None:
    N = params.N
    _preprojective(b, N - 1)
    alpha = params.jh.alpha(N)
    if alpha <= 2:
        return
    P = b.P
    AN = D.AN[N]
    CLr = D.CLr[pres][N]
    pr = D.pr[pres]

    def k(j: int) -> PathSum:
        return P(f"k_{j}")

    b.add(k(1) * AN, pr[str(N)], "k-block")
    b.add(AN * k(1), pr[STAR], "k-block")
    for t in range(1, alpha - 2):
        b.add(k(t) * CLr, k(t + 1) * AN, "k-block")
        b.add(AN * k(t + 1), CLr * k(t), "k-block")


def relation_census(rels: list[RelationElement]) -> dict[tuple[str, str], int]:
    return dict(sorted(Counter((r.source, r.target) for r in rels).items()))


# ---------------------------------------------------------------------------
# parsing the textual notation

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<arrow>[A-Za-z]+_\{[^}]*\}|k_\d+)|(?P<sym>[()+\-=*]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse relation near {text[pos:]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, quiver: Quiver, aliases: dict[str, str]) -> None:
        self.toks = tokens
        self.i = 0
        self.quiver = quiver
        self.aliases = aliases

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self) -> PathSum:
        sign = 1
        if self.peek() == ("sym", "-"):
            self.take()
            sign = -1
        acc = self.term().scale(sign)
        while self.peek() in (("sym", "+"), ("sym", "-")):
            _, op = self.take()
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> PathSum:
        coeff = Fraction(1)
        if self.peek()[0] == "num":
            coeff = Fraction(self.take()[1])
            if self.peek() == ("sym", "*"):
                self.take()
        acc: PathSum | None = None
        while True:
            kind, val = self.peek()
            if kind == "arrow":
                self.take()
                name = self.aliases.get(val, val)
                a = self.quiver.arrow(name)
                f = PathSum.of(PathWord((name,), a.source, a.target))
            elif (kind, val) == ("sym", "("):
                self.take()
                f = self.expr()
                if self.take() != ("sym", ")"):
                    raise ValueError("unbalanced parentheses")
            else:
                break
            acc = f if acc is None else acc * f
        if acc is None:
            if coeff != 0:
                raise ValueError("a bare nonzero number is not a path")
            return PathSum()
        return acc.scale(coeff)


def parse_relation(text: str, quiver: Quiver, tables: ExtraArrowTables | None = None) -> RelationElement:
    """Parse ``lhs = rhs`` written with arrow names, e.g. ``k_2 (an_{0,3}) = cl_{3,0} an_{0,3}``."""
    aliases = {}
    if tables is not None:
        aliases = {f"k_{j}": nm for j, nm in tables.k_names.items() if nm != f"k_{j}"}
    toks = _tokenize(text)
    p = _Parser(toks, quiver, aliases)
    lhs = p.expr()
    if p.take() != ("sym", "="):
        raise ValueError(f"expected '=' in {text!r}")
    rhs = p.expr()
    if p.i != len(toks):
        raise ValueError(f"trailing tokens in {text!r}")
    return RelationElement.from_sides(lhs, rhs)


def load_fixture(path, quiver: Quiver, tables: ExtraArrowTables | None = None) -> list[RelationElement]:
    """One relation per non-blank line; ``#`` starts a comment."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                out.append(parse_relation(line, quiver, tables))
    return out


def match_up_to_sign(
    generated: list[RelationElement], expected: list[RelationElement]
) -> tuple[list[RelationElement], list[RelationElement]]:
    """Return (missing from generated, unexpected in generated) as multisets."""
    def surplus(items, other):
        budget = Counter(r.canonical() for r in other)
        out = []
        for r in items:
            key = r.canonical()
            if budget[key]:
                budget[key] -= 1
            else:
                out.append(r)
        return out

    return surplus(expected, generated), surplus(generated, expected)


def star_relation_check(params: GroupParams, rels: list[RelationElement]) -> CheckReport:
    """Non-cycle relations leaving * match max(0, -(Z_K - Z_f).E_t) at every vertex t."""
    rep = CheckReport(f"relations out of * D({params.n},{params.q})")
    census = relation_census(rels)
    for t, value in expected_zk_minus_zf(params).items():
        got = census.get((STAR, t), 0)
        rep.add(f"#relations *->{t}", got == max(0, -value), f"{got} vs {max(0, -value)}")
    return rep
