"""Affine charts on moduli of quiver representations, found by linear elimination.

Only the two smallest cases D(3,2) and D(5,3) carry built-in chart data.
Arrows get one-letter names: a lowercase letter for an arrow into the
rank-2 vertex (a row vector) and the matching capital for the arrow back
(a column vector).  Matrix slots are numbered, so ``a = (a1 a2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import ReconstructionAlgebra
from .errors import ChartEmptyError, StructuralError, UnsupportedError
from .exact import MultiPoly
from .paths import PathSum, PathWord
from .quiver import STAR, Presentation, Quiver
from .relations import RelationElement
from .report import CheckReport

LETTERS = {
    "f_{0,1}": "a",
    "g_{1,0}": "A",
    "g_{+,1}": "b",
    "f_{1,+}": "B",
    "g_{-,1}": "c",
    "f_{1,-}": "C",
    "f_{2,1}": "d",
    "g_{1,2}": "D",
}

SUPPORTED = ((3, 2), (5, 3))

Matrix = list[list[MultiPoly]]


def letter(name: str) -> str:
    if name in LETTERS:
        return LETTERS[name]
    m = re.fullmatch(r"k_(\d+)", name)
    if m:
        return f"k{m.group(1)}"
    raise UnsupportedError(f"no chart letter for arrow {name}")


def arrow_of(letter_name: str) -> str:
    inverse = {v: k for k, v in LETTERS.items()}
    if letter_name in inverse:
        return inverse[letter_name]
    m = re.fullmatch(r"k(\d+)", letter_name)
    if m:
        return f"k_{m.group(1)}"
    raise ValueError(f"unknown arrow letter {letter_name!r}")


def split_letters(word: str) -> list[str]:
    """``"aBbD"`` -> ``["a", "B", "b", "D"]``; ``k1`` counts as one letter."""
    out = re.findall(r"k\d+|[A-Za-z]", word)
    if "".join(out) != word:
        raise ValueError(f"cannot split {word!r} into arrow letters")
    return out


# ---------------------------------------------------------------------------
# data


@dataclass(frozen=True)
class StabilityData:
    dimension: dict[str, int]
    theta: dict[str, int]

    @classmethod
    def from_algebra(cls, alg: ReconstructionAlgebra) -> "StabilityData":
        zf = alg.fundamental_cycle
        dim = {STAR: 1} | {v: zf[v] for v in alg.quiver.vertices if v != STAR}
        theta = {v: 1 for v in dim if v != STAR}
        theta[STAR] = -sum(dim[v] for v in dim if v != STAR)
        return cls(dim, theta)

    def pairing(self) -> int:
        return sum(self.theta[v] * self.dimension[v] for v in self.dimension)


@dataclass(frozen=True)
class Condition:
    """A path from * set to 1, or a single arrow set to a unit row vector."""

    path: tuple[str, ...]
    value: tuple[int, ...]

    @classmethod
    def parse(cls, text: str) -> "Condition":
        lhs, rhs = (s.strip() for s in text.split("="))
        rhs = rhs.strip("()")
        return cls(tuple(split_letters(lhs)), tuple(int(t) for t in rhs.split()))

    def __str__(self) -> str:
        val = self.value[0] if len(self.value) == 1 else "(" + " ".join(map(str, self.value)) + ")"
        return f"{''.join(self.path)}={val}"


@dataclass(frozen=True)
class ChartSpec:
    name: str
    conditions: tuple[Condition, ...]
    prefer_keep: tuple[str, ...] = ()

    @classmethod
    def parse(cls, name: str, *conds: str, prefer_keep: tuple[str, ...] = ()) -> "ChartSpec":
        return cls(name, tuple(Condition.parse(c) for c in conds), prefer_keep)


@dataclass
class Chart:
    name: str
    free_vars: list[str]
    eliminated: list[tuple[str, MultiPoly]]
    equations: list[MultiPoly]

    @property
    def equation(self) -> MultiPoly:
        if len(self.equations) != 1:
            raise StructuralError(f"{self.name} has {len(self.equations)} residual equations")
        return self.equations[0]


@dataclass(frozen=True)
class GlueMap:
    """Target chart variables written as Laurent monomial expressions in the source variables."""

    source: str
    target: str
    mapping: dict[str, MultiPoly]
    inverted: str
    source_keep: tuple[str, ...] = field(default=())

    def __str__(self) -> str:
        parts = ", ".join(f"{k} -> {v}" for k, v in self.mapping.items())
        return f"{self.source} -> {self.target}: {parts}"


# ---------------------------------------------------------------------------
# chart construction


def _symbolic(quiver: Quiver, dim: dict[str, int]) -> tuple[dict[str, Matrix], list[str]]:
    mats, names = {}, []
    for a in quiver.arrows:
        r, c = dim[a.source], dim[a.target]
        base = letter(a.name)
        if r == 1 and c == 1:
            grid = [[base]]
        elif r == 1:
            grid = [[f"{base}{j + 1}" for j in range(c)]]
        elif c == 1:
            grid = [[f"{base}{i + 1}"] for i in range(r)]
        else:
            grid = [[f"{base}{i + 1}{j + 1}" for j in range(c)] for i in range(r)]
        names += [v for row in grid for v in row]
        mats[a.name] = [[MultiPoly.var(v) for v in row] for row in grid]
    return mats, names


def _matmul(x: Matrix, y: Matrix) -> Matrix:
    return [
        [sum((x[i][k] * y[k][j] for k in range(len(y))), MultiPoly.zero()) for j in range(len(y[0]))]
        for i in range(len(x))
    ]


def _eval_word(mats: dict[str, Matrix], word: PathWord) -> Matrix:
    out = mats[word.arrows[0]]
    for a in word.arrows[1:]:
        out = _matmul(out, mats[a])
    return out


def _eval_sum(mats: dict[str, Matrix], s: PathSum) -> Matrix:
    acc: Matrix | None = None
    for word, c in s.sorted_terms():
        m = [[e * c for e in row] for row in _eval_word(mats, word)]
        acc = m if acc is None else [[u + v for u, v in zip(r1, r2)] for r1, r2 in zip(acc, m)]
    return acc


def rescale_arrows(rels: list[RelationElement], factors: dict[str, Fraction | int]) -> list[RelationElement]:
    """Substitute arrow -> factor * arrow in every relation."""
    out = []
    for r in rels:

        def scaled(s: PathSum) -> PathSum:
            terms = []
            for w, c in s.terms.items():
                for a in w.arrows:
                    c = c * factors.get(a, 1)
                terms.append((w, c))
            return PathSum(terms)

        out.append(RelationElement(r.source, r.target, scaled(r.terms), scaled(r.lhs), scaled(r.rhs), r.label))
    return out


def moduli_relations(alg: ReconstructionAlgebra) -> list[RelationElement]:
    """Moduli-presentation relations with k_t replaced by 2^t k_t, clearing the 1/2 in AN."""
    rels = alg.relations(Presentation.MODULI)
    factors = {a.name: 2**a.index for a in alg.quiver.k_arrows()}
    return rescale_arrows(rels, factors)


def canonical(p: MultiPoly) -> MultiPoly:
    """Primitive form over the sorted used variables, positive leading coefficient."""
    if p.is_zero():
        return p
    return p.with_variables(sorted(p.used_variables())).primitive()


def _eliminable(eq: MultiPoly, keep: tuple[str, ...]) -> tuple[str, MultiPoly] | None:
    for v in sorted(eq.used_variables()):
        if v in keep:
            continue
        i = eq.variables.index(v)
        hits = [(k, c) for k, c in eq.terms.items() if k[i]]
        if len(hits) != 1:
            continue
        k, c = hits[0]
        if k[i] == 1 and sum(1 for e in k if e) == 1:
            rest = eq - MultiPoly.var(v) * c
            return v, rest * (-1 / c)
    return None


def eliminate(
    equations: list[MultiPoly], keep: tuple[str, ...] = ()
) -> tuple[list[tuple[str, MultiPoly]], list[MultiPoly]]:
    """Repeatedly solve for a variable occurring once with a constant coefficient."""
    eqs = [e for e in equations if not e.is_zero()]
    solved: list[tuple[str, MultiPoly]] = []
    while True:
        for e in eqs:
            if e.is_constant():
                raise ChartEmptyError(f"normalization forces {e.constant_value()} = 0")
        step = None
        for e in eqs:
            step = _eliminable(e, keep)
            if step:
                break
        if step is None:
            break
        v, expr = step
        solved = [(w, s.subs({v: expr})) for w, s in solved] + [(v, expr)]
        eqs = [r for r in (e.subs({v: expr}) for e in eqs) if not r.is_zero()]
    return solved, _reduce(eqs)


def _reduce(eqs: list[MultiPoly]) -> list[MultiPoly]:
    """Canonicalize, dedupe, and drop equations that are multiples of a lower-degree one."""
    out: list[MultiPoly] = []
    for e in map(canonical, eqs):
        if e not in out:
            out.append(e)
    return [
        e
        for e in out
        if not any(
            f.total_degree() < e.total_degree() and e.divide_exact(f) is not None for f in out
        )
    ]


def chart_equations(alg: ReconstructionAlgebra, spec: ChartSpec) -> tuple[list[MultiPoly], list[str]]:
    stab = StabilityData.from_algebra(alg)
    mats, names = _symbolic(alg.quiver, stab.dimension)
    vectors, paths = [], []
    for cond in spec.conditions:
        arrows = [arrow_of(x) for x in cond.path]
        word = alg.quiver.path(*arrows)
        if len(arrows) > 1 and word.source != STAR:
            raise StructuralError(f"path condition {cond} does not start at *")
        val = _eval_word(mats, word)
        if len(val) != 1 or len(val[0]) != len(cond.value):
            raise StructuralError(f"condition {cond} has the wrong shape")
        eqs = [entry - v for entry, v in zip(val[0], cond.value)]
        (vectors if len(arrows) == 1 else paths).extend(eqs)
    rel_eqs = []
    for rel in moduli_relations(alg):
        res = _eval_sum(mats, rel.terms)
        rel_eqs += [e for row in res for e in row]
    return vectors + paths + rel_eqs, names


def build_chart(alg: ReconstructionAlgebra, spec: ChartSpec, keep: tuple[str, ...] | None = None) -> Chart:
    keep = spec.prefer_keep if keep is None else keep
    eqs, names = chart_equations(alg, spec)
    solved, residual = eliminate(eqs, keep)
    gone = {v for v, _ in solved}
    free = sorted(v for v in names if v not in gone)
    return Chart(spec.name, free, solved, residual)


# ---------------------------------------------------------------------------
# built-in data


def require_supported(alg: ReconstructionAlgebra) -> None:
    pair = (alg.params.n, alg.params.q)
    if pair not in SUPPORTED:
        raise UnsupportedError(f"chart data exists only for D(3,2) and D(5,3), not D({pair[0]},{pair[1]})")


def builtin_chart_specs(alg: ReconstructionAlgebra) -> list[ChartSpec]:
    """The same five open sets serve both supported groups.

    ``prefer_keep`` picks between equivalent coordinates where a chart has
    an equation v = w +- 1 or v = w: b2 over c2 on U_2, b1 over k1 on U_-.
    """
    require_supported(alg)
    return [
        ChartSpec.parse("U_0", "aB=1", "aC=1", "aBbD=1", "a=(1 0)", "b=(0 1)"),
        ChartSpec.parse("U_1", "aB=1", "aC=1", "aD=1", "a=(1 0)", "b=(0 1)"),
        ChartSpec.parse("U_2", "aB=1", "aC=1", "aD=1", "a=(1 0)", "d=(0 1)", prefer_keep=("b2",)),
        ChartSpec.parse("U_+", "aB=1", "aDdC=1", "aD=1", "a=(1 0)", "d=(0 1)"),
        ChartSpec.parse("U_-", "aDdB=1", "aC=1", "aD=1", "a=(1 0)", "d=(0 1)", prefer_keep=("b1",)),
    ]


def _v(name: str) -> MultiPoly:
    return MultiPoly.var(name)


def builtin_glues(alg: ReconstructionAlgebra) -> list[GlueMap]:
    require_supported(alg)
    d1, D1, C2, d2, D2 = map(_v, ("d1", "D1", "C2", "d2", "D2"))
    b2, B2, c2 = map(_v, ("b2", "B2", "c2"))
    if alg.params.n == 5:
        g0 = GlueMap("U_0", "U_1", {"d2": -_v("k1") * D1**3, "D2": D1**-1, "C2": C2}, "D1")
    else:
        g0 = GlueMap("U_0", "U_1", {"d2": -d1 * D1**2, "D2": D1**-1, "C2": C2}, "D1")
    return [
        g0,
        GlueMap("U_1", "U_2", {"b2": d2**-1, "B2": -d2 * D2, "C2": -C2}, "d2"),
        GlueMap("U_2", "U_+", {"c1": -c2 * C2**2, "B2": B2, "C1": C2**-1}, "C2", source_keep=("c2",)),
        GlueMap("U_2", "U_-", {"b1": -b2 * B2**2, "B1": B2**-1, "C2": C2}, "B2", source_keep=("b2",)),
    ]


def verify_glue(source: Chart, target: Chart, glue: GlueMap) -> CheckReport:
    """Pull the target equation back along the glue and compare with the source equation."""
    rep = CheckReport(f"glue {glue.source} -> {glue.target}")
    for k, expr in glue.mapping.items():
        laurent_in = {v for v, e in zip(expr.variables, expr.min_exponents()) if e < 0}
        rep.add(f"{k} inverts only {glue.inverted}", laurent_in <= {glue.inverted}, str(expr))
    if set(glue.mapping) != set(target.free_vars):
        rep.add("glue covers the target variables", False, f"{sorted(glue.mapping)} vs {target.free_vars}")
        return rep
    pulled = target.equation.subs(glue.mapping)
    stripped, _ = pulled.strip_monomial()
    src, _ = source.equation.strip_monomial()
    ok = canonical(stripped) == canonical(src)
    rep.add("pulled-back equation = unit * monomial * source equation", ok, f"{canonical(stripped)} vs {canonical(src)}")
    return rep


def verify_all_glues(alg: ReconstructionAlgebra) -> CheckReport:
    specs = {s.name: s for s in builtin_chart_specs(alg)}
    rep = CheckReport(f"glues D({alg.params.n},{alg.params.q})")
    for g in builtin_glues(alg):
        src = build_chart(alg, specs[g.source], g.source_keep or None)
        tgt = build_chart(alg, specs[g.target])
        rep.extend(verify_glue(src, tgt, g))
    return rep
