"""Polynomial-matrix representatives of the arrows and exact relation checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .contfrac import CaseTag, GroupParams
from .errors import ParameterError, ShapeError, StructuralError
from .exact import BivarPoly, PolyMatrix
from .paths import PathSum, PathWord
from .quiver import STAR, CompositePathDefs, Presentation, Quiver, arrow_name
from .relations import RelationElement
from .report import CheckReport
from .series import SeriesTable

X = BivarPoly.x()
Y = BivarPoly.y()


def _xy(k: int) -> BivarPoly:
    if k < 0:
        raise StructuralError(f"negative power (xy)^{k}")
    return BivarPoly.monomial(k, k)


@dataclass(frozen=True)
class InvariantPolys:
    """w1 = xy together with the two pairs (w2, w3) and (v2, v3)."""

    q: int
    a2: int
    w1: BivarPoly
    w2: BivarPoly
    w3: BivarPoly
    v2: BivarPoly
    v3: BivarPoly

    @classmethod
    def build(cls, q: int, a2: int) -> "InvariantPolys":
        s = -1 if a2 % 2 else 1
        xq, yq = X**q, Y**q
        common = xq + yq.scale(s)
        return cls(
            q,
            a2,
            X * Y,
            (xq + yq) * common,
            (xq - yq) * common,
            X ** (2 * q) + (Y ** (2 * q)).scale(s),
            X ** (2 * q) + (Y ** (2 * q)).scale(-s),
        )

    def pair(self, presentation: Presentation | str) -> tuple[BivarPoly, BivarPoly]:
        if Presentation(presentation) is Presentation.MODULI:
            return self.w2, self.w3
        return self.v2, self.v3

    def self_check(self) -> CheckReport:
        """Re-expand the defining products coefficient by coefficient."""
        rep = CheckReport(f"invariant polynomials q={self.q}")
        q, s = self.q, (-1) ** self.a2
        w2 = {(2 * q, 0): 1, (q, q): 1 + s, (0, 2 * q): s}
        w3 = {(2 * q, 0): 1, (q, q): s - 1, (0, 2 * q): -s}
        for name, poly, want in (("w2", self.w2, w2), ("w3", self.w3, w3)):
            rep.add(name, poly == BivarPoly(want), str(poly))
        rep.add("v2", self.v2 == BivarPoly({(2 * q, 0): 1, (0, 2 * q): s}), str(self.v2))
        rep.add("v3", self.v3 == BivarPoly({(2 * q, 0): 1, (0, 2 * q): -s}), str(self.v3))
        rep.add("w1", self.w1 == _xy(1), str(self.w1))
        return rep


def _cycle_poly(w: tuple[BivarPoly, BivarPoly], r: int, c: int, d: int) -> BivarPoly:
    w2, w3 = w
    return _xy(r) * w2**c * w3**d


@dataclass
class ArrowAssignment:
    """Arrow name -> matrix, with shapes fixed by the vertex ranks."""

    quiver: Quiver
    presentation: Presentation
    matrices: dict[str, PolyMatrix]
    _cache: dict[tuple[str, ...], PolyMatrix] = field(default_factory=dict, repr=False)
    max_terms: int = 0

    def __post_init__(self) -> None:
        ranks = self.quiver.ranks
        missing = [a.name for a in self.quiver.arrows if a.name not in self.matrices]
        if missing:
            raise StructuralError(f"arrows without representatives: {missing}")
        for a in self.quiver.arrows:
            want = (ranks[a.source], ranks[a.target])
            if self.matrices[a.name].shape != want:
                raise ShapeError(f"{a.name} has shape {self.matrices[a.name].shape}, expected {want}")

    def __getitem__(self, name: str) -> PolyMatrix:
        return self.matrices[name]

    def evaluate_path(self, path: PathWord) -> PolyMatrix:
        if path.is_trivial:
            return PolyMatrix.identity(self.quiver.ranks[path.source])
        return self._eval(path.arrows)

    def _eval(self, arrows: tuple[str, ...]) -> PolyMatrix:
        hit = self._cache.get(arrows)
        if hit is not None:
            return hit
        if len(arrows) == 1:
            out = self.matrices[arrows[0]]
        else:
            try:
                out = self._eval(arrows[:-1]) @ self.matrices[arrows[-1]]
            except ShapeError as exc:
                raise StructuralError(f"ill-shaped path {' '.join(arrows)}: {exc}") from exc
        self.max_terms = max(self.max_terms, out.max_terms())
        self._cache[arrows] = out
        return out

    def evaluate(self, s: PathSum) -> PolyMatrix:
        ends = s.endpoints
        if ends is None:
            raise StructuralError("cannot evaluate the empty sum without endpoints")
        r, c = self.quiver.ranks[ends[0]], self.quiver.ranks[ends[1]]
        acc = PolyMatrix.zeros(r, c)
        for p, coeff in s.sorted_terms():
            acc = acc + self.evaluate_path(p).scale(coeff)
        return acc

    def residue(self, rel: RelationElement) -> PolyMatrix:
        return self.evaluate(rel.terms)


def representatives(
    params: GroupParams,
    table: SeriesTable,
    quiver: Quiver,
    presentation: Presentation | str,
) -> ArrowAssignment:
    presentation = Presentation(presentation)
    params.require_in_scope()
    m, q = params.m, params.q
    inv = InvariantPolys.build(q, params.dual.a(2))
    w = inv.pair(presentation)
    c, d, r, i = table.c, table.d, table.r, table.i
    N = params.N
    case_a = params.case_tag is CaseTag.CASE_A
    top = params.nu if case_a else N - 1
    ex = i[top + 1]
    if r[3] + ex != m:
        raise StructuralError(f"r_3 + i_{top + 1} = {r[3] + ex} differs from m = {m}")
    if i[N] != 1:
        raise StructuralError(f"i_N = {i[N]}, expected 1")

    xm, ym = X**m, Y**m
    mats: dict[str, PolyMatrix] = {
        "g_{-,1}": PolyMatrix.row(ym, xm),
        "g_{+,1}": PolyMatrix.row(-ym, xm),
        "f_{1,-}": PolyMatrix.col(xm, -ym),
        "f_{1,+}": PolyMatrix.col(xm, ym),
    }
    for t in range(1, top):
        mats[arrow_name("f", str(t), str(t + 1))] = PolyMatrix.diag(-ym, xm)
        mats[arrow_name("g", str(t + 1), str(t))] = PolyMatrix.diag(xm, ym)
    st, sr = str(top), str(top + 1)
    r3 = _xy(r[3])
    xe, ye = X**ex, Y**ex
    mats[arrow_name("g", st, STAR)] = PolyMatrix.col(r3 * -ye, r3 * xe)
    mats[arrow_name("g", st, sr)] = PolyMatrix.col(ye, xe)
    mats[arrow_name("f", sr, st)] = PolyMatrix.row(r3 * xe, r3 * -ye)
    mats[arrow_name("f", STAR, st)] = PolyMatrix.row(xe, ye)

    if case_a:
        l = table.l
        for t in range(params.nu + 2, N + 1):
            mats[arrow_name("an", str(t), str(t - 1))] = PolyMatrix.scalar(_xy(i[t - 1] - i[t]))
            lt = l[t - 1]
            mats[arrow_name("cl", str(t - 1), str(t))] = PolyMatrix.scalar(_cycle_poly(w, 0, c[lt], d[lt]))
        mats[arrow_name("an", STAR, str(N))] = PolyMatrix.scalar(_xy(1))
        e = params.e
        mats[arrow_name("cl", str(N), STAR)] = PolyMatrix.scalar(_cycle_poly(w, 0, c[e - 1], d[e - 1]))
        for a in quiver.k_arrows():
            t = a.index
            mats[a.name] = PolyMatrix.scalar(_cycle_poly(w, r[t + 2], c[t + 1], d[t + 1]))
    else:
        for a in quiver.k_arrows():
            t = a.index
            mats[a.name] = PolyMatrix.scalar(_cycle_poly(w, r[t + 3], c[t + 2], d[t + 2]))
    return ArrowAssignment(quiver, presentation, mats)


def verify_relations(rels: list[RelationElement], asg: ArrowAssignment, title: str = "relations") -> CheckReport:
    """Each relation must evaluate to the zero matrix; failures carry the residue."""
    rep = CheckReport(title)
    for rel in rels:
        res = asg.residue(rel)
        rep.add(str(rel), res.is_zero(), "" if res.is_zero() else f"residue {res}")
    rep.stats["max_terms"] = asg.max_terms
    return rep


def closed_form_checks(
    params: GroupParams, table: SeriesTable, defs: CompositePathDefs, asg: ArrowAssignment
) -> CheckReport:
    """Composite paths against their stated closed forms (xy)^{r_3} w_3, w_2 and xy."""
    rep = CheckReport(f"closed forms D({params.n},{params.q}) {asg.presentation.value}")
    inv = InvariantPolys.build(params.q, params.dual.a(2))
    w2, w3 = inv.pair(asg.presentation)
    r3w3 = _xy(table.r[3]) * w3
    pr, CLr = defs.pr[asg.presentation], defs.CLr[asg.presentation]
    checks: list[tuple[str, PathSum, BivarPoly]] = []
    if params.case_tag is CaseTag.CASE_A:
        nu = params.nu
        k1 = PathSum.of(asg.quiver.path(arrow_name("g", str(nu), STAR)))
        checks += [
            (f"pr_{nu + 1}", pr[str(nu + 1)], r3w3),
            (f"CLr_{nu} k_1", CLr[nu] * k1, r3w3),
            (f"CLr_{nu + 1}", CLr[nu + 1], w2),
        ]
    else:
        N = params.N
        checks += [
            (f"pr_{N}", pr[str(N)], r3w3),
            ("pr_*", pr[STAR], r3w3),
            (f"CLr_{N}", CLr[N], w2),
            (f"AN_{N}", defs.AN[N], _xy(1)),
        ]
    for label, path, want in checks:
        got = asg.evaluate(path).to_poly()
        rep.add(label, got == want, f"{got} vs {want}")
    return rep


# ---------------------------------------------------------------------------
# specialization at a point


def _rank(rows: list[list[Fraction]]) -> int:
    a = [list(r) for r in rows if any(r)]
    rank, col = 0, 0
    ncols = len(a[0]) if a else 0
    while rank < len(a) and col < ncols:
        piv = next((k for k in range(rank, len(a)) if a[k][col]), None)
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for k in range(len(a)):
            if k != rank and a[k][col]:
                f = a[k][col] / a[rank][col]
                a[k] = [u - f * v for u, v in zip(a[k], a[rank])]
        rank += 1
        col += 1
    return rank


@dataclass(frozen=True)
class PointRepresentation:
    point: tuple[Fraction, Fraction]
    matrices: dict[str, list[list[Fraction]]]
    relations_hold: bool
    star_generated: bool
    spans: dict[str, int]


def point_representation(
    asg: ArrowAssignment, rels: list[RelationElement], lx, ly
) -> PointRepresentation:
    """Substitute x = lx, y = ly; check the relations and whether * generates."""
    lx, ly = Fraction(lx), Fraction(ly)
    if lx == 0 and ly == 0:
        raise ParameterError("the point (0, 0) is excluded")
    mats = {nm: mat.evaluate(lx, ly) for nm, mat in asg.matrices.items()}
    holds = all(
        all(v == 0 for row in asg.residue(r).evaluate(lx, ly) for v in row) for r in rels
    )
    ranks = asg.quiver.ranks
    span: dict[str, list[list[Fraction]]] = {v: [] for v in ranks}
    span[STAR] = [[Fraction(1)]]
    changed = True
    while changed:
        changed = False
        for a in asg.quiver.arrows:
            src = span[a.source]
            if not src:
                continue
            mat = mats[a.name]
            images = [[sum(v[k] * mat[k][j] for k in range(len(v))) for j in range(len(mat[0]))] for v in src]
            cand = span[a.target] + images
            if _rank(cand) > _rank(span[a.target]):
                span[a.target] = cand
                changed = True
    dims = {v: _rank(s) for v, s in span.items()}
    gen = all(dims[v] == ranks[v] for v in ranks)
    return PointRepresentation((lx, ly), mats, holds, gen, dims)

