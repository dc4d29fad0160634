"""Command-line entry point.

Exit status: 0 when everything requested verified, 1 on a verification
failure, 2 on a usage or parameter error.  ``--format machine`` prints
JSON lines after a versioned header line.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Iterable

from . import __version__
from .algebra import ReconstructionAlgebra
from .contfrac import classify
from .errors import ReconError
from .invariants import check_generating_invariants, check_group_order, generating_invariants, group_presentation
from .matrep import closed_form_checks, representatives, verify_relations
from .moduli import build_chart, builtin_chart_specs, builtin_glues, verify_glue
from .quiver import Presentation
from .report import CheckReport
from .series import check_series_identities
from .sweep import jobs_from_env, sweep

MACHINE_FORMAT = "reconalg-lines"
MACHINE_VERSION = 1


class Output:
    def __init__(self, machine: bool, command: str, stream=None) -> None:
        self.machine = machine
        self.stream = stream or sys.stdout
        if machine:
            self.record("header", format=MACHINE_FORMAT, version=MACHINE_VERSION, command=command)

    def record(self, record_kind: str, /, **fields) -> None:
        if self.machine:
            print(json.dumps({"kind": record_kind, **fields}, sort_keys=True), file=self.stream)

    def text(self, line: str = "") -> None:
        if not self.machine:
            print(line, file=self.stream)

    def report(self, rep: CheckReport, show_all: bool = False) -> None:
        for item in rep.items:
            self.record("check", report=rep.title, label=item.label, ok=item.ok, detail=item.detail)
            if show_all or not item.ok:
                self.text(f"  [{'ok' if item.ok else 'FAIL'}] {item.label}" + (f"  {item.detail}" if item.detail and not item.ok else ""))
        self.record("summary", report=rep.title, passed=rep.passed, total=len(rep))
        self.text(rep.summary())


def _pair(args) -> tuple[int, int]:
    return args.n, args.q


def cmd_expand(args, out: Output) -> int:
    p = classify(*_pair(args))
    jh = list(p.jh.alphas)
    dual = list(p.dual.values)
    out.record("expansion", n=p.n, q=p.q, jh=jh, dual=dual, nu=p.nu, case=p.case_tag.value)
    out.text("[" + ",".join(map(str, jh)) + "]")
    out.text(f"dual [{','.join(map(str, dual))}]  nu={p.nu}  {p.case_tag.value}")
    return 0


def cmd_series(args, out: Output) -> int:
    alg = ReconstructionAlgebra.build(*_pair(args))
    for name, seq in alg.table.as_rows():
        out.record("series", name=name, values={str(k): v for k, v in sorted(seq.items())})
        out.text(f"{name:>6}: " + "  ".join(f"{k}:{v}" for k, v in sorted(seq.items())))
    rep = check_series_identities(alg.table)
    out.report(rep)
    return 0 if rep.ok else 1


def cmd_quiver(args, out: Output) -> int:
    alg = ReconstructionAlgebra.build(*_pair(args))
    q = alg.quiver
    out.text(f"D({q.n},{q.q}) {q.case_tag.value}: {len(q.vertices)} vertices, {len(q.arrows)} arrows")
    out.text("ranks: " + " ".join(f"{v}:{r}" for v, r in q.ranks.items()))
    out.record("ranks", ranks=q.ranks)
    for a in q.arrows:
        out.record("arrow", name=a.name, source=a.source, target=a.target, family=a.kind)
        out.text(f"  {a.name}: {a.source} -> {a.target}")
    t = alg.tables
    if t.S:
        cols = {"B": t.B, "u": t.u, "v": t.v, "W": t.W, "V": t.V}
        out.record("tables", S=t.S, k_names={str(j): nm for j, nm in t.k_names.items()}, **{k: {str(j): x for j, x in sorted(c.items())} for k, c in cols.items()})
        out.text(f"k-arrow tables (S={t.S}):")
        for k, c in cols.items():
            out.text(f"  {k:>2}: " + "  ".join(f"{j}:{x}" for j, x in sorted(c.items())))
    return 0


def cmd_relations(args, out: Output) -> int:
    alg = ReconstructionAlgebra.build(*_pair(args))
    rels = alg.relations(args.presentation)
    for r in rels:
        out.record("relation", source=r.source, target=r.target, label=r.label, terms=r.machine_terms(), text=str(r))
        out.text(str(r))
    out.text(f"{len(rels)} relations")
    return 0


def cmd_verify(args, out: Output) -> int:
    alg = ReconstructionAlgebra.build(*_pair(args))
    pres = Presentation(args.presentation)
    rels = alg.relations(pres)
    asg = representatives(alg.params, alg.table, alg.quiver, pres)
    rep = verify_relations(rels, asg, f"D({alg.params.n},{alg.params.q}) {pres.value}")
    cf = closed_form_checks(alg.params, alg.table, alg.defs, asg)
    out.report(rep, show_all=args.verbose)
    out.report(cf, show_all=args.verbose)
    out.text(f"{rep.passed}/{len(rep)} relations verified")
    out.record("verified", passed=rep.passed, total=len(rep), max_terms=rep.stats.get("max_terms", 0))
    return 0 if rep.ok and cf.ok else 1


def cmd_invariants(args, out: Output) -> int:
    alg = ReconstructionAlgebra.build(*_pair(args))
    pres = group_presentation(alg.params)
    for name, g in pres.generators.items():
        out.record("generator", name=name, element=str(g))
        out.text(f"{name} = {g}")
    gi = generating_invariants(alg.params, alg.table)
    out.text(f"w1^{2 * alg.params.m} = {gi.base}")
    for t in gi.w_family:
        out.record("invariant", t=t, w=str(gi.w_family[t]), v=str(gi.v_family[t]))
        out.text(f"t={t}: {gi.w_family[t]}")
        out.text(f"     {gi.v_family[t]}")
    order = check_group_order(alg.params)
    inv = check_generating_invariants(alg.params, alg.table)
    out.report(order)
    out.report(inv)
    return 0 if order.ok and inv.ok else 1


def cmd_charts(args, out: Output) -> int:
    alg = ReconstructionAlgebra.build(*_pair(args))
    specs = {s.name: s for s in builtin_chart_specs(alg)}
    charts = {}
    for spec in specs.values():
        ch = build_chart(alg, spec)
        charts[spec.name] = ch
        eqs = [str(e) for e in ch.equations]
        out.record(
            "chart",
            name=ch.name,
            conditions=[str(c) for c in spec.conditions],
            free=ch.free_vars,
            eliminated=[[v, str(e)] for v, e in ch.eliminated],
            equations=eqs,
        )
        out.text(f"{ch.name}: {' '.join(str(c) for c in spec.conditions)}")
        out.text(f"  free {', '.join(ch.free_vars)}")
        for v, e in ch.eliminated:
            out.text(f"    {v} = {e}")
        for e in eqs:
            out.text(f"  {e} = 0")
    ok = True
    for g in builtin_glues(alg):
        src = build_chart(alg, specs[g.source], g.source_keep) if g.source_keep else charts[g.source]
        rep = verify_glue(src, charts[g.target], g)
        out.text(str(g))
        out.report(rep)
        ok &= rep.ok
    return 0 if ok else 1


def cmd_sweep(args, out: Output) -> int:
    if args.max_n < 3:
        raise ReconError("sweep bound must be at least 3")
    results = sweep(args.max_n, jobs=args.jobs if args.jobs is not None else jobs_from_env())
    bad = 0
    for r in results:
        out.record("instance", n=r.n, q=r.q, case=r.case, ok=r.ok, sections=r.sections, failures=r.failures)
        if not r.ok:
            bad += 1
            out.text(f"D({r.n},{r.q}) FAILED")
            for f in r.failures:
                out.text(f"  {f}")
    out.record("sweep", instances=len(results), failed=bad)
    out.text(f"{len(results) - bad}/{len(results)} groups passed every check (n <= {args.max_n})")
    return 0 if bad == 0 else 1


COMMANDS: dict[str, Callable] = {
    "expand": cmd_expand,
    "series": cmd_series,
    "quiver": cmd_quiver,
    "relations": cmd_relations,
    "verify": cmd_verify,
    "invariants": cmd_invariants,
    "charts": cmd_charts,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reconalg", description="Type-D reconstruction algebras.")
    parser.add_argument("--version", action="version", version=f"reconalg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def group_cmd(name: str, help_text: str, presentation: bool = False) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--q", type=int, required=True)
        if presentation:
            p.add_argument("--presentation", choices=[x.value for x in Presentation], default="moduli")
        p.add_argument("--format", choices=["text", "machine"], default="text")
        return p

    group_cmd("expand", "continued fraction expansions and case")
    group_cmd("series", "the c, d, r, i, l, b series and their identities")
    group_cmd("quiver", "vertices, ranks and arrows")
    group_cmd("relations", "the relation list", presentation=True)
    v = group_cmd("verify", "check every relation on the matrix representatives", presentation=True)
    v.add_argument("--verbose", action="store_true")
    group_cmd("invariants", "group generators and invariance of the generating polynomials")
    group_cmd("charts", "moduli charts and glue maps (D(3,2) and D(5,3))")
    s = sub.add_parser("sweep", help="run every check over all in-scope (n, q)")
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--jobs", type=int, default=None, help="worker processes (default: RECONALG_JOBS or 1)")
    s.add_argument("--format", choices=["text", "machine"], default="text")
    return parser


def main(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(None if argv is None else list(argv))
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    out = Output(args.format == "machine", args.command)
    try:
        return COMMANDS[args.command](args, out)
    except ReconError as exc:
        out.record("error", message=str(exc))
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
