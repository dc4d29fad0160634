"""Per-instance property suite and the parallel sweep over all in-scope (n, q)."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .algebra import ReconstructionAlgebra
from .contfrac import in_scope_pairs
from .invariants import check_generating_invariants, check_group_order
from .matrep import closed_form_checks, representatives, verify_relations
from .quiver import Presentation, arrow_counts_check, is_negative_definite
from .relations import star_relation_check
from .report import CheckReport
from .series import check_series_identities

INVARIANTS_MAX_N = 40


@dataclass
class InstanceResult:
    n: int
    q: int
    case: str
    sections: dict[str, tuple[int, int]] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    max_terms: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, name: str, rep: CheckReport) -> None:
        self.sections[name] = (rep.passed, len(rep))
        self.failures += [f"{name}: {f.label} ({f.detail})" for f in rep.failures]
        self.max_terms = max(self.max_terms, rep.stats.get("max_terms", 0))


def check_instance(n: int, q: int, invariants: bool | None = None) -> InstanceResult:
    """Every property check for one group; invariants default to n <= 40."""
    alg = ReconstructionAlgebra.build(n, q)
    res = InstanceResult(n, q, alg.params.case_tag.value)
    res.record("series", check_series_identities(alg.table))
    g = alg.dual_graph
    res.record("arrow counts", arrow_counts_check(alg.params, g, alg.fundamental_cycle, alg.quiver))
    nd = CheckReport("negative definite")
    nd.add("dual graph negative definite", is_negative_definite(g))
    res.record("negative definite", nd)
    for pres in Presentation:
        rels = alg.relations(pres)
        asg = representatives(alg.params, alg.table, alg.quiver, pres)
        res.record(f"relations {pres.value}", verify_relations(rels, asg))
        res.record(f"closed forms {pres.value}", closed_form_checks(alg.params, alg.table, alg.defs, asg))
        res.record(f"star relations {pres.value}", star_relation_check(alg.params, rels))
    if invariants if invariants is not None else n <= INVARIANTS_MAX_N:
        res.record("group order", check_group_order(alg.params))
        res.record("invariants", check_generating_invariants(alg.params, alg.table))
    return res


def jobs_from_env(default: int = 1) -> int:
    raw = os.environ.get("RECONALG_JOBS", "")
    if not raw:
        return default
    value = int(raw)
    return value if value > 0 else (os.cpu_count() or 1)


def _run(args: tuple[int, int, bool | None]) -> InstanceResult:
    return check_instance(*args)


def sweep(max_n: int, min_n: int = 3, jobs: int | None = None, invariants: bool | None = None) -> list[InstanceResult]:
    """Results in (n, q) order regardless of the number of worker processes."""
    jobs = jobs_from_env() if jobs is None else jobs
    tasks = [(n, q, invariants) for n, q in in_scope_pairs(max_n, min_n)]
    if jobs <= 1:
        return [_run(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run, tasks, chunksize=4))
