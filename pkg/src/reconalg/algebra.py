"""One-stop construction of every combinatorial object attached to D(n, q)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .contfrac import GroupParams, classify
from .quiver import (
    CompositePathDefs,
    DualGraph,
    ExtraArrowTables,
    Presentation,
    Quiver,
    build_dual_graph,
    build_quiver,
    fundamental_cycle,
)
from .relations import RelationElement, relations
from .series import SeriesTable, compute_series


@dataclass
class ReconstructionAlgebra:
    params: GroupParams
    table: SeriesTable
    quiver: Quiver
    tables: ExtraArrowTables
    defs: CompositePathDefs

    @classmethod
    def build(cls, n: int, q: int) -> "ReconstructionAlgebra":
        params = classify(n, q)
        params.require_in_scope()
        table = compute_series(params)
        quiver, tables, defs = build_quiver(params, table)
        return cls(params, table, quiver, tables, defs)

    @cached_property
    def dual_graph(self) -> DualGraph:
        return build_dual_graph(self.params)

    @cached_property
    def fundamental_cycle(self) -> dict[str, int]:
        return fundamental_cycle(self.dual_graph)

    def relations(self, presentation: Presentation | str = Presentation.MODULI) -> list[RelationElement]:
        return relations(self.params, self.quiver, self.tables, self.defs, presentation)
