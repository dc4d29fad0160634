from __future__ import annotations

import json
from fractions import Fraction
from math import gcd
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reconalg import CaseTag, ReconstructionAlgebra, classify
from reconalg.errors import ParameterError, StructuralError
from reconalg.quiver import (
    arrow_counts_check,
    build_dual_graph,
    canonical_cycle,
    expected_zk_minus_zf,
    fundamental_cycle,
    is_negative_definite,
)

FIXTURES = Path(__file__).parent / "fixtures"
DISPLAYS = {
    tuple(map(int, key.split(","))): [tuple(a) for a in arrows]
    for key, arrows in json.loads((FIXTURES / "quiver_displays.json").read_text()).items()
}


@pytest.mark.parametrize("nq", list(DISPLAYS))
def test_quiver_matches_display(nq):
    alg = ReconstructionAlgebra.build(*nq)
    got = sorted((a.name, a.source, a.target) for a in alg.quiver.arrows)
    assert got == sorted(DISPLAYS[nq])


def test_13_8_arrow_total():
    assert len(ReconstructionAlgebra.build(13, 8).quiver.arrows) == 13


def test_k_counts():
    counts = {nq: len(ReconstructionAlgebra.build(*nq).quiver.k_arrows()) for nq in DISPLAYS}
    assert counts == {(13, 8): 1, (73, 56): 3, (7, 4): 2, (7, 5): 1}


def test_ranks():
    q = ReconstructionAlgebra.build(73, 56).quiver
    assert q.ranks == {"*": 1, "+": 1, "-": 1, "1": 2, "2": 2, "3": 2, "4": 1, "5": 1, "6": 1}
    q = ReconstructionAlgebra.build(7, 4).quiver
    assert q.ranks == {"*": 1, "+": 1, "-": 1, "1": 2, "2": 1}


def test_73_56_tables():
    t = ReconstructionAlgebra.build(73, 56).tables
    assert t.S == 4
    assert (t.B[1], t.B[2], t.B[3], t.B[4]) == (3, 4, 4, 6)
    assert (t.u[4], t.v[4]) == (3, 2)
    assert (t.u[6], t.v[6]) == (5, 4)
    assert (t.W[5], t.W[6], t.V[5], t.V[6]) == (4, 4, 3, 3)


def test_k_aliases_case_a():
    t = ReconstructionAlgebra.build(13, 8).tables
    assert t.k(1) == "g_{1,0}" and t.k(t.S + 1) == "cl_{3,0}" and t.k(2) == "k_2"


@pytest.mark.parametrize(
    "nq,si",
    [
        ((13, 8), {"+": -2, "-": -2, "1": -2, "2": -3, "3": -3}),
        ((3, 2), {"+": -2, "-": -2, "1": -2, "2": -2}),
        ((5, 3), {"+": -2, "-": -2, "1": -2, "2": -3}),
    ],
)
def test_self_intersections(nq, si):
    assert build_dual_graph(classify(*nq)).self_intersections == si


@pytest.mark.parametrize(
    "nq,zf",
    [
        ((13, 8), {"+": 1, "-": 1, "1": 2, "2": 1, "3": 1}),
        ((7, 5), {"+": 1, "-": 1, "1": 2, "2": 2, "3": 1}),
    ],
)
def test_fundamental_cycle(nq, zf):
    assert fundamental_cycle(build_dual_graph(classify(*nq))) == zf


def test_13_8_arrows_to_star_from_cycle():
    alg = ReconstructionAlgebra.build(13, 8)
    g, zf = alg.dual_graph, alg.fundamental_cycle
    assert -g.cycle_dot(zf, "3") == 2 == len(alg.quiver.arrows_between("3", "*"))
    assert -g.cycle_dot(zf, "+") == 0 and -g.cycle_dot(zf, "-") == 0


def test_canonical_cycle_adjunction():
    g = build_dual_graph(classify(73, 56))
    zk = canonical_cycle(g)
    for t in g.vertices:
        assert g.cycle_dot(zk, t) == g.self_intersections[t] + 2
    assert all(isinstance(v, Fraction) for v in zk.values())


def test_dual_graph_rejects_out_of_scope():
    with pytest.raises(ParameterError):
        build_dual_graph(classify(11, 4))


def test_unknown_arrow():
    q = ReconstructionAlgebra.build(7, 4).quiver
    with pytest.raises(StructuralError):
        q.arrow("k_9")
    with pytest.raises(StructuralError):
        q.path("f_{0,1}", "f_{0,1}")


in_scope = st.tuples(st.integers(3, 120), st.integers(2, 119)).filter(
    lambda t: t[1] < t[0] < 2 * t[1] and gcd(*t) == 1
)


@given(in_scope)
def test_arrow_counts_random(nq):
    alg = ReconstructionAlgebra.build(*nq)
    assert arrow_counts_check(alg.params, alg.dual_graph, alg.fundamental_cycle, alg.quiver).ok
    assert is_negative_definite(alg.dual_graph)


@given(in_scope)
def test_arrow_budget(nq):
    # doubled extended diagram plus the k-arrows; in CaseA * meets both nu and N
    alg = ReconstructionAlgebra.build(*nq)
    p = alg.params
    k = len(alg.quiver.k_arrows())
    if p.case_tag is CaseTag.CASE_A:
        assert k == alg.tables.S - 1
        assert len(alg.quiver.arrows) == 2 * (p.N + 3) + k
    else:
        assert k == p.jh.alphas[-1] - 2
        assert len(alg.quiver.arrows) == 2 * (p.N + 2) + k


def test_expected_table_sums():
    for nq in [(13, 8), (73, 56)]:
        ex = expected_zk_minus_zf(classify(*nq))
        assert sorted(ex.values()).count(-1) == 1
    ex = expected_zk_minus_zf(classify(7, 4))
    assert ex["1"] == 1
