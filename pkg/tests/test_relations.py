from __future__ import annotations

from fractions import Fraction

import pytest

from reconalg import Presentation, ReconstructionAlgebra
from reconalg.errors import StructuralError
from reconalg.paths import PathSum
from reconalg.relations import (
    load_fixture,
    match_up_to_sign,
    parse_relation,
    relation_census,
    star_relation_check,
)

FIXTURE_CASES = [
    ("d13_8_symmetric.txt", 13, 8, Presentation.SYMMETRIC, 11),
    ("d73_56_moduli.txt", 73, 56, Presentation.MODULI, 18),
    ("d7_4_moduli.txt", 7, 4, Presentation.MODULI, 9),
    ("d7_5_symmetric.txt", 7, 5, Presentation.SYMMETRIC, 8),
]


@pytest.mark.parametrize("fname,n,q,pres,count", FIXTURE_CASES)
def test_fixture_matches_generated(fixture_dir, fname, n, q, pres, count):
    alg = ReconstructionAlgebra.build(n, q)
    expected = load_fixture(fixture_dir / fname, alg.quiver, alg.tables)
    generated = alg.relations(pres)
    assert len(expected) == count
    assert len(generated) == count
    missing, extra = match_up_to_sign(generated, expected)
    assert missing == [] and extra == []


@pytest.mark.parametrize("fname,n,q,pres,count", FIXTURE_CASES)
def test_other_presentation_differs(fixture_dir, fname, n, q, pres, count):
    # the w/v distinction is visible in the relation set whenever a 1/2-symmetrized path occurs
    alg = ReconstructionAlgebra.build(n, q)
    other = Presentation.MODULI if pres is Presentation.SYMMETRIC else Presentation.SYMMETRIC
    expected = load_fixture(fixture_dir / fname, alg.quiver, alg.tables)
    missing, _ = match_up_to_sign(alg.relations(other), expected)
    assert missing


def test_parser_distributes_and_scales():
    alg = ReconstructionAlgebra.build(13, 8)
    r = parse_relation("1/2 f_{2,1} (f_{1,+} g_{+,1} + f_{1,-} g_{-,1}) g_{1,2} = cl_{2,3} an_{3,2}", alg.quiver)
    assert (r.source, r.target) == ("2", "2")
    coeffs = sorted(c for _, c in r.terms.sorted_terms())
    assert coeffs == [Fraction(-1), Fraction(1, 2), Fraction(1, 2)]


def test_parser_alias_for_k1():
    alg = ReconstructionAlgebra.build(13, 8)
    r = parse_relation("k_1 f_{0,1} = f_{1,+} g_{+,1}", alg.quiver, alg.tables)
    names = {w.arrows for w, _ in r.terms.sorted_terms()}
    assert ("g_{1,0}", "f_{0,1}") in names


def test_parser_rejects_nonparallel_and_trivial():
    alg = ReconstructionAlgebra.build(7, 4)
    with pytest.raises(StructuralError):
        parse_relation("f_{0,1} = g_{1,0}", alg.quiver)
    with pytest.raises(StructuralError):
        parse_relation("f_{0,1} g_{1,0} = f_{0,1} g_{1,0}", alg.quiver)
    with pytest.raises(StructuralError):
        parse_relation("f_{0,1} f_{0,1} = 0", alg.quiver)


def test_parser_rejects_garbage():
    alg = ReconstructionAlgebra.build(7, 4)
    with pytest.raises(ValueError):
        parse_relation("f_{0,1} g_{1,0}", alg.quiver)
    with pytest.raises(ValueError):
        parse_relation("f_{0,1} g_{1,0} = 0 )", alg.quiver)


def test_sign_insensitive_matching():
    alg = ReconstructionAlgebra.build(7, 4)
    a = parse_relation("g_{+,1} f_{1,+} = 0", alg.quiver)
    b = parse_relation("-1 g_{+,1} f_{1,+} = 0", alg.quiver)
    assert a.same_up_to_sign(b)
    assert match_up_to_sign([a], [b]) == ([], [])
    assert match_up_to_sign([a, a], [b]) == ([], [a])


@pytest.mark.parametrize("n", range(3, 13))
def test_preprojective_degeneration(n):
    alg = ReconstructionAlgebra.build(n, n - 1)
    assert alg.quiver.k_arrows() == []
    rels = alg.relations()
    # one zero relation per leaf or loop vertex plus the mesh relations along the chain
    assert len(rels) == len(alg.quiver.vertices)
    assert all(r.is_cycle for r in rels)


def test_3_2_relations_by_hand():
    alg = ReconstructionAlgebra.build(3, 2)
    q = alg.quiver
    want = [
        "f_{0,1} g_{1,0} = 0",
        "g_{-,1} f_{1,-} = 0",
        "g_{+,1} f_{1,+} = 0",
        "f_{2,1} g_{1,2} = 0",
        "g_{1,0} f_{0,1} - g_{1,2} f_{2,1} = f_{1,+} g_{+,1} - f_{1,-} g_{-,1}",
    ]
    expected = [parse_relation(s, q) for s in want]
    for pres in Presentation:
        assert match_up_to_sign(alg.relations(pres), expected) == ([], [])


def test_census_13_8():
    census = relation_census(ReconstructionAlgebra.build(13, 8).relations(Presentation.SYMMETRIC))
    assert census[("*", "2")] == 1
    for v in ("+", "-", "*", "1", "2", "3"):
        assert census.get((v, v), 0) >= 1


def test_census_7_5_cycles_from_k_block():
    rels = ReconstructionAlgebra.build(7, 5).relations(Presentation.SYMMETRIC)
    k_rels = [r for r in rels if any("k_1" in w.arrows for w, _ in r.terms.sorted_terms())]
    assert sorted((r.source, r.target) for r in k_rels) == [("*", "*"), ("3", "3")]


@pytest.mark.parametrize("nq", [(13, 8), (73, 56), (7, 4), (7, 5), (11, 7), (19, 11)])
def test_star_relation_counts(nq):
    alg = ReconstructionAlgebra.build(*nq)
    for pres in Presentation:
        assert star_relation_check(alg.params, alg.relations(pres)).ok


def test_relation_text_roundtrip():
    for nq in [(13, 8), (7, 5), (73, 56)]:
        alg = ReconstructionAlgebra.build(*nq)
        for pres in Presentation:
            rels = alg.relations(pres)
            back = [parse_relation(str(r), alg.quiver) for r in rels]
            assert match_up_to_sign(rels, back) == ([], [])


def test_presentation_from_string():
    alg = ReconstructionAlgebra.build(7, 5)
    assert [str(r) for r in alg.relations("symmetric")] == [str(r) for r in alg.relations(Presentation.SYMMETRIC)]
    with pytest.raises(ValueError):
        alg.relations("other")


def test_pathsum_canonical_sign():
    alg = ReconstructionAlgebra.build(7, 4)
    p = PathSum.of(alg.quiver.path("f_{0,1}", "g_{1,0}"))
    assert p.canonical() == (-p).canonical()
