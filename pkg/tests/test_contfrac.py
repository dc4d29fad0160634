from __future__ import annotations

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reconalg import CaseTag, classify
from reconalg.contfrac import COMPANION_MESSAGE, dual_expand, evaluate, in_scope_pairs, jh_expand
from reconalg.errors import ParameterError


@pytest.mark.parametrize(
    "n,q,alphas",
    [
        (13, 8, (2, 3, 3)),
        (73, 56, (2, 2, 2, 5, 2, 3)),
        (7, 4, (2, 4)),
        (7, 5, (2, 2, 3)),
    ],
)
def test_worked_expansions(n, q, alphas):
    assert jh_expand(n, q).alphas == alphas


@pytest.mark.parametrize("n,q,values,e", [(13, 8, (3, 3, 2), 5), (7, 4, (3, 2, 2), 5)])
def test_dual_expansions(n, q, values, e):
    d = dual_expand(n, q)
    assert d.values == values and d.e == e


def test_case_split():
    p = classify(13, 8)
    assert (p.nu, p.case_tag, p.N) == (1, CaseTag.CASE_A, 3)
    p = classify(7, 5)
    assert (p.nu, p.case_tag) == (2, CaseTag.CASE_B)
    assert classify(73, 56).nu == 3
    assert classify(11, 4).case_tag is CaseTag.OUT_OF_SCOPE


def test_out_of_scope_is_a_value_then_an_error_on_demand():
    p = classify(11, 4)
    with pytest.raises(ParameterError, match="out of scope"):
        p.require_in_scope()
    assert "n < 2q" in COMPANION_MESSAGE


@pytest.mark.parametrize("n,q", [(4, 2), (5, 1), (3, 3), (2, 5), (9, 6)])
def test_invalid_pairs(n, q):
    with pytest.raises(ParameterError):
        classify(n, q)


def test_dual_index_bounds():
    d = dual_expand(13, 8)
    assert d.a(2) == 3 and d.a(4) == 2
    with pytest.raises(IndexError):
        d.a(1)
    with pytest.raises(IndexError):
        d.a(5)


coprime = st.tuples(st.integers(3, 400), st.integers(2, 399)).filter(lambda t: t[1] < t[0] and gcd(*t) == 1)


@given(coprime)
def test_expansions_evaluate_back(nq):
    n, q = nq
    jh = jh_expand(n, q)
    assert evaluate(jh.alphas) == Fraction(n, q)
    assert all(a >= 2 for a in jh.alphas)
    dual = dual_expand(n, q)
    assert dual.value() == Fraction(n, n - q)


@given(coprime)
def test_in_scope_iff_leading_two(nq):
    n, q = nq
    p = classify(n, q)
    assert (p.case_tag is CaseTag.OUT_OF_SCOPE) == (n > 2 * q)
    if p.case_tag is not CaseTag.OUT_OF_SCOPE:
        assert all(a == 2 for a in p.jh.alphas[: p.nu])
        assert 1 <= p.nu <= p.N - 1


@given(coprime)
def test_riemenschneider_duality_sum(nq):
    # sum(alpha_i - 1) = sum(a_j - 1) for dual Jung-Hirzebruch expansions
    n, q = nq
    jh, dual = jh_expand(n, q), dual_expand(n, q)
    assert sum(a - 1 for a in jh.alphas) == sum(a - 1 for a in dual.values)


def test_in_scope_pairs():
    pairs = list(in_scope_pairs(8))
    assert pairs == [(3, 2), (4, 3), (5, 3), (5, 4), (6, 5), (7, 4), (7, 5), (7, 6), (8, 5), (8, 7)]
    for n, q in in_scope_pairs(60):
        assert n < 2 * q and gcd(n, q) == 1
