from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from reconalg.exact import (
    BivarPoly,
    Cyclotomic,
    MultiPoly,
    PolyMatrix,
    cyclotomic_coeffs,
    format_bivar,
    parse_bivar,
    totient,
)
from reconalg.exact import bivar as bivar_mod
from reconalg.exact import kernels
from reconalg.exact.multipoly import variables

X, Y = BivarPoly.x(), BivarPoly.y()

# ---------------------------------------------------------------- cyclotomic


def _polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 20, 24, 30, 36])
def test_cyclotomic_product_over_divisors_is_x_m_minus_1(m):
    prod = [1]
    for d in range(1, m + 1):
        if m % d == 0:
            prod = _polymul(prod, list(cyclotomic_coeffs(d)))
    assert prod == [-1] + [0] * (m - 1) + [1]
    assert len(cyclotomic_coeffs(m)) - 1 == totient(m)


def test_phi_12_by_hand():
    # x^4 - x^2 + 1
    assert cyclotomic_coeffs(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("m", [4, 8, 12, 40, 56])
def test_zeta_has_exact_order(m):
    z = Cyclotomic.zeta(m)
    assert z**m == 1
    assert all(z**k != 1 for k in range(1, m))


def test_zeta4_squared_is_minus_one():
    assert Cyclotomic.zeta(4) ** 2 == -1
    assert Cyclotomic.zeta(40, 10) ** 2 == -1


def test_zeta_exponent_reduced_mod_order():
    assert Cyclotomic.zeta(12, 17) == Cyclotomic.zeta(12, 5)
    assert Cyclotomic.zeta(12, -1) == Cyclotomic.zeta(12, 11)


def test_sum_of_primitive_roots_is_mobius():
    # sum of the primitive 12th roots of unity is mu(12) = 0; for 10 it is mu(10) = 1
    for m, mu in ((12, 0), (10, 1), (9, 0), (7, -1)):
        total = sum((Cyclotomic.zeta(m, k) for k in range(1, m + 1) if np.gcd(k, m) == 1), Cyclotomic.zero(m))
        assert total == mu


cyc_elems = st.builds(
    lambda cs: Cyclotomic(12, cs),
    st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=0, max_size=8),
)


@given(cyc_elems, cyc_elems, cyc_elems)
def test_cyclotomic_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


def test_cyclotomic_rational_value():
    assert Cyclotomic.scalar(8, Fraction(3, 2)).rational_value() == Fraction(3, 2)
    assert Cyclotomic.zeta(8).rational_value() is None


def test_cyclotomic_order_mismatch():
    from reconalg.errors import StructuralError

    with pytest.raises(StructuralError):
        Cyclotomic.zeta(8) + Cyclotomic.zeta(12)


# ---------------------------------------------------------------- bivariate


def test_skew_zero_product():
    # row(x, y) . col(-y, x) vanishes
    m = PolyMatrix.row(X, Y) @ PolyMatrix.col(-Y, X)
    assert m.shape == (1, 1) and m.is_zero()


def test_skew_zero_product_m5():
    m = 5
    out = PolyMatrix.row(-(Y**m), X**m) @ PolyMatrix.col(X**m, Y**m)
    assert out.is_zero()


def test_format_is_degree_lex_with_fractions():
    p = BivarPoly({(8, 3): 1, (4, 7): Fraction(-1, 2)})
    assert format_bivar(p) == "x^8*y^3 - 1/2*x^4*y^7"


def test_format_constants_and_zero():
    assert format_bivar(BivarPoly.zero()) == "0"
    assert format_bivar(BivarPoly.const(-3)) == "-3"
    assert format_bivar(X * Y) == "x*y"


exps = st.tuples(st.integers(0, 12), st.integers(0, 12))
coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=7)
polys = st.dictionaries(exps, coeffs, max_size=10).map(BivarPoly)


@given(polys)
def test_format_parse_roundtrip(p):
    assert parse_bivar(format_bivar(p)) == p


@given(polys, polys, polys)
def test_bivar_ring_axioms(p, q, r):
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p - q) + q == p


@given(polys, polys, st.fractions(-3, 3, max_denominator=4), st.fractions(-3, 3, max_denominator=4))
def test_bivar_evaluation_is_a_homomorphism(p, q, x, y):
    assert (p * q).evaluate(x, y) == p.evaluate(x, y) * q.evaluate(x, y)
    assert (p + q).evaluate(x, y) == p.evaluate(x, y) + q.evaluate(x, y)


def test_binomial_expansion():
    p = (X + Y) ** 5
    assert [p.coeff(5 - k, k) for k in range(6)] == [1, 5, 10, 10, 5, 1]


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        BivarPoly({(-1, 0): 1})


# ---------------------------------------------------------------- kernels


int_polys = st.dictionaries(exps, st.integers(-1000, 1000), min_size=1, max_size=40).map(BivarPoly)


@given(int_polys, int_polys)
def test_kernel_product_matches_dict_product(p, q):
    slow = BivarPoly(bivar_mod._dict_mul(p.terms, q.terms))
    fast = bivar_mod._kernel_mul(p.terms, q.terms)
    assert fast == slow


def _encode(p: BivarPoly, stride: int):
    keys = np.array([a * stride + b for a, b in p.terms], dtype=np.int64)
    coefs = np.array(list(p.terms.values()), dtype=np.int64)
    return keys, coefs


@given(int_polys, int_polys)
def test_numpy_and_loop_kernels_agree(p, q):
    ak, ac = _encode(p, 40)
    bk, bc = _encode(q, 40)
    k1, c1 = kernels.mul_numpy(ak, ac, bk, bc)
    k2, c2 = kernels.mul_python_loop(ak, ac, bk, bc)
    assert k1.tolist() == k2.tolist() and c1.tolist() == c2.tolist()
    if kernels.mul_numba is not None:
        k3, c3 = kernels.mul_numba(ak, ac, bk, bc)
        assert k3.tolist() == k1.tolist() and c3.tolist() == c1.tolist()


def test_kernel_declines_fraction_coefficients():
    p = BivarPoly({(0, 0): Fraction(1, 2), (1, 0): 1})
    assert bivar_mod._kernel_mul(p.terms, p.terms) is None


def test_kernel_declines_on_overflow_risk():
    big = 2**40
    p = BivarPoly({(k, 0): big for k in range(30)})
    assert bivar_mod._kernel_mul(p.terms, p.terms) is None
    # the product still comes out exactly through the dict path
    assert (p * p).coeff(29, 0) == 30 * big * big


def test_large_integer_product_uses_kernel_and_is_exact():
    p = (X + Y + 1) ** 20
    q = (X - Y) ** 20
    assert len(p.terms) * len(q.terms) >= bivar_mod.KERNEL_MIN_PAIRS
    slow = BivarPoly(bivar_mod._dict_mul(p.terms, q.terms))
    assert p * q == slow


def test_backend_flag_values():
    assert kernels.BACKEND in ("numba", "numpy")


def test_backend_env_selection(monkeypatch):
    monkeypatch.setenv("RECONALG_DISABLE_NUMBA", "1")
    assert kernels._select_backend() == "numpy"
    monkeypatch.delenv("RECONALG_DISABLE_NUMBA")
    monkeypatch.setenv("RECONALG_BACKEND", "numpy")
    assert kernels._select_backend() == "numpy"
    monkeypatch.setenv("RECONALG_BACKEND", "fortran")
    with pytest.raises(ValueError):
        kernels._select_backend()


def test_fits_int64_guard():
    assert kernels.fits_int64(2**20, 2**20, 2**20)
    assert not kernels.fits_int64(2**32, 2**32, 2)


# ---------------------------------------------------------------- cyclotomic coefficients in polynomials


def test_bivar_with_cyclotomic_coefficients():
    z = Cyclotomic.zeta(8)
    p = BivarPoly({(1, 0): z, (0, 1): z**3})
    assert (p * p).coeff(1, 1) == 2 * z**4
    assert (p * p).coeff(1, 1) == -2


# ---------------------------------------------------------------- matrices


def test_polymatrix_shapes_and_errors():
    from reconalg.errors import ShapeError

    a = PolyMatrix.row(X, Y)
    with pytest.raises(ShapeError):
        a @ a


@given(polys, polys, polys, polys)
def test_polymatrix_associative(a, b, c, d):
    m1 = PolyMatrix([[a, b], [c, d]])
    m2 = PolyMatrix([[d, c], [b, a]])
    m3 = PolyMatrix.col(a, d)
    assert (m1 @ m2) @ m3 == m1 @ (m2 @ m3)


# ---------------------------------------------------------------- multivariate


def test_multipoly_subs_and_laurent():
    d, D, C = variables("d1", "D1", "C2")
    eq = d * D - (d * D**2 - 1) * C
    pulled = eq.subs({"d1": -d * D**2})
    assert pulled == -d * D**3 - (-d * D**4 - 1) * C
    inv = D**-1
    assert inv.is_laurent()
    assert (inv * D) == MultiPoly.const(1)


def test_multipoly_primitive_and_division():
    a, b = variables("a", "b")
    p = (a * Fraction(1, 2) - b * Fraction(3, 4)) * -1
    assert str(p.primitive()) == "2*a - 3*b"
    q = (a + b) * (a - b)
    assert q.divide_exact(a + b) == a - b
    assert q.divide_exact(a + 2 * b) is None


def test_multipoly_strip_monomial():
    a, b = variables("a", "b")
    p = a**2 * b + a**3 * b**2
    stripped, mono = p.strip_monomial()
    assert stripped == 1 + a * b and mono == (2, 1)


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_multipoly_product_degree(c1, c2):
    a, b = variables("a", "b")
    p = c1[0] * a**2 + c1[1] * a * b + c1[2]
    q = c2[0] * b**2 + c2[1] * a + c2[2]
    prod = p * q
    if not p.is_zero() and not q.is_zero():
        assert not prod.is_zero()
