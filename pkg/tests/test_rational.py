from __future__ import annotations

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from nisv.rational import S, Z, RationalFn, classify_circle, polynomial_roots, to_exact

small = st.integers(-5, 5)


def test_from_expr_cancels_common_factors():
    R = RationalFn.from_expr((Z**2 - 1) / (Z - 1))
    assert R.deg_den == 0 and R.equals(RationalFn.from_expr(Z + 1))


def test_exact_equality_has_zero_tolerance():
    a = RationalFn.from_expr(1 / (1 + Z) + 1 / (1 - Z))
    b = RationalFn.from_expr(2 / (1 - Z**2))
    assert a.equals(b)
    c = RationalFn.from_expr(2 / (1 - Z**2) + sp.Rational(1, 10**30))
    assert not a.equals(c)


def test_floats_keep_their_binary_value():
    assert to_exact(0.5) == sp.Rational(1, 2)
    assert to_exact(0.1) != sp.Rational(1, 10)
    assert to_exact(1 + 2j) == 1 + 2 * sp.I


@given(small, small, st.integers(2, 6))
def test_zeros_and_poles_are_found(a, b, c):
    R = RationalFn.from_expr((Z - a) * (Z - b) / (Z - sp.Rational(c, 7)) ** 2)
    zs = sorted(r.real for r, m in R.zeros() for _ in range(m))
    assert zs == pytest.approx(sorted([a, b]), abs=1e-9)
    (p, m), = R.poles()
    assert m == 2 and p == pytest.approx(c / 7)


@given(st.floats(0, 2 * np.pi), small, small)
def test_conj_on_circle_matches_pointwise_conjugate(t, a, b):
    R = RationalFn.from_expr((Z + a + sp.I) / (Z - 3 - b * sp.I / 2 - 10))
    w = np.exp(1j * t)
    assert R.conj_on_circle()(w) == pytest.approx(np.conj(R(w)), rel=1e-12, abs=1e-12)


def test_variable_mismatch_is_an_error():
    with pytest.raises(ValueError):
        RationalFn.from_expr(Z) * RationalFn.from_expr(S, S)


def test_circle_classification_snaps_a_band():
    assert classify_circle(1 + 1e-10) == "on"
    assert classify_circle(0.5) == "inside"
    assert classify_circle(2j) == "outside"


def test_clustered_roots_are_merged_with_multiplicity():
    coeffs = np.polynomial.polynomial.polyfromroots([0.5, 0.5, 0.5, -2])
    out = dict((round(r.real, 6), m) for r, m in polynomial_roots(coeffs))
    assert out == {-2.0: 1, 0.5: 3}


def test_subnormal_floats_become_exact_zero():
    from nisv.rational import to_exact

    assert to_exact(5e-324) == 0 and to_exact(complex(0.5, 1e-310)) == sp.Rational(1, 2)
    assert to_exact(1e-300) != 0
