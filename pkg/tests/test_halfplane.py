from __future__ import annotations

import math

import numpy as np
import pytest
import scipy.integrate
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from nisv.errors import DomainError, NotInHardySpace
from nisv.halfplane import (
    ExpPoly,
    ExpTerm,
    HalfPlaneRational,
    HalfPlaneSum,
    cayley_pullback,
    cayley_pushforward,
    fm_closed_form,
    inner_obstruction,
    laplace_exact,
    rational_split,
    sample_family,
    sup_on_axis,
    v_inverse,
)
from nisv.rational import S, RationalFn
from nisv.symbols import singular_inner_coeffs

t_sym = sp.Symbol("t", positive=True)


def _integration_oracle(f: ExpPoly, s0: complex) -> complex:
    """Direct sympy integration of e^{-s t} f(t) at a numeric point."""
    total = 0
    for term in f.terms:
        body = term.coef * (t_sym - term.start) ** term.k * sp.exp(-term.rate * t_sym) * sp.exp(-s0 * t_sym)
        upper = sp.oo if term.end is None else term.end
        total += sp.integrate(body, (t_sym, term.start, upper))
    return complex(sp.N(total))


@pytest.mark.parametrize("delta", [sp.Rational(1, 2), 1, 2])
def test_laplace_of_shifted_exponential(delta):
    F = laplace_exact(sample_family("e_delta", delta=delta))
    want = HalfPlaneRational(RationalFn.from_expr(sp.exp(-delta) / (1 + S), S), delta)
    assert F.equals(HalfPlaneSum((want,)))
    assert F(2.0) == pytest.approx(_integration_oracle(sample_family("e_delta", delta=delta), 2.0))


@pytest.mark.parametrize("n", range(5))
def test_laplace_of_polynomial_times_exponential(n):
    f = sample_family("f_delta_n", delta=1, n=n)
    F = laplace_exact(f)
    want = HalfPlaneRational(RationalFn.from_expr(sp.exp(-1) / (1 + S) ** (n + 1), S), 1)
    assert F.equals(HalfPlaneSum((want,)))
    assert F(1.5 + 0.5j) == pytest.approx(_integration_oracle(f, 1.5 + 0.5j), rel=1e-12)


def test_laplace_of_an_indicator():
    f = ExpPoly((ExpTerm(1, 0, 0, 0, 1),))
    F = laplace_exact(f)
    assert F(0.7) == pytest.approx((1 - math.exp(-0.7)) / 0.7, rel=1e-14)


def test_laplace_rejects_non_decaying_tails():
    with pytest.raises(ValueError):
        ExpTerm(1, 0, 0, 0)


@given(st.integers(0, 3), st.floats(0.2, 3.0))
def test_plancherel(n, d):
    f = ExpPoly((ExpTerm(1, n, 1, 0),))
    F = laplace_exact(f)
    l2 = math.factorial(2 * n) / 2 ** (2 * n + 1)
    axis = scipy.integrate.quad(lambda y: abs(F(1j * y)) ** 2, -np.inf, np.inf, limit=200)[0] / (2 * math.pi)
    assert axis == pytest.approx(l2, rel=1e-8)


def test_sample_families():
    assert len(sample_family("e_delta", delta=1).terms) == 1
    assert len(sample_family("f_m", delta=1, m=2).terms) == 3
    assert [t.start for t in sample_family("g_m", deltas=(1, 2)).terms] == [1, 2]
    with pytest.raises(ValueError):
        sample_family("g_m", deltas=(2, 1))
    with pytest.raises(ValueError):
        sample_family("e_delta", delta=0)


@pytest.mark.parametrize("m", range(1, 9))
def test_partial_sums_have_a_closed_form(m):
    lhs, rhs = fm_closed_form(m)
    assert lhs.equals(rhs)


def test_v_inverse_examples():
    N = 128
    rp = math.sqrt(math.pi)
    c = v_inverse(HalfPlaneRational.of(1 / (1 + S)), N).coeffs
    assert c[0] == pytest.approx(rp) and np.allclose(c[1:], 0, atol=1e-14)
    for n in range(4):
        c = v_inverse(HalfPlaneRational.of(((1 - S) / (1 + S)) ** n / (1 + S)), N).coeffs
        e = np.zeros(N)
        e[n] = rp
        assert np.allclose(c, e, atol=1e-13)


def test_v_inverse_of_a_delayed_function_carries_the_singular_inner_factor():
    # exact symbol-level statement; coefficient-level sampling aliases near z = -1
    pr = cayley_pullback(HalfPlaneRational.of(1 / (1 + S), 1))
    (R, t), = pr.terms
    assert t == 1 and R.equals(RationalFn.constant(1))
    c = pr.taylor(64).coeffs
    assert np.allclose(c, singular_inner_coeffs(1.0, 64))


def test_v_inverse_is_isometric_on_rational_functions():
    for expr in [1 / (1 + S) ** 2, (S + 3) / ((1 + S) * (S + 2)), S / (1 + S) ** 3]:
        g = HalfPlaneRational.of(expr)
        half = scipy.integrate.quad(lambda y: abs(g(1j * y)) ** 2, -np.inf, np.inf, limit=200)[0]
        assert v_inverse(g, 256).norm() == pytest.approx(math.sqrt(half), rel=1e-8)


def test_v_inverse_rejects_axis_poles():
    with pytest.raises(DomainError):
        v_inverse(HalfPlaneRational.of(1 / S), 16)


def test_pullback_and_pushforward_are_inverse():
    g = HalfPlaneRational.of((S + 3) / ((1 + S) * (S + 2)), sp.Rational(1, 3))
    back = cayley_pushforward(cayley_pullback(g))
    assert back.equals(HalfPlaneSum((g,)))


def test_split_of_the_invertible_example():
    sp_ = rational_split(HalfPlaneRational.of((S + 3) / ((1 + S) * (S + 2))))
    assert sp_.n == 1 and sp_.m == 0
    assert sp_.G1.rational.equals(RationalFn.from_expr((S + 3) / (S + 2), S))
    assert sp_.G2.rational.equals(RationalFn.from_expr(1 / (1 + S), S))


def test_split_of_pure_powers_and_axis_zeros():
    a = rational_split(HalfPlaneRational.of(1 / (1 + S) ** 3))
    assert a.G1.rational.equals(RationalFn.constant(1, S)) and a.n == 3 and a.m == 0
    b = rational_split(HalfPlaneRational.of(S / (1 + S) ** 2))
    assert b.m == 1 and b.n == 2 and b.axis_zeros == (0j,)
    assert b.G1.rational.equals(RationalFn.constant(1, S))


def test_split_of_partial_sums_uses_the_polynomial_factor():
    _, rhs = fm_closed_form(2)
    res = rational_split(HalfPlaneRational(rhs))
    assert res.m == 0 and res.n == 1
    assert res.G1.rational.equals(RationalFn.from_expr((1 + S) * rhs.expr(), S))


def test_split_rejects_non_outer_functions():
    with pytest.raises(ValueError):
        rational_split(HalfPlaneRational.of((S - 1) / (S + 1) ** 2))
    with pytest.raises(NotInHardySpace):
        rational_split(HalfPlaneRational.of(S / (S + 1)))


def test_obstruction_finds_the_right_half_plane_pole():
    theta = HalfPlaneRational.of((1 - S) / (1 + S), 1)
    obs = inner_obstruction(theta, RationalFn.from_expr((S + 3) / (S + 2), S))
    assert obs["max_pole_real_part"] == pytest.approx(3.0)


def test_obstruction_is_silent_for_inner_ratios():
    theta = HalfPlaneRational.of((1 - S) / (1 + S), 1)
    obs = inner_obstruction(theta, RationalFn.constant(2, S))
    assert obs["max_pole_real_part"] < 0 and obs["axis_modulus_deviation"] < 1e-12


def test_sup_on_the_axis():
    assert sup_on_axis(RationalFn.from_expr((S + 3) / (S + 2), S)) == pytest.approx(1.5)
    assert sup_on_axis(RationalFn.from_expr((S + 2) / (S + 3), S)) == pytest.approx(1.0, abs=1e-9)
