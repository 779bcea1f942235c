from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
import scipy.integrate
from hypothesis import given
from hypothesis import strategies as st

from nisv.halfplane import HalfPlaneRational
from nisv.rational import S, Z, RationalFn
from nisv.symbols import Automorphism, Product, Rational, SingularInner
from nisv.timedomain import (
    ModelSpace,
    Piece,
    ShiftFamily,
    Signal,
    disc_backward_shift,
    disc_to_signal,
    disc_value_at_origin,
    frac_to_ctx,
    laplace_to_signal,
    make_context,
)

FP = mpmath.fp


def _quad_inner(f: Signal, g: Signal, upper: float = 60.0) -> complex:
    """Quadrature oracle for int f conj(g) on (0, upper), split at piece boundaries."""
    cuts = sorted({0.0, upper} | {float(p.start) for p in f.pieces + g.pieces} | {
        float(p.end) for p in f.pieces + g.pieces if p.end is not None})
    cuts = [c for c in cuts if c <= upper]
    total = 0j
    for a, b in zip(cuts, cuts[1:]):
        re = scipy.integrate.quad(lambda t: (f(t) * np.conj(g(t))).real, a, b, limit=200)[0]
        im = scipy.integrate.quad(lambda t: (f(t) * np.conj(g(t))).imag, a, b, limit=200)[0]
        total += re + 1j * im
    return total


def _sig(ctx, start, end, terms) -> Signal:
    return Signal((Piece(Fraction(start), None if end is None else Fraction(end), tuple(terms)),), ctx)


coef = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)
rate = st.floats(0.2, 3.0)


@given(coef, st.integers(0, 3), rate, coef, st.integers(0, 3), rate, st.sampled_from([0, Fraction(1, 2), 1]))
def test_closed_form_inner_products_match_quadrature(c1, k1, r1, c2, k2, r2, shift):
    f = _sig(FP, 0, None, [(c1, k1, r1 + 0.5j)])
    g = _sig(FP, 0, 2, [(c2, k2, r2)]).shift(shift)
    assert complex(f.inner(g)) == pytest.approx(_quad_inner(f, g), abs=1e-8)


def test_backshift_is_the_adjoint_of_shift():
    ctx = make_context(30)
    f = _sig(ctx, 0, None, [(1, 1, 1.5)]) + _sig(ctx, Fraction(1, 3), 1, [(2, 0, 0)])
    g = _sig(ctx, 0, None, [(1, 2, 0.7)])
    tau = Fraction(2, 5)
    lhs = f.shift(tau).inner(g)
    rhs = f.inner(g.backshift(tau))
    assert abs(lhs - rhs) < 1e-25


def test_laplace_to_signal_of_a_double_pole():
    sig = laplace_to_signal(HalfPlaneRational.of(1 / (1 + S) ** 2), FP)
    t = np.linspace(0.1, 5, 9)
    assert np.allclose(sig(t), t * np.exp(-t))


def test_laplace_to_signal_respects_delays():
    sig = laplace_to_signal(HalfPlaneRational.of(1 / (2 + S), 1), FP)
    assert complex(sig(np.array(0.5))) == 0
    assert complex(sig(np.array(1.5))) == pytest.approx(math.exp(-1.0))


def test_laplace_to_signal_rejects_unstable_poles():
    with pytest.raises(ValueError):
        laplace_to_signal(HalfPlaneRational.of(1 / (S - 1)), FP)


@pytest.mark.parametrize("a", [0.0, 0.3, -0.5 + 0.2j])
def test_disc_to_signal_is_isometric(a):
    f = Rational(RationalFn.from_expr(1 / (1 - a * Z) if a else 1 + 0 * Z, Z))
    sig = disc_to_signal(f, FP)
    want = 1 / math.sqrt(1 - abs(a) ** 2)
    assert sig.norm() == pytest.approx(want, rel=1e-12)
    assert complex(disc_value_at_origin(sig)) == pytest.approx(1.0)


def test_singular_inner_is_a_shift_of_the_constant():
    one = disc_to_signal(Rational(RationalFn.constant(1, Z)), FP)
    phi = disc_to_signal(Product.of(SingularInner(0.5)), FP)
    # <phi^d, 1> = phi^d(0) = e^{-d}
    assert complex(phi.inner(one)) == pytest.approx(math.exp(-0.5))


def test_disc_backward_shift_matches_its_coefficient_action():
    # S^* (1 + 2z + 3z^2) = 2 + 3z
    f = Rational(RationalFn.from_expr(1 + 2 * Z + 3 * Z**2, Z))
    g = Rational(RationalFn.from_expr(2 + 3 * Z, Z))
    ctx = make_context(30)
    lhs = disc_backward_shift(disc_to_signal(f, ctx))
    rhs = disc_to_signal(g, ctx)
    assert (lhs - rhs).norm() < 1e-12


def test_model_space_kernel_reproduces_values():
    ctx = make_context(40)
    K = ModelSpace.from_halfplane([(2, 1)], 1, ctx)
    sigma = ctx.mpc(0.7, 0.4)
    k = K.kernel(sigma)
    assert abs(k.norm2() - K.kernel_norm2(sigma)) < 1e-30
    assert K.distance(k) < 1e-15


def test_model_space_distance_of_an_exterior_signal():
    ctx = make_context(40)
    K = ModelSpace.from_halfplane([], 1, ctx)  # L^2(0, 1)
    f = _sig(ctx, 0, None, [(1, 0, 1)])
    # relative distance of e^{-t} from L^2(0,1) is e^{-1}
    assert K.distance(f) == pytest.approx(math.exp(-1), rel=1e-14)


def test_model_space_from_disc_matches_from_halfplane():
    ctx = make_context(30)
    theta = Product.of(Automorphism(0, -1.0), SingularInner(1.0))
    a = ModelSpace.from_disc(theta, ctx)
    assert a.blaschke_degree == 1 and a.delay == 1
    assert abs(a.zeros[0][0] - 1) < 1e-25


def test_shift_family_gram_and_distance():
    ctx = make_context(30)
    g = _sig(ctx, 0, None, [(1, 0, 1)])
    fam = ShiftFamily(g, [0, Fraction(1, 2), 1])
    G = fam.gram()
    for i, x in enumerate(fam.shifts):
        for j, y in enumerate(fam.shifts):
            assert abs(G[i][j] - ctx.exp(-abs(frac_to_ctx(ctx, x - y))) / 2) < 1e-25
    assert fam.rank == 3
    assert fam.distance(g.shift(Fraction(1, 2))) < 1e-12
    # span{e^{-t}} holds only the e^{-t} direction of an indicator
    one = ShiftFamily(g, [0])
    ind = _sig(ctx, 0, 1, [(1, 0, 0)])
    proj = abs(ind.inner(g)) ** 2 / g.norm2()
    assert one.distance(ind) == pytest.approx(math.sqrt(1 - float(proj)), rel=1e-12)


def test_shift_family_containment():
    ctx = make_context(30)
    g = _sig(ctx, 0, 1, [(1, 0, 0)])
    target = ModelSpace.from_halfplane([], 2, ctx)
    assert ShiftFamily(g, [0, Fraction(1, 2), 1]).containment(target) < 1e-12
    assert ShiftFamily(g, [0, Fraction(3, 2)]).containment(target) == pytest.approx(math.sqrt(0.5), rel=1e-12)


def test_shift_family_rejects_negative_shifts():
    with pytest.raises(ValueError):
        ShiftFamily(_sig(FP, 0, None, [(1, 0, 1)]), [-1])
