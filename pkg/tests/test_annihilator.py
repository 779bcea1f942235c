"""A nonzero vector of K_{z^2 phi} orthogonal to every shift of z + w, w on the circle, w != 1.

Under f -> sqrt(2) L^{-1}[f((1-s)/(1+s)) / (1+s)] the polynomial z + w becomes
g(t) = sqrt(2) e^{-t} ((w - 1) + 2 t) and the model space becomes L^2(0, 1) plus
the unit shift of span{e^{-t}, t e^{-t}}.  The vector found here certifies that
the cyclic span of z + w is a proper subspace of that model space.
"""

from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest
import scipy.integrate
import sympy as sp

from nisv.checks import _annihilator, run_check
from nisv.config import Config
from nisv.symbols import PhiRational
from nisv.rational import Z
from nisv.timedomain import disc_to_signal

DELTA = 1.0
THETA = math.pi / 3
W = complex(math.cos(THETA), math.sin(THETA))
FREQ = 1 / math.tan(THETA / 2)


def g(t, w=W):
    return math.sqrt(2) * np.exp(-t) * ((w - 1) + 2 * t)


def basis(t):
    t = np.asarray(t, dtype=float)
    inside = t < DELTA
    u = t - DELTA
    return [
        np.where(inside, np.exp(1j * FREQ * t), 0),
        np.where(inside, 0, np.exp(-u)),
        np.where(inside, 0, u * np.exp(-u)),
    ]


def _cquad(f, a, b):
    re = scipy.integrate.quad(lambda t: complex(f(t)).real, a, b, limit=200)[0]
    im = scipy.integrate.quad(lambda t: complex(f(t)).imag, a, b, limit=200)[0]
    return re + 1j * im


def _row(lam):
    """<S_lam g, b_j> for the three basis pieces, by quadrature."""
    out = []
    for j in range(3):
        f = lambda t, j=j: g(t - lam) * np.conj(basis(t)[j])
        out.append(_cquad(f, lam, DELTA) + _cquad(f, DELTA, 60.0) if lam < DELTA else _cquad(f, lam, 60.0))
    return np.array(out)


@pytest.fixture(scope="module")
def null_vector():
    A = np.array([_row(lam) for lam in (0.0, 0.5, 1.0)])
    _, sv, vh = np.linalg.svd(A)
    assert sv[-1] < 1e-9 * sv[0]
    # A @ conj(vh[-1]) = 0 and rows pair g with conj(b_j), so vh[-1] holds the coefficients of h
    return vh[-1]


def test_generator_matches_the_transform():
    sig = disc_to_signal(PhiRational.of(Z + sp.exp(sp.I * sp.pi / 3)), mpmath.fp)
    t = np.linspace(0.05, 4, 11)
    assert np.allclose(sig(t), g(t), atol=1e-12)


def test_vector_is_orthogonal_to_every_shift(null_vector):
    x = null_vector.conj()
    gn = math.sqrt(scipy.integrate.quad(lambda t: abs(g(t)) ** 2, 0, 60)[0])
    hn = math.sqrt(sum(
        scipy.integrate.quad(lambda t: abs(sum(c * b for c, b in zip(null_vector, basis(t)))) ** 2, a, b)[0]
        for a, b in ((0, DELTA), (DELTA, 60))))
    rng = np.random.default_rng(5)
    for lam in rng.uniform(0, DELTA, 12):
        assert abs(_row(lam) @ x) / (gn * hn) < 1e-9


def test_package_vector_agrees_with_the_oracle():
    d = _annihilator(Config(), sp.exp(sp.I * sp.pi / 3))
    assert d["annihilator_orthogonality"] < 1e-7
    assert d["annihilator_in_target"] < 1e-7  # distance computed in double precision
    assert d["annihilator_probe_overlap"] > 0.5


def test_probe_stall_equals_the_certified_lower_bound():
    w = "exp(I*pi/3)"
    report = run_check("PROP-ZW", {"w": w})
    bound = report.defects["annihilator_probe_overlap"]
    assert not report.passed
    assert report.defects["probe_final"] >= bound * (1 - 1e-9)
    assert report.defects["probe_final"] == pytest.approx(bound, rel=1e-4)


def test_no_such_vector_when_the_zero_sits_at_minus_one():
    # w = 1 forces FREQ -> infinity; the protocol instead converges
    report = run_check("PROP-ZW", {"w": "1"})
    assert report.passed
