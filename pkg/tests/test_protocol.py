from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nisv.protocol import ProtocolResult, lambda_grid, probe_points, two_sided
from nisv.timedomain import ModelSpace, Piece, Signal


@given(st.integers(2, 64), st.sampled_from(["uniform", "graded", "chebyshev"]))
def test_grids_span_the_interval_in_order(M, kind):
    g = lambda_grid(1, M, kind)
    assert len(g) == M and g[0] == 0 and g[-1] == 1
    assert all(a < b for a, b in zip(g, g[1:]))


def test_uniform_grid_is_exact():
    assert lambda_grid(Fraction(1, 2), 3) == [0, Fraction(1, 4), Fraction(1, 2)]
    assert lambda_grid(1, 1) == [0]
    with pytest.raises(ValueError):
        lambda_grid(1, 0)
    with pytest.raises(ValueError):
        lambda_grid(1, 4, "bogus")


def test_graded_grid_clusters_at_the_ends():
    g = [float(x) for x in lambda_grid(1, 9, "graded")]
    assert g[1] < 1 / 8 / 10 and 1 - g[-2] < 1 / 8 / 10


def test_probe_points_are_seeded_and_inside_the_radius():
    a, b = probe_points(), probe_points()
    assert np.array_equal(a, b) and len(a) == 16
    assert np.all(np.abs(a) < 0.5)
    assert not np.array_equal(a, probe_points(seed=18))


def test_monotone_verdict_is_per_probe():
    r = ProtocolResult(0.0, 4, (2, 4), ((0.5, 0.4), (0.3, 0.41)), "uniform", None)
    assert not r.monotone
    r = ProtocolResult(0.0, 4, (2, 4), ((0.5, 0.4), (0.3, 0.2)), "uniform", None)
    assert r.monotone and r.final_probe == 0.3
    assert r.passes(1e-4, 0.31) and not r.passes(1e-4, 0.29)


def test_indicator_shifts_fill_the_interval_model_space():
    # shifts of the indicator of (0, 1/4) on a grid of [0, 3/4] span step functions in L^2(0, 1)
    def gen(ctx):
        return Signal((Piece(Fraction(0), Fraction(1, 4), ((1, 0, 0),)),), ctx)

    res = two_sided(gen, lambda ctx: ModelSpace.from_halfplane([], 1, ctx), Fraction(3, 4),
                    contain_samples=4, ladder=(4,), grid="uniform")
    assert res.containment < 1e-12
    # the probes are not step functions, so a positive distance remains
    assert 0 < res.final_probe < 1
