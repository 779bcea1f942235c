from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nisv.errors import OrderMismatch
from nisv.frame import Frame, directed_defect, orthonormalize, subspace_gap


def _random_frame(seed, N, d):
    rng = np.random.default_rng(seed)
    return orthonormalize(list(rng.normal(size=(d, N)) + 1j * rng.normal(size=(d, N))))


@given(st.integers(0, 10**6), st.integers(1, 6), st.integers(1, 6))
def test_gap_is_symmetric_and_bounded(seed, d1, d2):
    A = _random_frame(seed, 16, d1)
    B = _random_frame(seed + 1, 16, d2)
    g1 = subspace_gap(A, B)[2]
    g2 = subspace_gap(B, A)[2]
    assert g1 == g2 and 0 <= g1 <= 1


@given(st.integers(0, 10**6), st.integers(1, 8))
def test_orthonormalized_frames_are_orthonormal(seed, d):
    A = _random_frame(seed, 20, d)
    assert np.allclose(A.basis.conj().T @ A.basis, np.eye(d), atol=1e-12)


@given(st.integers(0, 10**6))
def test_subspaces_have_zero_directed_defect(seed):
    A = _random_frame(seed, 16, 5)
    sub = Frame(A.basis[:, :2])
    assert directed_defect(sub, A) < 1e-13
    assert subspace_gap(sub, A)[1] == pytest.approx(1.0)


def test_gap_of_a_rotated_line_is_the_sine_of_the_angle():
    t = 0.3
    A = Frame(np.array([1.0, 0.0]))
    B = Frame(np.array([np.cos(t), np.sin(t)]))
    assert subspace_gap(A, B)[2] == pytest.approx(np.sin(t))


def test_dependent_generators_are_dropped():
    F = orthonormalize([np.array([1.0, 0, 0]), np.array([2.0, 0, 0]), np.array([0, 1.0, 0])])
    assert F.dim == 2


def test_non_orthonormal_basis_is_rejected():
    with pytest.raises(ValueError):
        Frame(np.array([[1.0, 1.0], [0.0, 1.0]]))


def test_orders_must_agree():
    with pytest.raises(OrderMismatch):
        directed_defect(Frame(np.eye(3)[:, :1]), Frame(np.eye(4)[:, :1]))
