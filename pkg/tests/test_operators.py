from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nisv.core import HardyFunction, analyze, szego_kernel
from nisv.errors import IllConditionedKernel
from nisv.frame import Frame, subspace_gap
from nisv.operators import (
    OperatorMatrix,
    backward_shift,
    compose_apply,
    forward_shift,
    map_frame,
    model_space_frame,
    multiply,
    numeric_kernel,
    toeplitz_matrix,
)
from nisv.rational import Z, RationalFn
from nisv.symbols import Automorphism, ConjMonomial, Product, Rational, SingularInner

N = 256
disc_points = st.tuples(st.floats(0, 0.9), st.floats(0, 2 * np.pi)).map(lambda p: p[0] * np.exp(1j * p[1]))


def test_toeplitz_of_conjugate_z_is_the_backward_shift():
    T = toeplitz_matrix(ConjMonomial(1), N).entries
    S_star = np.eye(N, k=1)
    assert np.allclose(T, S_star, atol=1e-14)


def test_analytic_symbols_give_lower_triangular_matrices():
    sym = Rational(RationalFn.from_expr((2 + Z) / (3 - Z)))
    T = toeplitz_matrix(sym, N).entries
    assert np.allclose(np.triu(T, 1), 0, atol=1e-14)
    f = analyze(lambda w: 1 / (4 - w), N)
    assert np.allclose(T @ f.coeffs, multiply(f, sym).coeffs, atol=1e-13)


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_kernel_of_conjugate_monomial_is_polynomials_of_degree_below_k(k):
    K = numeric_kernel(toeplitz_matrix(ConjMonomial(k), N))
    assert K.frame.dim == k
    assert subspace_gap(K.frame, Frame(np.eye(N)[:, :k]))[2] < 1e-12


def test_kernel_without_spectral_gap_raises():
    A = np.diag(np.logspace(0, -12, 20))
    with pytest.raises(IllConditionedKernel) as exc:
        numeric_kernel(OperatorMatrix(A, "graded"))
    assert exc.value.singular_values is not None


@given(disc_points)
def test_model_space_of_a_blaschke_factor_is_its_reproducing_kernel(a):
    b = Automorphism(a, 1.0)
    K = model_space_frame(b, N)
    assert K.dim == 1
    assert K.distance(szego_kernel(a, N)) < 1e-10


def test_model_space_of_z_cubed_is_quadratic_polynomials():
    K = model_space_frame(Rational(RationalFn.from_expr(Z**3)), N)
    assert subspace_gap(K, Frame(np.eye(N)[:, :3]))[2] < 1e-13


def test_model_space_needs_an_inner_function():
    with pytest.raises(ValueError):
        model_space_frame(Rational(RationalFn.from_expr(Z / 2)), N)


def test_model_space_frame_for_singular_inner_is_a_compression():
    K = model_space_frame(Product.of(Automorphism(0, -1.0), SingularInner(1.0)), 128)
    assert K.dim > 1


@given(disc_points)
def test_composition_with_an_involution_is_an_involution(a):
    psi = Automorphism(a, 1.0)
    f = analyze(lambda w: (1 + 2 * w) / (3 - w), N)
    back = compose_apply(psi, compose_apply(psi, f))
    assert np.allclose(back.coeffs, f.coeffs, atol=1e-8)


def test_shifts_are_adjoint_on_truncations():
    rng = np.random.default_rng(0)
    f = HardyFunction(rng.normal(size=8) + 0j)
    g = HardyFunction(rng.normal(size=8) + 0j)
    g = HardyFunction(np.append(g.coeffs[:-1], 0))
    assert np.vdot(g.coeffs, backward_shift(f).coeffs) == pytest.approx(np.vdot(forward_shift(g).coeffs, f.coeffs))


def test_map_frame_spans_the_image():
    F = Frame(np.eye(N)[:, :2])
    image = map_frame(F, forward_shift)
    assert subspace_gap(image, Frame(np.eye(N)[:, 1:3]))[2] < 1e-14
