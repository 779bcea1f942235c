from __future__ import annotations

import numpy as np
import pytest
import sympy as sp

from nisv.core import BoundaryGrid
from nisv.grammar import GrammarError, parse_symbol
from nisv.halfplane import HalfPlaneRational
from nisv.rational import S
from nisv.symbols import Automorphism, ConjMonomial, SingularInner

w = BoundaryGrid(64).nodes


def test_blaschke_factor():
    e = parse_symbol("blaschke(0.5)")
    assert isinstance(e, Automorphism) and e.a == 0.5
    assert np.allclose(e(w), (0.5 - w) / (1 - 0.5 * w))


def test_products_powers_and_singular_inner():
    e = parse_symbol("z^3*phi(1)")
    assert np.allclose(e(w), w**3 * SingularInner(1.0)(w))
    assert e.inner


def test_conjugate_monomial_powers_fold():
    e = parse_symbol("conj(z)^3")
    assert isinstance(e, ConjMonomial) and e.k == 3


def test_rational_expressions_and_division():
    e = parse_symbol("(z+2)/(3-z)")
    assert np.allclose(e(w), (w + 2) / (3 - w))
    e2 = parse_symbol("blaschke(1/2)/2")
    assert np.allclose(e2(w), 0.5 * (0.5 - w) / (1 - 0.5 * w))


def test_halfplane_functions_with_delay():
    g = parse_symbol("rat((s+3)/((s+1)*(s+2))) * exp(-1*s)")
    assert isinstance(g, HalfPlaneRational)
    assert g.delay == 1
    assert g.rational.equals(HalfPlaneRational.of((S + 3) / ((S + 1) * (S + 2))).rational)


def test_complex_constants():
    e = parse_symbol("z + I")
    assert np.allclose(e(w), w + 1j)


@pytest.mark.parametrize(
    "text",
    ["foo(1)", "z +", "blaschke(2)", "phi(I)", "exp(2*s)", "z + s", "blaschke(0.5) + z", "z^(1/2)", "__import__('os')"],
)
def test_invalid_input_raises_value_errors(text):
    with pytest.raises(ValueError):
        parse_symbol(text)


def test_grammar_errors_are_value_errors():
    assert issubclass(GrammarError, ValueError)
