import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wcentropy.errors import DomainError
from wcentropy.quadrature import QuadratureSpec, integrate_1d
from wcentropy.weights import WeightFunction, psi, psi_star

SPEC = QuadratureSpec()


def test_psi_power_closed_form():
    assert psi(WeightFunction.power(1), 2.0) == pytest.approx(2.0)


def test_psi_constant():
    assert psi(WeightFunction.constant(1), 3.5) == pytest.approx(3.5)


def test_psi_exponential_against_quadrature():
    w = WeightFunction.exponential(1.0)
    oracle = integrate_1d(lambda t: math.exp(-t), 0.0, 1.0, SPEC).value
    assert psi(w, 1.0) == pytest.approx(oracle, abs=1e-12)
    assert psi(w, 1.0) == pytest.approx(1 - math.exp(-1), abs=1e-12)


def test_psi_star_constant():
    assert psi_star(WeightFunction.constant(1), 1.0, 2.0) == pytest.approx(2.0)


def test_psi_star_power():
    assert psi_star(WeightFunction.power(1), 1.0, 1.0) == pytest.approx(1 / 3)


def test_psi_star_exponential_infinite():
    # quadrature oracle for the full integral of t^2 e^{-t}
    oracle = integrate_1d(lambda t: t * t * math.exp(-t), 0.0, 60.0, SPEC).value
    w = WeightFunction.exponential(1.0)
    assert psi_star(w, 2.0, math.inf) == pytest.approx(oracle, abs=1e-9)
    assert psi_star(w, 2.0, math.inf) == pytest.approx(2.0, abs=1e-9)


def test_nonintegrable_power_rejected():
    with pytest.raises(DomainError):
        WeightFunction.power(-1.0)
    w = WeightFunction.power(-0.5)
    assert w.integrable_singularity
    assert psi(w, 4.0) == pytest.approx(4.0)  # 2*sqrt(4)


def test_tabulated_psi_piecewise_exact():
    w = WeightFunction.tabulated([(0, 1), (1, 2), (3, 0.5)])
    # trapezoid by hand: [0,1] -> 1.5, [1,3] -> 2.5, then constant 0.5
    assert psi(w, 4.0) == pytest.approx(4.5)
    assert psi(w, 0.5) == pytest.approx(0.5 * 1 + 0.25 * 0.5)


def test_tabulated_knots_must_increase():
    with pytest.raises(DomainError):
        WeightFunction.tabulated([(0, 1), (0, 2)])
    with pytest.raises(DomainError):
        WeightFunction.tabulated([(0, 1), (1, -2)])


def test_psi_vec_matches_scalar():
    for w in (WeightFunction.constant(2.0), WeightFunction.power(1.5),
              WeightFunction.scaled_power(0.5, 2.0),
              WeightFunction.exponential(0.7),
              WeightFunction.tabulated([(0, 1), (1, 2), (3, 0.5)])):
        xs = np.array([0.0, 0.3, 1.0, 2.5, 5.0])
        vec = w.psi_vec(xs)
        scalars = [w.psi(float(x)) for x in xs]
        assert np.allclose(vec, scalars, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=0.0, max_value=50.0),
       st.floats(min_value=0.0, max_value=50.0))
def test_psi_nondecreasing_and_zero_at_origin(x1, x2):
    for w in (WeightFunction.constant(1.0), WeightFunction.power(0.5),
              WeightFunction.exponential(2.0),
              WeightFunction.tabulated([(0, 0.5), (2, 1.5), (5, 0.1)])):
        assert w.psi(0.0) == 0.0
        lo, hi = sorted((x1, x2))
        assert w.psi(hi) >= w.psi(lo) - 1e-12


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0.01, max_value=30.0))
def test_psi_star_zero_exponent_equals_psi(x):
    for w in (WeightFunction.constant(1.3), WeightFunction.power(1.0),
              WeightFunction.exponential(0.5)):
        assert w.psi_star(0.0, x) == pytest.approx(w.psi(x), abs=1e-10)


def test_psi_inverse_roundtrip():
    w = WeightFunction.exponential(0.5)
    x = w.psi_inverse(1.0)
    assert w.psi(x) == pytest.approx(1.0, abs=1e-10)


def test_scaling():
    w = WeightFunction.power(1.0).scaled(3.0)
    assert float(w(2.0)) == pytest.approx(6.0)
    with pytest.raises(DomainError):
        WeightFunction.exponential(1.0).scaled(2.0)
