"""
Tests for truncated Taylor jet arithmetic.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from infrastructure.errors import ContractViolation
from infrastructure.numerics import taylor_jet as tj
from infrastructure.numerics.taylor_jet import MAX_ORDER, TaylorJet

coordinate = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False, allow_infinity=False)


def seeds(x, y, order=3):
    return TaylorJet.variable(x, 0, order), TaylorJet.variable(y, 1, order)


def assert_unit_jet(jet, atol=1e-12):
    expected = np.zeros_like(jet.coefficients)
    expected[0, 0] = 1.0
    assert_allclose(jet.coefficients, expected, atol=atol)


class TestConstruction:
    def test_variable_partials(self):
        x, _ = seeds(0.7, -0.2)
        assert x.partial(0, 0) == pytest.approx(0.7)
        assert x.partial(1, 0) == 1.0
        assert x.partial(0, 1) == 0.0
        assert x.partial(2, 0) == 0.0

    def test_order_bounds(self):
        with pytest.raises(ContractViolation):
            TaylorJet.constant(1.0, MAX_ORDER + 1)
        with pytest.raises(ContractViolation):
            TaylorJet.variable(0.0, 2, 2)

    def test_partial_beyond_order_raises(self):
        x, _ = seeds(0.0, 0.0, order=2)
        with pytest.raises(ContractViolation):
            x.partial(2, 1)

    def test_batch_shape(self):
        xs = np.linspace(0.0, 1.0, 6).reshape(2, 3)
        x = TaylorJet.variable(xs, 0, 2)
        assert x.batch_shape == (2, 3)
        assert_allclose((x * x).partial(2, 0), np.full((2, 3), 2.0))


class TestArithmetic:
    def test_product_mixed_partial(self):
        x, y = seeds(1.5, -0.5)
        p = x * x * y
        assert p.partial(0, 0) == pytest.approx(1.5**2 * -0.5)
        assert p.partial(1, 1) == pytest.approx(2 * 1.5)
        assert p.partial(2, 1) == pytest.approx(2.0)
        assert p.partial(3, 0) == pytest.approx(0.0)

    def test_mixed_order_truncates_to_smaller(self):
        x3 = TaylorJet.variable(0.1, 0, 3)
        y2 = TaylorJet.variable(0.2, 1, 2)
        assert (x3 + y2).order == 2
        assert (x3 * y2).order == 2

    def test_array_on_the_left_defers_to_jet(self):
        x, _ = seeds(0.3, 0.0)
        out = np.float64(2.0) * x
        assert isinstance(out, TaylorJet)
        assert out.partial(1, 0) == pytest.approx(2.0)

    def test_integer_power(self):
        x, y = seeds(0.5, 2.0)
        assert ((x + y) ** 3).partial(1, 2) == pytest.approx(6.0)
        with pytest.raises(ContractViolation):
            x ** 0.5

    def test_diff_lowers_order(self):
        x, y = seeds(0.4, 0.9)
        f = x * x * y
        df = f.diff(0)
        assert df.order == 2
        assert df.partial(0, 0) == pytest.approx(2 * 0.4 * 0.9)
        assert df.partial(0, 1) == pytest.approx(2 * 0.4)
        with pytest.raises(ContractViolation):
            TaylorJet.constant(1.0, 0).diff(0)

    def test_padded_keeps_affine_seed(self):
        x, _ = seeds(0.2, 0.0, order=2)
        padded = x.padded(3)
        assert padded.order == 3
        assert padded.partial(1, 0) == 1.0
        assert padded.partial(3, 0) == 0.0

    def test_conjugate_of_complex_function(self):
        x, y = seeds(0.3, 0.6)
        f = x + 1j * y * y
        assert f.conjugate().partial(0, 2) == pytest.approx(-2j)


class TestElementaryFunctions:
    def test_exp_partials(self):
        x, y = seeds(0.3, -0.1)
        e = tj.exp(x + 2.0 * y)
        base = math.exp(0.3 - 0.2)
        assert e.partial(1, 1) == pytest.approx(2.0 * base)
        assert e.partial(1, 2) == pytest.approx(4.0 * base)

    @settings(max_examples=40, deadline=None)
    @given(coordinate, coordinate)
    def test_pythagorean_identity(self, x0, y0):
        x, y = seeds(x0, y0)
        u = x * y + 0.5 * x
        assert_unit_jet(tj.sin(u) * tj.sin(u) + tj.cos(u) * tj.cos(u))

    @settings(max_examples=40, deadline=None)
    @given(coordinate, coordinate)
    def test_hyperbolic_identity(self, x0, y0):
        x, y = seeds(x0, y0)
        u = x - 0.3 * y
        assert_unit_jet(tj.cosh(u) * tj.cosh(u) - tj.sinh(u) * tj.sinh(u), atol=1e-10)

    @settings(max_examples=40, deadline=None)
    @given(coordinate, coordinate)
    def test_reciprocal_inverts(self, x0, y0):
        x, y = seeds(x0 / 2.0, y0 / 2.0)
        u = x + 0.5 * y * y + 3.0
        assert_unit_jet(u * tj.reciprocal(u))

    @settings(max_examples=40, deadline=None)
    @given(coordinate, coordinate)
    def test_sqrt_squares_back(self, x0, y0):
        x, y = seeds(x0, y0)
        u = x * x + y * y + 1.0
        root = tj.sqrt(u)
        assert_allclose((root * root).coefficients, u.coefficients, atol=1e-11)

    def test_sqrt_rejects_nonpositive_base(self):
        x, _ = seeds(-1.0, 0.0)
        with pytest.raises(ContractViolation):
            tj.sqrt(x)

    def test_reciprocal_rejects_zero_base(self):
        x, _ = seeds(0.0, 0.0)
        with pytest.raises(ContractViolation):
            tj.reciprocal(x)


class TestDispatchHelpers:
    def test_helpers_accept_plain_numbers(self):
        assert tj.sin(0.0) == 0.0
        assert tj.reciprocal(4.0) == 0.25
        assert tj.real_part(1.0 + 2.0j) == 1.0
        assert tj.conjugate(1.0 + 2.0j) == 1.0 - 2.0j
        assert_allclose(tj.value_of([1.0, 2.0]), [1.0, 2.0])

    def test_where_selects_batchwise(self):
        x = TaylorJet.variable(np.array([-1.0, 1.0]), 0, 2)
        chosen = tj.where(np.array([True, False]), x * x, 0.0)
        assert_allclose(chosen.partial(0, 0), [1.0, 0.0])
        assert_allclose(chosen.partial(2, 0), [2.0, 0.0])

    def test_where_on_arrays(self):
        assert_allclose(tj.where(np.array([True, False]), 1.0, 2.0), [1.0, 2.0])
