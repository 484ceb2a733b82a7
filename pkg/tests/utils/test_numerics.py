"""Tests for shared numerical routines."""

import math

import numpy as np
import pytest

from config.numerics import NumericTolerances
from src.utils.numerics import (
    NumericalError,
    bisect_root,
    bracket_below_one,
    count_zeros_in_disk,
    quad,
    richardson_derivative,
    unit_disk_zeros,
)


class TestBisectRoot:
    """Test bracketed root finding."""

    def test_square_root(self):
        assert bisect_root(lambda x: x * x - 2.0, 0.0, 2.0) == pytest.approx(
            math.sqrt(2.0), abs=1e-11
        )

    def test_not_bracketed(self):
        with pytest.raises(NumericalError):
            bisect_root(lambda x: x * x + 1.0, -1.0, 1.0)

    def test_root_at_endpoint(self):
        assert bisect_root(lambda x: x, 0.0, 1.0) == 0.0


class TestBracketBelowOne:
    """Test the dyadic search below one."""

    def test_finds_negative_point(self):
        point = bracket_below_one(lambda r: (r - 1.0) * (r - 0.9))
        assert point > 0.9
        assert point < 1.0

    def test_never_negative(self):
        with pytest.raises(NumericalError):
            bracket_below_one(lambda r: 1.0, max_halvings=10)


class TestUnitDiskZeros:
    """Test the roots-of-unity fixed point."""

    def test_constant_rhs_gives_roots_of_unity(self):
        zeros = unit_disk_zeros(lambda z: 0j, 3)
        assert len(zeros) == 3
        assert zeros[-1] == 1.0
        for j, zero in enumerate(zeros[:-1], start=1):
            assert zero == pytest.approx(np.exp(2j * np.pi * j / 3), abs=1e-12)

    def test_single_zero_is_unity(self):
        assert unit_disk_zeros(lambda z: 0j, 1) == [1.0]

    def test_bulk_service_zero(self):
        """z^2 = 1/(2 - z) has the non-unit zero (1 - sqrt 5)/2."""
        zeros = unit_disk_zeros(lambda z: -np.log(2.0 - z), 2)
        assert zeros[0].real == pytest.approx((1.0 - math.sqrt(5.0)) / 2.0, abs=1e-9)
        assert abs(zeros[0].imag) < 1e-12


class TestCountZeros:
    """Test the argument-principle counter."""

    def test_quadratic(self):
        assert count_zeros_in_disk(lambda z: z * z - 0.25) == 2

    def test_zero_outside(self):
        assert count_zeros_in_disk(lambda z: z - 3.0) == 0

    def test_zero_at_unity_counted(self):
        assert count_zeros_in_disk(lambda z: (z - 1.0) * (z + 0.5)) == 2


class TestDerivativesAndQuadrature:
    """Test Richardson differentiation and quadrature."""

    def test_exponential_derivative(self):
        assert richardson_derivative(np.exp, 1.0) == pytest.approx(math.e, abs=1e-8)

    def test_polynomial_integral(self):
        assert quad(lambda x: x * x, 0.0, 3.0) == pytest.approx(9.0, abs=1e-10)


class TestTolerances:
    """Test the tolerance registry."""

    def test_lookup(self):
        assert NumericTolerances.get("ROOT_TOL") == NumericTolerances.ROOT_TOL

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            NumericTolerances.get("NOT_A_TOLERANCE")
