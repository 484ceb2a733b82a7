"""Tests for the PRGS / ESABQ solver."""

import math

import numpy as np
import pytest

from src.analytic.bulk import mm1_bulk
from src.analytic.prgs import (
    esabq_pmf,
    prgs_expected_distance,
    prgs_zero_count,
    prgs_zeros,
    welch_sojourn_mean,
)
from src.distributions.exceptional import exceptional_dist
from src.distributions.laws import Deterministic, Exponential, Uniform, h2_from_cv2
from src.hetcap.capacity import CapacityDist
from src.hetcap.solver import hetcap_solve


class TestPrgsZeros:
    """Test the unit-disk zeros of z^c - F*_X(lam (1 - z))."""

    def test_unit_capacity(self):
        assert prgs_zeros(0.5, Exponential(1.0), 1) == [1.0]

    def test_bulk_exponential_zero(self):
        zeros = prgs_zeros(1.0, Exponential(1.0), 2)
        assert zeros[0].real == pytest.approx((1.0 - math.sqrt(5.0)) / 2.0, abs=1e-9)
        assert zeros[-1] == 1.0

    @pytest.mark.parametrize(
        "law,lam,c",
        [
            (Deterministic(1.0), 0.8, 2),
            (Deterministic(1.0), 2.4, 4),
            (Uniform(2.0), 1.0, 3),
            (h2_from_cv2(4.0, 1.0), 2.0, 3),
        ],
    )
    def test_zeros_admissible(self, law, lam, c):
        zeros = prgs_zeros(lam, law, c)
        assert len(zeros) == c
        for xi in zeros:
            assert abs(xi) <= 1.0 + 1e-12
            assert abs(xi**c - law.lst(lam * (1.0 - xi))) < 1e-9

    def test_zero_count(self):
        assert prgs_zero_count(0.8, Deterministic(1.0), 2) == 2
        assert prgs_zero_count(1.0, Exponential(1.0), 3) == 3

    def test_unstable(self):
        with pytest.raises(ValueError):
            prgs_zeros(2.0, Deterministic(1.0), 2)


class TestPrgsExpectedDistance:
    """Test the ESABQ expected distance."""

    @pytest.mark.parametrize("c", [1, 2, 3, 5])
    def test_exponential_servers_match_bulk_model(self, c):
        lam = 0.6 * c
        prgs = prgs_expected_distance(lam, Exponential(1.0), c)
        bulk = mm1_bulk(lam, 1.0, c)
        assert prgs.expected_distance == pytest.approx(bulk.expected_distance, abs=1e-8)

    def test_passthrough_gives_md1_sojourn(self):
        law = Deterministic(1.0)
        solution = prgs_expected_distance(
            0.5, law, 1, exceptional=exceptional_dist(law, 0.5, passthrough=True)
        )
        assert solution.expected_distance == pytest.approx(1.5, abs=1e-8)

    @pytest.mark.parametrize("law", [Deterministic(1.0), Uniform(2.0), h2_from_cv2(4.0, 1.0)])
    def test_unit_capacity_matches_exceptional_mg1(self, law):
        lam = 0.5
        solution = prgs_expected_distance(lam, law, 1)
        reference = welch_sojourn_mean(lam, law, exceptional_dist(law, lam))
        assert solution.expected_distance == pytest.approx(reference, abs=1e-8)

    def test_deterministic_unit_capacity_matches_capacity_chain(self):
        prgs = prgs_expected_distance(0.5, Deterministic(1.0), 1)
        chain = hetcap_solve(0.5, Deterministic(1.0), CapacityDist.constant(1))
        assert prgs.expected_distance == pytest.approx(chain.expected_distance, abs=1e-5)
        assert prgs.expected_distance == pytest.approx(1.0, abs=1e-5)

    def test_transform_normalised(self):
        solution = prgs_expected_distance(0.8, Deterministic(1.0), 2)
        assert solution.transform(1.0).real == pytest.approx(1.0, abs=1e-8)
        assert solution.transform(1.0 - 1e-3).real == pytest.approx(1.0, abs=1e-2)

    def test_pmf_nonnegative_and_subnormalised(self):
        solution = prgs_expected_distance(0.8, Deterministic(1.0), 2)
        pmf = esabq_pmf(solution)
        assert np.all(pmf >= -1e-8)
        assert pmf.sum() <= 1.0 + 1e-8
        assert pmf.sum() > 0.99

    def test_pmf_mean_matches_mean_queue(self):
        solution = prgs_expected_distance(0.8, Deterministic(1.0), 2)
        pmf = esabq_pmf(solution, n_terms=200, radius=0.97, points=2048)
        assert np.dot(np.arange(200), pmf) == pytest.approx(solution.mean_queue, rel=1e-4)

    def test_increasing_in_load(self):
        values = [
            prgs_expected_distance(lam, Deterministic(1.0), 2).expected_distance
            for lam in (0.4, 0.8, 1.2, 1.6)
        ]
        assert np.all(np.diff(values) > 0)

    def test_unstable(self):
        with pytest.raises(ValueError):
            prgs_expected_distance(1.0, Deterministic(1.0), 1)


@pytest.mark.slow
class TestAgainstSimulation:
    """Test the ESABQ solution against MTR with Poisson users."""

    @pytest.mark.parametrize("law", [Deterministic(1.0), Uniform(2.0), h2_from_cv2(2.0, 1.0)])
    def test_load_point_eight_capacity_two(self, mtr_mean, law):
        lam, c = 1.6, 2
        expected = prgs_expected_distance(lam, law, c).expected_distance
        simulated = mtr_mean(Exponential(lam), law, c, n_users=400000, seeds=(31, 32, 33))
        assert simulated == pytest.approx(expected, rel=0.03)
