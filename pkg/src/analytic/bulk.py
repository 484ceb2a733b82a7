"""Bulk-service M/M/1 model of MTR with Poisson users and servers."""

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from src.utils.numerics import bisect_root


@dataclass(frozen=True)
class BulkMM1Result:
    """Root r0 of mu r^{c+1} - (lam + mu) r + lam in (0, 1) and E[D]."""

    lam: float
    mu: float
    c: int
    r0: float
    expected_distance: float

    @property
    def residual(self) -> float:
        return self.mu * self.r0 ** (self.c + 1) - (self.lam + self.mu) * self.r0 + self.lam


def _check_stable(lam: float, mu: float, c: int) -> None:
    if lam <= 0 or mu <= 0:
        raise ValueError(f"Rates must be positive, got lam={lam}, mu={mu}")
    if c < 1:
        raise ValueError(f"Capacity must be >= 1, got {c}")
    if lam >= c * mu:
        raise ValueError(f"Unstable: rho={lam / mu:.4g} >= c={c}")


def mm1_bulk(lam: float, mu: float, c: int) -> BulkMM1Result:
    """
    Expected MTR request distance for Poisson users (rate lam) and Poisson
    servers (rate mu) of capacity c.

    The cubic-type equation factors as (r - 1)(mu sum_{k=1..c} r^k - lam),
    whose second factor is increasing on (0, 1).
    """
    _check_stable(lam, mu, c)
    powers = np.arange(1, c + 1)
    r0 = bisect_root(lambda r: mu * float(np.sum(r**powers)) - lam, 0.0, 1.0)
    return BulkMM1Result(lam, mu, c, r0, r0 / (lam * (1.0 - r0)))


def mm1_sojourn(lam: float, mu: float) -> float:
    """Mean M/M/1 sojourn time 1 / (mu - lam)."""
    _check_stable(lam, mu, 1)
    return 1.0 / (mu - lam)


def ugs_distance_density(lam: float, mu: float, x: float) -> float:
    """
    Density of the UGS request distance with unit capacities: the M/M/1
    busy-period density (1/(x sqrt(rho))) e^{-(lam+mu)x} I_1(2x sqrt(lam mu)).

    The exponentially scaled Bessel function keeps large x finite.
    """
    if not 0 < lam < mu:
        raise ValueError(f"UGS density needs 0 < lam < mu, got lam={lam}, mu={mu}")
    if x < 0:
        return 0.0
    if x == 0:
        return mu
    rho = lam / mu
    arg = 2.0 * x * math.sqrt(lam * mu)
    exponent = -x * (math.sqrt(mu) - math.sqrt(lam)) ** 2
    return float(special.ive(1, arg) * math.exp(exponent) / (x * math.sqrt(rho)))
