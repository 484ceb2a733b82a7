"""Expected transmission cost t0 * D^beta for unit-capacity servers."""

import math
from dataclasses import dataclass
from typing import List

import numpy as np
from scipy import special

from src.analytic.grps import grps_expected_distance
from src.distributions.exceptional import exceptional_dist
from src.distributions.laws import Distribution


@dataclass(frozen=True)
class CostResult:
    """Expected cost for path-loss exponent beta and unit cost t0."""

    beta: float
    t0: float
    expected_cost: float


def cost_grps(user_law: Distribution, mu: float, beta: float, t0: float = 1.0) -> CostResult:
    """
    GRPS cost with c = 1: the sojourn distance is Exp(mu (1 - r0)), so
    E[T] = t0 Gamma(beta + 1) / (mu (1 - r0))^beta.
    """
    if beta < 0:
        raise ValueError(f"Path-loss exponent must be nonnegative, got {beta}")
    result = grps_expected_distance(user_law, mu, 1)
    rate = mu * (1.0 - result.r0)
    return CostResult(beta, t0, float(t0 * special.gamma(beta + 1.0) / rate**beta))


def _lst_series(moments: List[float]) -> np.ndarray:
    """Taylor coefficients of an LST at s = 0 from raw moments m_0..m_n."""
    return np.array(
        [(-1) ** k * m / math.factorial(k) for k, m in enumerate(moments)]
    )


def _series_quotient(num: np.ndarray, den: np.ndarray, order: int) -> np.ndarray:
    out = np.zeros(order + 1)
    for k in range(order + 1):
        acc = num[k] - sum(den[j] * out[k - j] for j in range(1, k + 1))
        out[k] = acc / den[0]
    return out


def cost_prgs(
    lam: float, server_law: Distribution, beta: int, t0: float = 1.0
) -> CostResult:
    """
    PRGS cost with c = 1 from the sojourn-distance transform

        W*(s) = (1 - rho) {lam [F*_Z(s) - F*_X(s)] - s F*_Z(s)}
                / ((1 - rho + rho_z) [lam - s - lam F*_X(s)]).

    Numerator and denominator both vanish at s = 0; their Taylor series are
    divided by s before forming the quotient series, so the beta-th moment
    comes from exact moments of Z and X.
    """
    if int(beta) != beta or not 0 <= beta <= 4:
        raise ValueError(f"beta must be an integer in [0, 4], got {beta}")
    beta = int(beta)
    rho = lam * server_law.mean
    if rho >= 1:
        raise ValueError(f"Unstable: rho={rho:.4g} >= 1")
    if beta == 0:
        return CostResult(0, t0, t0)

    z_law = exceptional_dist(server_law, lam)
    order = beta + 1
    fx = _lst_series([server_law.moment(k) for k in range(order + 1)])
    fz = _lst_series([z_law.moment(k) for k in range(order + 1)])
    if not (np.all(np.isfinite(fx)) and np.all(np.isfinite(fz))):
        raise ValueError("Required moments are not finite")

    num = lam * (fz - fx)
    num[1:] -= fz[:-1]
    den = -lam * fx
    den[0] += lam
    den[1] -= 1.0

    quotient = _series_quotient(num[1:], den[1:], beta)
    prefactor = (1.0 - rho) / (1.0 - rho + z_law.rho_z)
    derivative = prefactor * quotient[beta] * math.factorial(beta)
    return CostResult(beta, t0, float(t0 * (-1) ** beta * derivative))
