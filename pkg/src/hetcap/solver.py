"""
PRGS with random server capacities.

The chain H counts requests still waiting just after a server location:
H' = (H + V - C)^+, with V ~ k_v the requests arriving over one server gap
and C the capacity of the next server. Its transform is N(z) = R(z) / D(z)
with both sides already divided by the common (z - 1) factor:

    R(z) = sum_j pi_j sum_v k_v sum_{i > j+v} p_i z^{c+j+v-i} sum_{t < i-j-v} z^t
    D(z) = sum_i p_i z^{c-i} sum_{t < i} z^t - P(z) T(z)

where P(z) = sum_i p_i z^{c-i} and T(z) = sum_t P(V > t) z^t.
"""

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from scipy import stats

from config.numerics import NumericTolerances
from src.distributions.laws import (
    Deterministic,
    Distribution,
    Exponential,
    HyperExp2,
    Uniform,
)
from src.hetcap.capacity import CapacityDist
from src.utils.cache import cache_response
from src.utils.logger import get_logger
from src.utils.numerics import (
    NumericalError,
    count_zeros_in_disk,
    quad,
    richardson_derivative,
    unit_disk_zeros,
)

logger = get_logger(__name__)

_MAX_BATCH = 100000


@cache_response()
def arrival_batch_probs(
    lam: float, server_law: Distribution, v_max: Optional[int] = None
) -> np.ndarray:
    """
    k_v = P(v Poisson(lam) requests fall in one server gap), truncated once
    the remaining tail is below the shared tail mass (or at ``v_max``).
    """
    if lam <= 0:
        raise ValueError(f"Request rate must be positive, got {lam}")
    limit = _MAX_BATCH if v_max is None else v_max

    def term(v: int) -> float:
        if isinstance(server_law, Deterministic):
            return float(stats.poisson.pmf(v, lam * server_law.d0))
        if isinstance(server_law, Exponential):
            q = lam / (lam + server_law.mu)
            return (1.0 - q) * q**v
        if isinstance(server_law, HyperExp2):
            total = 0.0
            for p, mu in server_law.branches:
                q = lam / (lam + mu)
                total += p * (1.0 - q) * q**v
            return total
        if isinstance(server_law, Uniform):
            b = server_law.b
            log_fact = math.lgamma(v + 1)
            return quad(
                lambda x: math.exp(-lam * x + v * math.log(lam * x) - log_fact)
                if x > 0
                else float(v == 0),
                0.0,
                b,
            ) / b
        raise ValueError(f"Unsupported server law: {server_law!r}")

    probs: List[float] = []
    cumulative = 0.0
    for v in range(limit + 1):
        probs.append(term(v))
        cumulative += probs[-1]
        if 1.0 - cumulative < NumericTolerances.TAIL_MASS:
            break
    return np.array(probs)


@dataclass(frozen=True, eq=False)
class HetCapSolution:
    """Solved heterogeneous-capacity chain."""

    lam: float
    server_law: Distribution
    capacity: CapacityDist
    batch_probs: np.ndarray
    zeros: List[complex]
    boundary: np.ndarray
    rho: float
    mean_queue: float
    expected_distance: float

    @property
    def c(self) -> int:
        return self.capacity.max_capacity

    def transform(self, z: complex) -> complex:
        return _numerator(z, self.boundary, self.batch_probs, self.capacity) / _denominator(
            z, self.batch_probs, self.capacity
        )


def _cap_poly(z: complex, cap: CapacityDist) -> complex:
    c = cap.max_capacity
    return sum(p * z ** (c - i) for i, p in enumerate(cap.probs, start=1))


def _geometric_sum(z: complex, n: int) -> complex:
    return sum(z**t for t in range(n))


def _boundary_row(z: complex, j: int, k: np.ndarray, cap: CapacityDist) -> complex:
    """Coefficient of pi_j in R(z)."""
    c = cap.max_capacity
    total = 0j
    for v in range(min(len(k), c - j)):
        for i in range(j + v + 1, c + 1):
            p = cap.probs[i - 1]
            if p == 0.0:
                continue
            total += k[v] * p * z ** (c + j + v - i) * _geometric_sum(z, i - j - v)
    return total


def _numerator(z: complex, boundary: np.ndarray, k: np.ndarray, cap: CapacityDist) -> complex:
    return sum(pi * _boundary_row(z, j, k, cap) for j, pi in enumerate(boundary))


def _denominator(z: complex, k: np.ndarray, cap: CapacityDist) -> complex:
    c = cap.max_capacity
    first = sum(
        p * z ** (c - i) * _geometric_sum(z, i) for i, p in enumerate(cap.probs, start=1)
    )
    tails = 1.0 - np.cumsum(k)
    tails = np.clip(tails, 0.0, None)
    tail_poly = np.polyval(tails[::-1], z) if len(tails) else 0.0
    return first - _cap_poly(z, cap) * tail_poly


def _log_rhs(lam: float, server_law: Distribution, cap: CapacityDist):
    def log_a(z: complex) -> complex:
        poly = _cap_poly(z, cap)
        log_poly = np.log(poly) if poly != 0 else complex(-745.0)
        return server_law.log_lst(lam * (1.0 - z)) + log_poly

    return log_a


def hetcap_zero_count(lam: float, server_law: Distribution, cap: CapacityDist) -> int:
    """Argument-principle count of zeros of z^c - K(z) P(z) near the unit disk."""
    c = cap.max_capacity
    rhs = np.vectorize(
        lambda z: complex(server_law.lst(lam * (1.0 - z))) * _cap_poly(z, cap)
    )
    return count_zeros_in_disk(lambda z: z**c - rhs(z))


def hetcap_solve(
    lam: float, server_law: Distribution, cap: CapacityDist
) -> HetCapSolution:
    """
    Solve for the boundary probabilities pi_0..pi_{c-1} and the mean queue.

    Raises:
        ValueError: If rho >= mean capacity
        NumericalError: Non-convergent zeros, ill-conditioned system,
            negative probabilities or a failed normalisation check
    """
    rho = lam * server_law.mean
    if lam <= 0:
        raise ValueError(f"Request rate must be positive, got {lam}")
    if rho >= cap.mean:
        raise ValueError(f"Unstable: rho={rho:.4g} >= mean capacity {cap.mean:.4g}")

    c = cap.max_capacity
    k = arrival_batch_probs(lam, server_law)
    zeros = unit_disk_zeros(_log_rhs(lam, server_law, cap), c)
    for xi in zeros:
        residual = abs(
            xi**c - complex(server_law.lst(lam * (1.0 - xi))) * _cap_poly(xi, cap)
        )
        if residual > NumericTolerances.ZERO_RESIDUAL:
            raise NumericalError(f"Zero {xi:.12g} has residual {residual:.3e}")

    matrix = np.zeros((c, c), dtype=complex)
    rhs = np.zeros(c, dtype=complex)
    for row, xi in enumerate(zeros[:-1]):
        matrix[row] = [_boundary_row(xi, j, k, cap) for j in range(c)]
    matrix[-1] = [_boundary_row(1.0, j, k, cap) for j in range(c)]
    rhs[-1] = cap.mean - rho

    condition = np.linalg.cond(matrix)
    if not np.isfinite(condition) or condition > NumericTolerances.CONDITION_CAP:
        raise NumericalError(f"Boundary system ill-conditioned (cond={condition:.3e})")
    solution = np.linalg.solve(matrix, rhs)
    if np.max(np.abs(solution.imag)) > NumericTolerances.IMAG_RESIDUE:
        raise NumericalError("Boundary probabilities not real")
    boundary = solution.real
    if np.any(boundary < -NumericTolerances.NEGATIVE_PROB_TOL):
        raise NumericalError(f"Negative boundary probabilities: {boundary}")
    boundary = np.clip(boundary, 0.0, None)

    def transform(x: float) -> float:
        return float(
            (_numerator(x, boundary, k, cap) / _denominator(x, k, cap)).real
        )

    at_one = transform(1.0)
    if abs(at_one - 1.0) > NumericTolerances.NORMALIZATION_TOL:
        raise NumericalError(f"N(1) = {at_one:.12g}, expected 1")

    mean_queue = richardson_derivative(transform, 1.0)
    expected = hetcap_expected_distance(mean_queue, lam, server_law)
    logger.debug(
        f"hetcap {server_law.kind} probs={cap.probs} lam={lam}: "
        f"pi={boundary}, H={mean_queue:.10g}, E[D]={expected:.10g}"
    )

    return HetCapSolution(
        lam=lam,
        server_law=server_law,
        capacity=cap,
        batch_probs=k,
        zeros=zeros,
        boundary=boundary,
        rho=rho,
        mean_queue=mean_queue,
        expected_distance=expected,
    )


def hetcap_expected_distance(
    solution, lam: float, server_law: Distribution
) -> float:
    """
    E[D] = (1/rho) [H alpha_X + (lam/2) E[X^2]]: each waiting request crosses
    a whole gap and each arrival crosses the residual of its own gap.

    ``solution`` may be a HetCapSolution or the mean queue H directly.
    """
    mean_queue = solution.mean_queue if isinstance(solution, HetCapSolution) else float(solution)
    rho = lam * server_law.mean
    return (mean_queue * server_law.mean + 0.5 * lam * server_law.second_moment) / rho
