"""
Poisson requests, general servers (PRGS).

PRGS maps to a queue with exceptional first service and accessible batches
(ESABQ): the first server of a busy cycle is reached after the exceptional
distance Z, later ones after ordinary gaps X. The stationary queue-length
transform is

    N(z) = sum_k a_k [z^c - z^k + z(1 - z^c) F*_Z(t) - (1 - z^k) F*_X(t)]
           / (t (z^c - F*_X(t))),   t = lam (1 - z),

with c unknown boundary coefficients a_k fixed by the c - 1 non-unit zeros
of z^c - F*_X(t) in the unit disk and the normalisation N(1) = 1.
"""

from dataclasses import dataclass, field
from math import comb
from typing import List, Optional

import numpy as np

from config.numerics import NumericTolerances
from src.distributions.exceptional import ExceptionalDist, exceptional_dist
from src.distributions.laws import Distribution
from src.utils.logger import get_logger
from src.utils.numerics import NumericalError, count_zeros_in_disk, unit_disk_zeros

logger = get_logger(__name__)

# Below this distance from z = 1 the transform is evaluated by its series
_SERIES_RADIUS = 1e-5


def _check_load(lam: float, server_law: Distribution, c: int) -> float:
    if lam <= 0:
        raise ValueError(f"Request rate must be positive, got {lam}")
    if c < 1:
        raise ValueError(f"Capacity must be >= 1, got {c}")
    rho = lam * server_law.mean
    if rho >= c:
        raise ValueError(f"Unstable: rho={rho:.4g} >= c={c}")
    return rho


def prgs_zeros(lam: float, server_law: Distribution, c: int) -> List[complex]:
    """
    The c zeros of z^c - F*_X(lam (1 - z)) in the closed unit disk, the
    unit zero last.

    Raises:
        ValueError: If rho >= c
        NumericalError: On non-convergence, duplicates or large residuals
    """
    _check_load(lam, server_law, c)
    zeros = unit_disk_zeros(lambda z: server_law.log_lst(lam * (1.0 - z)), c)
    for xi in zeros:
        residual = abs(xi**c - server_law.lst(lam * (1.0 - xi)))
        if residual > NumericTolerances.ZERO_RESIDUAL or abs(xi) > 1.0 + 1e-12:
            raise NumericalError(
                f"Zero {xi:.12g} has residual {residual:.3e} (|xi|={abs(xi):.12g})"
            )
    return zeros


def prgs_zero_count(lam: float, server_law: Distribution, c: int) -> int:
    """Argument-principle count of zeros of z^c - F*_X(lam (1 - z)) near the disk."""
    _check_load(lam, server_law, c)
    lst = np.vectorize(lambda z: complex(server_law.lst(lam * (1.0 - z))))
    return count_zeros_in_disk(lambda z: z**c - lst(z))


@dataclass(frozen=True, eq=False)
class EsabqSolution:
    """Solved PRGS/ESABQ queue."""

    lam: float
    server_law: Distribution
    exceptional: ExceptionalDist
    c: int
    zeros: List[complex]
    coefficients: np.ndarray
    rho: float
    rho_z: float
    mean_queue: float
    expected_distance: float
    series: tuple = field(default=(), repr=False)

    def transform(self, z: complex) -> complex:
        """Queue-length transform N(z) on the closed unit disk."""
        w = z - 1.0
        if abs(w) < _SERIES_RADIUS:
            n2, n3, d2, d3 = self.series
            return n2 / d2 + (n3 * d2 - n2 * d3) / d2**2 * w
        theta = self.lam * (1.0 - z)
        fx = complex(self.server_law.lst(theta))
        fz = complex(self.exceptional.lst(theta))
        k = np.arange(1, self.c + 1)
        terms = z**self.c - z**k + z * (1.0 - z**self.c) * fz - (1.0 - z**k) * fx
        return complex(np.dot(self.coefficients, terms) / (theta * (z**self.c - fx)))


def _series(lam: float, c: int, rho: float, rho_z: float, m2x: float, m2z: float,
            coefficients: np.ndarray):
    """Leading Taylor coefficients of numerator and denominator at z = 1."""
    k = np.arange(1, c + 1)
    x2 = lam**2 * m2x / 2.0
    z2 = lam**2 * m2z / 2.0
    n2 = -np.dot(coefficients, c * (1.0 + rho_z) - rho * k)
    n3 = np.dot(
        coefficients,
        -comb(c, 2) - comb(c + 1, 2) * rho_z - c * z2
        + np.array([comb(int(i), 2) for i in k]) * rho + k * x2,
    )
    d2 = -lam * (c - rho)
    d3 = -lam * (comb(c, 2) - x2)
    return float(n2), float(n3), float(d2), float(d3)


def mean_queue_length(
    lam: float, c: int, rho: float, rho_z: float, m2x: float, m2z: float,
    coefficients: np.ndarray,
) -> float:
    """Mean queue length from the boundary coefficients (second-order expansion at z = 1)."""
    k = np.arange(1, c + 1)
    bracket = (
        lam**2 * m2z * c * (c - rho)
        + lam**2 * m2x * c * (1.0 + rho_z - k)
        + (c * k * (c - k) + k * (k - 1) * rho - c * (c - 1)) * rho
        + 2.0 * c**2 * rho_z
        - c * (c + 1) * rho_z * rho
    )
    return float(np.dot(coefficients, bracket) / (2.0 * lam * (c - rho) ** 2))


def prgs_expected_distance(
    lam: float,
    server_law: Distribution,
    c: int,
    exceptional: Optional[ExceptionalDist] = None,
) -> EsabqSolution:
    """
    Expected request distance under PRGS via the ESABQ transform.

    Args:
        lam: User rate
        server_law: Server gap law F_X
        c: Server capacity
        exceptional: Override for F_Z (defaults to the law derived from F_X)

    Raises:
        ValueError: If rho >= c
        NumericalError: Singular/ill-conditioned system or complex coefficients
    """
    rho = _check_load(lam, server_law, c)
    z_law = exceptional or exceptional_dist(server_law, lam)
    rho_z = lam * z_law.mean
    zeros = prgs_zeros(lam, server_law, c)

    k = np.arange(1, c + 1)
    matrix = np.zeros((c, c), dtype=complex)
    rhs = np.zeros(c, dtype=complex)
    for row, xi in enumerate(zeros[:-1]):
        theta = lam * (1.0 - xi)
        ratio = complex(z_law.lst(theta)) / complex(server_law.lst(theta))
        matrix[row] = ratio - xi ** (k - c - 1.0)
    matrix[-1] = c * (1.0 + rho_z) - rho * k
    rhs[-1] = lam * (c - rho)

    condition = np.linalg.cond(matrix)
    if not np.isfinite(condition) or condition > NumericTolerances.CONDITION_CAP:
        raise NumericalError(f"Boundary system ill-conditioned (cond={condition:.3e})")
    try:
        solution = np.linalg.solve(matrix, rhs)
    except np.linalg.LinAlgError as e:
        raise NumericalError(f"Boundary system singular: {e}") from e

    if np.max(np.abs(solution.imag)) > NumericTolerances.IMAG_RESIDUE:
        raise NumericalError(
            f"Boundary coefficients not real: max imag {np.max(np.abs(solution.imag)):.3e}"
        )
    coefficients = solution.real

    m2x, m2z = server_law.second_moment, z_law.second_moment
    mean_queue = mean_queue_length(lam, c, rho, rho_z, m2x, m2z, coefficients)
    series = _series(lam, c, rho, rho_z, m2x, m2z, coefficients)
    logger.debug(
        f"ESABQ {server_law.kind} c={c} lam={lam}: a={coefficients}, N={mean_queue:.10g}"
    )

    return EsabqSolution(
        lam=lam,
        server_law=server_law,
        exceptional=z_law,
        c=c,
        zeros=zeros,
        coefficients=coefficients,
        rho=rho,
        rho_z=rho_z,
        mean_queue=mean_queue,
        expected_distance=mean_queue / lam,
        series=series,
    )


def esabq_pmf(
    solution: EsabqSolution, n_terms: int = 50, radius: float = 0.95, points: int = 512
) -> np.ndarray:
    """First ``n_terms`` power-series coefficients of N(z) by FFT on |z| = radius."""
    angles = 2.0 * np.pi * np.arange(points) / points
    values = np.array([solution.transform(radius * np.exp(1j * t)) for t in angles])
    coefficients = np.fft.fft(values) / points
    return (coefficients[:n_terms] / radius ** np.arange(n_terms)).real


def welch_sojourn_mean(
    lam: float, server_law: Distribution, exceptional: ExceptionalDist
) -> float:
    """
    Mean sojourn time of an M/G/1 queue whose busy periods open with an
    exceptional service (unit capacity reference for PRGS).
    """
    rho = _check_load(lam, server_law, 1)
    if rho >= 1:
        raise ValueError(f"Unstable: rho={rho:.4g} >= 1")
    rho_z = lam * exceptional.mean
    m2x, m2z = server_law.second_moment, exceptional.second_moment
    idle = 1.0 - rho + rho_z
    wait = lam * m2x / (2.0 * (1.0 - rho)) + lam * (m2z - m2x) / (2.0 * idle)
    service = ((1.0 - rho) * exceptional.mean + rho_z * server_law.mean) / idle
    return wait + service
