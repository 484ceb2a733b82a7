"""Shared numerical routines: root finding, quadrature and zero counting."""

from typing import Callable, List, Optional, Sequence

import numpy as np
from scipy import integrate

from config.numerics import NumericTolerances
from src.utils.logger import get_logger

logger = get_logger(__name__)


class NumericalError(RuntimeError):
    """A solver failed to converge or produced an inadmissible result."""


def bisect_root(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = NumericTolerances.ROOT_TOL,
    max_iter: int = NumericTolerances.BISECTION_MAX_ITER,
) -> float:
    """
    Find a root of a continuous function bracketed by [lo, hi].

    Raises:
        NumericalError: If the endpoints do not bracket a sign change
    """
    f_lo = func(lo)
    f_hi = func(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if np.sign(f_lo) == np.sign(f_hi):
        raise NumericalError(
            f"Root not bracketed on [{lo}, {hi}]: f={f_lo:.3e}, {f_hi:.3e}"
        )

    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = func(mid)
        if f_mid == 0.0 or (hi - lo) < tol:
            return mid
        if np.sign(f_mid) == np.sign(f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def quad(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    points: Optional[Sequence[float]] = None,
) -> float:
    """Adaptive Gauss-Kronrod quadrature at the shared absolute tolerance."""
    value, _ = integrate.quad(
        func,
        lo,
        hi,
        epsabs=NumericTolerances.QUAD_ABS_TOL,
        epsrel=NumericTolerances.QUAD_ABS_TOL,
        limit=NumericTolerances.QUAD_LIMIT,
        points=points,
    )
    return float(value)


def quad_complex(
    func: Callable[[float], complex],
    lo: float,
    hi: float,
    points: Optional[Sequence[float]] = None,
) -> complex:
    """Integrate a complex-valued function by its real and imaginary parts."""
    real = quad(lambda x: func(x).real, lo, hi, points)
    imag = quad(lambda x: func(x).imag, lo, hi, points)
    return complex(real, imag)


def unit_disk_zeros(
    log_rhs: Callable[[complex], complex],
    c: int,
    tol: float = NumericTolerances.FIXED_POINT_TOL,
    max_iter: int = NumericTolerances.FIXED_POINT_MAX_ITER,
) -> List[complex]:
    """
    Zeros of z^c - A(z) in the closed unit disk, with A(1) = 1.

    Iterates z <- w_j * exp(log A(z) / c) from each c-th root of unity w_j.
    The unit zero is returned last and exactly.

    Args:
        log_rhs: Logarithm of A(z)
        c: Number of zeros to find

    Raises:
        NumericalError: On non-convergence or duplicate zeros
    """
    zeros: List[complex] = []
    for j in range(1, c):
        omega = np.exp(2j * np.pi * j / c)
        z = complex(omega)
        for iteration in range(max_iter):
            z_next = complex(omega * np.exp(log_rhs(z) / c))
            if abs(z_next - z) < tol:
                z = z_next
                break
            z = z_next
        else:
            raise NumericalError(
                f"Fixed point from root of unity {j}/{c} did not converge"
            )
        logger.debug(f"Zero {j}/{c} converged in {iteration + 1} steps: {z:.12g}")
        zeros.append(z)

    for a in range(len(zeros)):
        if abs(zeros[a] - 1.0) < NumericTolerances.DUPLICATE_ZERO_DIST:
            raise NumericalError(f"Zero {a + 1} collapsed onto unity")
        for b in range(a + 1, len(zeros)):
            if abs(zeros[a] - zeros[b]) < NumericTolerances.DUPLICATE_ZERO_DIST:
                raise NumericalError(f"Duplicate zeros at {zeros[a]:.12g}")

    zeros.append(1.0 + 0.0j)
    return zeros


def count_zeros_in_disk(
    func: Callable[[np.ndarray], np.ndarray],
    radius: float = NumericTolerances.CONTOUR_RADIUS,
    samples: int = 8192,
) -> int:
    """
    Count zeros of an analytic function inside |z| < radius by the
    argument principle.

    The contour grid is refined around angle 0, where functions vanishing
    at z = 1 change phase rapidly.
    """
    near = np.logspace(-9, -2, 400)
    angles = np.unique(
        np.concatenate(
            [np.linspace(0.0, 2.0 * np.pi, samples), near, 2.0 * np.pi - near]
        )
    )
    values = func(radius * np.exp(1j * angles))
    phase = np.unwrap(np.angle(values))
    winding = (phase[-1] - phase[0]) / (2.0 * np.pi)
    return int(round(winding))


def richardson_derivative(
    func: Callable[[float], float],
    x0: float,
    step: float = NumericTolerances.RICHARDSON_STEP,
    levels: int = NumericTolerances.RICHARDSON_LEVELS,
) -> float:
    """
    Left-sided derivative at x0 by backward differences with Richardson
    extrapolation.
    """
    f0 = func(x0)
    table = [
        (f0 - func(x0 - step / 2**k)) / (step / 2**k) for k in range(levels + 1)
    ]
    for level in range(1, levels + 1):
        factor = 2.0**level
        table = [
            (factor * table[k + 1] - table[k]) / (factor - 1.0)
            for k in range(len(table) - 1)
        ]
    return float(table[0])


def bracket_below_one(
    func: Callable[[float], float], max_halvings: int = 60
) -> float:
    """
    Largest point 1 - 2^-k (k = 1, 2, ...) where ``func`` is negative.

    For residuals with a root at 1 approached from below with positive slope.

    Raises:
        NumericalError: If no negative value is found
    """
    for k in range(1, max_halvings + 1):
        point = 1.0 - 2.0**-k
        if func(point) < 0:
            return point
    raise NumericalError("Residual never turns negative below 1")
