"""General requests, Poisson servers (GRPS): accessible-batch G/M/1 model."""

from dataclasses import dataclass

from src.distributions.laws import Distribution
from src.utils.logger import get_logger
from src.utils.numerics import NumericalError, bisect_root, bracket_below_one

logger = get_logger(__name__)


@dataclass(frozen=True)
class GrpsResult:
    """Solution of the GRPS queue for server rate mu and capacity c."""

    mu: float
    c: int
    lam: float
    r0: float
    omega: float
    normalization: float
    expected_queue: float
    expected_distance: float


def grps_expected_distance(user_law: Distribution, mu: float, c: int) -> GrpsResult:
    """
    Expected request distance under GRPS.

    Arrivals (users) see a geometric number of waiting requests with ratio
    r0, the root in (0, 1) of r = F*_Y(mu - mu r^c).

    Raises:
        ValueError: If the system is unstable
        NumericalError: If r0 is not found in (0, 1)
    """
    if mu <= 0 or c < 1:
        raise ValueError(f"Invalid server parameters mu={mu}, c={c}")
    lam = user_law.rate
    if lam >= c * mu:
        raise ValueError(f"Unstable: lam={lam:.4g} >= c*mu={c * mu:.4g}")

    def residual(r: float) -> float:
        return float(abs(user_law.lst(mu - mu * r**c))) - r

    hi = bracket_below_one(residual)
    r0 = bisect_root(residual, 0.0, hi)
    if not 0.0 < r0 < 1.0:
        raise NumericalError(f"GRPS root outside (0, 1): {r0}")

    tail = 1.0 - r0**c
    normalization = lam * (1.0 - r0) * r0**c
    expected_queue = normalization / (mu * tail * (1.0 - r0))
    expected_distance = expected_queue / lam + 1.0 / mu
    logger.debug(f"GRPS {user_law.kind} c={c}: r0={r0:.12g}, E[D]={expected_distance:.10g}")

    return GrpsResult(
        mu=mu,
        c=c,
        lam=lam,
        r0=r0,
        omega=1.0 / float(abs(user_law.lst(mu))),
        normalization=normalization,
        expected_queue=expected_queue,
        expected_distance=expected_distance,
    )


def grps_queue_pmf(result: GrpsResult, n: int) -> float:
    """
    Weight P_{n,1} of n waiting requests; sum_n n P_{n,1} = E[N_q].
    """
    if n < 1:
        return 0.0
    r0 = result.r0
    return (
        result.normalization
        * r0 ** (n - 1)
        * (1.0 - r0)
        / (result.mu * (1.0 - r0**result.c))
    )
