"""
Exceptional-service distance law F_Z.

Under PRGS the first server reached in a busy cycle lies at a distance Z
from the user that opened the cycle, where Z is the overshoot of a server
gap X beyond an independent Exp(lambda) user gap. Its cdf is
F_Z(x) = (D(x) - D(0)) / (1 - D(0)) with D(x) = P(X - Y <= x).
"""

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Union

import numpy as np

from src.distributions.laws import (
    Deterministic,
    Distribution,
    Exponential,
    HyperExp2,
    Number,
    Uniform,
)
from src.utils.cache import cache_response
from src.utils.logger import get_logger
from src.utils.numerics import quad, quad_complex

logger = get_logger(__name__)


@dataclass(frozen=True)
class ExceptionalDist:
    """
    Law of the first-service distance Z for a server law at user rate lam.

    With ``passthrough`` set (or an exponential base law) Z has the base law.
    """

    base: Distribution
    lam: float
    passthrough: bool = False

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"Request rate must be positive, got {self.lam}")

    @property
    def is_base(self) -> bool:
        return self.passthrough or isinstance(self.base, Exponential)

    @property
    def support_end(self) -> float:
        return self.base.support_end

    @cached_property
    def _h2_weights(self):
        # F_Z is again hyperexponential with reweighted branches
        raw = [p * self.lam / (self.lam + mu) for p, mu in self.base.branches]
        total = sum(raw)
        return [(w / total, mu) for w, (_, mu) in zip(raw, self.base.branches)]

    @cached_property
    def _c_lam(self) -> float:
        d0 = self.base.d0
        return 1.0 / -math.expm1(-self.lam * d0)

    @cached_property
    def _k_lam(self) -> float:
        b, lam = self.base.b, self.lam
        return 1.0 / (b * lam + math.expm1(-lam * b))

    def cdf(self, x: float) -> float:
        if self.is_base:
            return self.base.cdf(x)
        if x <= 0:
            return 0.0
        if x >= self.support_end:
            return 1.0
        lam = self.lam
        base = self.base
        if isinstance(base, Deterministic):
            return self._c_lam * (
                math.exp(-lam * (base.d0 - x)) - math.exp(-lam * base.d0)
            )
        if isinstance(base, Uniform):
            return self._k_lam * (
                lam * x + math.exp(-lam * base.b) * -math.expm1(lam * x)
            )
        if isinstance(base, HyperExp2):
            return 1.0 - sum(q * math.exp(-mu * x) for q, mu in self._h2_weights)
        raise ValueError(f"Unsupported server law: {base!r}")

    def pdf(self, x: float) -> float:
        if x < 0 or x > self.support_end:
            return 0.0
        lam = self.lam
        base = self.base
        if self.is_base:
            if isinstance(base, Exponential):
                return base.mu * math.exp(-base.mu * x)
            if isinstance(base, HyperExp2):
                return sum(p * mu * math.exp(-mu * x) for p, mu in base.branches)
            if isinstance(base, Uniform):
                return 1.0 / base.b
            raise ValueError(f"Law has no density: {base!r}")
        if isinstance(base, Deterministic):
            return lam * self._c_lam * math.exp(-lam * (base.d0 - x))
        if isinstance(base, Uniform):
            return lam * self._k_lam * -math.expm1(-lam * (base.b - x))
        if isinstance(base, HyperExp2):
            return sum(q * mu * math.exp(-mu * x) for q, mu in self._h2_weights)
        raise ValueError(f"Unsupported server law: {base!r}")

    @property
    def integration_end(self) -> float:
        """Finite upper limit covering all but a negligible tail."""
        if isinstance(self.base, HyperExp2) and not self.passthrough:
            return max(-math.log(1e-12) / mu for _, mu in self._h2_weights)
        return self.base.tail_bound()

    def moment(self, k: int) -> float:
        """Raw moment E[Z^k]; closed form where known, quadrature otherwise."""
        if k == 0:
            return 1.0
        if self.is_base:
            return self.base.moment(k)
        closed = self._closed_moment(k)
        if closed is not None:
            return closed
        return quad(lambda x: x**k * self.pdf(x), 0.0, self.integration_end)

    def _closed_moment(self, k: int):
        lam = self.lam
        base = self.base
        if isinstance(base, Deterministic) and k <= 2:
            d0, c = base.d0, self._c_lam
            first = c * (d0 * lam + math.exp(-lam * d0) - 1.0) / lam
            if k == 1:
                return first
            return (c / lam) * (
                d0 * (d0 * lam - 2.0) + (2.0 / lam) * -math.expm1(-lam * d0)
            )
        if isinstance(base, Uniform) and k <= 2:
            b, kl = base.b, self._k_lam
            if k == 1:
                return b * b * lam * kl / 2.0 - 1.0 / lam
            return b**3 * lam * kl / 3.0 - (kl / lam) * (
                b * (b * lam - 2.0) + (2.0 / lam) * -math.expm1(-lam * b)
            )
        return None

    @cached_property
    def mean(self) -> float:
        return self.moment(1)

    @cached_property
    def second_moment(self) -> float:
        return self.moment(2)

    @property
    def variance(self) -> float:
        return self.second_moment - self.mean**2

    @property
    def rho_z(self) -> float:
        """Exceptional load lam * alpha_Z."""
        return self.lam * self.mean

    def lst(self, s: Number) -> Number:
        """LST of Z; exact for base-law pass-through, quadrature otherwise."""
        if self.is_base:
            return self.base.lst(s)
        if s == 0:
            return 1.0
        return quad_complex(
            lambda x: np.exp(-s * x) * self.pdf(x), 0.0, self.integration_end
        )

    def quadrature_moment(self, k: int) -> float:
        """E[Z^k] by direct quadrature of the density (cross-check)."""
        return quad(lambda x: x**k * self.pdf(x), 0.0, self.integration_end)


@cache_response()
def exceptional_dist(
    server_law: Distribution, lam: float, passthrough: bool = False
) -> ExceptionalDist:
    """
    Build the exceptional-service law for ``server_law`` at request rate lam.

    Raises:
        ValueError: If lam <= 0
    """
    if lam <= 0:
        raise ValueError(f"Request rate must be positive, got {lam}")
    dist = ExceptionalDist(base=server_law, lam=lam, passthrough=passthrough)
    logger.debug(
        f"Exceptional law for {server_law.kind} at lam={lam}: "
        f"alpha_Z={dist.mean:.10g}"
    )
    return dist


def table_b(server_law: Distribution, lam: float, x: float) -> float:
    """
    B(x) = integral_0^x exp(-lam u) F_X(u) du for the bounded server laws.

    Used to check D(x) = lam e^{lam x} (B(inf) - B(x)) against the closed
    forms above.
    """
    if isinstance(server_law, Deterministic):
        d0 = server_law.d0
        if x < d0:
            return 0.0
        return (math.exp(-lam * d0) - math.exp(-lam * x)) / lam
    if isinstance(server_law, Uniform):
        b = server_law.b
        if x < b:
            return (1.0 / b) * (
                -math.expm1(-lam * x) / lam**2 - x * math.exp(-lam * x) / lam
            )
        return -math.expm1(-lam * b) / (lam**2 * b) - math.exp(-lam * x) / lam
    raise ValueError(f"No tabulated B(x) for {server_law!r}")


def difference_cdf(server_law: Distribution, lam: float, x: float) -> float:
    """D(x) = P(X - Y <= x) for x >= 0 with Y ~ Exp(lam)."""
    if isinstance(server_law, (Deterministic, Uniform)):
        end = server_law.support_end
        b_inf = table_b(server_law, lam, end) + math.exp(-lam * end) / lam
        return lam * math.exp(lam * x) * (b_inf - table_b(server_law, lam, x))
    if isinstance(server_law, (Exponential, HyperExp2)):
        branches = (
            ((1.0, server_law.mu),)
            if isinstance(server_law, Exponential)
            else server_law.branches
        )
        return 1.0 - sum(p * lam / (lam + mu) * math.exp(-mu * x) for p, mu in branches)
    raise ValueError(f"Unsupported server law: {server_law!r}")
