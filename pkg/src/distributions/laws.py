"""
Inter-point distance laws.

Each law is an immutable value object exposing its moments, cdf, Laplace-
Stieltjes transform (LST) and a sampler. Laws serialise to and from the
``{"kind": ..., <params>}`` dictionaries used in experiment configs.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional, Union

import numpy as np

from config.numerics import NumericTolerances

Number = Union[float, complex]


class Distribution(ABC):
    """A positive inter-point distance law."""

    kind: str = ""

    @property
    @abstractmethod
    def mean(self) -> float:
        """Mean distance alpha."""

    @property
    @abstractmethod
    def variance(self) -> float:
        """Variance sigma^2."""

    @property
    def second_moment(self) -> float:
        return self.variance + self.mean**2

    @property
    def rate(self) -> float:
        """Reciprocal of the mean (points per unit distance)."""
        return 1.0 / self.mean

    @property
    def cv2(self) -> float:
        return self.variance / self.mean**2

    @property
    def support_end(self) -> float:
        """Upper end of the support (infinite for unbounded laws)."""
        return math.inf

    @abstractmethod
    def moment(self, k: int) -> float:
        """Raw moment E[X^k]."""

    @abstractmethod
    def cdf(self, x: float) -> float:
        """Cumulative distribution function."""

    @abstractmethod
    def lst(self, s: Number) -> Number:
        """Laplace-Stieltjes transform E[exp(-sX)] for Re(s) >= 0."""

    def log_lst(self, s: Number) -> complex:
        """Logarithm of the LST, continuous on the right half plane."""
        return complex(np.log(complex(self.lst(s))))

    @abstractmethod
    def sample(
        self, rng: np.random.Generator, size: Optional[int] = None
    ) -> Union[float, np.ndarray]:
        """Draw one value (or ``size`` values) from the law."""

    def tail_bound(self, mass: float = NumericTolerances.TAIL_MASS) -> float:
        """A point beyond which the survival probability is below ``mass``."""
        return self.support_end

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, **asdict(self)}  # type: ignore[call-overload]


@dataclass(frozen=True)
class Exponential(Distribution):
    """Exponential law with rate mu (Poisson points)."""

    mu: float
    kind = "exponential"

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError(f"Exponential rate must be positive, got {self.mu}")

    @property
    def mean(self) -> float:
        return 1.0 / self.mu

    @property
    def variance(self) -> float:
        return 1.0 / self.mu**2

    def moment(self, k: int) -> float:
        return math.factorial(k) / self.mu**k

    def cdf(self, x: float) -> float:
        return float(-np.expm1(-self.mu * x)) if x > 0 else 0.0

    def lst(self, s: Number) -> Number:
        return self.mu / (self.mu + s)

    def log_lst(self, s: Number) -> complex:
        return complex(np.log(self.mu) - np.log(complex(self.mu + s)))

    def sample(self, rng, size=None):
        return rng.exponential(1.0 / self.mu, size)

    def tail_bound(self, mass: float = NumericTolerances.TAIL_MASS) -> float:
        return -math.log(mass) / self.mu


@dataclass(frozen=True)
class Deterministic(Distribution):
    """Equally spaced points at distance d0."""

    d0: float
    kind = "deterministic"

    def __post_init__(self):
        if not self.d0 > 0:
            raise ValueError(f"Deterministic spacing must be positive, got {self.d0}")

    @property
    def mean(self) -> float:
        return self.d0

    @property
    def variance(self) -> float:
        return 0.0

    @property
    def support_end(self) -> float:
        return self.d0

    def moment(self, k: int) -> float:
        return self.d0**k

    def cdf(self, x: float) -> float:
        return 1.0 if x >= self.d0 else 0.0

    def lst(self, s: Number) -> Number:
        return np.exp(-s * self.d0)

    def log_lst(self, s: Number) -> complex:
        return complex(-s * self.d0)

    def sample(self, rng, size=None):
        if size is None:
            return self.d0
        return np.full(size, self.d0)


@dataclass(frozen=True)
class Uniform(Distribution):
    """Uniform law on (0, b]."""

    b: float
    kind = "uniform"

    def __post_init__(self):
        if not self.b > 0:
            raise ValueError(f"Uniform upper bound must be positive, got {self.b}")

    @property
    def mean(self) -> float:
        return self.b / 2.0

    @property
    def variance(self) -> float:
        return self.b**2 / 12.0

    @property
    def support_end(self) -> float:
        return self.b

    def moment(self, k: int) -> float:
        return self.b**k / (k + 1)

    def cdf(self, x: float) -> float:
        return float(min(max(x / self.b, 0.0), 1.0))

    def lst(self, s: Number) -> Number:
        if s == 0:
            return 1.0
        sb = s * self.b
        return -np.expm1(-sb) / sb

    def log_lst(self, s: Number) -> complex:
        # (1 - e^{-sb})/(sb) = e^{-sb/2} sinh(w)/w with w = sb/2
        w = complex(s * self.b / 2.0)
        if w == 0:
            return 0j
        return complex(-w + np.log(np.sinh(w) / w))

    def sample(self, rng, size=None):
        # 1 - U lies in (0, 1]
        return self.b * (1.0 - rng.random(size))


@dataclass(frozen=True)
class HyperExp2(Distribution):
    """Two-phase hyperexponential law."""

    p1: float
    p2: float
    mu1: float
    mu2: float
    kind = "hyperexp2"

    def __post_init__(self):
        if not (0 < self.p1 < 1 and 0 < self.p2 < 1):
            raise ValueError(f"Branch probabilities must lie in (0, 1): {self.p1}, {self.p2}")
        if abs(self.p1 + self.p2 - 1.0) > 1e-12:
            raise ValueError(f"Branch probabilities must sum to 1, got {self.p1 + self.p2}")
        if not (self.mu1 > 0 and self.mu2 > 0):
            raise ValueError(f"Branch rates must be positive: {self.mu1}, {self.mu2}")

    @property
    def branches(self):
        return ((self.p1, self.mu1), (self.p2, self.mu2))

    @property
    def mean(self) -> float:
        return self.moment(1)

    @property
    def variance(self) -> float:
        return self.moment(2) - self.moment(1) ** 2

    def moment(self, k: int) -> float:
        return sum(p * math.factorial(k) / mu**k for p, mu in self.branches)

    def cdf(self, x: float) -> float:
        if x <= 0:
            return 0.0
        return 1.0 - sum(p * math.exp(-mu * x) for p, mu in self.branches)

    def lst(self, s: Number) -> Number:
        return sum(p * mu / (mu + s) for p, mu in self.branches)

    def sample(self, rng, size=None):
        first = rng.random(size) < self.p1
        draws = np.where(
            first,
            rng.exponential(1.0 / self.mu1, size),
            rng.exponential(1.0 / self.mu2, size),
        )
        return float(draws) if size is None else draws

    def tail_bound(self, mass: float = NumericTolerances.TAIL_MASS) -> float:
        return -math.log(mass) / min(self.mu1, self.mu2)


_KINDS = {
    Exponential.kind: Exponential,
    Deterministic.kind: Deterministic,
    Uniform.kind: Uniform,
    HyperExp2.kind: HyperExp2,
}


def sample(spec: Distribution, rng: np.random.Generator) -> float:
    """Draw one positive distance from ``spec``."""
    return float(spec.sample(rng))


def lst(spec: Distribution, s: Number) -> Number:
    """Evaluate the LST of ``spec`` at ``s``."""
    return spec.lst(s)


def h2_from_cv2(cv2: float, mean: float) -> HyperExp2:
    """
    Balanced-means hyperexponential with the given mean and squared
    coefficient of variation.

    Raises:
        ValueError: If cv2 < 1 or mean <= 0
    """
    if cv2 < 1:
        raise ValueError(f"Squared coefficient of variation must be >= 1, got {cv2}")
    if mean <= 0:
        raise ValueError(f"Mean must be positive, got {mean}")

    p1 = 0.5 * (1.0 + math.sqrt((cv2 - 1.0) / (cv2 + 1.0)))
    p2 = 1.0 - p1
    if p2 <= 0:
        raise ValueError(f"Squared coefficient of variation {cv2} too large")
    return HyperExp2(p1=p1, p2=p2, mu1=2.0 * p1 / mean, mu2=2.0 * p2 / mean)


def distribution_from_dict(data: Dict[str, Any]) -> Distribution:
    """
    Build a law from its config form.

    Accepts ``{"kind": "exponential", "mu": 1}`` style dictionaries; the
    ``hyperexp2`` kind also accepts ``{"cv2": ..., "mean": ...}``.
    """
    if "kind" not in data:
        raise ValueError("Distribution spec is missing 'kind'")

    kind = str(data["kind"]).lower()
    params = {k: v for k, v in data.items() if k != "kind"}
    if kind == HyperExp2.kind and "cv2" in params:
        return h2_from_cv2(float(params["cv2"]), float(params.get("mean", 1.0)))
    if kind not in _KINDS:
        raise ValueError(f"Unknown distribution kind: {kind}")
    try:
        return _KINDS[kind](**{k: float(v) for k, v in params.items()})
    except TypeError as e:
        raise ValueError(f"Invalid parameters for {kind}: {params}") from e


def with_mean(spec: Distribution, mean: float) -> Distribution:
    """The law of the same kind and shape rescaled to the given mean."""
    if mean <= 0:
        raise ValueError(f"Mean must be positive, got {mean}")
    if isinstance(spec, Exponential):
        return Exponential(mu=1.0 / mean)
    if isinstance(spec, Deterministic):
        return Deterministic(d0=mean)
    if isinstance(spec, Uniform):
        return Uniform(b=2.0 * mean)
    if isinstance(spec, HyperExp2):
        scale = spec.mean / mean
        return HyperExp2(spec.p1, spec.p2, spec.mu1 * scale, spec.mu2 * scale)
    raise ValueError(f"Unsupported law: {spec!r}")
