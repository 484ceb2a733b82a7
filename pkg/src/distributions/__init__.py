"""Inter-point distance laws and the exceptional-service law."""

from src.distributions.laws import (
    Deterministic,
    Distribution,
    Exponential,
    HyperExp2,
    Uniform,
    distribution_from_dict,
    h2_from_cv2,
    lst,
    sample,
    with_mean,
)
from src.distributions.exceptional import ExceptionalDist, exceptional_dist

__all__ = [
    "Deterministic",
    "Distribution",
    "ExceptionalDist",
    "Exponential",
    "HyperExp2",
    "Uniform",
    "distribution_from_dict",
    "exceptional_dist",
    "h2_from_cv2",
    "lst",
    "sample",
    "with_mean",
]
