"""Random server capacity laws."""

from dataclasses import dataclass
from typing import Any, Dict, Sequence, Tuple, Union

import numpy as np


@dataclass(frozen=True)
class CapacityDist:
    """Capacity law over {1, ..., c} given by probabilities p_1..p_c."""

    probs: Tuple[float, ...]

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probs)
        object.__setattr__(self, "probs", probs)
        if not probs:
            raise ValueError("Capacity law needs at least one probability")
        if any(p < 0 for p in probs):
            raise ValueError(f"Capacity probabilities must be nonnegative: {probs}")
        if abs(sum(probs) - 1.0) > 1e-10:
            raise ValueError(f"Capacity probabilities must sum to 1, got {sum(probs)}")
        if probs[-1] <= 0:
            raise ValueError("Largest capacity must have positive probability")

    @property
    def max_capacity(self) -> int:
        return len(self.probs)

    @property
    def mean(self) -> float:
        return float(sum((i + 1) * p for i, p in enumerate(self.probs)))

    def pmf(self, capacity: int) -> float:
        if 1 <= capacity <= self.max_capacity:
            return self.probs[capacity - 1]
        return 0.0

    def sample(self, rng: np.random.Generator, size=None):
        return rng.choice(np.arange(1, self.max_capacity + 1), size=size, p=self.probs)

    def shifted(self, steps: int = 1) -> "CapacityDist":
        """The law of C + steps (first-order dominant)."""
        return CapacityDist((0.0,) * steps + self.probs)

    def to_dict(self) -> Dict[str, Any]:
        return {"probs": list(self.probs)}

    @classmethod
    def constant(cls, capacity: int) -> "CapacityDist":
        if capacity < 1:
            raise ValueError(f"Capacity must be >= 1, got {capacity}")
        return cls((0.0,) * (capacity - 1) + (1.0,))

    @classmethod
    def uniform(cls, low: int, high: int) -> "CapacityDist":
        """Uniform over {low, ..., high}."""
        if not 1 <= low <= high:
            raise ValueError(f"Invalid capacity range [{low}, {high}]")
        width = high - low + 1
        return cls((0.0,) * (low - 1) + (1.0 / width,) * width)


CapacitySpec = Union[int, CapacityDist]


def capacity_from_config(value: Union[int, Sequence[float], Dict[str, Any]]) -> CapacitySpec:
    """Accept an integer, a probability list, or {"probs": [...]}."""
    if isinstance(value, bool):
        raise ValueError(f"Invalid capacity: {value}")
    if isinstance(value, int):
        if value < 1:
            raise ValueError(f"Capacity must be >= 1, got {value}")
        return value
    if isinstance(value, dict):
        if "uniform" in value:
            low, high = value["uniform"]
            return CapacityDist.uniform(int(low), int(high))
        return CapacityDist(tuple(value["probs"]))
    return CapacityDist(tuple(value))
