"""Numerical tolerances shared by the solvers."""

from typing import Dict


class NumericTolerances:
    """Tolerances and iteration caps for root finding, quadrature and guards."""

    # Real roots in (0, 1)
    ROOT_TOL: float = 1e-12
    BISECTION_MAX_ITER: int = 200

    # Roots-of-unity fixed point for unit-disk zeros
    FIXED_POINT_TOL: float = 1e-12
    FIXED_POINT_MAX_ITER: int = 100000
    DUPLICATE_ZERO_DIST: float = 1e-8
    ZERO_RESIDUAL: float = 1e-9

    # Quadrature
    QUAD_ABS_TOL: float = 1e-10
    QUAD_LIMIT: int = 400
    TAIL_MASS: float = 1e-12

    # Linear systems
    IMAG_RESIDUE: float = 1e-8
    CONDITION_CAP: float = 1e12
    NEGATIVE_PROB_TOL: float = 1e-8
    NORMALIZATION_TOL: float = 1e-8

    # Differentiation and contour checks
    RICHARDSON_STEP: float = 1e-4
    RICHARDSON_LEVELS: int = 2
    CONTOUR_RADIUS: float = 1.0 + 1e-6

    # Embedding
    TIKHONOV_SCALE: float = 1e-3
    DEGENERATE_RATIO: float = 1e-3

    @classmethod
    def as_dict(cls) -> Dict[str, float]:
        """All tolerances keyed by name."""
        return {
            name: value
            for name, value in vars(cls).items()
            if name.isupper() and not name.startswith("_")
        }

    @classmethod
    def get(cls, name: str) -> float:
        """Look up a tolerance by name."""
        values = cls.as_dict()
        if name not in values:
            raise ValueError(f"Unknown tolerance: {name}")
        return values[name]
