"""Configuration package for SERVLINE."""

from config.settings import Settings
from config.numerics import NumericTolerances

__all__ = ["NumericTolerances", "Settings"]
