"""Utility functions and helpers."""

from src.utils.cache import cache_response, clear_cache
from src.utils.logger import get_logger
from src.utils.numerics import NumericalError

__all__ = [
    "NumericalError",
    "cache_response",
    "clear_cache",
    "get_logger",
]
