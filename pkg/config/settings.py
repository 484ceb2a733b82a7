"""Application settings and configuration."""

from decouple import config


class Settings:
    """Central configuration for SERVLINE."""

    # Experiments
    DEFAULT_TRIALS: int = config("DEFAULT_TRIALS", default=50, cast=int)
    DEFAULT_POINTS: int = config("DEFAULT_POINTS", default=100000, cast=int)
    WARMUP_FRACTION: float = config("WARMUP_FRACTION", default=0.1, cast=float)
    DEFAULT_SEED: int = config("DEFAULT_SEED", default=0, cast=int)
    WORKERS: int = config("WORKERS", default=1, cast=int)
    ARTIFACT_DIR: str = config("ARTIFACT_DIR", default="artifacts/runs")

    # Optimal assignment: largest banded traceback table before switching to the sweep
    DP_MAX_CELLS: int = config("DP_MAX_CELLS", default=20_000_000, cast=int)

    # Cache Settings
    CACHE_TTL_MINUTES: int = config("CACHE_TTL_MINUTES", default=60, cast=int)
    CACHE_MAX_SIZE: int = config("CACHE_MAX_SIZE", default=256, cast=int)

    # Logging
    LOG_LEVEL: str = config("LOG_LEVEL", default="INFO")
    LOG_FILE: str = config("LOG_FILE", default="logs/servline.log")

    # CSV output
    FLOAT_FORMAT: str = "%.10g"
