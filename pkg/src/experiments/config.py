"""
Experiment configuration.

A config is a JSON object; ``ExperimentConfig.from_dict`` validates it and
collects every offending field before raising ``ConfigError``.
"""

from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional

from config.settings import Settings
from src.distributions.laws import (
    Distribution,
    Exponential,
    distribution_from_dict,
    h2_from_cv2,
    with_mean,
)
from src.hetcap.capacity import CapacityDist, CapacitySpec, capacity_from_config

SCENARIOS = ("simulate", "analytic", "hetcap", "assign", "embed", "sweep", "compare")
SWEEPABLE = ("simulate", "analytic", "hetcap", "compare")
GRID_KEYS = ("rho", "c", "cv2", "beta")
SIM_POLICIES = ("MTR", "UGS", "NN", "GS", "OPT", "FORKJOIN")
ANALYTIC_MODES = ("PRGS", "GRPS", "MM1_BULK", "HEAVY_TRAFFIC", "UNCAPACITATED")
EMBED_MAX_NODES = 4000


class ConfigError(ValueError):
    """Invalid experiment configuration; ``errors`` lists each offending field."""

    def __init__(self, errors: List[Dict[str, str]]):
        self.errors = errors
        detail = "; ".join(f"{e['field']}: {e['message']}" for e in errors)
        super().__init__(f"Invalid experiment config: {detail}")


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: str
    name: str = "experiment"
    users: Distribution = field(default_factory=lambda: Exponential(0.5))
    servers: Distribution = field(default_factory=lambda: Exponential(1.0))
    capacity: CapacitySpec = 1
    policies: List[str] = field(default_factory=lambda: ["MTR"])
    modes: List[str] = field(default_factory=lambda: ["PRGS"])
    n_users: int = Settings.DEFAULT_POINTS
    n_servers: Optional[int] = None
    trials: int = Settings.DEFAULT_TRIALS
    seed: int = Settings.DEFAULT_SEED
    warmup: float = Settings.WARMUP_FRACTION
    beta: float = 1.0
    t0: float = 1.0
    instance: Optional[str] = None
    embedding: Dict[str, Any] = field(default_factory=dict)
    sweep_of: str = "simulate"
    grid: Dict[str, List[float]] = field(default_factory=dict)
    output: Optional[str] = None

    @property
    def lam(self) -> float:
        return 1.0 / self.users.mean

    @property
    def mu(self) -> float:
        return 1.0 / self.servers.mean

    @property
    def mean_capacity(self) -> float:
        if isinstance(self.capacity, CapacityDist):
            return self.capacity.mean
        return float(self.capacity)

    @property
    def rho(self) -> float:
        """Load lam / (c mu)."""
        return self.lam / (self.mean_capacity * self.mu)

    @property
    def unit_capacity(self) -> int:
        """Integer capacity; raises for random capacities."""
        if isinstance(self.capacity, CapacityDist):
            if self.capacity.pmf(self.capacity.max_capacity) == 1.0:
                return self.capacity.max_capacity
            raise ValueError("Scenario needs a constant capacity")
        return int(self.capacity)

    def with_cell(self, cell: Dict[str, float]) -> "ExperimentConfig":
        """Config for one sweep cell (grid values applied in GRID_KEYS order)."""
        cfg = replace(self, scenario=self.sweep_of, grid={})
        if "c" in cell:
            cfg = replace(cfg, capacity=int(cell["c"]))
        if "cv2" in cell:
            cv2 = float(cell["cv2"])
            law = Exponential(cfg.mu) if cv2 == 1.0 else h2_from_cv2(cv2, cfg.servers.mean)
            cfg = replace(cfg, servers=law)
        if "rho" in cell:
            lam = float(cell["rho"]) * cfg.mean_capacity * cfg.mu
            cfg = replace(cfg, users=with_mean(cfg.users, 1.0 / lam))
        if "beta" in cell:
            cfg = replace(cfg, beta=float(cell["beta"]))
        return cfg

    def to_dict(self) -> Dict[str, Any]:
        capacity = (
            self.capacity.to_dict() if isinstance(self.capacity, CapacityDist) else self.capacity
        )
        return {
            "scenario": self.scenario,
            "name": self.name,
            "users": self.users.to_dict(),
            "servers": self.servers.to_dict(),
            "capacity": capacity,
            "policies": list(self.policies),
            "modes": list(self.modes),
            "n_users": self.n_users,
            "n_servers": self.n_servers,
            "trials": self.trials,
            "seed": self.seed,
            "warmup": self.warmup,
            "beta": self.beta,
            "t0": self.t0,
            "instance": self.instance,
            "embedding": dict(self.embedding),
            "sweep_of": self.sweep_of,
            "grid": {k: list(v) for k, v in self.grid.items()},
            "output": self.output,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        """
        Build and validate a config.

        ``users``/``servers`` take distribution specs; ``lam``/``mu`` rescale
        them to the given rates (both default to exponential laws).

        Raises:
            ConfigError: Listing every invalid field
        """
        errors: List[Dict[str, str]] = []

        def fail(name: str, message: str) -> None:
            errors.append({"field": name, "message": message})

        unknown = set(data) - set(cls.__dataclass_fields__) - {"lam", "mu"}
        for name in sorted(unknown):
            fail(name, "unknown field")

        scenario = str(data.get("scenario", ""))
        if scenario not in SCENARIOS:
            fail("scenario", f"must be one of {', '.join(SCENARIOS)}")

        kwargs: Dict[str, Any] = {"scenario": scenario}
        defaults = {"users": Exponential(0.5), "servers": Exponential(1.0)}
        for name, rate_key in (("users", "lam"), ("servers", "mu")):
            try:
                law = distribution_from_dict(data[name]) if name in data else defaults[name]
                if rate_key in data:
                    rate = float(data[rate_key])
                    if rate <= 0:
                        raise ValueError(f"{rate_key} must be positive")
                    law = with_mean(law, 1.0 / rate)
                kwargs[name] = law
            except (TypeError, ValueError) as e:
                fail(rate_key if rate_key in data else name, str(e))

        if "capacity" in data:
            try:
                kwargs["capacity"] = capacity_from_config(data["capacity"])
            except (KeyError, TypeError, ValueError) as e:
                fail("capacity", str(e))

        for name in ("policies", "modes"):
            if name in data:
                values = [str(v).upper() for v in data[name]]
                allowed = SIM_POLICIES if name == "policies" else ANALYTIC_MODES
                bad = [v for v in values if v not in allowed]
                if bad or not values:
                    fail(name, f"must be a non-empty subset of {', '.join(allowed)}")
                kwargs[name] = values

        for name, cast, minimum in (
            ("n_users", int, 1),
            ("n_servers", int, 1),
            ("trials", int, 1),
            ("seed", int, 0),
        ):
            if name in data and data[name] is not None:
                try:
                    value = cast(data[name])
                    if value < minimum:
                        raise ValueError(f"must be >= {minimum}")
                    kwargs[name] = value
                except (TypeError, ValueError) as e:
                    fail(name, str(e))

        for name in ("warmup", "beta", "t0"):
            if name in data:
                try:
                    kwargs[name] = float(data[name])
                except (TypeError, ValueError) as e:
                    fail(name, str(e))
        if "warmup" in kwargs and not 0 <= kwargs["warmup"] < 1:
            fail("warmup", "must lie in [0, 1)")
        if kwargs.get("beta", 1.0) < 0:
            fail("beta", "must be nonnegative")

        for name in ("name", "instance", "output", "sweep_of"):
            if data.get(name) is not None:
                kwargs[name] = str(data[name])
        if "embedding" in data:
            kwargs["embedding"] = dict(data["embedding"])

        if scenario == "sweep":
            if kwargs.get("sweep_of", "simulate") not in SWEEPABLE:
                fail("sweep_of", f"must be one of {', '.join(SWEEPABLE)}")
            grid = data.get("grid") or {}
            if not grid or set(grid) - set(GRID_KEYS):
                fail("grid", f"needs values for some of {', '.join(GRID_KEYS)}")
            kwargs["grid"] = {k: [float(v) for v in grid[k]] for k in GRID_KEYS if k in grid}
            for value in kwargs["grid"].get("rho", []):
                if not 0 < value < 1:
                    fail("grid.rho", f"load {value} outside (0, 1)")
            for value in kwargs["grid"].get("cv2", []):
                if value < 1:
                    fail("grid.cv2", f"cv2 {value} below 1 has no hyperexponential fit")

        if errors:
            raise ConfigError(errors)

        cfg = cls(**kwargs)
        cfg._check_stability()
        return cfg

    def _check_stability(self) -> None:
        queueing = self.scenario in ("simulate", "analytic", "hetcap", "compare")
        if queueing and self.rho >= 1:
            raise ConfigError(
                [{"field": "lam", "message": f"unstable load rho={self.rho:.4g} >= 1"}]
            )
        if self.scenario == "embed" and not self.instance:
            nodes = self.n_users + (self.n_servers or 2 * self.n_users)
            if nodes > EMBED_MAX_NODES:
                raise ConfigError(
                    [{"field": "n_users", "message": f"{nodes} nodes exceed {EMBED_MAX_NODES}"}]
                )
