"""User/server instances on the half line."""

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from src.distributions.laws import Distribution
from src.hetcap.capacity import CapacityDist, CapacitySpec


@dataclass(frozen=True, eq=False)
class SpatialInstance:
    """Sorted user and server locations with per-server capacities."""

    users: np.ndarray
    servers: np.ndarray
    capacities: np.ndarray

    def __post_init__(self):
        users = np.asarray(self.users, dtype=float)
        servers = np.asarray(self.servers, dtype=float)
        caps = np.asarray(self.capacities, dtype=np.int64)
        if caps.ndim == 0:
            caps = np.full(len(servers), int(caps), dtype=np.int64)

        if len(caps) != len(servers):
            raise ValueError(
                f"Got {len(caps)} capacities for {len(servers)} servers"
            )
        if np.any(np.diff(users) < 0) or np.any(np.diff(servers) < 0):
            raise ValueError("User and server locations must be sorted")
        if (len(users) and users[0] < 0) or (len(servers) and servers[0] < 0):
            raise ValueError("Locations must be nonnegative")
        if np.any(caps < 1):
            raise ValueError("Capacities must be >= 1")

        object.__setattr__(self, "users", users)
        object.__setattr__(self, "servers", servers)
        object.__setattr__(self, "capacities", caps)

    @property
    def n_users(self) -> int:
        return len(self.users)

    @property
    def n_servers(self) -> int:
        return len(self.servers)

    @property
    def total_capacity(self) -> int:
        return int(self.capacities.sum())

    def restrict_users(self, indices: Sequence[int]) -> "SpatialInstance":
        """Instance keeping only the given users (in order)."""
        idx = np.sort(np.asarray(indices, dtype=np.int64))
        return SpatialInstance(self.users[idx], self.servers, self.capacities)

    def to_frame(self) -> pd.DataFrame:
        users = pd.DataFrame(
            {"role": "user", "location": self.users, "capacity": 0}
        )
        servers = pd.DataFrame(
            {"role": "server", "location": self.servers, "capacity": self.capacities}
        )
        return pd.concat([users, servers], ignore_index=True)

    @classmethod
    def from_frame(cls, frame: pd.DataFrame) -> "SpatialInstance":
        missing = {"role", "location"} - set(frame.columns)
        if missing:
            raise ValueError(f"Instance table missing columns: {sorted(missing)}")
        users = frame.loc[frame["role"] == "user", "location"].to_numpy(float)
        server_rows = frame[frame["role"] == "server"]
        caps = (
            server_rows["capacity"].to_numpy(np.int64)
            if "capacity" in frame.columns
            else np.ones(len(server_rows), dtype=np.int64)
        )
        order = np.argsort(server_rows["location"].to_numpy(float), kind="stable")
        return cls(
            np.sort(users),
            server_rows["location"].to_numpy(float)[order],
            caps[order],
        )

    def to_csv(self, path: str) -> None:
        self.to_frame().to_csv(path, index=False)

    @classmethod
    def read_csv(cls, path: str) -> "SpatialInstance":
        return cls.from_frame(pd.read_csv(path))


def generate_instance(
    user_law: Distribution,
    server_law: Distribution,
    n_users: int,
    n_servers: int,
    capacity: CapacitySpec = 1,
    seed: Optional[int] = None,
) -> SpatialInstance:
    """
    Draw an instance whose locations are cumulative sums of iid gaps.

    Users are drawn first, then servers, then capacities, all from one
    ``numpy.random.default_rng(seed)`` stream.
    """
    if n_users < 1 or n_servers < 1:
        raise ValueError(f"Counts must be >= 1, got {n_users} users, {n_servers} servers")

    rng = np.random.default_rng(seed)
    users = np.cumsum(user_law.sample(rng, n_users))
    servers = np.cumsum(server_law.sample(rng, n_servers))
    if isinstance(capacity, CapacityDist):
        caps = capacity.sample(rng, n_servers)
    else:
        caps = np.full(n_servers, int(capacity), dtype=np.int64)
    return SpatialInstance(users, servers, caps)


def covering_server_count(
    n_users: int,
    user_law: Distribution,
    server_law: Distribution,
    slack: float = 1.2,
) -> int:
    """Number of servers whose expected span exceeds the users' span."""
    span = n_users * user_law.mean
    return int(math.ceil(slack * span / server_law.mean)) + 10
