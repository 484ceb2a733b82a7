"""User/server instances in the plane."""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd
from scipy.spatial.distance import cdist

CLUSTER_BOX = 0.1


@dataclass(frozen=True, eq=False)
class PlanarInstance:
    """User and server points with Euclidean distance."""

    users: np.ndarray  # (|R|, 2)
    servers: np.ndarray  # (|S|, 2)

    def __post_init__(self):
        users = np.asarray(self.users, dtype=float).reshape(-1, 2)
        servers = np.asarray(self.servers, dtype=float).reshape(-1, 2)
        if not (np.all(np.isfinite(users)) and np.all(np.isfinite(servers))):
            raise ValueError("Coordinates must be finite")
        if len(users) > len(servers):
            raise ValueError(
                f"{len(users)} users exceed {len(servers)} servers"
            )
        object.__setattr__(self, "users", users)
        object.__setattr__(self, "servers", servers)

    @property
    def n_users(self) -> int:
        return len(self.users)

    @property
    def n_servers(self) -> int:
        return len(self.servers)

    @property
    def points(self) -> np.ndarray:
        """All nodes, users first."""
        return np.vstack([self.users, self.servers])

    def distance_matrix(self) -> np.ndarray:
        return cdist(self.users, self.servers)

    def to_frame(self) -> pd.DataFrame:
        users = pd.DataFrame({"role": "user", "x": self.users[:, 0], "y": self.users[:, 1]})
        servers = pd.DataFrame(
            {"role": "server", "x": self.servers[:, 0], "y": self.servers[:, 1]}
        )
        return pd.concat([users, servers], ignore_index=True)

    @classmethod
    def from_frame(cls, frame: pd.DataFrame) -> "PlanarInstance":
        missing = {"role", "x", "y"} - set(frame.columns)
        if missing:
            raise ValueError(f"Planar table missing columns: {sorted(missing)}")
        users = frame.loc[frame["role"] == "user", ["x", "y"]].to_numpy(float)
        servers = frame.loc[frame["role"] == "server", ["x", "y"]].to_numpy(float)
        return cls(users, servers)

    @classmethod
    def read_csv(cls, path: str) -> "PlanarInstance":
        return cls.from_frame(pd.read_csv(path))


def clustered_instance(
    n_users: int, n_servers: int, seed: Optional[int] = None, box: float = CLUSTER_BOX
) -> PlanarInstance:
    """
    Users uniform in the unit square; each server uniform in a ``box`` x
    ``box`` square centred on a randomly chosen user.
    """
    if n_users > n_servers:
        raise ValueError(f"{n_users} users exceed {n_servers} servers")
    rng = np.random.default_rng(seed)
    users = rng.random((n_users, 2))
    owners = rng.integers(n_users, size=n_servers)
    servers = users[owners] + box * (rng.random((n_servers, 2)) - 0.5)
    return PlanarInstance(users, servers)


def collinear_instance(
    users_1d: np.ndarray,
    servers_1d: np.ndarray,
    origin=(0.0, 0.0),
    direction=(1.0, 0.0),
) -> PlanarInstance:
    """Points placed along a line through ``origin``."""
    direction = np.asarray(direction, dtype=float)
    direction = direction / np.linalg.norm(direction)
    origin = np.asarray(origin, dtype=float)
    users = origin + np.outer(np.asarray(users_1d, dtype=float), direction)
    servers = origin + np.outer(np.asarray(servers_1d, dtype=float), direction)
    return PlanarInstance(users, servers)
