"""Approximations and limiting regimes for unidirectional policies."""

from src.distributions.laws import Distribution


def heavy_traffic_distance(user_law: Distribution, server_law: Distribution) -> float:
    """
    Heavy-traffic approximation of E[D] for unit capacities:
    alpha_X + (sigma_X^2 + sigma_Y^2) / (2 alpha_Y (1 - rho)).

    This is a conjectured approximation as rho -> 1, not an exact value.
    """
    rho = server_law.mean / user_law.mean
    if rho >= 1:
        raise ValueError(f"Unstable: rho={rho:.4g} >= 1")
    return server_law.mean + (server_law.variance + user_law.variance) / (
        2.0 * user_law.mean * (1.0 - rho)
    )


def uncapacitated_distance(mode: str, server_law: Distribution) -> float:
    """
    E[D] when servers have no capacity limit.

    GRPS: the nearest server to the right of a user, 1/mu.
    PRGS: the residual server gap seen by a Poisson user, (mu/2)(sigma_X^2 + 1/mu^2).
    """
    key = mode.upper()
    if key == "GRPS":
        return server_law.mean
    if key == "PRGS":
        return server_law.second_moment / (2.0 * server_law.mean)
    raise ValueError(f"Unknown mode: {mode}")


def forkjoin_expected_max(lam: float, mu: float) -> float:
    """
    Approximate E[max(D1, D2)] for requests needing one server on each of
    two independent Poisson(mu) lines: (12 mu - lam) / (8 mu (mu - lam)).
    """
    if not 0 <= lam < mu:
        raise ValueError(f"Fork-join needs 0 <= lam < mu, got lam={lam}, mu={mu}")
    return (12.0 * mu - lam) / (8.0 * mu * (mu - lam))
