"""First-principles random-walk computations via dense linear algebra.

This is the ground-truth route: transition matrix, stationary
distribution, the full hitting-time matrix from per-target linear
solves, and the two scalar summaries (average hitting time, Kemeny's
constant). The forest and spectral modules are checked against it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, DisconnectedError
from .graphs import WeightedGraph

STATIONARY_RTOL = 1e-10
KEMENY_INDEPENDENCE_RTOL = 1e-8


@dataclass(frozen=True)
class ScalarStats:
    """Scalar summary of the walk on one graph."""

    alpha: float
    kappa: float
    vol: float
    n: int


def adjacency_matrix(g: WeightedGraph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u, v, w in g.edges:
        a[u, v] = w
        a[v, u] = w
    return a


def transition_matrix(g: WeightedGraph) -> np.ndarray:
    """Row-stochastic matrix p[u][v] = w(uv) / d(u)."""
    g.require_connected()
    if g.n < 2:
        raise DisconnectedError("walk needs at least 2 vertices")
    a = adjacency_matrix(g)
    d = np.array(g.degrees)
    return a / d[:, None]


def stationary(g: WeightedGraph) -> np.ndarray:
    """Stationary distribution pi[u] = d(u) / vol, checked against pi P = pi."""
    p = transition_matrix(g)
    d = np.array(g.degrees)
    pi = d / d.sum()
    residual = np.max(np.abs(pi @ p - pi))
    if residual > STATIONARY_RTOL:
        raise ConsistencyError(f"stationary fixed-point residual {residual:.3e}")
    return pi


def hitting_matrix(g: WeightedGraph) -> np.ndarray:
    """Expected steps h[u][v] from u until first arrival at v; zero diagonal.

    For each target v the column solves the one-step equations
    h[u][v] = 1 + sum_x p[u][x] h[x][v] (u != v) by dense LU.
    """
    p = transition_matrix(g)
    n = g.n
    h = np.zeros((n, n))
    eye = np.eye(n)
    ones = np.ones(n)
    for v in range(n):
        a = eye - p
        a[v, :] = 0.0
        a[v, v] = 1.0
        b = ones.copy()
        b[v] = 0.0
        try:
            h[:, v] = np.linalg.solve(a, b)
        except np.linalg.LinAlgError as exc:
            raise DisconnectedError(f"singular hitting-time system for target {v}") from exc
    return h


def average_hitting_time(g: WeightedGraph) -> float:
    """Mean of h[u][v] over all ordered pairs, zero diagonal included."""
    h = hitting_matrix(g)
    return float(h.sum()) / (g.n * g.n)


def kemeny(g: WeightedGraph) -> float:
    """Expected time to a stationary-random destination, start-independent.

    Computes sum_v h[u][v] pi[v] for every start u and checks that the
    values agree before returning their mean.
    """
    h = hitting_matrix(g)
    pi = stationary(g)
    per_start = h @ pi
    value = float(per_start.mean())
    spread = float(np.max(np.abs(per_start - value)))
    if spread > KEMENY_INDEPENDENCE_RTOL * abs(value):
        raise ConsistencyError(
            f"Kemeny start-independence violated: spread {spread:.3e} at value {value:.6g}"
        )
    return value


def walk_stats(g: WeightedGraph) -> ScalarStats:
    h = hitting_matrix(g)
    pi = stationary(g)
    per_start = h @ pi
    kap = float(per_start.mean())
    spread = float(np.max(np.abs(per_start - kap)))
    if spread > KEMENY_INDEPENDENCE_RTOL * abs(kap):
        raise ConsistencyError(f"Kemeny start-independence violated: spread {spread:.3e}")
    return ScalarStats(
        alpha=float(h.sum()) / (g.n * g.n),
        kappa=kap,
        vol=g.vol,
        n=g.n,
    )
