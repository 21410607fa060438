"""Forest formulas: weighted spanning-tree sums and spanning 2-forest routes.

tau(G) sums the weights (edge-weight products) of all spanning trees.
Every spanning 2-forest F with components (T1, T2) contributes its size
product S(F) = |T1||T2| and its ambient volume product
V_G(F) = vol_G(T1) vol_G(T2); the weighted sums of those recover the
average hitting time and Kemeny's constant:

    alpha = vol * sum S(F) w(F) / (n^2 tau)
    kappa = sum V_G(F) w(F) / (vol * tau)

Trees use O(n) closed forms (one cut per edge, w(T\\e) = tau/w(e));
general graphs fall back to guarded brute-force subset enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

import numpy as np

from .errors import ConsistencyError, GraphError
from .graphs import WeightedGraph
from .walks import adjacency_matrix

ENUM_EDGE_MAX = 20
TAU_AGREEMENT_RTOL = 1e-9


@dataclass(frozen=True)
class TwoForestCut:
    """A spanning 2-forest with its component partition and statistics.

    ``s_value`` multiplies the component sizes; ``v_value`` multiplies
    component volumes taken with degrees in the ambient graph, not in
    the components themselves.
    """

    kept_edges: tuple[tuple[int, int], ...]
    deleted_edges: tuple[tuple[int, int], ...]
    blocks: tuple[frozenset[int], frozenset[int]]
    s_value: int
    v_value: float
    weight: float


@dataclass(frozen=True)
class ForestSums:
    tau: float
    s_sum: float
    v_sum: float


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def _spanning_tree_weight_enum(g: WeightedGraph) -> float:
    n, edges = g.n, g.edges
    total = 0.0
    for kept in combinations(edges, n - 1):
        uf = _UnionFind(n)
        w = 1.0
        ok = True
        for u, v, wt in kept:
            if not uf.union(u, v):
                ok = False
                break
            w *= wt
        if ok:
            total += w
    return total


def tau(g: WeightedGraph) -> float:
    """Weighted spanning-tree sum by the reduced-Laplacian determinant.

    When the graph is small enough, the value is re-derived by explicit
    subset enumeration and the two routes must agree.
    """
    g.require_connected()
    if g.n == 1:
        return 1.0
    a = adjacency_matrix(g)
    lap = np.diag(np.array(g.degrees)) - a
    det = float(np.linalg.det(lap[1:, 1:]))
    if len(g.edges) <= ENUM_EDGE_MAX:
        enum = _spanning_tree_weight_enum(g)
        if abs(det - enum) > TAU_AGREEMENT_RTOL * max(abs(det), abs(enum)):
            raise ConsistencyError(
                f"matrix-tree determinant {det!r} disagrees with enumeration {enum!r}"
            )
    return det


def _cut_from_kept(g: WeightedGraph, kept: tuple[tuple[int, int, float], ...]) -> TwoForestCut:
    kept_pairs = tuple((u, v) for u, v, _ in kept)
    kept_set = set(kept_pairs)
    deleted = tuple((u, v) for u, v, _ in g.edges if (u, v) not in kept_set)
    blocks = _blocks_from_kept(g.n, kept_pairs)
    assert len(blocks) == 2
    b1, b2 = blocks
    weight = 1.0
    for _, _, w in kept:
        weight *= w
    return TwoForestCut(
        kept_edges=kept_pairs,
        deleted_edges=deleted,
        blocks=(b1, b2),
        s_value=len(b1) * len(b2),
        v_value=g.volume(b1) * g.volume(b2),
        weight=weight,
    )


def _blocks_from_kept(n: int, kept_pairs: tuple[tuple[int, int], ...]) -> tuple[frozenset[int], ...]:
    uf = _UnionFind(n)
    for u, v in kept_pairs:
        uf.union(u, v)
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(uf.find(x), []).append(x)
    return tuple(sorted((frozenset(b) for b in groups.values()), key=min))


def tree_cut(t: WeightedGraph, u: int, v: int) -> TwoForestCut:
    """The 2-forest obtained from a tree by deleting one edge."""
    t.require_tree()
    if not t.has_edge(u, v):
        raise GraphError(f"no edge ({u}, {v})")
    kept = tuple(e for e in t.edges if {e[0], e[1]} != {u, v})
    return _cut_from_kept(t, kept)


def two_forest_cuts(g: WeightedGraph) -> Iterator[TwoForestCut]:
    """All spanning 2-forests. One per edge for a tree; brute force otherwise."""
    g.require_connected()
    if g.n < 2:
        return
    if g.is_tree():
        for u, v, _ in g.edges:
            yield tree_cut(g, u, v)
        return
    if len(g.edges) > ENUM_EDGE_MAX:
        raise GraphError(f"2-forest enumeration guarded to {ENUM_EDGE_MAX} edges")
    # acyclic with n-2 edges <=> spanning forest with exactly 2 components
    for kept in combinations(g.edges, g.n - 2):
        uf = _UnionFind(g.n)
        if all(uf.union(u, v) for u, v, _ in kept):
            yield _cut_from_kept(g, kept)


def _tree_edge_stats(t: WeightedGraph) -> list[tuple[float, int, float]]:
    """Per edge of a tree: (weight, size product, ambient volume product).

    One rooted pass: for the cut at the edge above vertex c, the child
    side has ambient volume 2*(weight inside the subtree) + w(edge).
    """
    n = t.n
    adj = t.neighbors
    parent = [-1] * n
    parent_w = [0.0] * n
    order = [0]
    seen = [False] * n
    seen[0] = True
    for x in order:
        for y, w in adj[x]:
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                parent_w[y] = w
                order.append(y)
    size = [1] * n
    inner = [0.0] * n  # total edge weight inside the subtree
    for x in reversed(order[1:]):
        p = parent[x]
        size[p] += size[x]
        inner[p] += inner[x] + parent_w[x]
    vol = t.vol
    stats = []
    for x in order[1:]:
        w = parent_w[x]
        side_vol = 2.0 * inner[x] + w
        stats.append((w, size[x] * (n - size[x]), side_vol * (vol - side_vol)))
    return stats


def forest_sums(g: WeightedGraph) -> ForestSums:
    """tau together with the S- and V-weighted 2-forest sums."""
    t = tau(g)
    s_sum = 0.0
    v_sum = 0.0
    for cut in two_forest_cuts(g):
        s_sum += cut.s_value * cut.weight
        v_sum += cut.v_value * cut.weight
    return ForestSums(tau=t, s_sum=s_sum, v_sum=v_sum)


def alpha_forest(g: WeightedGraph) -> float:
    """Average hitting time from the 2-forest sum."""
    g.require_connected()
    if g.n == 1:
        return 0.0
    n = g.n
    vol = g.vol
    if g.is_tree():
        return (vol / (n * n)) * sum(s / w for w, s, _ in _tree_edge_stats(g))
    sums = forest_sums(g)
    return vol * sums.s_sum / (n * n * sums.tau)


def kappa_forest(g: WeightedGraph) -> float:
    """Kemeny's constant from the 2-forest sum."""
    g.require_connected()
    if g.n == 1:
        return 0.0
    vol = g.vol
    if g.is_tree():
        return sum(v / w for w, _, v in _tree_edge_stats(g)) / vol
    sums = forest_sums(g)
    return sums.v_sum / (vol * sums.tau)
