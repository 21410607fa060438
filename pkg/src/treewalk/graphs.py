"""Weighted-graph representation, TWG text format, tree utilities, and enumeration.

Vertices are dense indices ``0..n-1``. Edges are undirected and loop-free,
carry positive real weights, and appear at most once per unordered pair.
Everything here is an immutable value; all operations are pure.

The TWG text format::

    # optional comment lines anywhere
    <n>
    <u> <v> <weight>
    ...

Weights serialize with up to 12 significant digits.
"""

from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import DisconnectedError, GraphError, NotATreeError, TwgParseError

WEIGHT_FORMAT = ".12g"

LABELED_TREE_MAX = 9   # n^(n-2) blows up past this
FREE_TREE_MAX = 10

# non-isomorphic trees on 1..10 vertices
FREE_TREE_COUNTS = (1, 1, 1, 2, 3, 6, 11, 23, 47, 106)


def format_weight(w: float) -> str:
    return format(w, WEIGHT_FORMAT)


@dataclass(frozen=True)
class WeightedGraph:
    """Loopless undirected graph with positive edge weights.

    ``edges`` is normalized at construction to a sorted tuple of
    ``(u, v, w)`` with ``u < v``. Connectivity is deliberately not an
    invariant; operations that need it call :meth:`require_connected`.
    """

    n: int
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        if self.n < 1:
            raise GraphError(f"vertex count must be positive, got {self.n}")
        seen: set[tuple[int, int]] = set()
        normalized = []
        for edge in self.edges:
            u, v, w = edge
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
            w = float(w)
            if not (w > 0.0) or not math.isfinite(w):
                raise GraphError(f"edge ({u}, {v}) has non-positive weight {w}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphError(f"duplicate edge ({key[0]}, {key[1]})")
            seen.add(key)
            normalized.append((key[0], key[1], w))
        object.__setattr__(self, "edges", tuple(sorted(normalized)))

    # -- basic accessors -------------------------------------------------

    @cached_property
    def neighbors(self) -> tuple[tuple[tuple[int, float], ...], ...]:
        """Per-vertex tuple of (neighbor, weight), sorted by neighbor."""
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def degrees(self) -> tuple[float, ...]:
        d = [0.0] * self.n
        for u, v, w in self.edges:
            d[u] += w
            d[v] += w
        return tuple(d)

    @property
    def vol(self) -> float:
        """Volume of the whole graph: sum of all weighted degrees."""
        return sum(self.degrees)

    @cached_property
    def _weight_index(self) -> dict[tuple[int, int], float]:
        return {(u, v): w for u, v, w in self.edges}

    def degree(self, u: int) -> float:
        self._check_vertex(u)
        return self.degrees[u]

    def volume(self, vertices: Iterable[int]) -> float:
        """Sum of degrees over a vertex subset, degrees taken in this graph.

        This is the ambient volume: for a subgraph it generally differs
        from the subgraph's own internal volume.
        """
        total = 0.0
        for u in vertices:
            self._check_vertex(u)
            total += self.degrees[u]
        return total

    def has_edge(self, u: int, v: int) -> bool:
        key = (u, v) if u < v else (v, u)
        return key in self._weight_index

    def weight(self, u: int, v: int) -> float:
        key = (u, v) if u < v else (v, u)
        try:
            return self._weight_index[key]
        except KeyError:
            raise GraphError(f"no edge ({u}, {v})") from None

    def subgraph_weight(self, edge_pairs: Iterable[tuple[int, int]]) -> float:
        """Product of the weights of the given edges; empty product is 1."""
        w = 1.0
        for u, v in edge_pairs:
            w *= self.weight(u, v)
        return w

    def weight_multiset(self) -> tuple[float, ...]:
        """Edge weights sorted descending."""
        return tuple(sorted((w for _, _, w in self.edges), reverse=True))

    def _check_vertex(self, u: int) -> None:
        if not 0 <= u < self.n:
            raise GraphError(f"vertex {u} out of range for n={self.n}")

    # -- structure predicates --------------------------------------------

    def components(self, removed: Iterable[tuple[int, int]] = ()) -> tuple[frozenset[int], ...]:
        """Connected components after deleting ``removed`` edges, sorted by min vertex."""
        banned = set()
        for u, v in removed:
            if not self.has_edge(u, v):
                raise GraphError(f"no edge ({u}, {v})")
            banned.add((u, v) if u < v else (v, u))
        seen = [False] * self.n
        blocks = []
        for start in range(self.n):
            if seen[start]:
                continue
            seen[start] = True
            stack = [start]
            block = [start]
            while stack:
                x = stack.pop()
                for y, _ in self.neighbors[x]:
                    key = (x, y) if x < y else (y, x)
                    if key in banned or seen[y]:
                        continue
                    seen[y] = True
                    stack.append(y)
                    block.append(y)
            blocks.append(frozenset(block))
        return tuple(sorted(blocks, key=min))

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def is_tree(self) -> bool:
        return len(self.edges) == self.n - 1 and self.is_connected()

    def require_connected(self) -> None:
        if not self.is_connected():
            raise DisconnectedError("graph is not connected")

    def require_tree(self) -> None:
        if not self.is_tree():
            raise NotATreeError("graph is not a tree")

    def degree_sequence(self) -> tuple[int, ...]:
        """Unweighted degree sequence, sorted descending."""
        counts = [len(a) for a in self.neighbors]
        return tuple(sorted(counts, reverse=True))

    def relabeled(self, mapping: Sequence[int]) -> "WeightedGraph":
        """Image under a vertex bijection given as old index -> new index."""
        if sorted(mapping) != list(range(self.n)):
            raise GraphError("mapping is not a bijection on the vertex set")
        return WeightedGraph(self.n, tuple((mapping[u], mapping[v], w) for u, v, w in self.edges))


def is_path_graph(g: WeightedGraph) -> bool:
    if g.n == 1:
        return len(g.edges) == 0
    seq = g.degree_sequence()
    return g.is_tree() and seq.count(1) == 2 and all(d <= 2 for d in seq)


def is_star_graph(g: WeightedGraph) -> bool:
    if g.n <= 2:
        return g.is_tree()
    seq = g.degree_sequence()
    return g.is_tree() and seq[0] == g.n - 1


def remove_edges_partition(
    t: WeightedGraph, edge_pairs: Iterable[tuple[int, int]]
) -> tuple[frozenset[int], ...]:
    """Vertex partition of a tree after deleting the given edges.

    Deleting k edges from a tree leaves exactly k+1 components.
    """
    t.require_tree()
    pairs = list(edge_pairs)
    blocks = t.components(removed=pairs)
    assert len(blocks) == len(pairs) + 1
    return blocks


# -- builders --------------------------------------------------------------


def path_graph(weights: Sequence[float]) -> WeightedGraph:
    """Path v_0 - v_1 - ... - v_m with the given edge weights in order."""
    m = len(weights)
    return WeightedGraph(m + 1, tuple((i, i + 1, w) for i, w in enumerate(weights)))


def star_graph(weights: Sequence[float]) -> WeightedGraph:
    """Star with center 0 and one spoke per weight."""
    m = len(weights)
    return WeightedGraph(m + 1, tuple((0, i + 1, w) for i, w in enumerate(weights)))


def cycle_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    edges = [(i, (i + 1) % n, weight) for i in range(n)]
    return WeightedGraph(n, tuple(edges))


def complete_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    edges = [(i, j, weight) for i in range(n) for j in range(i + 1, n)]
    return WeightedGraph(n, tuple(edges))


# -- TWG text format --------------------------------------------------------


def parse_twg(text: str) -> WeightedGraph:
    """Parse the TWG format; every error reports its 1-based line number."""
    n: int | None = None
    edges: list[tuple[int, int, float]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1:
                raise TwgParseError("expected a single vertex count", lineno)
            try:
                n = int(fields[0])
            except ValueError:
                raise TwgParseError(f"invalid vertex count {fields[0]!r}", lineno) from None
            if n < 1:
                raise TwgParseError(f"vertex count must be positive, got {n}", lineno)
            continue
        if len(fields) != 3:
            raise TwgParseError(f"expected 'u v w', got {line!r}", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise TwgParseError(f"invalid vertex index in {line!r}", lineno) from None
        try:
            w = float(fields[2])
        except ValueError:
            raise TwgParseError(f"invalid weight {fields[2]!r}", lineno) from None
        if u == v:
            raise TwgParseError(f"loop at vertex {u}", lineno)
        if not 0 <= u < n or not 0 <= v < n:
            raise TwgParseError(f"vertex index out of range in ({u}, {v}), n={n}", lineno)
        if not w > 0.0 or not math.isfinite(w):
            raise TwgParseError(f"weight must be positive, got {fields[2]}", lineno)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise TwgParseError(f"duplicate edge ({key[0]}, {key[1]})", lineno)
        seen.add(key)
        edges.append((u, v, w))
    if n is None:
        raise TwgParseError("empty input, expected vertex count", 1)
    return WeightedGraph(n, tuple(edges))


def format_twg(g: WeightedGraph) -> str:
    lines = [str(g.n)]
    for u, v, w in g.edges:
        lines.append(f"{u} {v} {format_weight(w)}")
    return "\n".join(lines) + "\n"


# -- canonical form ----------------------------------------------------------


def tree_centers(t: WeightedGraph) -> tuple[int, ...]:
    """The 1 or 2 central vertices of a tree (weight-agnostic)."""
    t.require_tree()
    if t.n <= 2:
        return tuple(range(t.n))
    adj = [set(v for v, _ in nbrs) for nbrs in t.neighbors]
    remaining = t.n
    layer = [v for v in range(t.n) if len(adj[v]) == 1]
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for leaf in layer:
            for nb in adj[leaf]:
                adj[nb].discard(leaf)
                if len(adj[nb]) == 1:
                    nxt.append(nb)
            adj[leaf].clear()
        layer = nxt
    return tuple(sorted(layer))


def _rooted_code(t: WeightedGraph, root: int) -> str:
    adj = t.neighbors

    def code(v: int, parent: int, w_in: float | None) -> str:
        kids = sorted(code(u, v, w) for u, w in adj[v] if u != parent)
        label = "" if w_in is None else format_weight(w_in)
        return "(" + label + "|" + "".join(kids) + ")"

    return code(root, -1, None)


def canonical_form(t: WeightedGraph) -> str:
    """Canonical code of a weighted tree.

    Two trees get equal codes iff there is a weight-preserving
    isomorphism between them. The tree is rooted at its center; when the
    center is an edge, both rootings are encoded and the lexicographic
    minimum taken. Weights enter the code with 12 significant digits.
    """
    return min(_rooted_code(t, c) for c in tree_centers(t))


# -- enumeration -------------------------------------------------------------


def prufer_tree(seq: Sequence[int], n: int | None = None) -> WeightedGraph:
    """Unit-weight labeled tree decoded from a Pruefer sequence."""
    seq = tuple(seq)
    if n is None:
        n = len(seq) + 2
    if n == 1:
        if seq:
            raise GraphError("sequence must be empty for n=1")
        return WeightedGraph(1, ())
    if len(seq) != n - 2:
        raise GraphError(f"sequence length must be {n - 2} for n={n}")
    degree = [1] * n
    for x in seq:
        if not 0 <= x < n:
            raise GraphError(f"sequence entry {x} out of range")
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x, 1.0))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v, 1.0))
    return WeightedGraph(n, tuple(edges))


def enumerate_labeled_trees(n: int) -> Iterator[WeightedGraph]:
    """All n^(n-2) labeled trees on n vertices, unit weights, via Pruefer."""
    if not 1 <= n <= LABELED_TREE_MAX:
        raise GraphError(f"labeled enumeration supports 1 <= n <= {LABELED_TREE_MAX}")
    if n <= 2:
        yield prufer_tree((), n)
        return
    for seq in product(range(n), repeat=n - 2):
        yield prufer_tree(seq, n)


def _rooted_level_sequences(n: int) -> Iterator[tuple[int, ...]]:
    """Level sequences of all rooted trees on n vertices, root level 1.

    Successor rule on level sequences in decreasing lexicographic order:
    from the path (1,2,...,n) down to the star (1,2,2,...,2).
    """
    s = list(range(1, n + 1))
    while True:
        yield tuple(s)
        p = max((i for i in range(n) if s[i] > 2), default=-1)
        if p < 0:
            return
        q = max(i for i in range(p) if s[i] == s[p] - 1)
        period = p - q
        for i in range(p, n):
            s[i] = s[i - period]


def level_sequence_tree(levels: Sequence[int]) -> WeightedGraph:
    """Unit-weight tree from a rooted level sequence (parent = nearest shallower)."""
    n = len(levels)
    edges = []
    for i in range(1, n):
        parent = max(j for j in range(i) if levels[j] == levels[i] - 1)
        edges.append((parent, i, 1.0))
    return WeightedGraph(n, tuple(edges))


def enumerate_free_trees(n: int) -> list[WeightedGraph]:
    """One unit-weight representative per isomorphism class of trees on n vertices."""
    if not 1 <= n <= FREE_TREE_MAX:
        raise GraphError(f"free-tree enumeration supports 1 <= n <= {FREE_TREE_MAX}")
    if n == 1:
        return [WeightedGraph(1, ())]
    reps: dict[str, WeightedGraph] = {}
    for levels in _rooted_level_sequences(n):
        t = level_sequence_tree(levels)
        code = canonical_form(t)
        if code not in reps:
            reps[code] = t
    return [reps[c] for c in sorted(reps)]


# -- random trees (seeded; used by the verification suites) -----------------


def random_labeled_tree(rng: random.Random, n: int) -> WeightedGraph:
    if n <= 2:
        return prufer_tree((), n)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    return prufer_tree(seq, n)


def random_weighted_tree(
    rng: random.Random, n: int, low: float = 0.1, high: float = 10.0
) -> WeightedGraph:
    """Random labeled tree with weights log-uniform in [low, high]."""
    t = random_labeled_tree(rng, n)
    lo, hi = math.log10(low), math.log10(high)
    edges = tuple((u, v, 10.0 ** rng.uniform(lo, hi)) for u, v, _ in t.edges)
    return WeightedGraph(n, edges)
