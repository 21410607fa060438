"""Monte Carlo random-walk hitting-time estimation with a portable RNG.

The generator is written out in full (splitmix64 seeding feeding
xorshift64*) so the exact sample sequence can be reproduced in any
language from the constants below; platform default generators are
deliberately avoided. Trials are independent: trial i derives its own
state as mix64(seed) XOR i, so a parallel split by trial index yields
the identical estimate.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from math import sqrt

from .errors import GraphError
from .graphs import WeightedGraph

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_STAR = 0x2545F4914F6CDD1D

STEP_CAP = 10**9


def mix64(x: int) -> int:
    """splitmix64 finalizer; also doubles as the seed/trial hash."""
    x = (x + _GOLDEN) & _MASK
    x = ((x ^ (x >> 30)) * _MIX1) & _MASK
    x = ((x ^ (x >> 27)) * _MIX2) & _MASK
    return x ^ (x >> 31)


class Xorshift64Star:
    """xorshift64* stream; state is never zero thanks to the seed mix."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = mix64(seed & _MASK) or _GOLDEN

    def next_u64(self) -> int:
        s = self.state
        s ^= s >> 12
        s = (s ^ (s << 25)) & _MASK
        s ^= s >> 27
        self.state = s
        return (s * _STAR) & _MASK

    def next_float(self) -> float:
        """Uniform in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0**-53


@dataclass(frozen=True)
class WalkEstimate:
    mean: float
    stderr: float
    trials: int
    seed: int


def estimate_hitting(
    g: WeightedGraph, start: int, target: int, trials: int, seed: int
) -> WalkEstimate:
    """Sample mean and standard error of the hitting time from start to target.

    Each step samples a neighbor with probability proportional to edge
    weight by inverting the per-vertex cumulative weight array. A trial
    exceeding the step cap aborts: on a connected graph the walk hits
    almost surely, so the cap only trips on sampling bugs.
    """
    g.require_connected()
    g._check_vertex(start)
    g._check_vertex(target)
    if trials < 1:
        raise GraphError("trials must be >= 1")

    nbrs: list[list[int]] = []
    cums: list[list[float]] = []
    for v in range(g.n):
        vs = [u for u, _ in g.neighbors[v]]
        acc: list[float] = []
        running = 0.0
        for _, w in g.neighbors[v]:
            running += w
            acc.append(running)
        nbrs.append(vs)
        cums.append(acc)

    base = mix64(seed & _MASK)
    total = 0
    total_sq = 0
    for trial in range(trials):
        rng = Xorshift64Star(base ^ trial)
        next_float = rng.next_float
        cur = start
        steps = 0
        while cur != target:
            cum = cums[cur]
            x = next_float() * cum[-1]
            i = bisect_right(cum, x)
            if i == len(cum):  # float rounding at the top end
                i -= 1
            cur = nbrs[cur][i]
            steps += 1
            if steps > STEP_CAP:
                raise GraphError(f"walk exceeded {STEP_CAP} steps; sampling is broken")
        total += steps
        total_sq += steps * steps

    mean = total / trials
    if trials > 1:
        var = (total_sq - trials * mean * mean) / (trials - 1)
        var = max(var, 0.0)
    else:
        var = 0.0
    return WalkEstimate(mean=mean, stderr=sqrt(var / trials), trials=trials, seed=seed)
