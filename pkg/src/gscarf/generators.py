"""Seeded synthetic graph generators used for testing and benchmarks.

Two families:

* planted-partition graphs (:func:`gen_planted`): ``k`` near-equal
  contiguous communities over ``n`` nodes; edges are drawn endpoint-first,
  with the second endpoint chosen inside the first endpoint's community
  with probability ``1 - mu`` and uniformly over the rest of the graph
  otherwise, so ``mu`` is the expected mixing fraction.
* power-law graphs (:func:`gen_chung_lu`): expected-degree (Chung-Lu)
  model with weights ``w_v`` proportional to ``(v + 1) ** (-1/(gamma-1))``
  scaled to the target average degree; pairs are sampled with the
  geometric skip-ahead method in O(n + m) expected time and each pair
  appears at most once (a simple graph).

Determinism: the planted sampler draws all randomness from NumPy's PCG64
(``numpy.random.default_rng(seed)``), the power-law sampler from Python's
Mersenne Twister (``random.Random(seed)``).  Both are fully specified by
the seed, so identical specs reproduce identical graphs anywhere.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .engine import Partition
from .graph import Graph, build_graph

__all__ = ["PlantedSpec", "PowerLawSpec", "gen_planted", "gen_chung_lu"]


@dataclass(frozen=True)
class PlantedSpec:
    """Parameters of a planted-partition draw; validated on construction."""

    n: int
    k: int
    mu: float
    avg_degree: float
    seed: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"need at least 2 nodes, got n={self.n}")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if not 0.0 <= self.mu <= 1.0:
            raise ValueError(f"mixing fraction must be in [0, 1], got mu={self.mu}")
        if not 0.0 < self.avg_degree <= self.n - 1:
            raise ValueError(
                f"average degree must be in (0, n-1], got {self.avg_degree}"
            )
        if self.mu < 1.0 and self.n // self.k < 2:
            raise ValueError(
                "communities of size 1 cannot host intra-community edges; "
                f"raise n/k or set mu=1 (n={self.n}, k={self.k})"
            )


@dataclass(frozen=True)
class PowerLawSpec:
    """Parameters of a Chung-Lu power-law draw; validated on construction."""

    n: int
    gamma: float
    avg_degree: float
    seed: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need at least 1 node, got n={self.n}")
        if self.gamma <= 1.0:
            raise ValueError(f"tail exponent must exceed 1, got gamma={self.gamma}")
        if self.avg_degree <= 0.0:
            raise ValueError(
                f"average degree must be positive, got {self.avg_degree}"
            )
        # no n-tied upper bound: edge probabilities are capped at 1, so an
        # unreachable target merely saturates (n=1 gives an empty graph)


def _community_bounds(n: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Start offsets and sizes of k contiguous communities differing by <= 1."""
    starts = np.array([(c * n + k - 1) // k for c in range(k + 1)], dtype=np.int64)
    return starts[:-1], np.diff(starts)


def gen_planted(spec: PlantedSpec) -> tuple[Graph, Partition]:
    """Draw a planted-partition graph; returns ``(graph, truth)``.

    ``round(n * avg_degree / 2)`` endpoint pairs are sampled; coinciding
    pairs merge into one edge of accumulated weight, so the stub total is
    exact and the simple-edge count can fall slightly short.
    """
    n, k, mu = spec.n, spec.k, spec.mu
    rng = np.random.default_rng(spec.seed)
    comm = (np.arange(n, dtype=np.int64) * k) // n
    starts, sizes = _community_bounds(n, k)

    m_target = int(round(n * spec.avg_degree / 2.0))
    u = rng.integers(0, n, size=m_target, dtype=np.int64)
    mix = rng.random(m_target)
    v_global = rng.integers(0, n - 1, size=m_target, dtype=np.int64)
    v_global += v_global >= u
    if mu >= 1.0:
        v = v_global
    else:
        cu = comm[u]
        v_intra = starts[cu] + rng.integers(0, sizes[cu] - 1, dtype=np.int64)
        v_intra += v_intra >= u
        v = np.where(mix < mu, v_global, v_intra)

    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    packed, weights = np.unique(lo * n + hi, return_counts=True)
    edges = zip(
        (packed // n).tolist(), (packed % n).tolist(), weights.tolist()
    )
    g = build_graph(edges, n=n)
    return g, Partition(comm.tolist(), k)


def gen_chung_lu(spec: PowerLawSpec) -> Graph:
    """Draw a simple expected-degree graph with a power-law weight sequence.

    Runs the skip-ahead pair sampler over weights sorted descending: for
    each left endpoint the right endpoint jumps forward geometrically, and
    a candidate pair ``(u, v)`` is kept with probability
    ``min(1, w_u * w_v / S)`` overall.
    """
    n = spec.n
    exponent = -1.0 / (spec.gamma - 1.0)
    raw = [(v + 1.0) ** exponent for v in range(n)]
    scale = spec.avg_degree * n / math.fsum(raw)
    w = [x * scale for x in raw]
    s_total = math.fsum(w)

    rng = random.Random(spec.seed)
    rand = rng.random
    log = math.log
    edges: list[tuple[int, int, int]] = []
    for u in range(n - 1):
        v = u + 1
        p = w[u] * w[v] / s_total
        if p > 1.0:
            p = 1.0
        while v < n and p > 0.0:
            if p != 1.0:
                v += int(log(rand()) / log(1.0 - p))
            if v < n:
                q = w[u] * w[v] / s_total
                if q > 1.0:
                    q = 1.0
                if rand() < q / p:
                    edges.append((u, v, 1))
                p = q
                v += 1
    return build_graph(edges, n=n)
