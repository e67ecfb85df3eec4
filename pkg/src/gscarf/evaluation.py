"""Partition comparison and summary statistics.

Agreement between two partitions is scored with normalized mutual
information, ``NMI = 2*I(P;Q) / (H(P) + H(Q))`` in natural logs, computed
from the contingency table of co-occurrence counts.  All entropy sums go
through :func:`math.fsum`, which makes the result independent of label
numbering and argument order down to the last bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .engine import Partition

__all__ = ["ContingencyTable", "contingency", "nmi", "size_stats",
           "resolve_overlapping_truth", "NMI_FORMULA"]

# Identifier for the normalization in use, reported next to every score.
NMI_FORMULA = "2I/(Hp+Hq)"


@dataclass
class ContingencyTable:
    """Joint cluster co-occurrence counts of two partitions of one node set."""

    counts: dict[tuple[int, int], int]
    row_sums: dict[int, int]
    col_sums: dict[int, int]
    total: int


def _labels_of(partition) -> Sequence[int]:
    return getattr(partition, "assignment", partition)


def contingency(p, q) -> ContingencyTable:
    """Tally ``counts[(i, j)] = |cluster_i(p) & cluster_j(q)|``."""
    pl = _labels_of(p)
    ql = _labels_of(q)
    if len(pl) != len(ql):
        raise ValueError(
            f"partitions cover different node counts: {len(pl)} vs {len(ql)}"
        )
    counts: dict[tuple[int, int], int] = {}
    rows: dict[int, int] = {}
    cols: dict[int, int] = {}
    for a, b in zip(pl, ql):
        counts[(a, b)] = counts.get((a, b), 0) + 1
        rows[a] = rows.get(a, 0) + 1
        cols[b] = cols.get(b, 0) + 1
    return ContingencyTable(counts, rows, cols, len(pl))


def nmi(p, q) -> float:
    """Normalized mutual information between two partitions, in [0, 1].

    Returns 1.0 when both partitions carry no information (both a single
    cluster, or fewer than two nodes): two trivial clusterings agree.
    """
    table = contingency(p, q)
    n = table.total
    if n == 0:
        return 1.0
    h_p = math.fsum(
        -(s / n) * math.log(s / n) for s in table.row_sums.values() if s
    )
    h_q = math.fsum(
        -(s / n) * math.log(s / n) for s in table.col_sums.values() if s
    )
    denom = h_p + h_q
    if denom == 0.0:
        return 1.0
    rows = table.row_sums
    cols = table.col_sums
    info = math.fsum(
        (c / n) * math.log(c * n / (rows[i] * cols[j]))
        for (i, j), c in table.counts.items()
        if c
    )
    value = 2.0 * info / denom
    # Guard float dust at the boundaries; I is non-negative and at most
    # min(Hp, Hq) mathematically.
    return min(1.0, max(0.0, value))


def size_stats(p: Partition) -> tuple[int, float, int, int]:
    """``(count, mean, max, min)`` of cluster sizes; mean is exactly n/k."""
    sizes = p.sizes()
    if not sizes:
        raise ValueError("no clusters in an empty partition")
    return len(sizes), p.n / len(sizes), max(sizes), min(sizes)


def resolve_overlapping_truth(
    memberships: Sequence[Sequence[int]] | Mapping[int, Sequence[int]],
    g,
) -> Partition:
    """Flatten overlapping ground-truth communities into a partition.

    ``memberships`` gives the candidate community ids of each node.  Nodes
    with one candidate are fixed from the start.  A single pass in node-id
    order assigns each multi-member node to whichever of its candidate
    communities holds the plurality of its already-resolved neighbors in
    ``g``; ties — including the no-resolved-neighbor case — go to the
    smallest candidate community id.  Nodes with no community are a
    coverage error.
    """
    n = g.n
    if len(memberships) != n:
        raise ValueError(
            f"membership lists cover {len(memberships)} nodes but the graph has {n}"
        )
    resolved: list[int | None] = [None] * n
    for v in range(n):
        cands = memberships[v]
        if not cands:
            raise ValueError(f"node {v} belongs to no ground-truth community")
        if len(cands) == 1:
            resolved[v] = next(iter(cands))
    adjacency = g.out_adj if g.directed else g.adj
    for v in range(n):
        if resolved[v] is not None:
            continue
        cands = sorted(set(memberships[v]))
        votes = {c: 0 for c in cands}
        neighbors = set(adjacency[v])
        if g.directed:
            neighbors.update(g.in_adj[v])
        for u in neighbors:
            cu = resolved[u]
            if cu is not None and cu in votes:
                votes[cu] += 1
        best = cands[0]
        for c in cands[1:]:
            if votes[c] > votes[best]:
                best = c
        resolved[v] = best
    return Partition.from_labels(resolved)
