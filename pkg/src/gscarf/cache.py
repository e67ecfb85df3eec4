"""Memoization of merge gains keyed on structural summaries.

The LRM merge gain depends only on the five summaries
``(e_i, a_i, e_j, a_j, e_ij)`` (seven in directed mode) and the global stub
total, so structurally identical candidate merges anywhere in the graph
share one computed value.  Keys are canonicalized so that the two symmetric
orderings of a pair collapse to a single entry.  A cache is bound to one
``two_m`` for its lifetime; mixing graphs with different totals through one
cache would silently corrupt results and is therefore rejected.
"""

from __future__ import annotations

from .metrics import StructTuple, lrm_gain, lrm_gain_directed

__all__ = ["canonicalize", "GainCache"]


def canonicalize(t: StructTuple) -> StructTuple:
    """Order the two endpoint summary blocks ascending; keep e_ij last.

    Works for both 5-tuples ``(e_i, a_i, e_j, a_j, e_ij)`` and directed
    7-tuples ``(e_i, ai_in, ai_out, e_j, aj_in, aj_out, e_ij)``.
    """
    if len(t) == 5:
        if t[2:4] < t[0:2]:
            return (t[2], t[3], t[0], t[1], t[4])
        return tuple(t)
    if len(t) == 7:
        if t[3:6] < t[0:3]:
            return (t[3], t[4], t[5], t[0], t[1], t[2], t[6])
        return tuple(t)
    raise ValueError(f"expected a 5- or 7-tuple of summaries, got length {len(t)}")


class GainCache:
    """Gain table bound to a single graph total.

    ``lookup_or_compute`` canonicalizes the key, returns the stored gain on
    a hit, and computes/stores it on a miss, so a cached run resolves every
    gain to exactly the same float the direct computation would produce.
    """

    __slots__ = ("two_m", "directed", "table", "hits", "misses")

    def __init__(self, two_m: int, directed: bool = False) -> None:
        if two_m <= 0:
            raise ValueError(f"cache requires a positive total, got two_m={two_m}")
        self.two_m = two_m
        self.directed = directed
        self.table: dict[StructTuple, float] = {}
        self.hits = 0
        self.misses = 0

    def lookup_or_compute(self, t: StructTuple) -> float:
        key = canonicalize(t)
        value = self.table.get(key)
        if value is not None:
            self.hits += 1
            return value
        self.misses += 1
        if self.directed:
            value = lrm_gain_directed(key, self.two_m)
        else:
            value = lrm_gain(key, self.two_m)
        self.table[key] = value
        return value

    def stats(self) -> tuple[int, int, int]:
        """``(hits, misses, size)`` counters; size == misses."""
        return self.hits, self.misses, len(self.table)

    def __len__(self) -> int:
        return len(self.table)
