"""Shared fixtures and independent oracle helpers for the test suite.

The oracle helpers recompute quantities from first principles (working
directly off a graph's edges or by exhaustive enumeration) so library
results can be checked against an implementation-independent route.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterator, Sequence

import pytest

from gscarf import Graph, PlantedSpec, build_graph, gen_planted

# ---------------------------------------------------------------------------
# acceptance-criterion bookkeeping: each acceptance test records one line,
# printed in the terminal summary so the suite emits a pass/fail line per
# criterion.

ACCEPTANCE_RESULTS: dict[int, tuple[str, str, str]] = {}


def record_criterion(number: int, description: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE_RESULTS[number] = ("PASS" if ok else "FAIL", description, detail)
    assert ok, f"acceptance criterion {number} ({description}): {detail}"


def record_skip(number: int, description: str, reason: str) -> None:
    ACCEPTANCE_RESULTS[number] = ("SKIP", description, reason)


def pytest_terminal_summary(terminalreporter, exitstatus, config) -> None:
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        status, description, detail = ACCEPTANCE_RESULTS[number]
        suffix = f" ({detail})" if detail else ""
        terminalreporter.write_line(
            f"criterion {number:2d}: {status} - {description}{suffix}"
        )


# ---------------------------------------------------------------------------
# shared graphs


def triangle() -> Graph:
    return build_graph([(0, 1, 1), (1, 2, 1), (0, 2, 1)])


def two_k5_bridge() -> Graph:
    """Two 5-cliques joined by a single edge: the classic two-block graph."""
    edges = [(u, v, 1) for u, v in itertools.combinations(range(5), 2)]
    edges += [(u + 5, v + 5, 1) for u, v in itertools.combinations(range(5), 2)]
    edges.append((4, 5, 1))
    return build_graph(edges, n=10)


def corpus_specs(count: int = 100) -> Iterator[PlantedSpec]:
    """The seeded planted corpus shared by the transparency criteria."""
    ns = (300, 600, 1200, 2000)
    mus = (0.1, 0.3, 0.5, 0.7, 0.9)
    ds = (6, 10, 14)
    for i in range(count):
        n = ns[i % len(ns)]
        yield PlantedSpec(
            n=n,
            k=max(2, n // 40),
            mu=mus[i % len(mus)],
            avg_degree=ds[i % len(ds)],
            seed=i,
        )


@pytest.fixture(scope="session")
def planted_corpus() -> list:
    return [gen_planted(spec)[0] for spec in corpus_specs()]


# ---------------------------------------------------------------------------
# oracles


def cluster_summaries(g: Graph, members: Sequence[int]) -> tuple[int, int]:
    """(internal stub weight, total degree) of a node set, from g's edges."""
    ms = set(members)
    e = sum(g.loop[u] for u in ms)
    a = 0
    for u in ms:
        a += g.deg[u]
        for v, w in g.adj[u].items():
            if v in ms:
                e += w
    return e, a


def modularity_by_definition(labels: Sequence[int], g: Graph) -> float:
    """Q from the raw edge list: internal fraction minus squared degrees."""
    two_m = g.two_m
    clusters = set(labels)
    total = 0.0
    for c in clusters:
        members = [v for v in range(g.n) if labels[v] == c]
        e, a = cluster_summaries(g, members)
        total += e / two_m - (a / two_m) ** 2
    return total


def set_partitions(items: list) -> Iterator[list[list]]:
    """Every partition of ``items`` (Bell-number many: use on tiny sets)."""
    if len(items) == 1:
        yield [items]
        return
    first = items[0]
    for smaller in set_partitions(items[1:]):
        for i, subset in enumerate(smaller):
            yield smaller[:i] + [[first] + subset] + smaller[i + 1:]
        yield [[first]] + smaller


def labels_of_parts(parts: list[list[int]], n: int) -> list[int]:
    labels = [0] * n
    for ci, part in enumerate(parts):
        for v in part:
            labels[v] = ci
    return labels


def log_binom_pmf(p: float, k: int, n: int) -> float:
    """Exact log binomial pmf via lgamma, with 0*log(0) = 0 conventions."""
    coef = (
        math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
    )
    if k > 0:
        if p == 0.0:
            return -math.inf
        coef += k * math.log(p)
    if n - k > 0:
        if p == 1.0:
            return -math.inf
        coef += (n - k) * math.log1p(-p)
    return coef
