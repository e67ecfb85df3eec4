"""Objective functions for likelihood-ratio modularity (LRM) clustering.

Everything here is a pure function of integer structural summaries:

* ``e``     -- internal stub weight of a cluster.  Each unit of edge weight
  inside a cluster contributes two stubs, so ``e`` is always even for
  undirected clusters built from whole edges.
* ``a``     -- total degree (stub count) of a cluster, internal stubs
  included once.
* ``two_m`` -- total stub count of the graph, i.e. twice the total edge
  weight.  In directed mode the same slot carries the total arc count
  and ``a`` splits into in/out components.

With ``t = e/two_m`` (observed internal fraction) and ``ep = (a/two_m)**2``
(the fraction expected under a degree-preserving null model), the per-cluster
LRM score is the Poisson-approximated log ratio of the two binomial
likelihoods::

    L(C) = t * ln(t / ep) - (t - ep)

Merging two clusters changes the objective by a closed-form amount that
depends only on the five summaries ``(e_i, a_i, e_j, a_j, e_ij)``; that gain
is what :func:`lrm_gain` computes and what the engine memoizes.
"""

from __future__ import annotations

import math
from typing import Sequence

__all__ = [
    "StructTuple",
    "tp",
    "ep",
    "prob_ratio_term",
    "log_lrm",
    "lrm_gain",
    "modularity",
    "modularity_gain",
    "exact_lrm_log",
    "prob_ratio_term_directed",
    "log_lrm_directed",
    "lrm_gain_directed",
    "modularity_directed",
]

# (e_i, a_i, e_j, a_j, e_ij) for undirected merges; the directed variant is
# the 7-tuple (e_i, a_in_i, a_out_i, e_j, a_in_j, a_out_j, e_ij).
StructTuple = tuple


def _check_two_m(two_m: int) -> None:
    if two_m <= 0:
        raise ValueError(f"metric undefined on an empty graph (two_m={two_m})")


def tp(e: int, two_m: int) -> float:
    """Observed fraction of stubs internal to a cluster."""
    _check_two_m(two_m)
    return e / two_m


def ep(a: int, two_m: int) -> float:
    """Expected internal stub fraction under the configuration null model."""
    _check_two_m(two_m)
    da = a / two_m
    return da * da


def prob_ratio_term(e: int, a: int, two_m: int) -> float:
    """The ``t * ln(t / ep)`` part of the LRM score, with 0*ln(0) == 0.

    A cluster with no internal edges contributes exactly 0.0 regardless of
    its degree.  ``e > 0`` with ``a == 0`` is impossible for real summaries
    (internal stubs count toward the degree) and is asserted, not handled.
    """
    _check_two_m(two_m)
    if e == 0:
        return 0.0
    assert a > 0, "cluster with internal edges but zero degree"
    t = e / two_m
    da = a / two_m
    return t * math.log(t / (da * da))


def log_lrm(e: int, a: int, two_m: int) -> float:
    """Per-cluster LRM score ``L(C) = t*ln(t/ep) - (t - ep)``."""
    term = prob_ratio_term(e, a, two_m)  # validates two_m
    da = a / two_m
    return term - (e / two_m - da * da)


def modularity_gain(t: StructTuple, two_m: int) -> float:
    """Change in Newman modularity when merging two clusters.

    ``t`` is ``(e_i, a_i, e_j, a_j, e_ij)`` where ``e_ij`` is the edge
    weight between the two clusters (counted once).  The internal-stub
    entries are ignored: the modularity delta depends only on degrees and
    the connecting weight.
    """
    _check_two_m(two_m)
    _, a_i, _, a_j, e_ij = t
    return 2.0 * e_ij / two_m - 2.0 * (a_i * a_j) / (two_m * two_m)


def lrm_gain(t: StructTuple, two_m: int) -> float:
    """Closed-form LRM change for merging clusters i and j.

    Equals ``L(merged) - L(i) - L(j)`` exactly, where the merged summaries
    are ``e = e_i + e_j + 2*e_ij`` and ``a = a_i + a_j``: the ``(t - ep)``
    linear parts telescope into the modularity delta, so the gain is the
    probability-ratio delta minus the modularity delta.
    """
    e_i, a_i, e_j, a_j, e_ij = t
    e_m = e_i + e_j + 2 * e_ij
    dp = (
        prob_ratio_term(e_m, a_i + a_j, two_m)
        - prob_ratio_term(e_i, a_i, two_m)
        - prob_ratio_term(e_j, a_j, two_m)
    )
    return dp - modularity_gain(t, two_m)


def _labels_of(partition: object, n: int) -> Sequence[int]:
    """Accept either a Partition-like object or a bare label sequence."""
    labels = getattr(partition, "assignment", partition)
    if len(labels) != n:
        raise ValueError(
            f"partition covers {len(labels)} nodes but the graph has {n}"
        )
    return labels


def modularity(partition: object, g) -> float:
    """Newman modularity ``sum_C (e_C/two_m - (a_C/two_m)^2)`` of a partition.

    ``partition`` may be an engine ``Partition`` or any sequence mapping
    node id to cluster label.  Every node must be covered.
    """
    _check_two_m(g.two_m)
    labels = _labels_of(partition, g.n)
    e: dict[int, int] = {}
    a: dict[int, int] = {}
    for v in range(g.n):
        c = labels[v]
        if c is None:
            raise ValueError(f"node {v} has no cluster assignment")
        a[c] = a.get(c, 0) + g.deg[v]
        e[c] = e.get(c, 0) + g.loop[v]
    for v in range(g.n):
        c = labels[v]
        for u, w in g.adj[v].items():
            if labels[u] == c:
                e[c] += w
    two_m = g.two_m
    return math.fsum(
        e[c] / two_m - (a[c] / two_m) * (a[c] / two_m) for c in e
    )


def exact_lrm_log(e: int, a: int, two_m: int) -> float:
    """Log binomial likelihood ratio without the Poisson approximation.

    Treats the ``e`` internal stubs as successes in ``two_m`` Bernoulli
    draws and returns ``ln[ Pr(t; e, two_m) / Pr(ep; e, two_m) ]``.  The
    binomial coefficients cancel, leaving::

        e*ln(t/ep) + (two_m - e)*ln((1 - t)/(1 - ep))

    with the usual ``0*ln(0) == 0`` limit conventions.  Used as an
    independent oracle for the approximated :func:`log_lrm`; not part of
    the clustering hot path.
    """
    _check_two_m(two_m)
    if not 0 <= e <= two_m:
        raise ValueError(f"need 0 <= e <= two_m, got e={e}, two_m={two_m}")
    t = e / two_m
    da = a / two_m
    x = da * da
    if t == x:
        return 0.0
    total = 0.0
    if e > 0:
        if x == 0.0:
            return math.inf
        total += e * math.log(t / x)
    rest = two_m - e
    if rest > 0:
        if x == 1.0:
            return math.inf
        total += rest * (math.log1p(-t) - math.log1p(-x))
    return total


# --- directed variants ------------------------------------------------------
#
# For arcs, two_m is the total arc weight m; the null-model expectation for a
# cluster becomes (a_in/m)*(a_out/m) and the observed fraction e/m counts
# internal arcs once.  On a symmetric digraph (every edge present both ways)
# these reduce bit-for-bit to the undirected formulas.


def prob_ratio_term_directed(e: int, a_in: int, a_out: int, two_m: int) -> float:
    """Directed ``t * ln(t / ep)`` with ``ep = (a_in/m) * (a_out/m)``."""
    _check_two_m(two_m)
    if e == 0:
        return 0.0
    assert a_in > 0 and a_out > 0, "cluster with internal arcs but zero degree"
    t = e / two_m
    x = (a_in / two_m) * (a_out / two_m)
    return t * math.log(t / x)


def log_lrm_directed(e: int, a_in: int, a_out: int, two_m: int) -> float:
    """Per-cluster LRM score of a directed cluster."""
    term = prob_ratio_term_directed(e, a_in, a_out, two_m)  # validates two_m
    t = e / two_m
    x = (a_in / two_m) * (a_out / two_m)
    return term - (t - x)


def lrm_gain_directed(t: StructTuple, two_m: int) -> float:
    """Directed merge gain from ``(e_i, ai_in, ai_out, e_j, aj_in, aj_out, e_ij)``.

    ``e_ij`` is the total arc weight between the clusters in both
    directions; merged summaries are ``e_i + e_j + e_ij`` and the
    componentwise degree sums.
    """
    _check_two_m(two_m)
    e_i, ai_in, ai_out, e_j, aj_in, aj_out, e_ij = t
    dp = (
        prob_ratio_term_directed(e_i + e_j + e_ij, ai_in + aj_in, ai_out + aj_out, two_m)
        - prob_ratio_term_directed(e_i, ai_in, ai_out, two_m)
        - prob_ratio_term_directed(e_j, aj_in, aj_out, two_m)
    )
    dq = e_ij / two_m - (ai_in * aj_out + aj_in * ai_out) / (two_m * two_m)
    return dp - dq


def modularity_directed(partition: object, g) -> float:
    """Directed modularity ``sum_C (e_C/m - a_in_C*a_out_C/m^2)``."""
    _check_two_m(g.two_m)
    labels = _labels_of(partition, g.n)
    e: dict[int, int] = {}
    a_in: dict[int, int] = {}
    a_out: dict[int, int] = {}
    for v in range(g.n):
        c = labels[v]
        if c is None:
            raise ValueError(f"node {v} has no cluster assignment")
        a_in[c] = a_in.get(c, 0) + g.in_deg[v]
        a_out[c] = a_out.get(c, 0) + g.out_deg[v]
        e[c] = e.get(c, 0) + g.loop[v]
    for v in range(g.n):
        c = labels[v]
        for u, w in g.out_adj[v].items():
            if labels[u] == c:
                e[c] += w
    m = g.two_m
    return math.fsum(e[c] / m - (a_in[c] / m) * (a_out[c] / m) for c in e)
