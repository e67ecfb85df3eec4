"""Acceptance gate: one test per shipped guarantee, each at its own
tolerance.  Every test records a line that the terminal summary prints, so
a full run ends with an explicit pass/fail verdict per criterion.

Frozen constants in this module were computed once through an independent
route (direct formula evaluation at full precision, or a measured run at a
fixed seed) and are asserted at the stated tolerance, never recomputed
from the code under test.
"""

from __future__ import annotations

import os
import random
import time

import pytest

from gscarf import (
    EngineOptions,
    PlantedSpec,
    PowerLawSpec,
    build_graph,
    cluster_gscarf,
    cluster_louvain,
    gen_chung_lu,
    gen_planted,
    log_lrm,
    lrm_gain,
    modularity,
    modularity_gain,
    nmi,
    read_edge_list,
    size_stats,
)

from conftest import (
    cluster_summaries,
    record_criterion,
    record_skip,
    triangle,
)


def test_criterion_1_cache_transparency(planted_corpus) -> None:
    desc = "caching leaves partitions identical over the 100-graph corpus"
    start = time.perf_counter()
    same = 0
    for g in planted_corpus:
        p_on, _ = cluster_gscarf(g, EngineOptions(use_cache=True))
        p_off, _ = cluster_gscarf(g, EngineOptions(use_cache=False))
        same += p_on.assignment == p_off.assignment
    elapsed = time.perf_counter() - start
    ok = same == len(planted_corpus) and elapsed < 120.0
    record_criterion(1, desc, ok,
                     f"{same}/{len(planted_corpus)} identical, {elapsed:.1f}s")


def test_criterion_2_fold_transparency(planted_corpus) -> None:
    desc = "folding leaves partitions identical; every fold's summary matches the original edges"
    start = time.perf_counter()
    same = 0
    worst = 0.0
    for g in planted_corpus:
        two_m = g.two_m
        audit_errors = []

        def hook(x, loop, deg, members, dl, g=g, two_m=two_m,
                 out=None) -> None:
            e, a = cluster_summaries(g, members)
            audit_errors.append(
                abs(log_lrm(loop, deg, two_m) - log_lrm(e, a, two_m))
            )

        p_fold, _ = cluster_gscarf(g, EngineOptions(use_fold=True), hook)
        p_flat, _ = cluster_gscarf(g, EngineOptions(use_fold=False))
        same += p_fold.assignment == p_flat.assignment
        if audit_errors:
            worst = max(worst, max(audit_errors))
    elapsed = time.perf_counter() - start
    ok = same == len(planted_corpus) and worst <= 1e-12 and elapsed < 120.0
    record_criterion(
        2, desc, ok,
        f"{same}/{len(planted_corpus)} identical, worst audit error "
        f"{worst:.2e}, {elapsed:.1f}s",
    )


def test_criterion_3_gain_scratch_identities() -> None:
    desc = "tuple gains equal merged-minus-parts scratch evaluation, both objectives"
    rng = random.Random(12345)
    two_m = 2000
    worst_l = 0.0
    worst_q = 0.0
    for _ in range(10_000):
        e_i = 2 * rng.randrange(0, 8)
        e_j = 2 * rng.randrange(0, 8)
        a_i = e_i + rng.randrange(0, 12)
        a_j = e_j + rng.randrange(0, 12)
        cap = min(a_i - e_i, a_j - e_j)
        e_ij = rng.randrange(0, cap + 1) if cap > 0 else 0
        t = (e_i, a_i, e_j, a_j, e_ij)
        e_m, a_m = e_i + e_j + 2 * e_ij, a_i + a_j

        dl = lrm_gain(t, two_m)
        dl_scratch = (log_lrm(e_m, a_m, two_m)
                      - log_lrm(e_i, a_i, two_m)
                      - log_lrm(e_j, a_j, two_m))
        worst_l = max(worst_l, abs(dl - dl_scratch))

        def q(e: int, a: int) -> float:
            return e / two_m - (a / two_m) ** 2

        dq = modularity_gain(t, two_m)
        worst_q = max(worst_q, abs(dq - (q(e_m, a_m) - q(e_i, a_i) - q(e_j, a_j))))
    ok = worst_l <= 1e-12 and worst_q <= 1e-12
    record_criterion(3, desc, ok,
                     f"worst dL error {worst_l:.2e}, worst dQ error {worst_q:.2e}")


def test_criterion_4_objective_monotonicity(planted_corpus) -> None:
    desc = "the summed objective strictly increases at every accepted fold"
    violations = 0
    folds_total = 0
    for g in planted_corpus:
        two_m = g.two_m
        rep = list(range(g.n))
        level = {v: log_lrm(g.loop[v], g.deg[v], two_m) for v in range(g.n)}
        state = {"violations": 0, "folds": 0}

        def hook(x, loop, deg, members, dl, two_m=two_m, rep=rep,
                 level=level, state=state) -> None:
            reps = {rep[v] for v in members}
            assert len(reps) == 2
            before = sum(level.pop(r) for r in reps)
            after = log_lrm(loop, deg, two_m)
            if not after - before > 0.0:
                state["violations"] += 1
            state["folds"] += 1
            for v in members:
                rep[v] = x
            level[x] = after

        cluster_gscarf(g, EngineOptions(), hook)
        violations += state["violations"]
        folds_total += state["folds"]
    record_criterion(4, desc, violations == 0,
                     f"{violations} violations over {folds_total} folds")


def test_criterion_5_hand_vectors() -> None:
    desc = "hand-checked gains, triangle modularity, and triangle clusterings"
    # direct full-precision evaluations of the gain formula, frozen
    gain_200 = lrm_gain((0, 2, 0, 2, 1), 200)
    gain_6 = lrm_gain((0, 2, 0, 2, 1), 6)
    ok_200 = abs(gain_200 - 0.0223887582486820) <= 1e-6
    ok_6 = abs(gain_6 - (-0.2070051352617047)) <= 1e-6

    g = triangle()
    q_singletons = modularity([0, 1, 2], g)
    ok_q = q_singletons == -1 / 3  # exact, no tolerance

    p_louvain, _ = cluster_louvain(triangle())
    p_gscarf, _ = cluster_gscarf(triangle())
    ok_parts = p_louvain.k == 1 and p_gscarf.assignment == [0, 1, 2]

    ok = ok_200 and ok_6 and ok_q and ok_parts
    record_criterion(
        5, desc, ok,
        f"gain@200={gain_200:.10f}, gain@6={gain_6:.10f}, "
        f"Q={q_singletons!r}, louvain k={p_louvain.k}, "
        f"gscarf k={p_gscarf.k}",
    )


def test_criterion_6_computed_work_reduction() -> None:
    desc = "caching cuts fresh gain evaluations to at most half on a power-law graph"
    start = time.perf_counter()
    g = gen_chung_lu(PowerLawSpec(n=100_000, gamma=2.1, avg_degree=10, seed=1))
    _, s_on = cluster_gscarf(g, EngineOptions(use_cache=True))
    _, s_off = cluster_gscarf(g, EngineOptions(use_cache=False))
    elapsed = time.perf_counter() - start
    ratio = s_on.gain_evals / s_off.gain_evals
    ok = ratio <= 0.50 and elapsed < 60.0
    record_criterion(
        6, desc, ok,
        f"{s_on.gain_evals}/{s_off.gain_evals} evaluations "
        f"(ratio {ratio:.3f}), {elapsed:.1f}s",
    )


def test_criterion_7_near_linear_scaling() -> None:
    desc = "wall time grows at most 2.5x per doubling of the edge count"
    start = time.perf_counter()
    times = []
    ms = []
    for n in (23_000, 46_000, 92_000):  # m lands near 1e5, 2e5, 4e5
        g = gen_chung_lu(PowerLawSpec(n=n, gamma=2.1, avg_degree=10, seed=5))
        ms.append(g.two_m // 2)
        best = min(
            cluster_gscarf(g)[1].wall_time for _ in range(3)
        )
        times.append(best)
    elapsed = time.perf_counter() - start
    ratios = [times[i + 1] / times[i] for i in range(len(times) - 1)]
    ok = all(r <= 2.5 for r in ratios) and elapsed < 180.0
    record_criterion(
        7, desc, ok,
        f"m={ms}, best-of-3 times={[f'{t:.2f}s' for t in times]}, "
        f"ratios={[f'{r:.2f}' for r in ratios]}, total {elapsed:.1f}s",
    )


def test_criterion_8_planted_accuracy() -> None:
    desc = "planted communities are recovered about as well as the baseline"
    start = time.perf_counter()
    g, truth = gen_planted(
        PlantedSpec(n=10_000, k=100, mu=0.1, avg_degree=20, seed=42)
    )
    p_g, s_g = cluster_gscarf(g)
    # the plain no-cache/no-fold configuration is the reference run; the
    # optimized default must reproduce it exactly on this graph too
    p_ref, _ = cluster_gscarf(g, EngineOptions(use_cache=False, use_fold=False))
    p_l, _ = cluster_louvain(g)
    nmi_g = nmi(p_g, truth)
    nmi_l = nmi(p_l, truth)
    elapsed = time.perf_counter() - start
    # floors frozen from the first measured run at this seed:
    # nmi_g = 0.990..., nmi_l = 1.0
    ok = (
        p_g.assignment == p_ref.assignment
        and s_g.cache_hits > 0
        and nmi_g >= 0.7
        and nmi_g >= nmi_l - 0.05
        and nmi_g >= 0.99
        and nmi_l >= 0.999
        and elapsed < 60.0
    )
    record_criterion(8, desc, ok,
                     f"nmi={nmi_g:.4f} vs baseline {nmi_l:.4f}, {elapsed:.1f}s")


def test_criterion_9_directed_reduction() -> None:
    desc = "symmetric digraphs cluster exactly like their undirected form"
    ns = (120, 250, 380, 500)
    mus = (0.1, 0.3, 0.5, 0.7, 0.9)
    same = 0
    for seed in range(20):
        n = ns[seed % len(ns)]
        g, _ = gen_planted(PlantedSpec(
            n=n, k=max(2, n // 25), mu=mus[seed % len(mus)],
            avg_degree=8, seed=seed,
        ))
        arcs = [
            (u, v, w)
            for u in range(n)
            for v, w in g.adj[u].items()
        ]
        d = build_graph(arcs, n=n, directed=True)
        p_u, _ = cluster_gscarf(g)
        p_d, _ = cluster_gscarf(d, EngineOptions(directed=True))
        same += p_u.assignment == p_d.assignment
    record_criterion(9, desc, same == 20, f"{same}/20 identical")


def test_criterion_10_full_scale_dataset() -> None:
    desc = "full-scale cluster sizes stay fine-grained while the baseline coarsens"
    path = os.environ.get("GSCARF_YOUTUBE_EDGES")
    if not path:
        record_skip(10, desc,
                    "set GSCARF_YOUTUBE_EDGES to the com-Youtube edge list to enable")
        pytest.skip("dataset-gated: GSCARF_YOUTUBE_EDGES not set")
    g = read_edge_list(path)
    p_g, _ = cluster_gscarf(g)
    _, mean_g, _, _ = size_stats(p_g)
    p_l, _ = cluster_louvain(g)
    _, mean_l, _, _ = size_stats(p_l)
    ok = abs(mean_g - 13.3) <= 0.30 * 13.3 and mean_l > 2.0 * mean_g
    record_criterion(
        10, desc, ok,
        f"mean cluster size {mean_g:.1f} (target 13.3 +/- 30%), "
        f"baseline {mean_l:.1f}",
    )
