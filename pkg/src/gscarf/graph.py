"""Weighted graph container with in-place node folding.

The clustering engine treats every node as a cluster and repeatedly *folds*
one node into another: the pair's edges, self-loop stubs, and member lists
are combined so the survivor summarizes the merged cluster exactly.  The
key bookkeeping convention is that ``loop[v]`` stores the cluster's internal
stub weight (two stubs per unit of internal edge weight when undirected) and
``deg[v]`` counts it once, so ``deg[v] == sum(adj[v].values()) + loop[v]``
and the graph total ``two_m`` is invariant under folding.

Directed graphs keep separate in/out adjacency and degree arrays; ``two_m``
then holds the total arc weight and ``loop[v]`` counts internal arcs once.
"""

from __future__ import annotations

from typing import Iterable, Sequence

__all__ = ["Graph", "build_graph", "quotient_graph"]


class Graph:
    """Mutable weighted graph over dense integer node ids ``0..n-1``.

    Attributes (undirected):
        adj:   per-node dict neighbor -> edge weight, symmetric.
        loop:  per-node internal stub weight (even; 0 for fresh nodes).
        deg:   per-node total stub count including ``loop`` once.
        two_m: total stub count of the graph; twice the edge weight.

    Directed graphs use ``out_adj``/``in_adj`` and ``out_deg``/``in_deg``
    instead of ``adj``/``deg``; ``two_m`` is then the total arc weight.

    ``members[v]`` lists the original node ids folded into ``v`` and
    ``alive[v]`` is cleared when ``v`` is folded away.  ``labels`` holds
    the original external labels when the graph came from a file.
    """

    def __init__(self, n: int = 0, directed: bool = False,
                 labels: Sequence[str] | None = None) -> None:
        self.n = n
        self.directed = directed
        self.two_m = 0
        self.loop = [0] * n
        self.alive = [True] * n
        self.members = [[v] for v in range(n)]
        self.labels = list(labels) if labels is not None else None
        if directed:
            self.out_adj: list[dict[int, int]] = [{} for _ in range(n)]
            self.in_adj: list[dict[int, int]] = [{} for _ in range(n)]
            self.out_deg = [0] * n
            self.in_deg = [0] * n
        else:
            self.adj: list[dict[int, int]] = [{} for _ in range(n)]
            self.deg = [0] * n

    # -- construction ---------------------------------------------------

    def add_edge(self, u: int, v: int, w: int = 1) -> None:
        """Accumulate edge weight between ``u`` and ``v``.

        ``u == v`` folds the weight into the node's internal stubs
        (two stubs per unit undirected, one arc per unit directed).
        """
        if w <= 0:
            raise ValueError(f"edge weight must be positive, got {w}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise IndexError(f"edge ({u}, {v}) outside node range 0..{self.n - 1}")
        if self.directed:
            if u == v:
                self.loop[u] += w
            else:
                self.out_adj[u][v] = self.out_adj[u].get(v, 0) + w
                self.in_adj[v][u] = self.in_adj[v].get(u, 0) + w
            self.out_deg[u] += w
            self.in_deg[v] += w
            self.two_m += w
        else:
            if u == v:
                self.loop[u] += 2 * w
                self.deg[u] += 2 * w
            else:
                self.adj[u][v] = self.adj[u].get(v, 0) + w
                self.adj[v][u] = self.adj[v].get(u, 0) + w
                self.deg[u] += w
                self.deg[v] += w
            self.two_m += 2 * w

    # -- queries ----------------------------------------------------------

    def degree(self, v: int):
        """Total stub count of ``v``; ``(in, out)`` pair when directed."""
        if not 0 <= v < self.n:
            raise IndexError(f"node {v} outside range 0..{self.n - 1}")
        if self.directed:
            return self.in_deg[v], self.out_deg[v]
        return self.deg[v]

    def alive_nodes(self) -> Iterable[int]:
        alive = self.alive
        return (v for v in range(self.n) if alive[v])

    def copy(self) -> "Graph":
        g = Graph.__new__(Graph)
        g.n = self.n
        g.directed = self.directed
        g.two_m = self.two_m
        g.loop = list(self.loop)
        g.alive = list(self.alive)
        g.members = [list(ms) for ms in self.members]
        g.labels = list(self.labels) if self.labels is not None else None
        if self.directed:
            g.out_adj = [dict(d) for d in self.out_adj]
            g.in_adj = [dict(d) for d in self.in_adj]
            g.out_deg = list(self.out_deg)
            g.in_deg = list(self.in_deg)
        else:
            g.adj = [dict(d) for d in self.adj]
            g.deg = list(self.deg)
        return g

    # -- folding ----------------------------------------------------------

    def fold(self, i: int, j: int) -> int:
        """Merge node ``j`` and node ``i`` into one; return the survivor id.

        The connecting weight becomes internal stubs, other edges of the
        two nodes are summed per neighbor, and degrees add.  The endpoint
        with the smaller adjacency map is swept into the other, so the cost
        is proportional to the smaller neighborhood; the larger endpoint's
        id survives (first argument wins a tie).  ``two_m`` is unchanged.
        """
        if i == j:
            raise ValueError(f"cannot fold node {i} into itself")
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"fold ({i}, {j}) outside node range 0..{self.n - 1}")
        if not (self.alive[i] and self.alive[j]):
            raise RuntimeError(f"fold of dead node in ({i}, {j})")
        if self.directed:
            return self._fold_directed(i, j)

        adj = self.adj
        if len(adj[j]) > len(adj[i]):
            i, j = j, i
        a_i = adj[i]
        a_j = adj[j]
        w_ij = a_i.pop(j, 0)
        if w_ij:
            del a_j[i]
        self.loop[i] += self.loop[j] + 2 * w_ij
        self.deg[i] += self.deg[j]
        for k, w in a_j.items():
            total = a_i.get(k, 0) + w
            a_i[k] = total
            nk = adj[k]
            del nk[j]
            nk[i] = total
        adj[j] = {}
        self.loop[j] = 0
        self.deg[j] = 0
        self.alive[j] = False
        self.members[i].extend(self.members[j])
        self.members[j] = []
        return i

    def _fold_directed(self, i: int, j: int) -> int:
        out_adj, in_adj = self.out_adj, self.in_adj
        if len(out_adj[j]) + len(in_adj[j]) > len(out_adj[i]) + len(in_adj[i]):
            i, j = j, i
        w_cross = out_adj[i].pop(j, 0) + out_adj[j].pop(i, 0)
        in_adj[j].pop(i, None)
        in_adj[i].pop(j, None)
        self.loop[i] += self.loop[j] + w_cross
        self.out_deg[i] += self.out_deg[j]
        self.in_deg[i] += self.in_deg[j]
        for k, w in out_adj[j].items():
            total = out_adj[i].get(k, 0) + w
            out_adj[i][k] = total
            nk = in_adj[k]
            del nk[j]
            nk[i] = total
        for k, w in in_adj[j].items():
            total = in_adj[i].get(k, 0) + w
            in_adj[i][k] = total
            nk = out_adj[k]
            del nk[j]
            nk[i] = total
        out_adj[j] = {}
        in_adj[j] = {}
        self.loop[j] = 0
        self.out_deg[j] = 0
        self.in_deg[j] = 0
        self.alive[j] = False
        self.members[i].extend(self.members[j])
        self.members[j] = []
        return i


def build_graph(edges: Iterable[tuple[int, int, int]], n: int | None = None,
                directed: bool = False, allow_self_loops: bool = False,
                labels: Sequence[str] | None = None) -> Graph:
    """Build a :class:`Graph` from ``(u, v, w)`` triples over ids ``0..n-1``.

    Parallel occurrences of a pair accumulate weight.  Self-loops are
    rejected unless ``allow_self_loops`` is set, in which case they fold
    into the node's internal stubs.  ``n`` defaults to one past the largest
    id seen (isolated trailing nodes need it passed explicitly).
    """
    edge_list = list(edges)
    if n is None:
        n = max((max(u, v) for u, v, _ in edge_list), default=-1) + 1
    g = Graph(n, directed=directed, labels=labels)
    for u, v, w in edge_list:
        if u == v and not allow_self_loops:
            raise ValueError(f"self-loop at node {u} (pass allow_self_loops to fold it)")
        g.add_edge(u, v, w)
    return g


def quotient_graph(g: Graph, labels: Sequence[int], k: int) -> Graph:
    """Contract ``g`` by a dense labeling into a ``k``-node graph.

    Equivalent to folding every cluster down to one node: intra-cluster
    weight lands in ``loop``, inter-cluster weight is summed per cluster
    pair, and member lists carry through.  ``g`` is left untouched.
    """
    q = Graph(k, directed=g.directed)
    q.members = [[] for _ in range(k)]
    for v in range(g.n):
        if g.alive[v]:
            q.members[labels[v]].extend(g.members[v])
    if g.directed:
        for v in range(g.n):
            if not g.alive[v]:
                continue
            c = labels[v]
            q.loop[c] += g.loop[v]
            q.out_deg[c] += g.out_deg[v]
            q.in_deg[c] += g.in_deg[v]
            for u, w in g.out_adj[v].items():
                d = labels[u]
                if d == c:
                    q.loop[c] += w
                else:
                    q.out_adj[c][d] = q.out_adj[c].get(d, 0) + w
                    q.in_adj[d][c] = q.in_adj[d].get(c, 0) + w
    else:
        for v in range(g.n):
            if not g.alive[v]:
                continue
            c = labels[v]
            q.loop[c] += g.loop[v]
            q.deg[c] += g.deg[v]
            for u, w in g.adj[v].items():
                d = labels[u]
                if d == c:
                    q.loop[c] += w  # seen from both endpoints: totals 2w
                else:
                    q.adj[c][d] = q.adj[c].get(d, 0) + w
    q.two_m = g.two_m
    return q
