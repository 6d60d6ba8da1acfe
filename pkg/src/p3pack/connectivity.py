"""Vertex connectivity, 3-edge cuts and cyclic edge connectivity."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import comb

import numpy as np

from . import kernels
from .graph import Edge, Graph, GraphError, components, edge

MAX_CYCLIC_K = 7


def _max_disjoint_paths(G: Graph, s: int, t: int, cap: int) -> int:
    """Internally vertex-disjoint s-t paths, stopping once ``cap`` is reached.

    Unit-capacity flow on the split network: vertex v becomes v_in -> v_out,
    each edge uv becomes u_out -> v_in and v_out -> u_in.
    """
    n = G.n
    # node ids: v_in = 2v, v_out = 2v + 1
    cap_map: dict[tuple[int, int], int] = {}
    adj: list[list[int]] = [[] for _ in range(2 * n)]

    def add(a, b, c):
        if (a, b) not in cap_map:
            adj[a].append(b)
            adj[b].append(a)
            cap_map.setdefault((b, a), 0)
        cap_map[(a, b)] = cap_map.get((a, b), 0) + c

    big = n + 1
    for v in range(n):
        add(2 * v, 2 * v + 1, big if v in (s, t) else 1)
    for u, v in G.edges:
        add(2 * u + 1, 2 * v, 1)
        add(2 * v + 1, 2 * u, 1)
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while flow < cap:
        prev = {source: source}
        queue = deque([source])
        while queue and sink not in prev:
            a = queue.popleft()
            for b in adj[a]:
                if b not in prev and cap_map[(a, b)] > 0:
                    prev[b] = a
                    queue.append(b)
        if sink not in prev:
            break
        b = sink
        while b != source:
            a = prev[b]
            cap_map[(a, b)] -= 1
            cap_map[(b, a)] += 1
            b = a
        flow += 1
    return flow


def vertex_connectivity(G: Graph) -> int:
    """Minimum over non-adjacent pairs of the number of disjoint paths; n-1 for K_n."""
    if G.n < 2:
        raise GraphError("vertex connectivity needs at least 2 vertices")
    if not G.is_connected():
        return 0
    best = G.n - 1
    for s in range(G.n):
        for t in range(s + 1, G.n):
            if G.has_edge(s, t):
                continue
            best = min(best, _max_disjoint_paths(G, s, t, best))
            if best == 0:
                return 0
    return best


def is_k_connected(G: Graph, k: int) -> bool:
    return G.n > k and vertex_connectivity(G) >= k


def is_cubic_3_connected(G: Graph) -> bool:
    return G.n >= 4 and G.is_cubic() and vertex_connectivity(G) >= 3


@dataclass(frozen=True)
class EdgeCut:
    edges: tuple[Edge, ...]
    sides: tuple[frozenset[int], frozenset[int]]
    components: tuple[frozenset[int], ...]

    @property
    def is_matching(self) -> bool:
        ends = [v for e in self.edges for v in e]
        return len(ends) == len(set(ends))

    @property
    def star_center(self) -> int | None:
        """The common vertex when the cut is ``D(x)`` for a single vertex x."""
        for side in self.sides:
            if len(side) == 1:
                return next(iter(side))
        return None


def cut_of(G: Graph, edges) -> EdgeCut:
    """Describe ``G - edges``; side 0 is the component holding the lowest vertex."""
    drop = {edge(*e) for e in edges}
    rest = [[] for _ in range(G.n)]
    for u, v in G.edges:
        if (u, v) not in drop:
            rest[u].append(v)
            rest[v].append(u)
    comps = tuple(frozenset(c) for c in components(G.n, rest))
    first = comps[0]
    other = frozenset(range(G.n)) - first
    return EdgeCut(tuple(sorted(drop)), (first, other), comps)


def _edge_arrays(G: Graph) -> tuple[np.ndarray, np.ndarray]:
    eu = np.array([u for u, _ in G.edges], dtype=np.int64)
    ev = np.array([v for _, v in G.edges], dtype=np.int64)
    return eu, ev


def enumerate_edge_cuts(G: Graph, size: int) -> list[EdgeCut]:
    """Every ``size``-subset of E(G) whose removal disconnects G (exhaustive)."""
    if not G.is_connected():
        raise GraphError("edge cut enumeration expects a connected graph")
    eu, ev = _edge_arrays(G)
    out = np.zeros((max(comb(G.m, size), 1), size), dtype=np.int64)
    count = kernels.disconnecting_subsets(G.n, eu, ev, size, out)
    return [cut_of(G, [G.edges[i] for i in row]) for row in out[:count].tolist()]


def enumerate_3_edge_cuts(G: Graph) -> list[EdgeCut]:
    return enumerate_edge_cuts(G, 3)


def cyclic_edge_cut(G: Graph, k: int) -> tuple[Edge, ...] | None:
    """A smallest edge set of size < k whose removal leaves two cyclic parts, if any."""
    if k > MAX_CYCLIC_K:
        raise ValueError(f"k={k} exceeds the brute-force guard of {MAX_CYCLIC_K}")
    if not G.is_connected():
        raise GraphError("cyclic connectivity expects a connected graph")
    if k <= 1:
        return None
    eu, ev = _edge_arrays(G)
    witness = np.zeros(k, dtype=np.int64)
    size = kernels.cyclic_cut_search(G.n, eu, ev, k - 1, witness)
    if size < 0:
        return None
    return tuple(G.edges[i] for i in witness[:size].tolist())


def is_cyclically_k_edge_connected(G: Graph, k: int) -> bool:
    """True iff no edge set of size < k separates G into two parts with cycles.

    Graphs without two vertex-disjoint cycles have no cyclic cut at all and
    pass for every k.
    """
    return cyclic_edge_cut(G, k) is None
