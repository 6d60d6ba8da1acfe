"""Slow, independent reference implementations used only by the tests.

Nothing here imports the solver kernels; graph structure comes from
networkx or from plain Python sets.
"""

from itertools import combinations, permutations

import networkx as nx


def to_nx(G):
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges)
    return H


def paths3(adj, alive, forbidden=frozenset()):
    out = []
    for c in sorted(alive):
        nb = [u for u in adj[c] if u in alive and frozenset((u, c)) not in forbidden]
        for a, b in combinations(sorted(nb), 2):
            out.append((a, c, b))
    return out


def all_factors(n, edges, removed=(), forbidden=(), required=()):
    """Every Λ-factor as a frozenset of (end, centre, end) triples, by exact cover.

    Independent of the solver: picks the smallest uncovered vertex and tries
    every 3-path (from a precomputed list) that contains it.
    """
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    alive = set(range(n)) - set(removed)
    forb = {frozenset(e) for e in forbidden}
    req = {frozenset(e) for e in required}
    cover = {v: [] for v in alive}
    for p in paths3(adj, alive, forb):
        for v in p:
            cover[v].append(p)
    out = []

    def rec(uncovered, chosen):
        if not uncovered:
            used = {frozenset((p[0], p[1])) for p in chosen} | {frozenset((p[1], p[2])) for p in chosen}
            if req <= used:
                out.append(frozenset(chosen))
            return
        v = min(uncovered)
        for p in cover[v]:
            if all(x in uncovered for x in p):
                rec(uncovered - set(p), chosen + [p])

    if len(alive) % 3 == 0:
        rec(frozenset(alive), [])
    return out


def max_packing_size(n, edges):
    """λ by exhaustive search over packings (branch: lowest vertex covered or skipped)."""
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    paths = paths3(adj, set(range(n)))
    best = 0

    def rec(i, used, k):
        nonlocal best
        best = max(best, k)
        if k + (n - len(used)) // 3 <= best:
            return
        for j in range(i, len(paths)):
            p = paths[j]
            if used.isdisjoint(p):
                rec(j + 1, used | set(p), k + 1)

    rec(0, frozenset(), 0)
    return best


def labeled_cubic_graphs(n):
    """All labelled cubic graphs on n vertices, by lexicographic edge choice."""
    out = []
    deg = [0] * n
    edges = []

    def rec(v):
        while v < n and deg[v] == 3:
            v += 1
        if v == n:
            out.append(list(edges))
            return
        for u in range(v + 1, n):
            if deg[u] < 3 and (v, u) not in edges and (not edges or (v, u) > edges[-1]):
                deg[v] += 1
                deg[u] += 1
                edges.append((v, u))
                rec(v)
                edges.pop()
                deg[v] -= 1
                deg[u] -= 1

    rec(0)
    return out


def iso_classes(graphs):
    reps = []
    for H in graphs:
        if not any(nx.is_isomorphic(H, R) for R in reps):
            reps.append(H)
    return reps


def disconnecting_triples(G):
    H = to_nx(G)
    out = []
    for T in combinations(G.edges, 3):
        K = H.copy()
        K.remove_edges_from(T)
        if not nx.is_connected(K):
            out.append(tuple(sorted(T)))
    return out


def has_cyclic_cut_below(G, k):
    """Any edge set of size < k leaving two components that each contain a cycle."""
    H = to_nx(G)
    for size in range(1, k):
        for S in combinations(G.edges, size):
            K = H.copy()
            K.remove_edges_from(S)
            cyc = sum(1 for comp in nx.connected_components(K)
                      if K.subgraph(comp).number_of_edges() >= len(comp))
            if cyc >= 2:
                return True
    return False


def connectivity_by_deletion(G):
    """Largest k with G - S connected for every |S| < k (and n > k)."""
    H = to_nx(G)
    k = 0
    while k + 1 < G.n:
        for S in combinations(range(G.n), k):
            K = H.copy()
            K.remove_nodes_from(S)
            if not nx.is_connected(K):
                return k
        k += 1
    return k


def is_isomorphic_brute(G, H):
    if G.n != H.n or G.m != H.m:
        return False
    target = set(H.edges)
    for perm in permutations(range(G.n)):
        if {tuple(sorted((perm[u], perm[v]))) for u, v in G.edges} == target:
            return True
    return False
