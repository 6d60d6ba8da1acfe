"""Simple undirected graphs with dense integer vertices.

Graphs are immutable values: every editing helper returns a new graph.
Vertex labels are provenance annotations only and never take part in
equality or hashing.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graph input (loops, bad indices, missing edges)."""


class Graph6Error(GraphError):
    pass


def edge(u: int, v: int) -> Edge:
    """Canonical form of the unordered pair ``{u, v}``."""
    if u == v:
        raise GraphError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("negative vertex count")
        prev = None
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise GraphError(f"edge {(u, v)} is not canonical for n={self.n}")
            if prev is not None and (u, v) <= prev:
                raise GraphError("edge tuple must be sorted without duplicates")
            prev = (u, v)
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("labels must have one entry per vertex")

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and edge(u, v) in self.edge_set

    def is_cubic(self) -> bool:
        return all(len(a) == 3 for a in self.adjacency)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def components(self) -> list[list[int]]:
        return components(self.n, self.adjacency)

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def incident(self, v: int) -> list[Edge]:
        return [edge(v, u) for u in self.adjacency[v]]

    def boundary(self, vertices: Iterable[int]) -> list[Edge]:
        """Edges with exactly one end in ``vertices``."""
        inside = set(vertices)
        return [e for e in self.edges if (e[0] in inside) != (e[1] in inside)]

    def with_labels(self, labels: Sequence[str] | None) -> "Graph":
        return Graph(self.n, self.edges, None if labels is None else tuple(labels))

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def components(n: int, adjacency, alive=None) -> list[list[int]]:
    """Connected components (sorted vertex lists) of the graph restricted to ``alive``."""
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s] or (alive is not None and not alive[s]):
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adjacency[x]:
                if not seen[y] and (alive is None or alive[y]):
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        out.append(sorted(comp))
    return out


def from_edge_list(n: int, pairs: Iterable[Sequence[int]], labels=None) -> Graph:
    """Build a canonical graph; duplicate pairs collapse, loops are rejected."""
    edges = set()
    for pair in pairs:
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"pair {(u, v)} out of range for n={n}")
        edges.add(edge(u, v))
    return Graph(n, tuple(sorted(edges)), None if labels is None else tuple(labels))


def delete_vertices(G: Graph, S: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``V(G) - S`` with compacted indices, plus the old->new map."""
    drop = set(S)
    for v in drop:
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} not in graph")
    keep = [v for v in range(G.n) if v not in drop]
    remap = {old: new for new, old in enumerate(keep)}
    edges = [(remap[u], remap[v]) for u, v in G.edges if u in remap and v in remap]
    labels = None if G.labels is None else [G.labels[v] for v in keep]
    return from_edge_list(len(keep), edges, labels), remap


def delete_edges(G: Graph, E: Iterable[Sequence[int]]) -> Graph:
    drop = {edge(*e) for e in E}
    return Graph(G.n, tuple(e for e in G.edges if e not in drop), G.labels)


def add_edges(G: Graph, E: Iterable[Sequence[int]]) -> Graph:
    return from_edge_list(G.n, list(G.edges) + [tuple(e) for e in E], G.labels)


def subdivide_edge(G: Graph, e: Sequence[int], label: str | None = None) -> tuple[Graph, int]:
    u, v = edge(*e)
    if (u, v) not in G.edge_set:
        raise GraphError(f"edge {(u, v)} not in graph")
    w = G.n
    edges = [x for x in G.edges if x != (u, v)] + [(u, w), (v, w)]
    labels = None
    if G.labels is not None or label is not None:
        labels = [G.label(i) for i in range(G.n)] + [label or f"sub({u},{v})"]
    return from_edge_list(G.n + 1, edges, labels), w


def relabel(G: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    labels = None
    if G.labels is not None:
        labels = [""] * G.n
        for v in range(G.n):
            labels[perm[v]] = G.labels[v]
    return from_edge_list(G.n, [(perm[u], perm[v]) for u, v in G.edges], labels)


def disjoint_union(*graphs: Graph) -> tuple[Graph, list[int]]:
    """Union with shifted indices; returns the per-graph offsets."""
    offsets, edges, labels, base = [], [], [], 0
    for H in graphs:
        offsets.append(base)
        edges.extend((u + base, v + base) for u, v in H.edges)
        labels.extend(H.label(v) for v in range(H.n))
        base += H.n
    return from_edge_list(base, edges, labels), offsets


def is_bipartite(G: Graph) -> bool:
    color = [-1] * G.n
    for s in range(G.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in G.adjacency[x]:
                if color[y] < 0:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    return False
    return True


@dataclass(frozen=True)
class GraphSummary:
    degrees: tuple[int, ...]
    neighbors: tuple[tuple[int, ...], ...]
    is_cubic: bool
    residue6: int
    components: tuple[tuple[int, ...], ...]


def basic_queries(G: Graph) -> GraphSummary:
    return GraphSummary(
        degrees=tuple(G.degrees()),
        neighbors=G.adjacency,
        is_cubic=G.is_cubic(),
        residue6=G.n % 6,
        components=tuple(tuple(c) for c in G.components()),
    )


def graph_problems(G: Graph) -> list[str]:
    """Independent re-check of the graph invariants; empty when valid."""
    problems = []
    seen = set()
    for u, v in G.edges:
        if u == v:
            problems.append(f"loop {u}")
        if u > v:
            problems.append(f"edge {(u, v)} not ordered")
        if max(u, v) >= G.n or min(u, v) < 0:
            problems.append(f"edge {(u, v)} out of range")
        if (u, v) in seen:
            problems.append(f"duplicate edge {(u, v)}")
        seen.add((u, v))
    if list(G.edges) != sorted(G.edges):
        problems.append("edges not sorted")
    return problems


# graph6 -----------------------------------------------------------------

def _n_header(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    raise Graph6Error("graph6 supports at most 2^36-1 vertices; n too large here")


def graph6_encode(G: Graph) -> str:
    bits = []
    es = G.edge_set
    for j in range(1, G.n):
        for i in range(j):
            bits.append(1 if (i, j) in es else 0)
    bits.extend([0] * (-len(bits) % 6))
    body = bytearray()
    for k in range(0, len(bits), 6):
        chunk = 0
        for b in bits[k:k + 6]:
            chunk = (chunk << 1) | b
        body.append(chunk + 63)
    return (_n_header(G.n) + bytes(body)).decode("ascii")


def graph6_decode(text: str) -> Graph:
    line = text.strip()
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
    if not line:
        raise Graph6Error("empty graph6 string")
    data = line.encode("ascii", errors="strict") if line.isascii() else None
    if data is None:
        raise Graph6Error("graph6 must be printable ASCII")
    if any(c < 63 or c > 126 for c in data):
        raise Graph6Error("byte outside the graph6 range 63..126")
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 4 and data[1] != 126:
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        pos = 4
    else:
        raise Graph6Error("unsupported or truncated graph6 size header")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(data) - pos != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, got {len(data) - pos}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = data[pos + k // 6] - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, tuple(sorted(edges)))


# plain edge lists ---------------------------------------------------------

def edgelist_encode(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


def edgelist_decode(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise GraphError("edge list must start with a line 'n m'")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        pairs = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise GraphError(f"non-integer token in edge list: {exc}") from None
    if len(pairs) != m:
        raise GraphError(f"header announces {m} edges, found {len(pairs)}")
    return from_edge_list(n, pairs)
