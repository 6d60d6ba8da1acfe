"""Small cubic-graph corpora: generation, canonical forms, file ingestion."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Iterator

from .connectivity import is_cubic_3_connected
from .graph import Graph, GraphError, edgelist_decode, graph6_decode, graph6_encode

MAX_GENERATE_N = 16
DEFAULT_LEAF_BUDGET = 200_000


class CorpusError(ValueError):
    pass


# generation -----------------------------------------------------------------

def _generate_labeled(n: int) -> Iterator[list[tuple[int, int]]]:
    """Connected cubic graphs in breadth-first labelling.

    Vertex 0 is joined to 1, 2, 3.  After that the lowest vertex with a free
    slot is completed in one step: its new neighbours are higher discovered
    vertices with free slots and/or the next unused labels (fresh labels
    are always taken in order, which removes most relabelled duplicates).
    Isomorphic copies still occur; ``generate_cubic`` removes them.
    """
    deg = [0] * n
    adj = [set() for _ in range(n)]
    edges: list[tuple[int, int]] = []

    def link(u, v):
        adj[u].add(v)
        adj[v].add(u)
        deg[u] += 1
        deg[v] += 1
        edges.append((u, v))

    def unlink(u, v):
        adj[u].discard(v)
        adj[v].discard(u)
        deg[u] -= 1
        deg[v] -= 1
        edges.pop()

    def rec(nv):
        v = next((x for x in range(nv) if deg[x] < 3), -1)
        if v < 0:
            if nv == n:
                yield list(edges)
            return  # otherwise the discovered part closed off: disconnected
        need = 3 - deg[v]
        old = [u for u in range(v + 1, nv) if deg[u] < 3 and u not in adj[v]]
        for fresh in range(0, min(need, n - nv) + 1):
            for chosen in combinations(old, need - fresh):
                picks = list(chosen) + list(range(nv, nv + fresh))
                for u in picks:
                    link(v, u)
                yield from rec(nv + fresh)
                for u in reversed(picks):
                    unlink(v, u)

    for u in (1, 2, 3):
        link(0, u)
    yield from rec(4)


def generate_cubic(n: int, dedup: bool = True, three_connected: bool = False,
                   leaf_budget: int = DEFAULT_LEAF_BUDGET) -> Iterator[Graph]:
    """Every connected cubic graph on n vertices (one per class with ``dedup``).

    Raises for odd n and for n outside 4..16.
    """
    if n % 2:
        raise CorpusError(f"no cubic graph has odd order {n}")
    if not 4 <= n <= MAX_GENERATE_N:
        raise CorpusError(f"generation supports 4 <= n <= {MAX_GENERATE_N}, got {n}")
    seen = set()
    for pairs in _generate_labeled(n):
        G = Graph(n, tuple(sorted(pairs)))
        if dedup:
            cf = canonical_form(G, leaf_budget)
            if not cf.verified:
                raise CorpusError(f"canonical form budget exceeded on {graph6_encode(G)}")
            if cf.key in seen:
                continue
            seen.add(cf.key)
        # the connectivity test is the slow part, so it runs after dedup
        if three_connected and not is_cubic_3_connected(G):
            continue
        yield G


@lru_cache(maxsize=None)
def cubic_graphs(n: int, three_connected: bool = False) -> tuple[Graph, ...]:
    """Cached, deduplicated classes, each relabelled to its canonical form."""
    return tuple(canonical_graph(G) for G in generate_cubic(n, True, three_connected))


# canonical form -------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalForm:
    key: tuple
    verified: bool
    perm: tuple[int, ...] = ()


def _refine(adj, colors: list[int]) -> tuple[list[int], tuple]:
    """Colour refinement to a stable partition with isomorphism-invariant colour names.

    Also returns the quotient signature of the stable partition, an
    isomorphism invariant of (graph, partition) used to prune the search.
    """
    n = len(colors)
    ncls = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted([colors[u] for u in adj[v]]))) for v in range(n)]
        keys = sorted(set(sigs))
        rank = {s: i for i, s in enumerate(keys)}
        new = [rank[s] for s in sigs]
        if len(keys) == ncls:
            return new, tuple(keys)
        colors, ncls = new, len(keys)


def canonical_form(G: Graph, leaf_budget: int = DEFAULT_LEAF_BUDGET) -> CanonicalForm:
    """Minimal relabelled edge code over an individualisation-refinement tree.

    At every node only the children whose refined partition has the
    smallest invariant are explored; an isomorphism carries surviving
    branches to surviving branches, so the minimum code stays canonical.
    Two graphs get the same key iff they are isomorphic.  When the search
    tree exceeds ``leaf_budget`` leaves the result is flagged unverified.
    """
    adj = G.adjacency
    n = G.n
    best: list = [None, None]
    leaves = [0]

    def visit(colors):
        if leaves[0] >= leaf_budget:
            return
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = next((c for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            leaves[0] += 1
            code = tuple(sorted((min(colors[u], colors[v]), max(colors[u], colors[v])) for u, v in G.edges))
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, tuple(colors)
            return
        children = []
        for v in cells[target]:
            # individualise v: give it a colour just above the rest of its cell
            trial = [2 * c + (0 if c <= target else 1) for c in colors]
            trial[v] = 2 * target + 1
            children.append(_refine(adj, trial))
        low = min(inv for _, inv in children)
        for child, inv in children:
            if inv == low:
                visit(child)

    visit(_refine(adj, [0] * n)[0])
    key = (n, best[0] if best[0] is not None else ())
    return CanonicalForm(key, leaves[0] < leaf_budget, best[1] or tuple(range(n)))


def canonical_graph(G: Graph) -> Graph:
    cf = canonical_form(G)
    return Graph(G.n, tuple(sorted(tuple(sorted((cf.perm[u], cf.perm[v]))) for u, v in G.edges)))


def are_isomorphic(G: Graph, H: Graph) -> bool:
    a, b = canonical_form(G), canonical_form(H)
    if not (a.verified and b.verified):
        raise CorpusError("canonical form budget exceeded")
    return a.key == b.key


# files ------------------------------------------------------------------------

@dataclass(frozen=True)
class IngestRecord:
    line: int
    graph: Graph | None
    error: str | None = None


def ingest(path: str | Path, fmt: str = "graph6") -> Iterator[IngestRecord]:
    """Stream graphs from a file, reporting malformed entries with line numbers.

    graph6 files hold one graph per line; edge-list files hold blocks
    ("n m" header then m lines) separated by blank lines.
    """
    try:
        text = Path(path).read_text(encoding="ascii", errors="replace")
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from None
    if fmt == "graph6":
        for no, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                yield IngestRecord(no, graph6_decode(line))
            except GraphError as exc:
                yield IngestRecord(no, None, str(exc))
    elif fmt == "edgelist":
        block, start = [], 0
        for no, line in enumerate(text.splitlines() + [""], start=1):
            if line.strip():
                if not block:
                    start = no
                block.append(line)
                continue
            if block:
                try:
                    yield IngestRecord(start, edgelist_decode("\n".join(block)))
                except GraphError as exc:
                    yield IngestRecord(start, None, str(exc))
                block = []
    else:
        raise CorpusError(f"unknown format {fmt!r}")


def write_graph6(graphs, path: str | Path) -> int:
    lines = [graph6_encode(G) for G in graphs]
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="ascii")
    return len(lines)


@dataclass(frozen=True)
class CorpusSpec:
    n: int
    require_3connected: bool = False
    dedup: bool = True
    source: str = "generate"

    def __post_init__(self):
        if self.source == "generate":
            if self.n % 2:
                raise CorpusError("cubic corpora need even n")
            if self.n > MAX_GENERATE_N:
                raise CorpusError(f"generation is capped at n={MAX_GENERATE_N}")

    def graphs(self) -> list[Graph]:
        if self.source == "generate":
            if self.dedup:
                return list(cubic_graphs(self.n, self.require_3connected))
            return list(generate_cubic(self.n, False, self.require_3connected))
        out = [r.graph for r in ingest(self.source) if r.graph is not None and r.graph.n == self.n]
        if self.require_3connected:
            out = [G for G in out if is_cubic_3_connected(G)]
        return out


def corpus_up_to(n_max: int, three_connected: bool = False) -> list[Graph]:
    out = []
    for n in range(4, n_max + 1, 2):
        out.extend(cubic_graphs(n, three_connected))
    return out
