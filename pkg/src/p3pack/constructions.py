"""Graph-building recipes: splices, vertex replacement, Y-composites and gadgets.

Each composite builder returns the graph together with a metadata record
describing the wiring (cut edges, attachment sets, the edge bijection),
so that downstream checks can inspect exactly the cuts a lemma talks about
instead of rediscovering them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .graph import Edge, Graph, GraphError, delete_vertices, edge, from_edge_list, subdivide_edge
from .packing import Path3


class ConstructionError(ValueError):
    pass


# named graphs ---------------------------------------------------------------

def _k4() -> Graph:
    return from_edge_list(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def _prism() -> Graph:
    return from_edge_list(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])


def _k33() -> Graph:
    return from_edge_list(6, [(i, j) for i in range(3) for j in range(3, 6)])


def _cube() -> Graph:
    return from_edge_list(8, [(v, v ^ (1 << b)) for v in range(8) for b in range(3) if v < v ^ (1 << b)])


def _petersen() -> Graph:
    pairs = [(i, (i + 1) % 5) for i in range(5)]
    pairs += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    pairs += [(i, i + 5) for i in range(5)]
    return from_edge_list(10, pairs)


def _y_base() -> Graph:
    # triangle z1 z2 z3 = 0 1 2, leaves x_i = 3 4 5 hanging from z_i
    labels = ["z1", "z2", "z3", "x1", "x2", "x3"]
    return from_edge_list(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)], labels)


def _s_gadget_edges(base: int, leaf_ids: Sequence[int]) -> list[tuple[int, int]]:
    """Edges of S: a copy of Y whose leaves y_i are linked through s'_i to s_i.

    Non-leaf vertices use ``base .. base + 8`` (triangle, y_1..y_3,
    s'_1..s'_3); the leaves s_1..s_3 are ``leaf_ids``.
    """
    t = [base, base + 1, base + 2]
    y = [base + 3, base + 4, base + 5]
    sp = [base + 6, base + 7, base + 8]
    out = [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]
    out += [(t[i], y[i]) for i in range(3)]
    for i in range(3):
        for j in range(3):
            if j != i:
                out.append((sp[i], y[j]))
        out.append((sp[i], leaf_ids[i]))
    return out


def _z_base() -> Graph:
    # copies A (0..8) and B (9..17) of S share their leaves c_i (18..20);
    # pendant leaves x_i (21..23) hang from c_i
    c = [18, 19, 20]
    pairs = _s_gadget_edges(0, c) + _s_gadget_edges(9, c)
    pairs += [(c[i], 21 + i) for i in range(3)]
    part = ["t1", "t2", "t3", "y1", "y2", "y3", "s'1", "s'2", "s'3"]
    labels = [f"A:{p}" for p in part] + [f"B:{p}" for p in part]
    labels += ["c1", "c2", "c3", "x1", "x2", "x3"]
    return from_edge_list(24, pairs, labels)


def _h_graph() -> Graph:
    # x_i = 0..2, y_i = 3..5, z^1..z^4 = 6..9
    pairs = []
    for i in range(3):
        x, y = i, 3 + i
        pairs += [(x, y), (x, 6), (x, 7), (y, 8), (y, 9)]
    labels = ["x1", "x2", "x3", "y1", "y2", "y3", "z1", "z2", "z3", "z4"]
    return from_edge_list(10, pairs, labels)


BASE_GRAPHS = {
    "K4": _k4,
    "prism": _prism,
    "K33": _k33,
    "cube": _cube,
    "petersen": _petersen,
    "Y_base": _y_base,
    "Z_base": _z_base,
    "H": _h_graph,
}


def base_graph(name: str) -> Graph:
    """One of the named graphs.

    Labelling: ``prism`` has triangles 012 and 345 joined by 03, 14, 25;
    ``K33`` has sides {0,1,2} and {3,4,5}; ``cube`` is Q3 on bit strings;
    ``petersen`` has outer cycle 0-4, inner pentagram 5-9 and spokes i, i+5;
    ``Y_base`` is the triangle 012 with leaf 3+i hanging from i;
    ``Z_base`` has leaves 21, 22, 23; ``H`` is the 10-vertex graph used
    for four-gadget replacement (z^1..z^4 = 6..9).
    """
    try:
        return BASE_GRAPHS[name]()
    except KeyError:
        raise ConstructionError(f"unknown base graph {name!r}; known: {sorted(BASE_GRAPHS)}") from None


# splice ----------------------------------------------------------------------

@dataclass(frozen=True)
class SpliceMeta:
    cut_edges: tuple[Edge, ...]
    side_a: frozenset[int]
    side_b: frozenset[int]
    residue_a: int
    a_map: Mapping[int, int] = field(repr=False)
    b_map: Mapping[int, int] = field(repr=False)


def _check_attachment(A: Graph, a: int, what: str) -> None:
    if not 0 <= a < A.n:
        raise ConstructionError(f"{what}: vertex {a} not in graph")
    if A.degree(a) != 3:
        raise ConstructionError(f"{what}: attachment vertex {a} has degree {A.degree(a)}, expected 3")


def splice(A: Graph, a: int, B: Graph, b: int,
           sigma: Mapping[int, int] | None = None) -> tuple[Graph, SpliceMeta]:
    """``(A - a) ∪ (B - b)`` plus the matching edges ``x sigma(x)`` for x in N(a).

    ``sigma`` defaults to pairing the neighbours of a and b in index order.
    Vertices of A - a come first, then those of B - b.
    """
    _check_attachment(A, a, "splice A")
    _check_attachment(B, b, "splice B")
    na, nb = A.neighbors(a), B.neighbors(b)
    if sigma is None:
        sigma = dict(zip(na, nb))
    if sorted(sigma) != list(na) or sorted(sigma.values()) != list(nb):
        raise ConstructionError("sigma must be a bijection N(a, A) -> N(b, B)")
    a_map = {v: i for i, v in enumerate(x for x in range(A.n) if x != a)}
    off = A.n - 1
    b_map = {v: off + i for i, v in enumerate(x for x in range(B.n) if x != b)}
    pairs = [(a_map[u], a_map[v]) for u, v in A.edges if a not in (u, v)]
    pairs += [(b_map[u], b_map[v]) for u, v in B.edges if b not in (u, v)]
    cut = [edge(a_map[x], b_map[sigma[x]]) for x in na]
    labels = [f"A:{A.label(v)}" for v in a_map] + [f"B:{B.label(v)}" for v in b_map]
    G = from_edge_list(A.n + B.n - 2, pairs + cut, labels)
    meta = SpliceMeta(tuple(sorted(cut)), frozenset(a_map.values()), frozenset(b_map.values()),
                      A.n % 3, a_map, b_map)
    return G, meta


# vertex replacement ------------------------------------------------------------

@dataclass(frozen=True)
class Gadget:
    """A graph with a degree-3 attachment vertex; ``ports`` optionally fixes
    which neighbour of the attachment vertex takes which host edge
    (host neighbour -> gadget neighbour)."""

    graph: Graph
    at: int
    ports: Mapping[int, int] | None = None


@dataclass(frozen=True)
class ReplacementMeta:
    alpha: Mapping[Edge, Edge]
    gadget_sides: Mapping[int, frozenset[int]]
    vertex_maps: Mapping[int, Mapping[int, int]] = field(repr=False)

    def alpha_inverse(self) -> dict[Edge, Edge]:
        return {g: b for b, g in self.alpha.items()}

    def attachment_set(self, v: int) -> list[Edge]:
        """D^v: the host edges incident to v, as edges of the composite."""
        return sorted(g for (x, y), g in self.alpha.items() if v in (x, y))


def vertex_replacement(B: Graph, gadgets: Mapping[int, Gadget | tuple]) -> tuple[Graph, ReplacementMeta]:
    """Replace each vertex v in ``gadgets`` by ``A(v) - a^v``.

    The three edges that met v in B now end at the neighbours of a^v
    (paired in index order unless the gadget fixes ``ports``).  Vertices
    not in ``gadgets`` stay as single vertices.  Blocks are laid out in
    the vertex order of B.
    """
    if not B.is_cubic():
        raise ConstructionError("vertex replacement needs a cubic host graph")
    gad: dict[int, Gadget] = {}
    for v, g in gadgets.items():
        if not 0 <= v < B.n:
            raise ConstructionError(f"host vertex {v} out of range")
        g = g if isinstance(g, Gadget) else Gadget(*g)
        _check_attachment(g.graph, g.at, f"gadget for vertex {v}")
        gad[v] = g

    vertex_maps: dict[int, dict[int, int]] = {}
    labels: list[str] = []
    pairs: list[tuple[int, int]] = []
    port_of: dict[tuple[int, int], int] = {}
    sides: dict[int, frozenset[int]] = {}
    nxt = 0
    for v in range(B.n):
        if v not in gad:
            vertex_maps[v] = {0: nxt}
            sides[v] = frozenset([nxt])
            labels.append(B.label(v))
            for u in B.neighbors(v):
                port_of[(v, u)] = nxt
            nxt += 1
            continue
        g = gad[v]
        A, a = g.graph, g.at
        vm = {}
        for x in range(A.n):
            if x != a:
                vm[x] = nxt
                labels.append(f"A^{B.label(v)}:{A.label(x)}")
                nxt += 1
        vertex_maps[v] = vm
        sides[v] = frozenset(vm.values())
        pairs += [(vm[x], vm[y]) for x, y in A.edges if a not in (x, y)]
        ports = g.ports
        if ports is None:
            ports = dict(zip(B.neighbors(v), A.neighbors(a)))
        if sorted(ports) != list(B.neighbors(v)) or sorted(ports.values()) != list(A.neighbors(a)):
            raise ConstructionError(f"ports for vertex {v} must biject N(v, B) onto N(a, A)")
        for u, x in ports.items():
            port_of[(v, u)] = vm[x]
    alpha = {}
    for u, v in B.edges:
        e = edge(port_of[(u, v)], port_of[(v, u)])
        alpha[(u, v)] = e
        pairs.append(e)
    G = from_edge_list(nxt, pairs, labels)
    if G.m != len(pairs):
        raise ConstructionError("replacement produced parallel edges")
    return G, ReplacementMeta(alpha, sides, vertex_maps)


# Y-construction ---------------------------------------------------------------

@dataclass(frozen=True)
class YMeta:
    z_vertices: tuple[int, int, int]
    d_sets: tuple[tuple[Edge, ...], ...]
    sides: tuple[frozenset[int], ...]
    replacement: ReplacementMeta = field(repr=False)


def y_construction(A1: Graph | None, a1: int | None, A2: Graph | None, a2: int | None,
                   A3: Graph | None, a3: int | None) -> tuple[Graph, YMeta]:
    """Join ``A^i - a^i`` (i = 1, 2, 3) through hubs z_1, z_2, z_3.

    Hub z_j is adjacent to the j-th neighbour (index order) of every a^i.
    A gadget given as ``None`` is the degenerate two-vertex gadget whose
    remainder is one vertex adjacent to all three hubs.
    """
    host = base_graph("K33")  # x_i = 0, 1, 2 replaced; z_j = 3, 4, 5 kept
    gadgets = {}
    for i, (A, a) in enumerate(((A1, a1), (A2, a2), (A3, a3))):
        if A is not None:
            _check_attachment(A, a, f"Y gadget {i + 1}")
            gadgets[i] = Gadget(A, a)
    G, rep = vertex_replacement(host, gadgets)
    z = tuple(next(iter(rep.gadget_sides[3 + j])) for j in range(3))
    d_sets = tuple(tuple(rep.alpha[(i, 3 + j)] for j in range(3)) for i in range(3))
    sides = tuple(rep.gadget_sides[i] for i in range(3))
    labels = list(G.labels)
    for j in range(3):
        labels[z[j]] = f"z{j + 1}"
    return G.with_labels(labels), YMeta(z, d_sets, sides, rep)


# local surgery ----------------------------------------------------------------

def triangle_expand(G: Graph, x: int) -> Graph:
    """Replace x by a triangle x'_1 x'_2 x'_3 with x_i x'_i edges.

    x'_1 keeps index x; x'_2, x'_3 are the new vertices n, n + 1.  The
    x_i are the neighbours of x in index order.
    """
    if G.degree(x) != 3:
        raise ConstructionError(f"vertex {x} has degree {G.degree(x)}, expected 3")
    x1, x2, x3 = G.neighbors(x)
    t = (x, G.n, G.n + 1)
    pairs = [e for e in G.edges if x not in e]
    pairs += [(x1, t[0]), (x2, t[1]), (x3, t[2]), (t[0], t[1]), (t[1], t[2]), (t[0], t[2])]
    labels = [G.label(v) for v in range(G.n)] + [f"{G.label(x)}'2", f"{G.label(x)}'3"]
    labels[x] = f"{G.label(x)}'1"
    return from_edge_list(G.n + 2, pairs, labels)


def subdivide_and_connect(G: Graph, e1: Sequence[int], e2: Sequence[int]) -> tuple[Graph, int, int]:
    """Subdivide e1 by w1 and e2 by w2, then add the edge w1 w2."""
    e1, e2 = edge(*e1), edge(*e2)
    if e1 == e2:
        raise ConstructionError("subdivide_and_connect needs two distinct edges")
    for e in (e1, e2):
        if e not in G.edge_set:
            raise ConstructionError(f"edge {e} not in graph")
    H, w1 = subdivide_edge(G, e1, "w1")
    H, w2 = subdivide_edge(H, e2, "w2")
    return from_edge_list(H.n, list(H.edges) + [(w1, w2)], H.labels), w1, w2


@dataclass(frozen=True)
class Rewiring:
    index: int
    added: tuple[Edge, Edge]
    graph: Graph | None
    valid: bool
    reason: str = ""


def rewire_after_pair_deletion(G: Graph, x: int, y: int) -> list[Rewiring]:
    """The three cubic rewirings of ``G - {x, y}`` for an edge xy.

    With N(x) = {x1, x2, y} and N(y) = {y1, y2, x}: E_1 = {x1y1, x2y2},
    E_2 = {x1y2, x2y1}, E_3 = {x1x2, y1y2}.  A rewiring that would create
    a loop or a parallel edge is returned with ``valid=False`` and no graph.
    ``added`` uses the vertex names of G; the graphs use the compacted
    indices of ``delete_vertices(G, {x, y})``.
    """
    if not G.has_edge(x, y):
        raise ConstructionError(f"{(x, y)} is not an edge")
    if not G.is_cubic():
        raise ConstructionError("rewiring expects a cubic graph")
    x1, x2 = [v for v in G.neighbors(x) if v != y]
    y1, y2 = [v for v in G.neighbors(y) if v != x]
    H, remap = delete_vertices(G, {x, y})
    out = []
    options = [((x1, y1), (x2, y2)), ((x1, y2), (x2, y1)), ((x1, x2), (y1, y2))]
    for s, (p, q) in enumerate(options, start=1):
        reason = ""
        if p[0] == p[1] or q[0] == q[1]:
            reason = "loop"
        elif edge(*p) == edge(*q):
            reason = "parallel new edges"
        elif G.has_edge(*p) or G.has_edge(*q):
            reason = "edge already present"
        if reason:
            out.append(Rewiring(s, (p, q), None, False, reason))
            continue
        new = [(remap[p[0]], remap[p[1]]), (remap[q[0]], remap[q[1]])]
        out.append(Rewiring(s, (edge(*p), edge(*q)), from_edge_list(H.n, list(H.edges) + new, H.labels), True))
    return out


# H construction and R_s ---------------------------------------------------------

def h_construction(gadgets: Sequence[Gadget | tuple | None]) -> tuple[Graph, ReplacementMeta]:
    """Replace z^1..z^4 of the 10-vertex graph H by the given gadgets (None keeps z^j)."""
    if len(gadgets) != 4:
        raise ConstructionError("H construction takes exactly four gadgets")
    H = base_graph("H")
    mapping = {6 + j: g for j, g in enumerate(gadgets) if g is not None}
    return vertex_replacement(H, mapping)


def r_s(s: int) -> tuple[Graph, list[Path3]]:
    """The cycle on 9s vertices with its Λ-factor L_1..L_3s plus 3s hub vertices.

    z_k^j (k = 1..3s, j = 1..3) is vertex 3(k-1) + (j-1), consecutive
    along the cycle; hub x_i^j is vertex 9s + 3(i-1) + (j-1) and is joined
    to z_i^j, z_{i+s}^j and z_{i+2s}^j.  Returns the graph and
    ``[L_1, ..., L_3s]`` with L_k = z_k^1 z_k^2 z_k^3 (0-based list).
    """
    if s < 1:
        raise ConstructionError("s must be at least 1")
    ncyc = 9 * s

    def z(k, j):
        return 3 * (k - 1) + (j - 1)

    pairs = [(v, (v + 1) % ncyc) for v in range(ncyc)]
    labels = [f"z{k}^{j}" for k in range(1, 3 * s + 1) for j in range(1, 4)]
    for i in range(1, s + 1):
        for j in range(1, 4):
            xv = ncyc + 3 * (i - 1) + (j - 1)
            pairs += [(xv, z(i, j)), (xv, z(i + s, j)), (xv, z(i + 2 * s, j))]
    labels += [f"x{i}^{j}" for i in range(1, s + 1) for j in range(1, 4)]
    G = from_edge_list(12 * s, pairs, labels)
    paths = [Path3.of(z(k, 1), z(k, 2), z(k, 3)) for k in range(1, 3 * s + 1)]
    return G, paths


__all__ = [
    "BASE_GRAPHS", "ConstructionError", "Gadget", "GraphError", "ReplacementMeta", "Rewiring",
    "SpliceMeta", "YMeta", "base_graph", "h_construction", "r_s", "rewire_after_pair_deletion",
    "splice", "subdivide_and_connect", "triangle_expand", "vertex_replacement", "y_construction",
]
