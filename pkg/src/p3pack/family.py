"""Almost-cubic graphs with three leaves and no Λ-factor, built recursively.

A member is carried as a certificate: the graph, its ordered leaves and the
build tree it came from.  The two seeds are ``Y_base`` and ``Z_base``;
``f_compose`` replaces a triangle of one member by another member.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .connectivity import cut_of
from .constructions import ConstructionError, base_graph
from .graph import Edge, Graph, edge, from_edge_list, subdivide_edge


class CertificateError(ValueError):
    """A certificate violates the structural properties every member must have."""


@dataclass(frozen=True)
class FFamilyCert:
    graph: Graph
    leaves: tuple[int, int, int]
    build_tree: dict

    def __post_init__(self):
        problems = certificate_problems(self)
        if problems:
            raise CertificateError("; ".join(problems))


def certificate_problems(cert: FFamilyCert) -> list[str]:
    G, leaves = cert.graph, cert.leaves
    out = []
    if len(leaves) != 3 or len(set(leaves)) != 3:
        out.append("need exactly three distinct leaves")
    actual = [v for v in range(G.n) if G.degree(v) == 1]
    if sorted(actual) != sorted(leaves):
        out.append(f"degree-1 vertices {actual} differ from recorded leaves {list(leaves)}")
    odd = [v for v in range(G.n) if v not in leaves and G.degree(v) != 3]
    if odd:
        out.append(f"non-leaf vertices without degree 3: {odd[:5]}")
    if G.n % 6 != 0:
        out.append(f"order {G.n} is not divisible by 6")
    if not G.is_connected():
        out.append("graph is disconnected")
    return out


def y_cert() -> FFamilyCert:
    return FFamilyCert(base_graph("Y_base"), (3, 4, 5), {"op": "Y"})


def z_cert() -> FFamilyCert:
    return FFamilyCert(base_graph("Z_base"), (21, 22, 23), {"op": "Z"})


def find_triangles(G: Graph) -> list[tuple[int, int, int]]:
    out = []
    for u in range(G.n):
        for v in G.neighbors(u):
            if v <= u:
                continue
            for w in G.neighbors(v):
                if w > v and G.has_edge(u, w):
                    out.append((u, v, w))
    return out


def _outer_neighbors(G: Graph, T) -> list[int]:
    """For each vertex of T (index order), its unique neighbour outside T."""
    tset = set(T)
    out = []
    for t in sorted(T):
        outside = [u for u in G.neighbors(t) if u not in tset]
        if len(outside) != 1:
            raise ConstructionError(f"triangle vertex {t} has {len(outside)} outside neighbours")
        out.append(outside[0])
    if len(set(out)) != 3:
        raise ConstructionError("triangle has fewer than 3 distinct outside neighbours")
    return out


def f_compose(A: FFamilyCert, T, B: FFamilyCert) -> FFamilyCert:
    """Replace triangle T of A by ``B - L(B)``.

    The outside neighbour of the i-th triangle vertex (index order) is
    identified with the i-th leaf of B.  Vertices of A - T keep their
    relative order and come first, then the non-leaf vertices of B.
    """
    T = tuple(sorted(T))
    G = A.graph
    if len(T) != 3 or not all(G.has_edge(u, v) for u, v in combinations(T, 2)):
        raise ConstructionError(f"{T} is not a triangle")
    outer = _outer_neighbors(G, T)
    a_map = {v: i for i, v in enumerate(x for x in range(G.n) if x not in T)}
    H = B.graph
    b_map = {leaf: a_map[o] for leaf, o in zip(B.leaves, outer)}
    nxt = len(a_map)
    for v in range(H.n):
        if v not in b_map:
            b_map[v] = nxt
            nxt += 1
    pairs = [(a_map[u], a_map[v]) for u, v in G.edges if u not in T and v not in T]
    pairs += [(b_map[u], b_map[v]) for u, v in H.edges]
    labels = [G.label(v) for v in a_map] + [f"B:{H.label(v)}" for v in range(H.n) if v not in B.leaves]
    out = from_edge_list(nxt, pairs, labels)
    if out.n != G.n + H.n - 6:
        raise ConstructionError("composition produced an unexpected order")
    leaves = tuple(a_map[v] for v in A.leaves)
    tree = {"op": "compose", "A": A.build_tree, "T": list(T), "B": B.build_tree}
    return FFamilyCert(out, leaves, tree)


def f_operator(F: FFamilyCert, which: str) -> Graph:
    """Close a member into a cubic graph.

    ``dot`` merges the leaves into one vertex (it takes the lowest leaf
    index and the others are removed); ``bar`` adds a triangle on the
    leaves; ``ddot`` is ``bar`` with the triangle edges subdivided and the
    three subdivision vertices joined to a new vertex z (the last index).
    """
    G, leaves = F.graph, F.leaves
    if which == "dot":
        x = min(leaves)
        keep = [v for v in range(G.n) if v not in leaves or v == x]
        idx = {v: i for i, v in enumerate(keep)}
        for leaf in leaves:
            idx[leaf] = idx[x]
        pairs = [(idx[u], idx[v]) for u, v in G.edges]
        labels = [G.label(v) for v in keep]
        labels[idx[x]] = "x"
        return from_edge_list(len(keep), pairs, labels)
    if which not in ("bar", "ddot"):
        raise ConstructionError(f"unknown operator {which!r}")
    tri = [edge(a, b) for a, b in combinations(sorted(leaves), 2)]
    H = from_edge_list(G.n, list(G.edges) + tri, G.labels)
    if which == "bar":
        return H
    subs = []
    for e in tri:
        H, w = subdivide_edge(H, e, f"v{e}")
        subs.append(w)
    labels = [H.label(v) for v in range(H.n)] + ["z"]
    return from_edge_list(H.n + 1, list(H.edges) + [(w, H.n) for w in subs], labels)


def dot_vertex(F: FFamilyCert) -> int:
    """Index of the merged vertex x in ``f_operator(F, "dot")``."""
    x = min(F.leaves)
    return sum(1 for v in range(x) if v not in F.leaves)


@dataclass(frozen=True)
class TriangleCertificate:
    triangle: tuple[int, int, int]
    neighbors: tuple[int, int, int]
    cycle: tuple[int, ...]
    cut: tuple[Edge, ...]


def _six_cycles_through(G: Graph, must: set[int]) -> list[tuple[int, ...]]:
    """All 6-cycles containing ``must`` as vertex sequences starting at their minimum."""
    found = set()
    start = min(must)
    path = [start]

    def extend():
        v = path[-1]
        if len(path) == 6:
            if G.has_edge(v, start) and must <= set(path):
                cyc = path[:]
                # fix orientation so each cycle is found once
                if cyc[1] < cyc[-1]:
                    found.add(tuple(cyc))
            return
        for u in G.neighbors(v):
            if u not in path:
                path.append(u)
                extend()
                path.pop()

    extend()
    return sorted(found)


def _is_matching_cut(G: Graph, edges) -> bool:
    ends = [v for e in edges for v in e]
    if len(ends) != len(set(ends)):
        return False
    return len(cut_of(G, edges).components) == 2


def t_cycle_and_cut(F: FFamilyCert, T) -> TriangleCertificate:
    """The unique 6-cycle C through N(T) whose boundary with T is a matching cut.

    Also checks that D(T) is a 3-edge matching cut and N(T) is independent.
    Raises CertificateError when the structure is missing or not unique.
    """
    G = F.graph
    T = tuple(sorted(T))
    if not all(G.has_edge(u, v) for u, v in combinations(T, 2)):
        raise CertificateError(f"{T} is not a triangle")
    try:
        nbrs = tuple(_outer_neighbors(G, T))
    except ConstructionError as exc:
        raise CertificateError(str(exc)) from None
    if any(G.has_edge(u, v) for u, v in combinations(nbrs, 2)):
        raise CertificateError("N(T) is not independent")
    if not _is_matching_cut(G, G.boundary(T)):
        raise CertificateError("D(T) is not a matching 3-edge cut")
    good = []
    for cyc in _six_cycles_through(G, set(nbrs)):
        if set(cyc) & set(T):
            continue
        cut = G.boundary(set(T) | set(cyc))
        if len(cut) == 3 and _is_matching_cut(G, cut):
            good.append((cyc, tuple(sorted(cut))))
    if len(good) != 1:
        raise CertificateError(f"expected a unique 6-cycle for triangle {T}, found {len(good)}")
    cyc, cut = good[0]
    return TriangleCertificate(T, nbrs, cyc, cut)


def check_member(F: FFamilyCert) -> list[str]:
    """Structural audit: invariants plus the triangle properties (non-Y members)."""
    problems = certificate_problems(F)
    if F.build_tree == {"op": "Y"}:
        return problems
    tris = find_triangles(F.graph)
    if not tris:
        problems.append("member has no triangle")
    for T in tris:
        try:
            t_cycle_and_cut(F, T)
        except CertificateError as exc:
            problems.append(str(exc))
    return problems


def leaf_matchings(G: Graph, x: int) -> list[tuple[int, int, int]]:
    """Vertex sets X, |X| = 3, matched with N(x): one further neighbour per member of N(x)."""
    nx = G.neighbors(x)
    blocked = set(nx) | {x}
    options = [[u for u in G.neighbors(y) if u not in blocked] for y in nx]
    out = set()
    for choice in _product(options):
        if len(set(choice)) == 3:
            out.add(tuple(sorted(choice)))
    return sorted(out)


def _product(options):
    if not options:
        yield ()
        return
    for head in options[0]:
        for tail in _product(options[1:]):
            yield (head,) + tail


def is_isomorphic_small(G: Graph, H: Graph) -> bool:
    """Plain permutation test; only meant for graphs with at most 8 vertices."""
    if G.n != H.n or G.m != H.m or sorted(G.degrees()) != sorted(H.degrees()):
        return False
    if G.n > 8:
        raise ValueError("is_isomorphic_small is limited to 8 vertices")
    target = H.edge_set
    for perm in permutations(range(G.n)):
        if all(edge(perm[u], perm[v]) in target for u, v in G.edges):
            return True
    return False
