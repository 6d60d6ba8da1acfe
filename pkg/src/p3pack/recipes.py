"""JSON build trees: nested ``{"op": ..., "args": {...}}`` records turned into graphs.

A bare string is shorthand for a named base graph.  See docs/recipes.md
for the full schema.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import constructions as C
from .family import FFamilyCert, f_compose, f_operator, y_cert, z_cert
from .graph import Graph, from_edge_list, graph6_decode


class RecipeError(ValueError):
    pass


@dataclass
class Built:
    graph: Graph
    meta: dict = field(default_factory=dict)


def _args(node: dict) -> dict:
    args = node.get("args", {})
    if not isinstance(args, dict):
        raise RecipeError(f"'args' of {node.get('op')!r} must be an object")
    return args


def _need(args: dict, key: str, op: str):
    if key not in args:
        raise RecipeError(f"op {op!r} needs argument {key!r}")
    return args[key]


def _edges_json(edges) -> list[list[int]]:
    return [list(e) for e in edges]


def _gadget(entry, op: str) -> C.Gadget | None:
    if entry is None:
        return None
    if not isinstance(entry, dict):
        raise RecipeError(f"{op}: a gadget is an object with 'graph' and 'at'")
    ports = entry.get("ports")
    if ports is not None:
        ports = {int(k): int(v) for k, v in ports.items()}
    return C.Gadget(build(_need(entry, "graph", op)).graph, int(_need(entry, "at", op)), ports)


def build_member(node) -> FFamilyCert:
    """A member of the almost-cubic family from ``Y``, ``Z`` or ``compose`` nodes."""
    if isinstance(node, str):
        node = {"op": node}
    op = node.get("op") if isinstance(node, dict) else None
    if op == "Y":
        return y_cert()
    if op == "Z":
        return z_cert()
    if op == "compose":
        a = _args(node)
        return f_compose(build_member(_need(a, "A", op)), tuple(_need(a, "T", op)),
                         build_member(_need(a, "B", op)))
    raise RecipeError(f"unknown family node {op!r}")


def build(node) -> Built:
    """Evaluate a recipe tree."""
    if isinstance(node, str):
        return Built(C.base_graph(node), {"op": "base", "name": node})
    if not isinstance(node, dict) or "op" not in node:
        raise RecipeError(f"recipe node must be a string or an object with 'op', got {node!r}")
    op = node["op"]
    a = _args(node)
    try:
        return _build(op, a)
    except (C.ConstructionError, C.GraphError) as exc:
        raise RecipeError(f"{op}: {exc}") from None


def _build(op: str, a: dict) -> Built:
    if op == "base":
        return build(_need(a, "name", op))
    if op == "graph6":
        return Built(graph6_decode(_need(a, "text", op)), {"op": op})
    if op == "edges":
        return Built(from_edge_list(int(_need(a, "n", op)), _need(a, "edges", op)), {"op": op})
    if op == "splice":
        A, B = build(_need(a, "A", op)).graph, build(_need(a, "B", op)).graph
        sigma = a.get("sigma")
        if sigma is not None:
            sigma = {int(k): int(v) for k, v in sigma.items()}
        G, m = C.splice(A, int(_need(a, "a", op)), B, int(_need(a, "b", op)), sigma)
        return Built(G, {"op": op, "cut_edges": _edges_json(m.cut_edges), "side_a": sorted(m.side_a),
                         "side_b": sorted(m.side_b), "residue_a": m.residue_a})
    if op == "replace":
        host = build(_need(a, "host", op)).graph
        gadgets = {int(v): _gadget(g, op) for v, g in _need(a, "gadgets", op).items()}
        G, m = C.vertex_replacement(host, {v: g for v, g in gadgets.items() if g is not None})
        return Built(G, {"op": op, "alpha": [[list(k), list(v)] for k, v in sorted(m.alpha.items())],
                         "gadget_sides": {str(k): sorted(v) for k, v in sorted(m.gadget_sides.items())}})
    if op == "y":
        specs = _need(a, "gadgets", op)
        if len(specs) != 3:
            raise RecipeError("y needs exactly three gadgets (null for the single-vertex one)")
        flat = []
        for g in (_gadget(s, op) for s in specs):
            flat += [None, None] if g is None else [g.graph, g.at]
        G, m = C.y_construction(*flat)
        return Built(G, {"op": op, "z_vertices": list(m.z_vertices),
                         "d_sets": [_edges_json(D) for D in m.d_sets],
                         "sides": [sorted(s) for s in m.sides]})
    if op == "h":
        specs = _need(a, "gadgets", op)
        G, m = C.h_construction([_gadget(s, op) for s in specs])
        return Built(G, {"op": op, "alpha": [[list(k), list(v)] for k, v in sorted(m.alpha.items())]})
    if op == "triangle_expand":
        G = build(_need(a, "graph", op)).graph
        x = int(_need(a, "x", op))
        return Built(C.triangle_expand(G, x), {"op": op, "triangle": [x, G.n, G.n + 1]})
    if op == "subdivide_connect":
        G = build(_need(a, "graph", op)).graph
        H, w1, w2 = C.subdivide_and_connect(G, _need(a, "e1", op), _need(a, "e2", op))
        return Built(H, {"op": op, "w1": w1, "w2": w2})
    if op == "rewire":
        G = build(_need(a, "graph", op)).graph
        s = int(a.get("index", 1))
        options = C.rewire_after_pair_deletion(G, int(_need(a, "x", op)), int(_need(a, "y", op)))
        chosen = next((r for r in options if r.index == s), None)
        if chosen is None or not chosen.valid:
            raise RecipeError(f"rewiring {s} is not valid: {chosen.reason if chosen else 'no such index'}")
        return Built(chosen.graph, {"op": op, "index": s, "added": _edges_json(chosen.added)})
    if op == "r_s":
        G, L = C.r_s(int(_need(a, "s", op)))
        return Built(G, {"op": op, "paths": [list(p.triple) for p in L]})
    if op == "member":
        F = build_member(_need(a, "tree", op))
        return Built(F.graph, {"op": op, "leaves": list(F.leaves), "tree": F.build_tree})
    if op in ("dot", "bar", "ddot"):
        F = build_member(_need(a, "member", op))
        return Built(f_operator(F, op), {"op": op, "leaves": list(F.leaves)})
    raise RecipeError(f"unknown op {op!r}")


def load_recipe(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise RecipeError(f"recipe is not valid JSON: {exc}") from None
