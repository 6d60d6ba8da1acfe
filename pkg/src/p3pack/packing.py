"""Exact 3-vertex-path (Λ) packing and constrained Λ-factor search.

The solvers wrap the array kernels in :mod:`p3pack.kernels`.  A
Λ-factor search branches on the lowest uncovered vertex (or a vertex whose
only free neighbour forces its path), prunes whenever a free component has
order not divisible by 3, and enforces required edges at the moment a path
is placed.  :func:`brute_force_oracle` is a deliberately naive second route
used to cross-check everything else.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from ._accel import USE_NUMBA
from .graph import Edge, Graph, GraphError, edge


class ConstraintError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """A search hit its wall-clock budget before finishing."""

    def __init__(self, nodes: int, elapsed: float):
        super().__init__(f"search budget exhausted after {nodes} nodes ({elapsed:.3f}s)")
        self.nodes = nodes
        self.elapsed = elapsed


@dataclass(frozen=True, order=True)
class Path3:
    """A 3-vertex path ``end1 - center - end2`` with ``end1 < end2``."""

    end1: int
    center: int
    end2: int

    def __post_init__(self):
        if self.end1 >= self.end2 or self.center in (self.end1, self.end2):
            raise ValueError(f"not a canonical 3-path: {self.triple}")

    @classmethod
    def of(cls, a: int, c: int, b: int) -> "Path3":
        return cls(min(a, b), c, max(a, b))

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.end1, self.center, self.end2)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.triple)

    @property
    def edges(self) -> tuple[Edge, Edge]:
        return edge(self.end1, self.center), edge(self.center, self.end2)

    def is_valid_in(self, G: Graph) -> bool:
        return G.has_edge(self.end1, self.center) and G.has_edge(self.center, self.end2)


@dataclass(frozen=True)
class Packing:
    paths: tuple[Path3, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "paths", tuple(sorted(set(self.paths))))

    @classmethod
    def of(cls, triples: Iterable[Sequence[int]]) -> "Packing":
        return cls(tuple(Path3.of(*t) for t in triples))

    def __len__(self) -> int:
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for p in self.paths for v in p.triple)

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset(e for p in self.paths for e in p.edges)

    def path_of(self, v: int) -> Path3 | None:
        for p in self.paths:
            if v in p.triple:
                return p
        return None

    def to_json(self) -> list[list[int]]:
        return [list(p.triple) for p in self.paths]

    @classmethod
    def from_json(cls, data) -> "Packing":
        return cls.of(data)


@dataclass(frozen=True)
class FactorConstraint:
    removed_vertices: frozenset[int] = frozenset()
    forbidden_edges: frozenset[Edge] = frozenset()
    required_edges: frozenset[Edge] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "removed_vertices", frozenset(int(v) for v in self.removed_vertices))
        object.__setattr__(self, "forbidden_edges", frozenset(edge(*e) for e in self.forbidden_edges))
        object.__setattr__(self, "required_edges", frozenset(edge(*e) for e in self.required_edges))
        if self.required_edges & self.forbidden_edges:
            raise ConstraintError("an edge cannot be both required and forbidden")
        for u, v in self.required_edges:
            if u in self.removed_vertices or v in self.removed_vertices:
                raise ConstraintError(f"required edge {(u, v)} touches a removed vertex")

    @classmethod
    def make(cls, removed=(), forbidden=(), required=()) -> "FactorConstraint":
        return cls(frozenset(removed), frozenset(forbidden), frozenset(required))

    def check(self, G: Graph) -> None:
        for v in self.removed_vertices:
            if not 0 <= v < G.n:
                raise ConstraintError(f"removed vertex {v} not in graph")
        for e in self.required_edges:
            if e not in G.edge_set:
                raise ConstraintError(f"required edge {e} not in graph")

    def is_empty(self) -> bool:
        return not (self.removed_vertices or self.forbidden_edges or self.required_edges)

    def to_json(self) -> dict:
        return {
            "removed_vertices": sorted(self.removed_vertices),
            "forbidden_edges": [list(e) for e in sorted(self.forbidden_edges)],
            "required_edges": [list(e) for e in sorted(self.required_edges)],
        }


NO_CONSTRAINT = FactorConstraint()


# array plumbing -------------------------------------------------------------

@lru_cache(maxsize=4096)
def _padded_adjacency(G: Graph) -> tuple[np.ndarray, np.ndarray]:
    width = max([G.degree(v) for v in range(G.n)] + [1])
    nbr = np.full((max(G.n, 1), width), -1, dtype=np.int64)
    deg = np.zeros(max(G.n, 1), dtype=np.int64)
    for v in range(G.n):
        row = G.adjacency[v]
        nbr[v, :len(row)] = row
        deg[v] = len(row)
    return nbr, deg


@dataclass
class _Problem:
    nbr: np.ndarray
    deg: np.ndarray
    req: np.ndarray
    reqdeg: np.ndarray
    status: np.ndarray
    free: int


def _problem(G: Graph, c: FactorConstraint) -> _Problem:
    c.check(G)
    nbr, deg = _padded_adjacency(G)
    if c.forbidden_edges:
        nbr = nbr.copy()
        deg = deg.copy()
        for u, v in c.forbidden_edges:
            if (u, v) not in G.edge_set:
                continue
            for x, y in ((u, v), (v, u)):
                row = [w for w in nbr[x, :deg[x]] if w != y]
                nbr[x, :] = -1
                nbr[x, :len(row)] = row
                deg[x] = len(row)
    n = max(G.n, 1)
    req = np.zeros((n, n) if c.required_edges else (1, 1), dtype=np.int64)
    reqdeg = np.zeros(n, dtype=np.int64)
    if c.required_edges:
        for u, v in c.required_edges:
            req[u, v] = req[v, u] = 1
            reqdeg[u] += 1
            reqdeg[v] += 1
    status = np.zeros(n, dtype=np.int8)
    if G.n == 0:
        status[0] = 1
    for v in c.removed_vertices:
        status[v] = 1
    return _Problem(nbr, deg, req, reqdeg, status, G.n - len(c.removed_vertices))


_QUOTA = 2_000_000 if USE_NUMBA else 20_000


def _deadline(budget_ms: float | None) -> float | None:
    return None if budget_ms is None else time.perf_counter() + budget_ms / 1000.0


@dataclass
class FactorEnumeration:
    factors: list[Packing]
    exhausted: bool
    nodes: int = 0


def _factor_run(G: Graph, c: FactorConstraint, limit: int, store: bool,
                budget_ms: float | None) -> tuple[int, list[Packing], bool, int]:
    if limit < 1:
        raise ValueError("limit must be at least 1")
    pb = _problem(G, c)
    if pb.free % 3 != 0:
        return 0, [], True, 0
    if len(c.required_edges) > 2 * (pb.free // 3) or any(d > 2 for d in pb.reqdeg):
        return 0, [], True, 0
    n = pb.status.shape[0]
    mark = np.zeros(n, dtype=np.int64)
    queue = np.zeros(n, dtype=np.int64)
    if not kernels.components_divisible(pb.nbr, pb.deg, pb.status, mark, queue):
        return 0, [], True, 0
    depth_max = pb.free // 3 + 1
    st = np.array([0, 0, 1, 0], dtype=np.int64)
    stack_v = np.zeros(depth_max, dtype=np.int64)
    stack_c = np.zeros(depth_max, dtype=np.int64)
    stack_p = np.zeros((depth_max, 3), dtype=np.int64)
    out = np.zeros((limit if store else 1, max(pb.free // 3, 1), 3), dtype=np.int64)
    deadline = _deadline(budget_ms)
    start = time.perf_counter()
    while True:
        code = kernels.factor_search(pb.nbr, pb.deg, pb.req, pb.reqdeg, pb.status, st,
                                     stack_v, stack_c, stack_p, mark, queue, out,
                                     store, limit, _QUOTA)
        if code != kernels.PAUSED:
            break
        if deadline is not None and time.perf_counter() > deadline:
            raise BudgetExceeded(int(st[3]), time.perf_counter() - start)
    found = int(st[1])
    factors = []
    if store:
        k = pb.free // 3
        factors = [Packing.of(out[i, :k].tolist()) for i in range(found)]
    return found, factors, code == kernels.DONE, int(st[3])


def find_lambda_factor(G: Graph, c: FactorConstraint = NO_CONSTRAINT, *,
                       budget_ms: float | None = None) -> Packing | None:
    """A Λ-factor of ``G`` under ``c``, or None when none exists (exact).

    The factor covers exactly the vertices not removed, uses no forbidden
    edge and contains every required edge.  Raises :class:`BudgetExceeded`
    if ``budget_ms`` runs out first.
    """
    _, factors, _, _ = _factor_run(G, c, 1, True, budget_ms)
    return factors[0] if factors else None


def has_lambda_factor(G: Graph, c: FactorConstraint = NO_CONSTRAINT, *,
                      budget_ms: float | None = None) -> bool:
    return find_lambda_factor(G, c, budget_ms=budget_ms) is not None


def enumerate_lambda_factors(G: Graph, c: FactorConstraint = NO_CONSTRAINT,
                             limit: int = 10_000, *,
                             budget_ms: float | None = None) -> FactorEnumeration:
    """Up to ``limit`` distinct factors; ``exhausted`` is True when all were found."""
    found, factors, done, nodes = _factor_run(G, c, limit, True, budget_ms)
    return FactorEnumeration(factors, done, nodes)


def count_lambda_factors(G: Graph, c: FactorConstraint = NO_CONSTRAINT, *,
                         budget_ms: float | None = None) -> int:
    found, _, _, _ = _factor_run(G, c, np.iinfo(np.int64).max, False, budget_ms)
    return found


def max_lambda_packing(G: Graph, *, budget_ms: float | None = None) -> tuple[int, Packing]:
    """λ(G) with a witness packing, by branch and bound from a greedy start."""
    warm = greedy_packing(G)
    target = G.n // 3
    if len(warm) >= target:
        return len(warm), warm
    nbr, deg = _padded_adjacency(G)
    n = nbr.shape[0]
    status = np.zeros(n, dtype=np.int8)
    depth_max = G.n + 1
    st = np.array([0, 0, 1, 0, len(warm)], dtype=np.int64)
    stack_v = np.zeros(depth_max, dtype=np.int64)
    stack_c = np.zeros(depth_max, dtype=np.int64)
    stack_p = np.zeros((depth_max, 3), dtype=np.int64)
    mark = np.zeros(n, dtype=np.int64)
    queue = np.zeros(n, dtype=np.int64)
    best_p = np.zeros((max(target, 1), 3), dtype=np.int64)
    for i, p in enumerate(warm.paths):
        best_p[i] = p.triple
    deadline = _deadline(budget_ms)
    start = time.perf_counter()
    while True:
        code = kernels.packing_search(nbr, deg, status, st, stack_v, stack_c, stack_p,
                                      mark, queue, best_p, target, _QUOTA)
        if code != kernels.PAUSED:
            break
        if deadline is not None and time.perf_counter() > deadline:
            raise BudgetExceeded(int(st[3]), time.perf_counter() - start)
    best = int(st[4])
    return best, Packing.of(best_p[:best].tolist())


def all_paths3(G: Graph, c: FactorConstraint = NO_CONSTRAINT) -> list[Path3]:
    """Every 3-path of ``G`` avoiding removed vertices and forbidden edges."""
    out = []
    for x in range(G.n):
        if x in c.removed_vertices:
            continue
        nb = [y for y in G.neighbors(x)
              if y not in c.removed_vertices and edge(x, y) not in c.forbidden_edges]
        for a, b in combinations(nb, 2):
            out.append(Path3.of(a, x, b))
    return sorted(out)


def greedy_packing(G: Graph) -> Packing:
    """A maximal (non-extendable) packing; first-fit in path order."""
    used: set[int] = set()
    chosen = []
    for p in all_paths3(G):
        if used.isdisjoint(p.triple):
            chosen.append(p)
            used.update(p.triple)
    return Packing(tuple(chosen))


@dataclass
class OracleResult:
    lam: int
    factors: list[Packing]
    packings: int = 0
    maximal: int = 0


ORACLE_MAX_VERTICES = 14


def brute_force_oracle(G: Graph, c: FactorConstraint = NO_CONSTRAINT) -> OracleResult:
    """Enumerate every set of pairwise disjoint 3-paths, with no other pruning.

    λ is taken over the graph with removed vertices and forbidden edges
    deleted; factors are the packings covering every remaining vertex and
    containing every required edge.
    """
    if G.n > ORACLE_MAX_VERTICES:
        raise GraphError(f"oracle limited to {ORACLE_MAX_VERTICES} vertices")
    c.check(G)
    paths = all_paths3(G, c)
    alive = G.n - len(c.removed_vertices)
    best = 0
    factors = []
    count = 0
    maximal = 0

    def rec(start: int, used: frozenset, chosen: list):
        nonlocal best, count, maximal
        count += 1
        best = max(best, len(chosen))
        if all(not used.isdisjoint(p.triple) for p in paths):
            maximal += 1
        if len(used) == alive:
            pk = Packing(tuple(chosen))
            if c.required_edges <= pk.edges:
                factors.append(pk)
        for i in range(start, len(paths)):
            p = paths[i]
            if used.isdisjoint(p.triple):
                chosen.append(p)
                rec(i + 1, used | p.vertices, chosen)
                chosen.pop()

    rec(0, frozenset(), [])
    return OracleResult(best, sorted(factors, key=lambda f: f.paths), count, maximal)


def packing_problems(G: Graph, P: Packing, c: FactorConstraint = NO_CONSTRAINT,
                     factor: bool = False) -> list[str]:
    """Reasons ``P`` is not a valid packing (or factor) under ``c``; empty if valid."""
    problems = []
    seen: dict[int, Path3] = {}
    for p in P.paths:
        if not p.is_valid_in(G):
            problems.append(f"{p.triple} is not a path of G")
        for e in p.edges:
            if e in c.forbidden_edges:
                problems.append(f"{p.triple} uses forbidden edge {e}")
        for v in p.triple:
            if v in c.removed_vertices:
                problems.append(f"{p.triple} uses removed vertex {v}")
            if v in seen:
                problems.append(f"vertex {v} in {seen[v].triple} and {p.triple}")
            seen[v] = p
    if factor:
        missing = set(range(G.n)) - c.removed_vertices - set(seen)
        if missing:
            problems.append(f"uncovered vertices {sorted(missing)}")
        lacking = c.required_edges - P.edges
        if lacking:
            problems.append(f"required edges missing {sorted(lacking)}")
    return problems
