"""The nineteen Λ-factor claims as per-graph predicates, plus cut and projection checkers.

Every claim has the shape "for every object O there is an option X such
that G under constraint c(O, X) has a Λ-factor".  ``claim_items`` lists
the universal objects with their options; ``evaluate_claim`` answers each
inner query exactly and reports a verdict with a witness or a
counter-witness.
"""

from __future__ import annotations

import enum
import json
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .connectivity import enumerate_3_edge_cuts, is_cubic_3_connected
from .constructions import ReplacementMeta, SpliceMeta, YMeta
from .graph import Edge, Graph, edge, graph6_encode
from .packing import (
    ORACLE_MAX_VERTICES,
    BudgetExceeded,
    FactorConstraint,
    Packing,
    brute_force_oracle,
    find_lambda_factor,
    max_lambda_packing,
    packing_problems,
)


class ClaimError(ValueError):
    """The input does not meet a claim's standing hypotheses."""


class LemmaViolation(AssertionError):
    """An instance contradicts a structural statement that should always hold."""


class ClaimId(str, enum.Enum):
    Z1 = "z1"
    Z2 = "z2"
    Z3 = "z3"
    Z4 = "z4"
    Z5 = "z5"
    Z6 = "z6"
    Z7 = "z7"
    Z8 = "z8"
    Z9 = "z9"
    T1 = "t1"
    T2 = "t2"
    T3 = "t3"
    T4 = "t4"
    F1 = "f1"
    F2 = "f2"
    F3 = "f3"
    F4 = "f4"
    F5 = "f5"
    F6 = "f6"

    @property
    def residue(self) -> int:
        """Required value of v(G) mod 6."""
        return {"z": 0, "t": 2, "f": 4}[self.value[0]]

    @classmethod
    def parse(cls, text: str) -> list["ClaimId"]:
        """``"all"``, a family letter (``"z"``) or a comma list like ``"z1,t2"``."""
        out = []
        for tok in (t.strip().lower() for t in text.split(",")):
            if not tok:
                continue
            if tok == "all":
                out.extend(cls)
            elif tok in ("z", "t", "f"):
                out.extend(c for c in cls if c.value[0] == tok)
            else:
                try:
                    out.append(cls(tok))
                except ValueError:
                    raise ClaimError(f"unknown claim {tok!r}") from None
        return sorted(set(out), key=list(cls).index)


ALL_CLAIMS = list(ClaimId)


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    NOT_APPLICABLE = "not_applicable"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class Option:
    detail: dict
    constraint: FactorConstraint


@dataclass(frozen=True)
class Item:
    """One universally quantified object; ``need`` options must succeed."""

    detail: dict
    options: tuple[Option, ...]
    need: int = 1


@dataclass
class ClaimReport:
    graph_id: str
    claim: ClaimId
    verdict: Verdict
    witness: list[dict] = field(default_factory=list)
    counter_witness: dict | None = None
    items_checked: int = 0
    queries: int = 0
    runtime: float = 0.0
    note: str = ""

    def to_json(self, include_runtime: bool = False, include_witness: bool = True) -> dict:
        out = {
            "graph": self.graph_id,
            "claim": self.claim.value,
            "verdict": self.verdict.value,
            "items_checked": self.items_checked,
            "queries": self.queries,
        }
        if include_witness:
            out["witness"] = self.witness
        if self.counter_witness is not None:
            out["counter_witness"] = self.counter_witness
        if self.note:
            out["note"] = self.note
        if include_runtime:
            out["runtime"] = round(self.runtime, 6)
        return out


# enumerating small structures ----------------------------------------------------

def paths3_centered(G: Graph, x: int) -> list[tuple[int, int, int]]:
    return [(a, x, b) for a, b in combinations(G.neighbors(x), 2)]


def all_3paths(G: Graph) -> list[tuple[int, int, int]]:
    return [p for x in range(G.n) for p in paths3_centered(G, x)]


def paths4_with_inner(G: Graph, x: int) -> list[tuple[int, int, int, int]]:
    """4-vertex paths p-x-q-r, i.e. every 4-path having x as an inner vertex."""
    out = []
    for p in G.neighbors(x):
        for q in G.neighbors(x):
            if q == p:
                continue
            for r in G.neighbors(q):
                if r not in (x, p):
                    out.append((p, x, q, r))
    return out


def paths5_centered(G: Graph, x: int) -> list[tuple[int, int, int, int, int]]:
    """5-vertex paths a-b-x-c-d with b < c (each path listed once)."""
    out = []
    for b, c in combinations(G.neighbors(x), 2):
        for a in G.neighbors(b):
            if a in (x, c):
                continue
            for d in G.neighbors(c):
                if d not in (x, b, a):
                    out.append((a, b, x, c, d))
    return out


def _removal(vertices) -> FactorConstraint:
    return FactorConstraint.make(removed=vertices)


def claim_items(G: Graph, cid: ClaimId, z5_strict: bool = False) -> list[Item]:
    """Universal objects of claim ``cid`` with their existential options, in a fixed order.

    ``z5_strict`` counts two Λs centred at x as different only when their
    vertex sets differ; for a fixed centre this coincides with the default
    end-pair reading, and the flag is kept so the choice stays explicit.
    """
    V = range(G.n)
    E = G.edges
    c = cid
    if c is ClaimId.Z1:
        return [Item({}, (Option({}, FactorConstraint()),))]
    if c is ClaimId.Z2:
        return [Item({"edge": list(e)}, (Option({}, FactorConstraint.make(forbidden=[e])),)) for e in E]
    if c is ClaimId.Z3:
        return [Item({"edge": list(e)}, (Option({}, FactorConstraint.make(required=[e])),)) for e in E]
    if c in (ClaimId.Z4, ClaimId.Z5):
        items = []
        for x in V:
            opts, seen = [], set()
            for p in paths3_centered(G, x):
                key = frozenset(p) if z5_strict else (p[0], p[2])
                if key in seen:
                    continue
                seen.add(key)
                opts.append(Option({"path": list(p)}, _removal(p)))
            items.append(Item({"vertex": x}, tuple(opts), 2 if c is ClaimId.Z5 else 1))
        return items
    if c is ClaimId.Z6:
        items = []
        for u, v in E:
            for x, y in ((u, v), (v, u)):
                opts = tuple(Option({"path": [x, y, y2]}, _removal((x, y, y2)))
                             for y2 in G.neighbors(y) if y2 != x)
                items.append(Item({"edge": [x, y]}, opts))
        return items
    if c is ClaimId.Z7:
        return [Item({"edges": [list(e), list(f)]}, (Option({}, FactorConstraint.make(forbidden=[e, f])),))
                for e, f in combinations(E, 2)]
    if c is ClaimId.Z8:
        return [Item({"path": list(p)}, (Option({}, _removal(p)),)) for p in all_3paths(G)]
    if c is ClaimId.Z9:
        items = []
        for cut in enumerate_3_edge_cuts(G):
            K = cut.edges
            for S in combinations(K, 2):
                rest = [e for e in K if e not in S]
                con = FactorConstraint.make(required=S, forbidden=rest)
                items.append(Item({"cut": [list(e) for e in K], "S": [list(e) for e in S]},
                                  (Option({}, con),)))
        return items
    if c is ClaimId.T1:
        return [Item({"vertex": x}, tuple(Option({"y": y}, _removal((x, y))) for y in G.neighbors(x)))
                for x in V]
    if c is ClaimId.T2:
        return [Item({"edge": list(e)}, (Option({}, _removal(e)),)) for e in E]
    if c is ClaimId.T3:
        return [Item({"vertex": x}, tuple(Option({"path": list(w)}, _removal(w)) for w in paths5_centered(G, x)))
                for x in V]
    if c is ClaimId.T4:
        items = []
        for x in V:
            for y in G.neighbors(x):
                opts = tuple(Option({"path": list(w)}, _removal(w))
                             for w in paths5_centered(G, x) if y not in (w[1], w[3]))
                items.append(Item({"vertex": x, "edge": list(edge(x, y))}, opts))
        return items
    if c is ClaimId.F1:
        return [Item({"vertex": x}, (Option({}, _removal([x])),)) for x in V]
    if c is ClaimId.F2:
        items = []
        for x in V:
            for e in E:
                if x in e:
                    con = _removal([x])
                else:
                    con = FactorConstraint.make(removed=[x], forbidden=[e])
                items.append(Item({"vertex": x, "edge": list(e)}, (Option({}, con),)))
        return items
    if c in (ClaimId.F3, ClaimId.F4):
        items = []
        for x in V:
            if c is ClaimId.F3:
                opts = tuple(Option({"path": list(z)}, _removal(z)) for z in paths4_with_inner(G, x))
                items.append(Item({"vertex": x}, opts))
                continue
            # f4: some edge xy together with a 4-path Z avoiding xy
            opts = []
            for y in G.neighbors(x):
                for z in paths4_with_inner(G, x):
                    if y not in (z[0], z[2]):
                        opts.append(Option({"y": y, "path": list(z)}, _removal(z)))
            items.append(Item({"vertex": x}, tuple(opts)))
        return items
    if c is ClaimId.F5:
        items = []
        for x, y in E:
            opts = tuple(Option({"path": [a, x, y, b]}, _removal((a, x, y, b)))
                         for a in G.neighbors(x) if a != y
                         for b in G.neighbors(y) if b not in (x, a))
            items.append(Item({"edge": [x, y]}, opts))
        return items
    if c is ClaimId.F6:
        items = []
        for y in V:
            for x, z in ((a, b) for a in G.neighbors(y) for b in G.neighbors(y) if a != b):
                opts = tuple(Option({"path": [w, x, y, z]}, _removal((w, x, y, z)))
                             for w in G.neighbors(x) if w not in (y, z))
                items.append(Item({"path": [x, y, z]}, opts))
        return items
    raise ClaimError(f"unhandled claim {cid}")


def graph_id(G: Graph) -> str:
    return graph6_encode(G)


def evaluate_claim(G: Graph, cid: ClaimId | str, budget_ms: float | None = None, *,
                   check_input: bool = True, z5_strict: bool = False,
                   keep_witnesses: bool = True, verify_failures: bool = True,
                   gid: str | None = None) -> ClaimReport:
    """Decide claim ``cid`` on G by exhausting its quantified objects.

    ``budget_ms`` bounds every single factor query.  A query that runs out
    leaves its object undecided; the verdict is then ``skipped`` unless some
    other object fails outright.  A failure carries the object and every
    option tried, and (for small graphs) an independent confirmation from
    the brute-force oracle.
    """
    cid = ClaimId(cid)
    gid = gid or graph_id(G)
    start = time.perf_counter()
    if check_input and not is_cubic_3_connected(G):
        raise ClaimError("claims are stated for cubic 3-connected graphs")
    if G.n % 6 != cid.residue:
        return ClaimReport(gid, cid, Verdict.NOT_APPLICABLE,
                           note=f"v(G) = {G.n % 6} mod 6, claim needs {cid.residue}")
    report = ClaimReport(gid, cid, Verdict.HOLDS)
    skipped_item = None
    for item in claim_items(G, cid, z5_strict):
        report.items_checked += 1
        wins = []
        undecided = False
        for opt in item.options:
            report.queries += 1
            try:
                P = find_lambda_factor(G, opt.constraint, budget_ms=budget_ms)
            except BudgetExceeded:
                undecided = True
                continue
            if P is None:
                continue
            bad = packing_problems(G, P, opt.constraint, factor=True)
            if bad:
                raise LemmaViolation(f"solver returned an invalid factor: {bad}")
            wins.append({"choice": opt.detail, "factor": P.to_json()})
            if len(wins) >= item.need:
                break
        if len(wins) >= item.need:
            if keep_witnesses:
                report.witness.append({"item": item.detail, "options": wins})
            continue
        if undecided:
            skipped_item = skipped_item or item.detail
            continue
        report.verdict = Verdict.FAILS
        report.counter_witness = {
            "item": item.detail,
            "options_tried": [o.detail for o in item.options],
            "successes": wins,
            "needed": item.need,
        }
        if verify_failures and G.n <= ORACLE_MAX_VERTICES:
            confirmed = sum(bool(brute_force_oracle(G, o.constraint).factors) for o in item.options)
            report.counter_witness["oracle_successes"] = confirmed
            report.counter_witness["oracle_confirms"] = confirmed < item.need
        break
    if report.verdict is Verdict.HOLDS and skipped_item is not None:
        report.verdict = Verdict.SKIPPED
        report.note = f"budget exhausted on {json.dumps(skipped_item)}"
    report.runtime = time.perf_counter() - start
    return report


def centered_factor_exists(G: Graph, x: int) -> bool:
    """Second reading of (z4) at x: G has a factor in which x is a path centre."""
    return any(find_lambda_factor(G, FactorConstraint.make(required=[edge(x, a), edge(x, b)])) is not None
               for a, b in combinations(G.neighbors(x), 2))


# cut cases across a matching 3-edge cut ---------------------------------------------

class CutCase(str, enum.Enum):
    A1_1 = "A1_1"
    A1_2 = "A1_2"
    A1_3 = "A1_3"
    A2_1 = "A2_1"
    A2_2 = "A2_2"
    A2_3 = "A2_3"


@dataclass(frozen=True)
class CrossingPath:
    path: tuple[int, int, int]
    a_count: int
    same_side_adjacent: bool


def crossing_paths(P: Packing, cut_edges: Iterable[Edge], side_a: frozenset[int]) -> list[CrossingPath]:
    """Paths of P using a cut edge, with their number of vertices on side A.

    ``same_side_adjacent`` says the two vertices on the majority side are
    consecutive on the path (always true when the cut is a matching).
    """
    cut = {edge(*e) for e in cut_edges}
    out = []
    for p in P.paths:
        if not cut & set(p.edges):
            continue
        inside = [v in side_a for v in p.triple]
        k = sum(inside)
        majority = k >= 2
        pos = [i for i, flag in enumerate(inside) if flag == majority]
        adjacent = len(pos) == 2 and abs(pos[0] - pos[1]) == 1
        out.append(CrossingPath(p.triple, k, adjacent))
    return out


def _cut_case_matches(r: int, crossing: list[CrossingPath]) -> list[CutCase]:
    ok = all(c.same_side_adjacent and c.a_count in (1, 2) for c in crossing)
    counts = sorted(c.a_count for c in crossing)
    found = []
    if r == 0 and ok:
        if counts == [2]:
            found.append(CutCase.A1_1)
        if counts == [1, 1]:
            found.append(CutCase.A1_2)
        if counts == [1, 2, 2]:
            found.append(CutCase.A1_3)
    if r == 1:
        if not crossing:
            found.append(CutCase.A2_1)
        if ok and counts == [1, 2]:
            found.append(CutCase.A2_2)
        if ok and counts in ([1, 1, 1], [2, 2, 2]):
            found.append(CutCase.A2_3)
    return found


def classify_cut_case(G: Graph, meta: SpliceMeta, P: Packing) -> CutCase:
    """Which of the six crossing patterns a factor shows across a splice cut.

    The A side must have v(A) = 0 or 1 mod 3; a splice with v(A) = 2 mod 3
    is read from the B side (then v(B) = 0 mod 3).  Raises LemmaViolation
    unless exactly one case matches.
    """
    bad = packing_problems(G, P, factor=True)
    if bad:
        raise ValueError(f"not a Λ-factor: {bad}")
    side, r = meta.side_a, meta.residue_a
    if r == 2:
        side, r = meta.side_b, (len(meta.side_b) + 1) % 3
    if r not in (0, 1):
        raise ValueError("sides have incompatible residues for a factor")
    found = _cut_case_matches(r, crossing_paths(P, meta.cut_edges, side))
    if len(found) != 1:
        raise LemmaViolation(f"expected exactly one cut case, got {[c.value for c in found]}")
    return found[0]


def y_component_profile(G: Graph, meta: YMeta, P: Packing) -> tuple[int, int, int]:
    """For each gadget i, the number of factor paths containing an edge of D^i."""
    out = []
    for D in meta.d_sets:
        ds = set(D)
        out.append(sum(1 for p in P.paths if ds & set(p.edges)))
    return tuple(out)


# projection through vertex replacement ------------------------------------------------

@dataclass
class GadgetReport:
    h1: bool
    h2: bool
    h1_checked: int
    h2_checked: int
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.h1 and self.h2


def check_gadget(A: Graph, a: int, budget_ms: float | None = None) -> GadgetReport:
    """Solver sweep of the two gadget conditions at attachment vertex a.

    h1: A - (N(a) ∪ a ∪ y) has no factor for each y outside N(a) ∪ a that
    is adjacent to N(a).  h2: A - {a, z} has a factor for each z in N(a),
    and A - W has one for each 5-vertex path W centred at a.
    """
    na = set(A.neighbors(a))
    rep = GadgetReport(True, True, 0, 0)
    ys = sorted({y for u in na for y in A.neighbors(u)} - na - {a})
    for y in ys:
        rep.h1_checked += 1
        P = find_lambda_factor(A, _removal(na | {a, y}), budget_ms=budget_ms)
        if P is not None:
            rep.h1 = False
            rep.failures.append({"condition": "h1", "y": y, "factor": P.to_json()})
    removals = [("edge", (a, z)) for z in sorted(na)] + [("path", w) for w in paths5_centered(A, a)]
    for kind, vs in removals:
        rep.h2_checked += 1
        if find_lambda_factor(A, _removal(vs), budget_ms=budget_ms) is None:
            rep.h2 = False
            rep.failures.append({"condition": "h2", kind: list(vs)})
    return rep


@dataclass
class ProjectionResult:
    edges: tuple[Edge, ...]
    factor: Packing | None
    conditional: bool
    problems: list[str]

    @property
    def ok(self) -> bool:
        return self.factor is not None and not self.problems


def edges_to_factor(B: Graph, edges: Iterable[Edge]) -> tuple[Packing | None, list[str]]:
    """Read an edge set as a Λ-factor of B, if it is one."""
    es = sorted({edge(*e) for e in edges})
    adj: dict[int, list[int]] = {}
    for u, v in es:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    problems = []
    missing = [v for v in range(B.n) if v not in adj]
    if missing:
        problems.append(f"vertices untouched by the projection: {missing}")
    paths, seen = [], set()
    for c, nb in sorted(adj.items()):
        if len(nb) > 2:
            problems.append(f"vertex {c} has degree {len(nb)} in the projection")
        if len(nb) == 2:
            a, b = nb
            if len(adj[a]) != 1 or len(adj[b]) != 1:
                problems.append(f"component through {c} is not a 3-vertex path")
                continue
            paths.append((a, c, b))
            seen.update((a, b, c))
    stray = [v for v in adj if v not in seen]
    if stray and not problems:
        problems.append(f"edges not inside 3-vertex paths at {sorted(stray)}")
    if problems:
        return None, problems
    P = Packing.of(paths)
    problems = packing_problems(B, P, factor=True)
    return (None, problems) if problems else (P, [])


def check_projection(G: Graph, meta: ReplacementMeta, B: Graph, P_G: Packing,
                     gadgets_verified: bool = False) -> ProjectionResult:
    """Pull a factor of the composite back to B through the inverse of alpha.

    ``conditional`` stays True unless the caller certifies that every gadget
    passed :func:`check_gadget`.
    """
    bad = packing_problems(G, P_G, factor=True)
    if bad:
        raise ValueError(f"not a Λ-factor of the composite: {bad}")
    inv = meta.alpha_inverse()
    pulled = [inv[e] for e in sorted(P_G.edges) if e in inv]
    P, problems = edges_to_factor(B, pulled)
    return ProjectionResult(tuple(sorted(pulled)), P, not gadgets_verified, problems)


# corpus sweep ----------------------------------------------------------------------

@dataclass
class GraphRow:
    graph_id: str
    n: int
    lam: int
    p_holds: bool
    reports: list[ClaimReport]


@dataclass
class ClaimMatrix:
    rows: list[GraphRow]
    claims: list[ClaimId]

    def summary(self) -> dict:
        counts = {v.value: 0 for v in Verdict}
        for row in self.rows:
            for r in row.reports:
                counts[r.verdict.value] += 1
        return {
            "graphs": len(self.rows),
            "claims": [c.value for c in self.claims],
            "verdicts": counts,
            "p_failures": [row.graph_id for row in self.rows if not row.p_holds],
        }

    def counterexamples(self) -> list[dict]:
        return [r.to_json() for row in self.rows for r in row.reports if r.verdict is Verdict.FAILS]

    @property
    def any_fails(self) -> bool:
        return any(r.verdict is Verdict.FAILS for row in self.rows for r in row.reports) or \
            any(not row.p_holds for row in self.rows)

    @property
    def any_skipped(self) -> bool:
        return any(r.verdict is Verdict.SKIPPED for row in self.rows for r in row.reports)

    def to_json(self, include_witness: bool = False) -> dict:
        # runtimes are left out so identical runs give identical output
        return {
            "summary": self.summary(),
            "rows": [
                {
                    "graph": row.graph_id,
                    "n": row.n,
                    "lambda": row.lam,
                    "p_holds": row.p_holds,
                    "claims": {r.claim.value: r.to_json(include_witness=include_witness) for r in row.reports},
                }
                for row in self.rows
            ],
            "counterexamples": self.counterexamples(),
        }

    def to_table(self) -> str:
        short = {Verdict.HOLDS: "ok", Verdict.FAILS: "FAIL", Verdict.NOT_APPLICABLE: "-", Verdict.SKIPPED: "skip"}
        width = max([len(r.graph_id) for r in self.rows] + [5])
        head = f"{'graph':<{width}}  {'n':>3} {'lam':>4} {'P':>3}  " + " ".join(f"{c.value:>4}" for c in self.claims)
        lines = [head, "-" * len(head)]
        for row in self.rows:
            cells = {r.claim: short[r.verdict] for r in row.reports}
            lines.append(f"{row.graph_id:<{width}}  {row.n:>3} {row.lam:>4} {'yes' if row.p_holds else 'NO':>3}  "
                         + " ".join(f"{cells[c]:>4}" for c in self.claims))
        s = self.summary()["verdicts"]
        lines.append("")
        lines.append("totals: " + ", ".join(f"{k}={v}" for k, v in s.items()))
        return "\n".join(lines)


def _evaluate_row(args) -> GraphRow:
    G, claims, budget_ms, keep = args
    lam, _ = max_lambda_packing(G)
    gid = graph_id(G)
    reports = [evaluate_claim(G, c, budget_ms, check_input=False, keep_witnesses=keep, gid=gid) for c in claims]
    return GraphRow(gid, G.n, lam, lam == G.n // 3, reports)


def corpus_claim_matrix(graphs: Sequence[Graph], claims: Sequence[ClaimId | str] = ALL_CLAIMS,
                        budget_ms: float | None = None, workers: int = 1,
                        keep_witnesses: bool = False) -> ClaimMatrix:
    """Every claim on every graph, plus λ and whether λ = ⌊v/3⌋.

    Inputs must be cubic and 3-connected.  Rows are sorted by (n, graph6)
    so the report does not depend on the input order or on ``workers``.
    """
    claims = [ClaimId(c) for c in claims]
    for G in graphs:
        if not is_cubic_3_connected(G):
            raise ClaimError(f"{graph_id(G)} is not cubic 3-connected")
    jobs = [(G, claims, budget_ms, keep_witnesses) for G in graphs]
    if workers > 1 and len(jobs) > 1:
        from multiprocessing import get_context

        with get_context("spawn").Pool(workers) as pool:
            rows = pool.map(_evaluate_row, jobs)
    else:
        rows = [_evaluate_row(j) for j in jobs]
    rows.sort(key=lambda r: (r.n, r.graph_id))
    return ClaimMatrix(rows, claims)
