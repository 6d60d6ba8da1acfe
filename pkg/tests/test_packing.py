import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_factors, max_packing_size
from p3pack.constructions import base_graph, y_construction
from p3pack.corpus import cubic_graphs
from p3pack.graph import from_edge_list
from p3pack.packing import (
    NO_CONSTRAINT,
    BudgetExceeded,
    ConstraintError,
    FactorConstraint,
    Packing,
    Path3,
    brute_force_oracle,
    count_lambda_factors,
    enumerate_lambda_factors,
    find_lambda_factor,
    greedy_packing,
    has_lambda_factor,
    max_lambda_packing,
    packing_problems,
)


def oracle_factor_set(G, c=NO_CONSTRAINT):
    return {Packing.of(f) for f in all_factors(G.n, G.edges, c.removed_vertices,
                                                c.forbidden_edges, c.required_edges)}


def solver_factor_set(G, c=NO_CONSTRAINT):
    run = enumerate_lambda_factors(G, c, limit=100_000)
    assert run.exhausted
    return set(run.factors)


def random_constraint(rng, G):
    removed = set(rng.sample(range(G.n), rng.choice([0, 0, 1, 2, 3])))
    live = [e for e in G.edges if e[0] not in removed and e[1] not in removed]
    forbidden = set(rng.sample(live, min(len(live), rng.choice([0, 1, 2]))))
    rest = [e for e in live if e not in forbidden]
    required = set(rng.sample(rest, min(len(rest), rng.choice([0, 0, 1, 2]))))
    return FactorConstraint.make(removed, forbidden, required)


def test_path3_canonical():
    assert Path3.of(5, 0, 2).triple == (2, 0, 5)
    with pytest.raises(ValueError):
        Path3(3, 1, 2)
    with pytest.raises(ValueError):
        Path3(1, 1, 2)


def test_constraint_validation():
    with pytest.raises(ConstraintError):
        FactorConstraint.make(forbidden=[(0, 1)], required=[(1, 0)])
    with pytest.raises(ConstraintError):
        FactorConstraint.make(removed=[0], required=[(0, 1)])
    with pytest.raises(ConstraintError):
        find_lambda_factor(base_graph("prism"), FactorConstraint.make(required=[(0, 4)]))


def test_prism_factor_examples():
    prism = base_graph("prism")
    P = find_lambda_factor(prism)
    assert P is not None and packing_problems(prism, P, factor=True) == []
    assert Packing.of([(0, 1, 2), (3, 4, 5)]) in solver_factor_set(prism)
    c = FactorConstraint.make(required=[(0, 3)])
    assert Packing.of([(2, 0, 3), (1, 4, 5)]) in solver_factor_set(prism, c)
    assert solver_factor_set(prism, c) == oracle_factor_set(prism, c)


def test_y_base_has_no_factor():
    Y = base_graph("Y_base")
    assert find_lambda_factor(Y) is None
    run = enumerate_lambda_factors(Y)
    assert run.factors == [] and run.exhausted


def test_known_factor_counts():
    # exact-cover oracle counts
    assert count_lambda_factors(base_graph("prism")) == len(oracle_factor_set(base_graph("prism"))) == 15
    assert count_lambda_factors(base_graph("K33")) == 9
    for name in ("K4", "cube", "petersen"):
        assert count_lambda_factors(base_graph(name)) == 0
    prism = base_graph("prism")
    Y3, _ = y_construction(prism, 0, prism, 0, prism, 0)
    assert count_lambda_factors(Y3) == 288


def test_max_packing_examples():
    assert max_lambda_packing(base_graph("K4"))[0] == 1
    assert max_lambda_packing(base_graph("Y_base"))[0] == 1
    lam, P = max_lambda_packing(base_graph("petersen"))
    assert lam == 3 and len(P) == 3 and packing_problems(base_graph("petersen"), P) == []


def test_oracle_on_k4():
    r = brute_force_oracle(base_graph("K4"))
    assert r.lam == 1 and r.factors == [] and r.maximal == 12


def test_limit_semantics():
    prism = base_graph("prism")
    run = enumerate_lambda_factors(prism, limit=1)
    assert len(run.factors) == 1 and not run.exhausted
    run = enumerate_lambda_factors(prism, limit=15)
    assert len(run.factors) == 15
    with pytest.raises(ValueError):
        enumerate_lambda_factors(prism, limit=0)


def test_greedy_is_maximal():
    for G in cubic_graphs(10):
        P = greedy_packing(G)
        assert len(P) >= 1 and packing_problems(G, P) == []
        free = set(range(G.n)) - P.vertices
        assert not any(G.has_edge(a, c) and G.has_edge(c, b)
                       for c in free for a in free for b in free if a < b and c not in (a, b))


def test_budget_exceeded():
    big = from_edge_list(60, [(i, (i + 1) % 60) for i in range(60)] + [(i, i + 30) for i in range(30)])
    with pytest.raises(BudgetExceeded):
        count_lambda_factors(big, budget_ms=0.0)


def test_determinism():
    G = cubic_graphs(12)[40]
    a = enumerate_lambda_factors(G, limit=50).factors
    b = enumerate_lambda_factors(G, limit=50).factors
    assert a == b and find_lambda_factor(G) == find_lambda_factor(G)


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_solver_matches_oracles_on_corpus(n):
    for G in cubic_graphs(n):
        assert solver_factor_set(G) == oracle_factor_set(G)
        lam = max_lambda_packing(G)[0]
        assert lam == max_packing_size(G.n, G.edges) == brute_force_oracle(G).lam


GRAPHS = [G for n in (6, 8, 10, 12) for G in cubic_graphs(n)]


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(GRAPHS), st.integers(0, 2**32))
def test_constrained_queries_match_oracle(G, seed):
    c = random_constraint(random.Random(seed), G)
    got = solver_factor_set(G, c)
    assert got == oracle_factor_set(G, c)
    assert has_lambda_factor(G, c) == bool(got)
    assert count_lambda_factors(G, c) == len(got)
    for P in got:
        assert packing_problems(G, P, c, factor=True) == []


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(GRAPHS), st.integers(0, 2**32))
def test_constraints_are_monotone(G, seed):
    rng = random.Random(seed)
    c = random_constraint(rng, G)
    extra = rng.choice([e for e in G.edges])
    if extra in c.required_edges:
        return
    tighter = FactorConstraint(c.removed_vertices, c.forbidden_edges | {extra}, c.required_edges)
    assert solver_factor_set(G, tighter) <= solver_factor_set(G, c)
