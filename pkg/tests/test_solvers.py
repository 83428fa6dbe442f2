import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs, weighted_graphs
from oracles import independent, mwis_value
from mwistruct.graph import WeightedGraph, build_graph, complement, induced_subgraph
from mwistruct.lab.generators import BASE_CLASSES, gen_base_instance, hole, random_weights
from mwistruct.solvers import (
    SOLVERS,
    BudgetExhausted,
    ClassCheckFailed,
    brute_force,
    mwis_bipartite,
    mwis_bipartite_chain,
    mwis_chordal,
    mwis_clique,
    mwis_cobipartite_chain,
    mwis_oracle,
    mwis_weakly_chordal,
)

P4 = build_graph(4, [(0, 1), (1, 2), (2, 3)])


def K(n):
    return complement(build_graph(n, []))


def W(g, *w):
    return WeightedGraph(g, tuple(w) if w else (1,) * g.n)


@pytest.mark.parametrize(
    "solver, wg, value",
    [
        (mwis_oracle, W(hole(5)), 2),
        (mwis_oracle, W(K(4), 5, 9, 2, 7), 9),
        (mwis_oracle, W(build_graph(4, []), 1, 2, 3, 4), 10),
        (mwis_chordal, W(K(3), 1, 2, 3), 3),
        (mwis_chordal, W(P4, 1, 5, 5, 1), 6),
        (mwis_bipartite, W(build_graph(4, [(0, 2), (0, 3), (1, 2), (1, 3)]), 3, 1, 2, 2), 4),
        (mwis_bipartite, W(hole(6)), 3),
        (mwis_bipartite_chain, W(build_graph(4, [(0, 2), (1, 2), (1, 3)])), 2),
        (mwis_clique, W(K(5), 1, 1, 9, 1, 1), 9),
        (mwis_weakly_chordal, W(hole(4)), 2),
    ],
)
def test_solver_examples(solver, wg, value):
    sol = solver(wg)
    assert sol.value == value and sol.audit(wg)


def test_cochain_value_on_c4():
    # C4 is co-bipartite, so the pair scan is exact even though the chain check rejects it
    with pytest.raises(ClassCheckFailed):
        mwis_cobipartite_chain(W(hole(4)))
    assert mwis_cobipartite_chain(W(hole(4)), check=False).value == 2
    assert mwis_cobipartite_chain(W(P4, 1, 5, 5, 1)).value == 6


@pytest.mark.parametrize(
    "solver, g, kind",
    [
        (mwis_chordal, hole(4), "C4-cycle"),
        (mwis_bipartite, hole(5), "odd-cycle"),
        (mwis_clique, P4, None),
        (mwis_weakly_chordal, hole(5), "hole"),
    ],
)
def test_class_checks_reject_with_evidence(solver, g, kind):
    with pytest.raises(ClassCheckFailed) as err:
        solver(W(g))
    w = err.value.witness
    if kind is not None:
        assert w is not None and w.kind == kind and w.audit(g)


def test_oracle_budget():
    g = complement(build_graph(40, [(i, i + 20) for i in range(20)]))
    with pytest.raises(BudgetExhausted):
        mwis_oracle(W(build_graph(40, [(i, (i + 1) % 40) for i in range(40)])), budget=5)
    assert mwis_oracle(W(g)).value == 2


@settings(max_examples=100)
@given(weighted_graphs(max_n=10, low=-20, high=100))
def test_oracle_matches_brute_force(wg):
    sol = mwis_oracle(wg)
    assert sol.value == brute_force(wg).value
    assert sol.audit(wg) and independent(wg.graph, sol.vertices)
    assert sol.value == mwis_value(wg.graph, wg.weights)


@given(weighted_graphs(min_n=1, max_n=9), st.data())
def test_oracle_monotone_under_deletion(wg, data):
    v = data.draw(st.integers(0, wg.n - 1))
    sub, _ = wg.induced([u for u in range(wg.n) if u != v])
    assert mwis_oracle(wg).value >= mwis_oracle(sub).value


@pytest.mark.parametrize("n", range(1, 9))
def test_clique_value_is_max_weight(n):
    for seed in range(20):
        w = random_weights(n, seed)
        assert mwis_clique(WeightedGraph(K(n), w)).value == max(w)


def test_oracle_is_deterministic():
    g = gen_base_instance("weakly-chordal", 14, 3)
    wg = WeightedGraph(g, (1,) * g.n)
    assert mwis_oracle(wg) == mwis_oracle(wg)


@pytest.mark.parametrize("kind", BASE_CLASSES)
def test_base_solvers_match_networkx(kind):
    solver = SOLVERS[kind]
    for seed in range(60):
        g = gen_base_instance(kind, 12, seed)
        wg = WeightedGraph(g, random_weights(g.n, seed))
        sol = solver(wg)
        assert sol.audit(wg)
        assert sol.value == mwis_value(g, wg.weights)


@given(weighted_graphs(max_n=10))
def test_chordal_equals_weakly_chordal_on_chordal_inputs(wg):
    from mwistruct.patterns import is_chordal

    if is_chordal(wg.graph):
        assert mwis_chordal(wg).value == mwis_weakly_chordal(wg).value
