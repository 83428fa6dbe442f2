import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from oracles import to_nx
from mwistruct.graph import (
    GraphError,
    WeightedGraph,
    anti_neighborhood,
    build_graph,
    complement,
    connected_components,
    contact_set,
    induced_subgraph,
    is_clique,
    is_join,
)
from mwistruct.lab.generators import antihole, hole

# dart a..e = 0..4 with edges ab, ac, ad, bd, cd, de
DART = build_graph(5, [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (3, 4)])
K4 = build_graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])


def test_build_cycle_and_dart():
    assert hole(5).m == 5
    assert DART.m == 6 and DART.degree(3) == 4


def test_duplicate_edges_collapse():
    assert build_graph(3, [(0, 1), (0, 1), (1, 2)]).m == 2


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 3)], [(-1, 1)]])
def test_bad_edges_rejected(edges):
    with pytest.raises(GraphError):
        build_graph(3, edges)


def test_weights_must_fit_int64():
    with pytest.raises(GraphError):
        WeightedGraph(build_graph(1, []), (2**63,))


def test_complement_examples():
    assert complement(hole(5)).m == 5
    assert nx.is_isomorphic(to_nx(complement(hole(5))), to_nx(hole(5)))
    assert complement(K4).m == 0
    prism = complement(hole(6))
    assert prism.m == 9 and all(prism.degree(v) == 3 for v in range(6))
    # two triangles {0,2,4}, {1,3,5} joined by the matching 0-3, 1-4, 2-5
    assert is_clique(prism, {0, 2, 4}) and is_clique(prism, {1, 3, 5})


def test_induced_examples():
    p4, labels = induced_subgraph(hole(5), [0, 1, 2, 3])
    assert p4.m == 3 and labels == [0, 1, 2, 3]
    diamond, _ = induced_subgraph(DART, [0, 1, 2, 3])
    assert diamond.m == 5
    assert induced_subgraph(DART, [])[0].n == 0


def test_anti_neighborhood_examples():
    assert anti_neighborhood(hole(5), 0) == {2, 3}
    assert anti_neighborhood(K4, 2) == frozenset()
    assert anti_neighborhood(DART, 4) == {0, 1, 2}


def test_contact_set_examples():
    p4 = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    assert anti_neighborhood(p4, [0]) == {2, 3}
    assert contact_set(p4, [0]) == {1}
    p5 = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert contact_set(p5, [0]) == {1}


def test_join_and_clique_examples():
    k33 = build_graph(6, [(u, v) for u in range(3) for v in range(3, 6)])
    assert is_join(k33, {0, 1, 2}, {3, 4, 5})
    assert not is_join(hole(5), {0}, {2})
    assert is_clique(antihole(6), {0, 2, 4})


@given(graphs(), st.data())
def test_contact_set_matches_set_algebra(g, data):
    if g.n == 0:
        return
    u = set(data.draw(st.sets(st.integers(0, g.n - 1), min_size=1)))
    nbr = {x for v in u for x in g.neighbors(v)} - u
    anti = set(range(g.n)) - nbr - u
    assert anti_neighborhood(g, u) == anti
    if not anti:
        with pytest.raises(GraphError):
            contact_set(g, u)
        return
    n_anti = {x for v in anti for x in g.neighbors(v)}
    assert contact_set(g, u) == nbr & n_anti


@given(graphs())
def test_components_partition(g):
    comps = connected_components(g)
    assert sorted(v for c in comps for v in c) == list(range(g.n))
    assert len(comps) == nx.number_connected_components(to_nx(g)) if g.n else not comps


@given(graphs())
def test_complement_is_involution(g):
    assert complement(complement(g)) == g
    assert complement(g).m + g.m == g.n * (g.n - 1) // 2
