import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import graphs
from oracles import has_hole, has_induced, co, to_nx
from mwistruct.graph import build_graph, complement
from mwistruct.lab.generators import antihole, gen_random, hole
from mwistruct.patterns import (
    PATTERNS,
    find_antihole,
    find_fixed_pattern,
    find_hole,
    in_class,
    is_bipartite,
    is_bipartite_chain,
    is_chordal,
    is_chordal_bipartite,
    is_cobipartite_chain,
    is_perfect_desk,
    is_weakly_chordal,
    violations_through,
)

DART = build_graph(5, [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (3, 4)])
C4 = hole(4)
PETERSEN = build_graph(
    10,
    [(i, (i + 1) % 5) for i in range(5)]
    + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    + [(i, i + 5) for i in range(5)],
)


def test_dart_witness_roles():
    w = find_fixed_pattern(DART, "dart")
    assert w is not None and w.audit(DART)
    assert w.vertices == (0, 1, 2, 3, 4)


def test_no_dart_in_cycle():
    assert find_fixed_pattern(hole(5), "dart") is None


def test_hole_examples():
    w = find_hole(hole(6))
    assert w is not None and len(w.vertices) == 6 and w.audit(hole(6))
    assert find_hole(hole(6), parity="odd") is None
    w = find_hole(PETERSEN)
    assert w is not None and w.audit(PETERSEN)
    assert has_hole(PETERSEN)


def test_antihole_examples():
    g = antihole(7)
    w = find_antihole(g, parity="odd")
    assert w is not None and w.kind == "odd-anti-hole" and len(w.vertices) == 7 and w.audit(g)
    assert find_antihole(hole(5)) is not None


def test_recognizer_examples():
    tree = build_graph(6, [(0, 1), (0, 2), (1, 3), (1, 4), (4, 5)])
    assert is_chordal(tree)
    v = is_chordal(C4)
    assert not v and v.witness.audit(C4)
    assert not is_weakly_chordal(complement(hole(6)))
    assert is_bipartite_chain(C4)
    assert is_bipartite(hole(6)) and not is_bipartite_chain(hole(6))
    # C4 is co-bipartite, but its complement 2K2 is not a chain graph
    v = is_cobipartite_chain(C4)
    assert not v and v.witness.kind == "C4-cycle" and v.witness.audit(C4)
    p4 = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    assert is_bipartite_chain(p4) and is_cobipartite_chain(p4)


def test_class_examples():
    v = in_class(DART, "dart-free")
    assert not v and v.witness.kind == "dart" and v.witness.audit(DART)
    c7 = hole(7)
    assert not in_class(c7, "hole-free")
    assert in_class(c7, "dart-free") and in_class(c7, "bull-free")


@pytest.mark.parametrize("kind", sorted(PATTERNS))
def test_fixed_patterns_match_matcher(kind):
    size, edges = PATTERNS[kind]
    for seed in range(40):
        g = gen_random(8, 0.5, seed)
        w = find_fixed_pattern(g, kind)
        assert (w is not None) == has_induced(g, edges, size)
        if w is not None:
            assert w.audit(g)


@settings(max_examples=80)
@given(graphs(max_n=8))
def test_holes_match_enumeration(g):
    w = find_hole(g)
    assert (w is not None) == has_hole(g)
    if w:
        assert w.audit(g)
    w = find_hole(g, parity="odd")
    assert (w is not None) == has_hole(g, odd=True)


@settings(max_examples=80)
@given(graphs(max_n=8))
def test_antiholes_match_enumeration(g):
    assert (find_antihole(g) is not None) == has_hole(co(g))


@given(graphs(max_n=9))
def test_chordal_and_bipartite_match_networkx(g):
    h = to_nx(g)
    assert bool(is_chordal(g)) == nx.is_chordal(h)
    assert bool(is_bipartite(g)) == nx.is_bipartite(h)
    v = is_bipartite(g)
    if not v:
        assert v.witness.audit(g)


@settings(max_examples=80)
@given(graphs(max_n=8))
def test_perfect_desk_matches_definition(g):
    expect = not has_hole(g, odd=True) and not has_hole(co(g), odd=True)
    assert bool(is_perfect_desk(g)) == expect


@given(graphs(max_n=8))
def test_chordal_bipartite_definition(g):
    expect = nx.is_bipartite(to_nx(g)) and not has_hole(g, min_len=6)
    assert bool(is_chordal_bipartite(g)) == expect


@given(graphs(max_n=8))
def test_chain_definition(g):
    two_k2 = has_induced(g, [(0, 1), (2, 3)], 4)
    expect = nx.is_bipartite(to_nx(g)) and not two_k2
    assert bool(is_bipartite_chain(g)) == expect


@given(graphs(min_n=1, max_n=8))
def test_violations_through_is_local(g):
    # with G - x dart-free, a dart exists iff one passes through x
    x = g.n - 1
    sub = build_graph(g.n - 1, [e for e in g.edges() if x not in e])
    if not in_class(sub, "dart-free"):
        return
    w = violations_through(g, "dart-free", x)
    assert (w is not None) == (not in_class(g, "dart-free"))
    if w:
        assert x in w.vertices and w.audit(g)
