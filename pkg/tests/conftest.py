import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from mwistruct.graph import WeightedGraph, build_graph  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def graphs(draw, min_n=0, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [e for e, keep in zip(pairs, chosen) if keep])


@st.composite
def weighted_graphs(draw, min_n=0, max_n=9, low=0, high=100):
    g = draw(graphs(min_n, max_n))
    w = draw(st.lists(st.integers(low, high), min_size=g.n, max_size=g.n))
    return WeightedGraph(g, tuple(w))
