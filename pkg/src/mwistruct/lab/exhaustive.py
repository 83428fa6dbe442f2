"""Exhaustive searches over small graphs built around a fixed core.

A graph with a vertex ``v`` whose anti-neighborhood contains a structure
``H`` contains ``H + v`` as an induced subgraph. The searches below fix that
core and enumerate every way of adding up to ``max_extra`` further vertices.
Extras are interchangeable, so their adjacency codes towards the core are
taken in nondecreasing order; adjacency among extras is enumerated in full.
Forbidden-pattern classes are hereditary, which lets each prefix be pruned
as soon as the newest vertex closes a forbidden pattern.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from ..graph import Graph, build_graph, disjoint_union, is_connected
from ..modular import is_prime
from ..patterns import violations_through
from .generators import antihole


def extensions(
    core: Graph,
    max_extra: int,
    keep: Callable[[Graph, int], bool] = lambda g, x: True,
) -> Iterator[Graph]:
    """Every graph ``core + X`` with ``|X| <= max_extra`` up to permuting ``X``.

    ``keep(g, x)`` prunes a prefix whose newest vertex is ``x``; it must be
    hereditary for the enumeration to stay complete.
    """
    k = core.n

    def rec(adj, min_code):
        n = len(adj)
        yield Graph(n, adj)
        if n - k >= max_extra:
            return
        for code in range(min_code, 1 << k):
            for inner in range(1 << (n - k)):
                nb = code | inner << k
                grown = tuple(a | (1 << n if nb >> i & 1 else 0) for i, a in enumerate(adj)) + (nb,)
                if keep(Graph(n + 1, grown), n):
                    yield from rec(grown, code)

    yield from rec(tuple(core.adj), 0)


def _avoids(spec: str) -> Callable[[Graph, int], bool]:
    return lambda g, x: violations_through(g, spec, x) is None


@dataclass
class SearchResult:
    label: str
    examined: int = 0
    hits: int = 0
    examples: list = field(default_factory=list)
    by_size: dict = field(default_factory=dict)

    def add(self, g: Graph, hit: bool, keep_examples: int = 3):
        self.examined += 1
        self.by_size[g.n] = self.by_size.get(g.n, 0) + 1
        if hit:
            self.hits += 1
            if len(self.examples) < keep_examples:
                self.examples.append({"n": g.n, "edges": [list(e) for e in g.edges()]})

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "examined": self.examined,
            "hits": self.hits,
            "by_size": {str(k): v for k, v in sorted(self.by_size.items())},
            "examples": self.examples,
        }


def dart_free_odd_antihole_search(k: int = 7, max_n: int = 11) -> tuple[SearchResult, SearchResult]:
    """Dart-free graphs on at most ``max_n`` vertices having ``v`` with co-C_k inside ``A(v)``.

    Returns two results counting every such graph and the connected ones. The core
    ``co-C_k + v`` is itself dart-free, so the first count is never zero; the
    connected count is the meaningful one. Completeness for connected graphs
    needs one extra vertex: a neighbor of ``v`` on a shortest path to ``H``.
    """
    core = disjoint_union(antihole(k), build_graph(1, []))
    every = SearchResult(f"dart-free, co-C{k} in A(v), n<={max_n}")
    connected = SearchResult(f"connected dart-free, co-C{k} in A(v), n<={max_n}")
    for g in extensions(core, max_n - core.n, _avoids("dart-free")):
        every.add(g, True)
        connected.add(g, is_connected(g))
    return every, connected


def prime_bull_free_antihole_search(k: int = 6, max_n: int = 10) -> SearchResult:
    """Prime bull-free graphs on at most ``max_n`` vertices with co-C_k in some ``A(v)``.

    Primality is not hereditary, so every bull-free extension is tested.
    """
    core = disjoint_union(antihole(k), build_graph(1, []))
    result = SearchResult(f"prime bull-free, co-C{k} in A(v), n<={max_n}")
    for g in extensions(core, max_n - core.n, _avoids("bull-free")):
        result.add(g, g.n >= 3 and is_prime(g))
    return result
