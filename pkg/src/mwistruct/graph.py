"""Immutable simple graphs with bitset adjacency.

Vertex sets are handled in two forms: ``frozenset`` of ids at the public
surface and Python ``int`` bitmasks internally (bit ``i`` set means vertex
``i`` is a member). Every function here is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


class GraphError(ValueError):
    """Malformed graph input (bad endpoint, self-loop, overlapping sets)."""


# -- bitmask helpers ---------------------------------------------------------


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask: int) -> list[int]:
    return list(iter_bits(mask))


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


# -- graph -------------------------------------------------------------------


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the neighborhood of ``v`` as a bitmask. Instances are
    immutable and hashable; build them with :func:`build_graph` or
    :meth:`from_adjacency`.
    """

    __slots__ = ("_n", "_adj", "_m")

    def __init__(self, n: int, adj: Sequence[int]):
        if len(adj) != n:
            raise GraphError("adjacency length does not match n")
        self._n = n
        self._adj = tuple(adj)
        self._m = sum(popcount(a) for a in self._adj) // 2

    @classmethod
    def from_adjacency(cls, adj: Sequence[int]) -> "Graph":
        return cls(len(adj), adj)

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    @property
    def adj(self) -> tuple[int, ...]:
        return self._adj

    @property
    def full(self) -> int:
        return (1 << self._n) - 1

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(iter_bits(self._adj[v]))

    def closed_neighbors(self, v: int) -> frozenset[int]:
        return self.neighbors(v) | {v}

    def degree(self, v: int) -> int:
        return popcount(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted pairs ``(u, v)`` with ``u < v``, in lexicographic order."""
        out = []
        for u in range(self._n):
            for v in iter_bits(self._adj[u] >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self._adj)

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"


def build_graph(n: int, edge_list: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list; duplicate edges collapse."""
    if n < 0:
        raise GraphError("negative vertex count")
    adj = [0] * n
    for u, v in edge_list:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, adj)


def complement(g: Graph) -> Graph:
    full = g.full
    return Graph(g.n, [(full ^ a) & ~(1 << v) for v, a in enumerate(g.adj)])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """``g`` on ``0..g.n-1`` and ``h`` shifted to follow it."""
    return Graph(g.n + h.n, tuple(g.adj) + tuple(a << g.n for a in h.adj))


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced by ``s``; returns it with ``labels[new_id] = old_id``.

    New ids follow ascending old ids.
    """
    labels = sorted(set(s))
    for v in labels:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} not in graph")
    return induced_by_mask(g, mask_of(labels))


def induced_by_mask(g: Graph, mask: int) -> tuple[Graph, list[int]]:
    labels = bits(mask)
    pos = {old: new for new, old in enumerate(labels)}
    adj = []
    for old in labels:
        a = 0
        for u in iter_bits(g.adj[old] & mask):
            a |= 1 << pos[u]
        adj.append(a)
    return Graph(len(labels), adj), labels


# -- neighborhood algebra ----------------------------------------------------


def neighborhood_mask(g: Graph, u: int) -> int:
    """Open neighborhood N(U) of a vertex set given as a mask."""
    nb = 0
    for x in iter_bits(u):
        nb |= g.adj[x]
    return nb & ~u


def anti_neighborhood_mask(g: Graph, u: int) -> int:
    """A(U) = V minus N[U]."""
    return g.full & ~(neighborhood_mask(g, u) | u)


def contact_mask(g: Graph, u: int) -> int:
    """U+ = N(U) intersected with N(A(U)); empty when A(U) is empty."""
    return neighborhood_mask(g, u) & neighborhood_mask(g, anti_neighborhood_mask(g, u))


def anti_neighborhood(g: Graph, u: Iterable[int] | int) -> frozenset[int]:
    """Anti-neighborhood of a vertex (int) or of a vertex set."""
    m = 1 << u if isinstance(u, int) else mask_of(u)
    return frozenset(iter_bits(anti_neighborhood_mask(g, m)))


def contact_set(g: Graph, u: Iterable[int]) -> frozenset[int]:
    m = mask_of(u)
    if not m:
        raise GraphError("contact set needs a nonempty vertex set")
    if not anti_neighborhood_mask(g, m):
        raise GraphError("contact set undefined: anti-neighborhood is empty")
    return frozenset(iter_bits(contact_mask(g, m)))


def is_join_mask(g: Graph, u: int, w: int) -> bool:
    for x in iter_bits(u):
        if g.adj[x] & w != w:
            return False
    return True


def is_cojoin_mask(g: Graph, u: int, w: int) -> bool:
    return not (neighborhood_mask(g, u) & w)


def is_join(g: Graph, u: Iterable[int], w: Iterable[int]) -> bool:
    um, wm = mask_of(u), mask_of(w)
    if um & wm:
        raise GraphError("join is defined for disjoint sets")
    return is_join_mask(g, um, wm)


def is_clique_mask(g: Graph, s: int) -> bool:
    for x in iter_bits(s):
        if (g.adj[x] | 1 << x) & s != s:
            return False
    return True


def is_clique(g: Graph, s: Iterable[int]) -> bool:
    return is_clique_mask(g, mask_of(s))


def is_independent_mask(g: Graph, s: int) -> bool:
    return all(not (g.adj[x] & s) for x in iter_bits(s))


def component_masks(g: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``G[within]`` ordered by least vertex id."""
    rest = g.full if within is None else within
    comps = []
    while rest:
        frontier = rest & -rest
        comp = frontier
        while frontier:
            nb = 0
            for x in iter_bits(frontier):
                nb |= g.adj[x]
            frontier = nb & rest & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def connected_components(g: Graph) -> list[frozenset[int]]:
    return [frozenset(iter_bits(c)) for c in component_masks(g)]


def is_connected(g: Graph) -> bool:
    return g.n == 0 or len(component_masks(g)) == 1


def cocomponent_masks(g: Graph, within: int | None = None) -> list[int]:
    """Components of the complement of ``G[within]``, without building it."""
    rest = g.full if within is None else within
    scope = rest
    comps = []
    while rest:
        frontier = rest & -rest
        comp = frontier
        while frontier:
            nb = 0
            for x in iter_bits(frontier):
                nb |= scope & ~g.adj[x] & ~(1 << x)
            frontier = nb & rest & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def shortest_path_mask(g: Graph, src: int, dst: int, allowed: int) -> list[int] | None:
    """BFS path from ``src`` to ``dst`` using only ``allowed`` vertices (endpoints included)."""
    allowed |= 1 << src | 1 << dst
    parent = {src: -1}
    frontier = [src]
    seen = 1 << src
    while frontier:
        nxt = []
        for x in frontier:
            for y in iter_bits(g.adj[x] & allowed & ~seen):
                seen |= 1 << y
                parent[y] = x
                if y == dst:
                    path = [y]
                    while parent[path[-1]] != -1:
                        path.append(parent[path[-1]])
                    return path[::-1]
                nxt.append(y)
        frontier = nxt
    return None


# -- weighted graphs ---------------------------------------------------------


@dataclass(frozen=True)
class WeightedGraph:
    graph: Graph
    weights: tuple[int, ...]

    def __post_init__(self):
        if len(self.weights) != self.graph.n:
            raise GraphError("weights length must equal n")
        for w in self.weights:
            if not isinstance(w, int) or not INT64_MIN <= w <= INT64_MAX:
                raise GraphError(f"weight {w!r} is not a 64-bit signed integer")

    @classmethod
    def unit(cls, g: Graph) -> "WeightedGraph":
        return cls(g, (1,) * g.n)

    @property
    def n(self) -> int:
        return self.graph.n

    def weight_of(self, s: Iterable[int]) -> int:
        return sum(self.weights[v] for v in s)

    def induced(self, s: Iterable[int]) -> tuple["WeightedGraph", list[int]]:
        h, labels = induced_subgraph(self.graph, s)
        return WeightedGraph(h, tuple(self.weights[v] for v in labels)), labels

    def without_negative(self) -> tuple["WeightedGraph", list[int]]:
        """Drop negative-weight vertices; they never belong to an optimum."""
        return self.induced(v for v, w in enumerate(self.weights) if w >= 0)
