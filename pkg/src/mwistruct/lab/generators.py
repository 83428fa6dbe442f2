"""Seeded graph generators: plain random graphs, in-class sampling and planted structures.

Every generator takes an explicit seed and draws from its own
``random.Random``, so the same arguments always give the same graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..graph import Graph, GraphError, WeightedGraph, build_graph, complement, is_connected
from ..patterns import in_class, violations_through

GEN_METHODS = ("rejection", "grow")
DEFAULT_MAX_TRIES = 10_000


class GenerationFailed(RuntimeError):
    def __init__(self, message: str, tries: int, accepted: int = 0):
        super().__init__(f"{message} (acceptance {accepted}/{tries})")
        self.tries = tries
        self.accepted = accepted


def _check_p(p: float):
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability {p} outside [0, 1]")


def gen_random(n: int, p: float, seed: int) -> Graph:
    """Independent-edge random graph G(n, p)."""
    _check_p(p)
    rng = random.Random(seed)
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_weights(n: int, seed: int, low: int = 0, high: int = 100) -> tuple[int, ...]:
    rng = random.Random(seed)
    return tuple(rng.randint(low, high) for _ in range(n))


def _extend(g: Graph, nbrs) -> Graph:
    n = g.n
    return build_graph(n + 1, g.edges() + [(u, n) for u in nbrs])


def grow_vertex(
    g: Graph, spec: str, rng: random.Random, p: float | None, tries: int, candidates=None
) -> Graph | None:
    """Append one vertex with a random nonempty neighborhood keeping ``g`` in ``spec``.

    ``candidates`` restricts the possible neighbors (default: all vertices).
    With ``p=None`` each attempt draws its own edge density, which mixes
    sparse and nearly complete neighborhoods.
    Returns ``None`` when every attempt created a forbidden structure.
    """
    pool = list(range(g.n)) if candidates is None else list(candidates)
    for _ in range(tries):
        q = rng.random() if p is None else p
        nbrs = [u for u in pool if rng.random() < q]
        if pool and not nbrs:
            nbrs = [rng.choice(pool)]
        h = _extend(g, nbrs)
        if violations_through(h, spec, g.n) is None:
            return h
    return None


def _grow(spec: str, n: int, p: float, rng: random.Random, tries: int = 200) -> Graph | None:
    g = build_graph(0, [])
    for _ in range(n):
        g = grow_vertex(g, spec, rng, p, tries)
        if g is None:
            return None
    return g


def gen_in_class(
    spec: str,
    n: int,
    p: float,
    seed: int,
    max_tries: int = DEFAULT_MAX_TRIES,
    method: str = "grow",
    connected: bool = True,
) -> Graph:
    """A graph of class ``spec`` on ``n`` vertices.

    ``rejection`` samples G(n, p) until the class test passes. ``grow`` adds
    vertices one at a time, redrawing a vertex's neighborhood whenever it
    closes a forbidden structure; it reaches sizes rejection cannot, and
    grown graphs are always connected.
    """
    _check_p(p)
    if method not in GEN_METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {GEN_METHODS}")
    rng = random.Random(seed)
    for attempt in range(1, max_tries + 1):
        if method == "grow":
            g = _grow(spec, n, p, rng)
            if g is not None:
                return g
        else:
            g = gen_random(n, p, rng.getrandbits(64))
            if (not connected or is_connected(g)) and in_class(g, spec):
                return g
    raise GenerationFailed(f"no {spec} graph on {n} vertices", max_tries)


def gen_weighted(spec: str, n: int, p: float, seed: int, **kw) -> WeightedGraph:
    g = gen_in_class(spec, n, p, seed, **kw)
    return WeightedGraph(g, random_weights(n, seed ^ 0x5EED))


# -- composite instances ---------------------------------------------------------


def glue_blocks(
    spec: str, n: int, seed: int, block: tuple[int, int] = (6, 14), p: float = 0.4, max_tries: int = 2000
) -> Graph:
    """Large in-class graph built from small grown blocks.

    Each block is attached by making its first vertex or first edge coincide
    with a vertex or an edge of the current graph; the attached vertices are
    added one by one with the class test through each new vertex, so the
    result stays in ``spec``. Atoms stay no larger than a block.
    """
    rng = random.Random(seed)
    g = _grow(spec, min(n, rng.randint(*block)), p, rng)
    tries = 0
    while g is None or g.n < n:
        tries += 1
        if tries > max_tries:
            raise GenerationFailed(f"could not glue a {spec} graph of size {n}", tries)
        if g is None:
            g = _grow(spec, min(n, rng.randint(*block)), p, rng)
            continue
        b = _grow(spec, min(rng.randint(*block), n - g.n + 2), p, rng)
        if b is None or b.n < 2:
            continue
        edges = g.edges()
        if rng.random() < 0.5 or not edges:
            glue = [rng.randrange(g.n)]
        else:
            glue = list(rng.choice(edges))
        if len(glue) == 2 and not b.has_edge(0, 1):
            glue = glue[:1]
        ids = {i: glue[i] for i in range(len(glue))}
        h = g
        ok = True
        for i in range(len(glue), b.n):
            if h.n >= n:
                break
            ids[i] = h.n
            nb = [ids[j] for j in b.neighbors(i) if j < i]
            h = _extend(h, nb)
            if violations_through(h, spec, h.n - 1) is not None:
                ok = False
                break
        if ok:
            g = h
    return g


def substitute(outer: Graph, parts: list[Graph]) -> Graph:
    """Replace vertex ``i`` of ``outer`` by the module ``parts[i]``."""
    if len(parts) != outer.n:
        raise GraphError("need one part per outer vertex")
    offset = []
    total = 0
    for part in parts:
        offset.append(total)
        total += part.n
    edges = []
    for i, part in enumerate(parts):
        edges += [(offset[i] + a, offset[i] + b) for a, b in part.edges()]
    for i, j in outer.edges():
        edges += [(offset[i] + a, offset[j] + b) for a in range(parts[i].n) for b in range(parts[j].n)]
    return build_graph(total, edges)


def modular_blowup(spec: str, n: int, seed: int, outer: tuple[int, int] = (5, 12), p: float = 0.4) -> Graph:
    """Large graph whose prime quotients are small grown graphs.

    Substitution keeps classes defined by forbidden prime graphs (holes, the
    bull, P5), so with those classes no final check is needed; for other
    classes the caller should verify membership.
    """
    rng = random.Random(seed)

    def build(size: int) -> Graph:
        if size <= outer[1]:
            return _grow(spec, size, p, rng) or build_graph(size, [])
        k = rng.randint(*outer)
        skeleton = _grow(spec, k, p, rng)
        while skeleton is None:
            skeleton = _grow(spec, k, p, rng)
        sizes = [1] * k
        for _ in range(size - k):
            sizes[rng.randrange(k)] += 1
        return substitute(skeleton, [build(s) for s in sizes])

    return build(n)


# -- planted structures --------------------------------------------------------------


def antihole(k: int) -> Graph:
    """co-C_k on 0..k-1 with co-edges i, i+1."""
    return complement(build_graph(k, [(i, (i + 1) % k) for i in range(k)]))


def hole(k: int) -> Graph:
    return build_graph(k, [(i, (i + 1) % k) for i in range(k)])


HOUSE = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 1), (4, 2)])

STRUCTURES = {
    "co-C6": lambda: antihole(6),
    "co-C7": lambda: antihole(7),
    "co-C8": lambda: antihole(8),
    "C5": lambda: hole(5),
    "house": lambda: HOUSE,
}


@dataclass
class PlantRecipe:
    """Declarative recipe for a planted instance.

    The structure occupies vertices ``0..k-1``. First ``anchors`` vertices
    are added that miss the structure, then ``contacts`` vertices that see
    both the structure and some anchor (so they lie in the contact set from
    the start), then ``extras`` vertices anywhere. The density of a contact's
    edges into the structure is redrawn on every attempt. Every added vertex
    is redrawn until the graph stays in ``spec``; disconnected results are
    discarded.
    """

    structure: str
    spec: str
    contacts: int = 1
    anchors: int = 1
    extras: int = 2
    p: float = 0.5
    tries: int = 200
    notes: dict = field(default_factory=dict)


def plant(recipe: PlantRecipe, seed: int, max_tries: int = 500) -> Graph:
    if recipe.structure not in STRUCTURES:
        raise ValueError(f"unknown structure {recipe.structure!r}")
    base = STRUCTURES[recipe.structure]()
    k = base.n
    rng = random.Random(seed)
    for _ in range(max_tries):
        g = _plant_once(base, k, recipe, rng)
        if g is not None:
            return g
    raise GenerationFailed(f"could not plant {recipe.structure} in a {recipe.spec} graph", max_tries)


def _plant_once(base: Graph, k: int, r: PlantRecipe, rng: random.Random) -> Graph | None:
    if not in_class(base, r.spec):
        return None
    g = base
    for _ in range(r.anchors):
        # anchors miss the structure; they may see earlier anchors
        g = _add_drawn(g, r, rng, lambda: [u for u in range(k, g.n) if rng.random() < r.p])
        if g is None:
            return None
    anchors = list(range(k, g.n))
    for _ in range(r.contacts):
        def draw():
            q = rng.random()
            on_h = [u for u in range(k) if rng.random() < q] or [rng.randrange(k)]
            on_a = [u for u in anchors if rng.random() < r.p] or [rng.choice(anchors)]
            rest = [u for u in range(k + len(anchors), g.n) if rng.random() < r.p]
            return on_h + on_a + rest

        g = _add_drawn(g, r, rng, draw) if anchors else grow_vertex(g, r.spec, rng, None, r.tries)
        if g is None:
            return None
    for _ in range(r.extras):
        g = grow_vertex(g, r.spec, rng, r.p, r.tries)
        if g is None:
            return None
    return g if is_connected(g) else None


def _add_drawn(g: Graph, r: PlantRecipe, rng: random.Random, draw) -> Graph | None:
    for _ in range(r.tries):
        trial = _extend(g, draw())
        if violations_through(trial, r.spec, g.n) is None:
            return trial
    return None


# -- base-solver classes ---------------------------------------------------------

BASE_CLASSES = ("clique", "chordal", "bipartite", "bipartite-chain", "cobipartite-chain", "weakly-chordal")


def _chain(n: int, rng: random.Random) -> Graph:
    nx_ = rng.randint(0, n)
    ys = list(range(nx_, n))
    # x_i sees a prefix of ys whose length grows with i
    cuts = sorted(rng.randint(0, len(ys)) for _ in range(nx_))
    return build_graph(n, [(x, ys[j]) for x in range(nx_) for j in range(cuts[x])])


def gen_base_instance(kind: str, n: int, seed: int) -> Graph:
    """A graph of base class ``kind`` built constructively where possible.

    Chordal and weakly chordal graphs come from the grow generator with a
    per-instance density; the other classes have direct constructions.
    """
    rng = random.Random(seed)
    if kind == "clique":
        return complement(build_graph(n, []))
    if kind == "bipartite":
        side = [rng.random() < 0.5 for _ in range(n)]
        p = rng.uniform(0.1, 0.9)
        return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if side[u] != side[v] and rng.random() < p])
    if kind == "bipartite-chain":
        return _chain(n, rng)
    if kind == "cobipartite-chain":
        return complement(_chain(n, rng))
    if kind == "chordal":
        return gen_in_class("hole-free,C4-free", n, rng.uniform(0.1, 0.9), rng.getrandbits(32), connected=False)
    if kind == "weakly-chordal":
        return gen_in_class("hole-free,anti-hole-free", n, rng.uniform(0.1, 0.9), rng.getrandbits(32), connected=False)
    raise ValueError(f"unknown base class {kind!r}; expected one of {BASE_CLASSES}")
