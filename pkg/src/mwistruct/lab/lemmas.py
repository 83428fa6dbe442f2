"""Executable checks of the structural statements the pipelines rely on.

Each check takes one graph (plus the structure it is about) and returns a
:class:`LemmaReport`. Preconditions that fail are recorded as skips with the
violating witness, never as passes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from ..cliquesep import has_clique_cutset_exhaustive
from ..graph import (
    Graph,
    anti_neighborhood_mask,
    bits,
    component_masks,
    contact_mask,
    induced_by_mask,
    is_clique_mask,
    is_cojoin_mask,
    is_connected,
    is_join_mask,
    iter_bits,
    lowest,
    mask_of,
    popcount,
)
from ..modular import is_module
from ..patterns import (
    PatternWitness,
    Verdict,
    find_antihole,
    in_class,
    is_bipartite_chain,
    is_cobipartite_chain,
)


@dataclass
class LemmaReport:
    lemma: str
    corpus: dict = field(default_factory=dict)
    checked: int = 0
    skipped: int = 0
    violations: list = field(default_factory=list)
    skips: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def violate(self, **witness):
        self.violations.append(witness)

    def skip(self, reason: str, witness: PatternWitness | None = None):
        self.skipped += 1
        if len(self.skips) < 5:
            entry = {"reason": reason}
            if witness is not None:
                entry["witness"] = {"kind": witness.kind, "vertices": list(witness.vertices)}
            self.skips.append(entry)

    def merge(self, other: "LemmaReport", keep: int = 10) -> "LemmaReport":
        self.checked += other.checked
        self.skipped += other.skipped
        room = keep - len(self.violations)
        self.violations += other.violations[: max(room, 0)]
        if len(other.violations) > room:
            self.notes["dropped_violations"] = self.notes.get("dropped_violations", 0) + len(other.violations) - room
        self.skips = (self.skips + other.skips)[:5]
        for k, v in other.notes.items():
            if isinstance(v, int) and not isinstance(v, bool):
                self.notes[k] = self.notes.get(k, 0) + v
        return self

    def to_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "corpus": self.corpus,
            "checked": self.checked,
            "skipped": self.skipped,
            "violations": self.violations,
            "skips": self.skips,
            "notes": dict(sorted(self.notes.items())),
            "verdict": self.verdict,
        }


def _precondition(report: LemmaReport, g: Graph, spec: str) -> bool:
    v = in_class(g, spec)
    if not v:
        report.skip(f"input is not {spec}", v.witness)
        return False
    return True


# -- dart-free contacts ----------------------------------------------------------


def check_prop1(g: Graph, u) -> LemmaReport:
    """No contact vertex of ``U`` sees all three vertices of an induced P3 inside ``U``."""
    report = LemmaReport("prop1")
    um = mask_of(u)
    if not _precondition(report, g, "dart-free"):
        return report
    anti = anti_neighborhood_mask(g, um)
    if not um or not anti:
        report.skip("empty U or empty A(U)")
        return report
    report.checked += 1
    p3s = [
        (a, b, c)
        for b in iter_bits(um)
        for a, c in combinations(bits(g.adj[b] & um), 2)
        if not g.has_edge(a, c)
    ]
    for x in iter_bits(contact_mask(g, um)):
        for a, b, c in p3s:
            if g.adj[x] >> a & 1 and g.adj[x] >> b & 1 and g.adj[x] >> c & 1:
                y = lowest(g.adj[x] & anti)
                # x, a, b, c, y realise the dart roles (a, b, c, d, e) = (b, a, c, x, y)
                report.violate(contact=x, p3=[a, b, c], dart=[b, a, c, x, y])
    return report


def check_antihole_alternation(g: Graph, h) -> LemmaReport:
    """For co-C_k (k >= 7) with contacts in a dart-free graph: k is even and contacts alternate.

    ``h`` lists the anti-hole so that consecutive vertices are the co-edges.
    """
    report = LemmaReport("antihole-alternation")
    h = list(h)
    k = len(h)
    if k < 7 or not PatternWitness("anti-hole", tuple(h)).audit(g):
        report.skip("h is not an anti-hole on at least 7 vertices")
        return report
    if not _precondition(report, g, "dart-free"):
        return report
    hm = mask_of(h)
    contacts = contact_mask(g, hm) if anti_neighborhood_mask(g, hm) else 0
    report.checked += 1
    report.notes["contacts"] = popcount(contacts)
    if not contacts:
        report.notes["vacuous"] = 1
        return report
    if k % 2:
        report.violate(reason="odd anti-hole with contacts", k=k, contact=lowest(contacts))
    odd = mask_of(h[0::2])
    even = mask_of(h[1::2])
    for x in iter_bits(contacts):
        seen = g.adj[x] & hm
        if seen not in (odd, even):
            report.violate(reason="contact does not alternate", contact=x, sees=bits(seen))
    return report


# -- co-C6 contacts in (hole, dart)-free graphs ------------------------------------

MATCHING = ((0, 3), (1, 4), (2, 5))
CLAIMS = ("C1", "C2", "C3", "C5", "C6", "C7", "C8", "C9", "C10", "case-separator", "not-atom")


@dataclass
class ContactClassification:
    """Neighbors of a labeled co-C6 ``A`` grouped by how many vertices of ``A`` they see.

    ``labels`` is ``(v1, ..., v6)`` with left ``v1 v2 v3``, right ``v4 v5 v6``
    and matching edges ``v1v4, v2v5, v3v6``. ``q`` is the component of
    ``G[A(A)]`` holding ``pivot``; ``plus[i]`` are the members of ``A_i`` that see ``q``.
    """

    labels: tuple[int, ...]
    pivot: int
    by_count: dict[int, int]
    plus: dict[int, int]
    q: int
    claims: dict[str, bool]
    case: int = 0
    separator: int = 0
    named_separates: bool = False
    witnesses: dict = field(default_factory=dict)

    def cell(self, g: Graph, i: int, seen: tuple[int, ...]) -> int:
        """Members of ``A_i^+`` seeing exactly ``labels[j]`` for ``j`` in ``seen``."""
        want = mask_of(self.labels[j] for j in seen)
        am = mask_of(self.labels)
        return mask_of(x for x in iter_bits(self.plus[i]) if g.adj[x] & am == want)

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "pivot": self.pivot,
            "A": {str(i): bits(m) for i, m in sorted(self.by_count.items())},
            "A_plus": {str(i): bits(m) for i, m in sorted(self.plus.items())},
            "Q": bits(self.q),
            "claims": self.claims,
            "case": self.case,
            "separator": bits(self.separator),
            "named_separates": self.named_separates,
            "witnesses": self.witnesses,
        }


def is_labeled_cocycle6(g: Graph, labels) -> bool:
    if len(set(labels)) != 6:
        return False
    left, right = mask_of(labels[:3]), mask_of(labels[3:])
    if not (is_clique_mask(g, left) and is_clique_mask(g, right)):
        return False
    cross = {(i, j) for i in range(3) for j in range(3, 6) if g.has_edge(labels[i], labels[j])}
    return cross == set(MATCHING)


def classify_contacts(g: Graph, labels, pivot: int) -> ContactClassification:
    """Classify the neighbors of a co-C6 and audit the claims about them.

    Claim ids: C1 no contact sees 4 or more vertices of A; C2 every 2-vertex
    sees a matching edge; C3 every 3-contact sees all of left or all of right;
    C5 nonadjacent contacts have comparable traces on A and a common neighbor
    in Q; C6 2-contacts and 3-contacts do not coexist; C7 at most one matching
    edge carries 2-contacts; C8 the A-neighbors of 1-contacts form a clique;
    C9 1-contacts miss all 2- and 3-contacts; C10 the 3-contacts form a
    clique. ``case-separator`` asks for a clique that cuts the pivot off from
    part of A; the set named by the case split is tried first and whether it
    worked is kept in ``named_separates``. ``not-atom`` asks for any clique
    cutset at all.
    """
    labels = tuple(labels)
    if not is_labeled_cocycle6(g, labels):
        raise ValueError(f"{labels} is not a labeled co-C6 (left, right, matching)")
    am = mask_of(labels)
    outside = anti_neighborhood_mask(g, am)
    if not outside >> pivot & 1:
        raise ValueError(f"pivot {pivot} is not in the anti-neighborhood of A")
    q = next(c for c in component_masks(g, outside) if c >> pivot & 1)
    nbrs = g.full & ~am & ~outside
    by_count = {i: 0 for i in range(1, 7)}
    plus = {i: 0 for i in range(1, 7)}
    for x in iter_bits(nbrs):
        i = popcount(g.adj[x] & am)
        by_count[i] |= 1 << x
        if g.adj[x] & q:
            plus[i] |= 1 << x
    cc = ContactClassification(labels, pivot, by_count, plus, q, {})
    claims, wit = cc.claims, cc.witnesses
    trace = {x: g.adj[x] & am for x in iter_bits(nbrs)}
    all_plus = plus[1] | plus[2] | plus[3] | plus[4] | plus[5] | plus[6]

    claims["C1"] = not (plus[4] | plus[5] | plus[6])
    if not claims["C1"]:
        wit["C1"] = bits(plus[4] | plus[5] | plus[6])

    matching = [mask_of((labels[a], labels[b])) for a, b in MATCHING]
    bad = [x for x in iter_bits(by_count[2]) if trace[x] not in matching]
    claims["C2"] = not bad
    if bad:
        wit["C2"] = bad

    left, right = mask_of(labels[:3]), mask_of(labels[3:])
    bad = [x for x in iter_bits(plus[3]) if trace[x] not in (left, right)]
    claims["C3"] = not bad
    if bad:
        wit["C3"] = bad

    bad = []
    for x, y in combinations(bits(all_plus), 2):
        if g.has_edge(x, y):
            continue
        tx, ty = trace[x], trace[y]
        if (tx & ty) not in (tx, ty) or not (g.adj[x] & g.adj[y] & q):
            bad.append([x, y])
    claims["C5"] = not bad
    if bad:
        wit["C5"] = bad[:5]

    claims["C6"] = not (plus[2] and plus[3])
    cells = [cc.cell(g, 2, pair) for pair in MATCHING]
    claims["C7"] = sum(1 for c in cells if c) <= 1

    n1 = 0
    for x in iter_bits(plus[1]):
        n1 |= trace[x]
    claims["C8"] = is_clique_mask(g, n1)
    claims["C9"] = is_cojoin_mask(g, plus[1], plus[2] | plus[3])
    claims["C10"] = is_clique_mask(g, plus[3])

    if plus[3]:
        cc.case, sep = 1, n1 | plus[3]
    elif plus[2]:
        cc.case = 2
        sep = next((matching[i] for i, c in enumerate(cells) if c), 0)
    else:
        cc.case, sep = 3, n1
    cc.separator = sep
    cc.named_separates = bool(sep) and is_clique_mask(g, sep) and _separates(g, sep, pivot, am)
    found = cc.separator if cc.named_separates else _clique_separator_from(g, pivot, am)
    claims["case-separator"] = found is not None
    if found is not None:
        wit["separator"] = bits(found)
    claims["not-atom"] = has_clique_cutset_exhaustive(g) is not None
    return cc


def _clique_separator_from(g: Graph, v: int, target: int) -> int | None:
    """Least clique (enumeration order) cutting ``v`` off from part of ``target``."""
    verts = bits(g.full & ~(1 << v))

    def cliques(start: int, cur: int, cand: int):
        if cur and _separates(g, cur, v, target):
            return cur
        for i in range(start, len(verts)):
            x = verts[i]
            if cand >> x & 1:
                hit = cliques(i + 1, cur | 1 << x, cand & g.adj[x])
                if hit is not None:
                    return hit
        return None

    return cliques(0, 0, g.full)


def _separates(g: Graph, sep: int, v: int, target: int) -> bool:
    """``sep`` is disjoint from ``v`` and cuts ``v`` off from part of ``target``."""
    if sep >> v & 1:
        return False
    rest = g.full & ~sep
    comp = next(c for c in component_masks(g, rest) if c >> v & 1)
    return bool(target & rest & ~comp)


def check_cocycle6_contacts(g: Graph, labels, pivot: int) -> LemmaReport:
    report = LemmaReport("co-c6-contacts")
    if not _precondition(report, g, "hole-dart-free"):
        return report
    if not is_connected(g):
        report.skip("graph is disconnected")
        return report
    cc = classify_contacts(g, labels, pivot)
    report.checked += 1
    report.notes[f"case{cc.case}"] = 1
    report.notes["named_separator_works"] = int(cc.named_separates)
    for claim in CLAIMS:
        if not cc.claims[claim]:
            report.violate(claim=claim, classification=cc.to_dict())
    return report


# -- growth sequences in bull-free graphs ---------------------------------------------


@dataclass
class GrowthSequence:
    """``stages[i]`` is the vertex mask of ``H_i``; ``added[i]`` the vertex that made it."""

    stages: list[int]
    added: list[int]
    distinguished: list[tuple[int, int]]
    terminal: bool = True

    @property
    def final(self) -> int:
        return self.stages[-1]

    def to_dict(self) -> dict:
        return {
            "stages": [bits(s) for s in self.stages],
            "added": self.added,
            "distinguished": [list(e) for e in self.distinguished],
            "terminal": self.terminal,
        }


def distinguisher(g: Graph, h: int) -> tuple[int, tuple[int, int]] | None:
    """Least vertex outside ``h`` distinguishing the least edge of ``G[h]`` that has one."""
    outside = g.full & ~h
    for x in iter_bits(h):
        for y in iter_bits(g.adj[x] & h):
            if y < x:
                continue
            cand = outside & (g.adj[x] ^ g.adj[y])
            if cand:
                return lowest(cand), (x, y)
    return None


def growth_sequence(g: Graph, h0, chooser: Callable | None = None) -> GrowthSequence:
    """Grow ``H_0`` by edge-distinguishing vertices until none is left.

    ``chooser(g, h)`` may override the deterministic least-edge/least-vertex
    choice; it must return ``(z, (x, y))`` or ``None``.
    """
    pick = chooser or distinguisher
    h = mask_of(h0)
    seq = GrowthSequence([h], [], [])
    while True:
        found = pick(g, h)
        if found is None:
            return seq
        z, e = found
        h |= 1 << z
        seq.stages.append(h)
        seq.added.append(z)
        seq.distinguished.append(e)


def random_chooser(rng) -> Callable:
    """Uniform choice among all (distinguishing vertex, edge) pairs."""

    def choose(g: Graph, h: int):
        outside = g.full & ~h
        options = []
        for x in iter_bits(h):
            for y in iter_bits(g.adj[x] & h):
                if y > x:
                    options += [(z, (x, y)) for z in iter_bits(outside & (g.adj[x] ^ g.adj[y]))]
        return rng.choice(options) if options else None

    return choose


GROWTH_BASES = {"antihole": "bull-free", "C5": "p5-bull-free", "house": "p5-bull-free"}


def check_bull_growth(g: Graph, h0, base: str = "antihole", chooser: Callable | None = None) -> LemmaReport:
    """Every contact of every growth stage joins the stage; the last stage is a module.

    ``base`` selects the variant: a co-C_k (k >= 6) in a connected bull-free
    graph, or a C5 / house in a connected (P5, bull)-free graph.
    """
    report = LemmaReport(f"bull-growth-{base}")
    h0 = list(h0)
    kind_ok = {
        "antihole": len(h0) >= 6 and PatternWitness("anti-hole", tuple(h0)).audit(g),
        "C5": PatternWitness("C5", tuple(h0)).audit(g),
        "house": PatternWitness("house", tuple(h0)).audit(g),
    }.get(base)
    if not kind_ok:
        report.skip(f"h0 is not a {base}")
        return report
    if not _precondition(report, g, GROWTH_BASES[base]):
        return report
    if not is_connected(g):
        report.skip("graph is disconnected")
        return report
    seq = growth_sequence(g, h0, chooser)
    report.checked += 1
    report.notes["stages"] = len(seq.stages)
    for i, h in enumerate(seq.stages):
        if not anti_neighborhood_mask(g, h):
            continue
        report.notes["stages_with_contacts"] = report.notes.get("stages_with_contacts", 0) + 1
        for u in iter_bits(contact_mask(g, h)):
            if not is_join_mask(g, 1 << u, h):
                report.violate(stage=i, contact=u, misses=bits(h & ~g.adj[u]), sequence=seq.to_dict())
    final = seq.final
    ok, why = is_module(g, bits(final))
    if not ok:
        report.violate(stage=len(seq.stages) - 1, reason="terminal stage is not a module", distinguisher=list(why))
    elif final != g.full:
        report.notes["proper_terminal_module"] = 1
    return report


# -- nearly-Pi ---------------------------------------------------------------------


def check_nearly(g: Graph, predicate: Callable[[Graph], Verdict]) -> tuple[int, PatternWitness | None] | None:
    """Least ``v`` whose anti-neighborhood fails ``predicate`` (witness in ``g``'s ids), or ``None``."""
    for v in range(g.n):
        h, labels = induced_by_mask(g, anti_neighborhood_mask(g, 1 << v))
        if h.n == 0:
            continue
        verdict = predicate(h)
        if not verdict:
            w = verdict.witness
            return v, (PatternWitness(w.kind, tuple(labels[i] for i in w.vertices)) if w else None)
    return None


def chain_or_cochain(g: Graph) -> Verdict:
    chain = is_bipartite_chain(g)
    if chain:
        return chain
    cochain = is_cobipartite_chain(g)
    return cochain if cochain else Verdict(False, chain.witness)


def no_antihole(min_len: int) -> Callable[[Graph], Verdict]:
    def check(g: Graph) -> Verdict:
        w = find_antihole(g, min_len=min_len)
        return Verdict(w is None, w)

    return check
