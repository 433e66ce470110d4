"""d-sequence checks for (parity) edge-binomial sequences.

A sequence ``a_1..a_m`` (with ``a_0 = 0``) is a d-sequence when it minimally
generates its ideal and ``(a_0..a_i) : a_{i+1} a_j == (a_0..a_i) : a_j`` for
all ``0 <= i < m`` and ``j > i``.  For a fixed prefix *set* ``A`` and next
element ``b`` the conditions at that step only involve ``A``, ``b`` and the
complement of ``A``, so the search over orderings is a search over subsets.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import time
from dataclasses import dataclass, field
from typing import Iterable

from .binomial import PARITY, STANDARD, EdgeBinomialKind, edge_binomial, graph_ring
from .field import CoefficientField
from .graphs import Edge, FamilyTag, Graph, TmSpec, _edge, cycle_edges, enumerate_unicyclic, is_unicyclic
from .groebner import _key
from .ideal import Ideal, colon_raw, minimal_generators
from .poly import Polynomial, _mul
from .ring import PolyRing


class Verdict(enum.Enum):
    DSEQUENCE = "DSequence"
    NOT_THIS_ORDERING = "NotThisOrdering"
    NO_ORDERING_EXISTS = "NoOrderingExists"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class SequenceOrdering:
    edges: tuple[Edge, ...]

    def __init__(self, edges: Iterable):
        object.__setattr__(self, "edges", tuple(_edge(*e) for e in edges))

    def __len__(self) -> int:
        return len(self.edges)

    def prefix_graph(self, g: Graph, i: int) -> Graph:
        """``H_i``: the graph of the first ``i`` edges."""
        return Graph(g.n, self.edges[:i])

    def prefix_ideal(self, i: int, kind: EdgeBinomialKind, ring: PolyRing) -> Ideal:
        """``J_i = <a_1, ..., a_i>``."""
        return Ideal(ring, [edge_binomial(a, b, kind, ring) for a, b in self.edges[:i]], f"J_{i}")

    def to_json(self) -> list:
        return [list(e) for e in self.edges]


@dataclass
class DSequenceReport:
    graph: Graph
    kind: EdgeBinomialKind
    verdict: Verdict
    ordering: SequenceOrdering | None = None
    violation: dict | None = None
    stats: dict = field(default_factory=dict)

    @property
    def is_dsequence(self) -> bool:
        return self.verdict is Verdict.DSEQUENCE

    def to_json(self) -> dict:
        return {
            "graph": self.graph.to_json(),
            "kind": self.kind.value,
            "verdict": self.verdict.value,
            "ordering": self.ordering.to_json() if self.ordering else None,
            "violation": self.violation,
            "stats": self.stats,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


class _Colons:
    """Memoised colon ideals ``<a_k : k in A> : prod(a_k : k in P)`` as GB keys."""

    def __init__(self, ring: PolyRing, gens: list[Polynomial]):
        self.ring = ring
        self.gens = [g.terms for g in gens]
        self.cache: dict = {}
        self.gb_calls = 0

    def raw(self, A: frozenset, prod: tuple[int, ...]) -> list[dict]:
        key = (A, prod)
        hit = self.cache.get(key)
        if hit is None:
            p = self.ring.field.p
            f = self.gens[prod[0]]
            for k in prod[1:]:
                f = _mul(f, self.gens[k], p)
            # the i = 0 row runs too: the colon of the zero ideal is zero
            hit = colon_raw([self.gens[k] for k in sorted(A)], f, self.ring)
            self.gb_calls += 1
            self.cache[key] = hit
        return hit

    def key(self, A: frozenset, prod: tuple[int, ...]) -> tuple:
        return _key(self.raw(A, prod))

    def step_failure(self, A: frozenset, b: int, rest: Iterable[int]) -> int | None:
        """First ``c`` in ``rest`` with ``A : b*c != A : c``, else None."""
        for c in rest:
            if self.key(A, tuple(sorted((b, c)))) != self.key(A, (c,)):
                return c
        return None


def _default_ring(g: Graph, ring: PolyRing | None) -> PolyRing:
    return ring or graph_ring(g, CoefficientField(0))


def _minimal(ring: PolyRing, gens: list[Polynomial]) -> bool:
    return len(minimal_generators(Ideal(ring, gens))) == len(gens)


def check_d_sequence(
    g: Graph,
    kind: EdgeBinomialKind,
    ordering: SequenceOrdering,
    ring: PolyRing | None = None,
) -> DSequenceReport:
    kind = EdgeBinomialKind.parse(kind)
    if set(ordering.edges) != set(g.edges) or len(ordering) != len(g.edges):
        raise ValueError("ordering must list every edge exactly once")
    ring = _default_ring(g, ring)
    t0 = time.perf_counter()
    gens = [edge_binomial(a, b, kind, ring) for a, b in ordering.edges]
    m = len(gens)
    if not _minimal(ring, gens):
        return DSequenceReport(g, kind, Verdict.NOT_THIS_ORDERING, ordering, {"reason": "not minimally generated"})
    colons = _Colons(ring, gens)
    for i in range(m):
        A = frozenset(range(i))
        c = colons.step_failure(A, i, range(i, m))
        if c is not None:
            lhs = colons.raw(A, tuple(sorted((i, c))))
            rhs = colons.raw(A, (c,))
            viol = {
                "i": i,
                "j": c + 1,
                "lhs": [str(Polynomial(ring, h)) for h in lhs],
                "rhs": [str(Polynomial(ring, h)) for h in rhs],
            }
            stats = {"gb_calls": colons.gb_calls, "seconds": round(time.perf_counter() - t0, 3)}
            return DSequenceReport(g, kind, Verdict.NOT_THIS_ORDERING, ordering, viol, stats)
    stats = {"gb_calls": colons.gb_calls, "seconds": round(time.perf_counter() - t0, 3)}
    return DSequenceReport(g, kind, Verdict.DSEQUENCE, ordering, None, stats)


def search_d_sequence(
    g: Graph,
    kind: EdgeBinomialKind,
    budget: int | None = None,
    ring: PolyRing | None = None,
    prune: bool = True,
) -> DSequenceReport:
    """Search every ordering of the edges for a d-sequence.

    Failed prefix sets are memoised, so each (prefix set, next edge) step is
    decided once.  For standard binomials of a unicyclic graph, ``prune``
    discards prefixes that close the cycle before the last step: a d-sequence
    must end with a cycle edge.  That pruning is not applied to parity
    binomials, where it does not hold.  ``budget`` bounds the number of step
    checks; running out yields ``Inconclusive``.
    """
    kind = EdgeBinomialKind.parse(kind)
    ring = _default_ring(g, ring)
    t0 = time.perf_counter()
    edges = g.sorted_edges()
    m = len(edges)
    if m > 10:
        raise ValueError("exhaustive search is limited to 10 edges")
    gens = [edge_binomial(a, b, kind, ring) for a, b in edges]
    if not _minimal(ring, gens):
        return DSequenceReport(g, kind, Verdict.NO_ORDERING_EXISTS, None, {"reason": "not minimally generated"})
    colons = _Colons(ring, gens)
    full = frozenset(range(m))
    cyc = None
    if prune and kind is STANDARD and is_unicyclic(g):
        cyc = frozenset(k for k, e in enumerate(edges) if e in cycle_edges(g))
    dead: set = set()
    steps = [0]
    out_of_budget = [False]
    order: list[int] = []

    def explore(A: frozenset) -> bool:
        if A == full:
            return True
        if A in dead:
            return False
        rest = sorted(full - A)
        for b in rest:
            B = A | {b}
            if B in dead:
                continue
            if cyc is not None and cyc <= B and B != full:
                continue
            if budget is not None and steps[0] >= budget:
                out_of_budget[0] = True
                return False
            steps[0] += 1
            if colons.step_failure(A, b, rest) is not None:
                continue
            order.append(b)
            if explore(B):
                return True
            order.pop()
        if not out_of_budget[0]:
            dead.add(A)
        return False

    found = explore(frozenset())
    stats = {
        "orderings_tried": steps[0],
        "gb_calls": colons.gb_calls,
        "pruned": cyc is not None,
        "seconds": round(time.perf_counter() - t0, 3),
    }
    if found:
        return DSequenceReport(g, kind, Verdict.DSEQUENCE, SequenceOrdering(edges[k] for k in order), None, stats)
    if out_of_budget[0]:
        return DSequenceReport(g, kind, Verdict.INCONCLUSIVE, None, {"reason": "budget exhausted"}, stats)
    return DSequenceReport(g, kind, Verdict.NO_ORDERING_EXISTS, None, None, stats)


# orderings for the families ---------------------------------------------------


def spider_legs(tree: Graph, center: int) -> list[list[Edge]]:
    """The legs of a spider, each as its edge list walked outward from ``center``."""
    adj = tree.adjacency()
    legs: list[list[Edge]] = []
    seen = {center}
    for start in sorted(adj[center]):
        leg = []
        prev, cur = center, start
        while True:
            leg.append(_edge(prev, cur))
            seen.add(cur)
            nxt = [w for w in sorted(adj[cur]) if w not in seen]
            if len(nxt) > 1:
                raise ValueError("not a spider: branching away from the center")
            if not nxt:
                break
            prev, cur = cur, nxt[0]
        legs.append(leg)
    if sum(map(len, legs)) != len(tree.edges):
        raise ValueError("not a spider centred at the given vertex")
    return legs


def spider_ordering(tree: Graph, center: int) -> list[Edge]:
    """First leg outward, then the outer edges of the other legs, then their center edges.

    Walking every leg outward in turn fails once three legs have length >= 2
    (legs ``(1, 1, 1)``): the center edges of the later legs must come last.
    """
    legs = spider_legs(tree, center)
    if not legs:
        return []
    rest = legs[1:]
    return legs[0] + [e for leg in rest for e in leg[1:]] + [leg[0] for leg in rest]


def canonical_ordering(g: Graph) -> SequenceOrdering:
    """The family ordering: :func:`spider_ordering` on the tree, cycle-closing edge last."""
    tag = g.family_tag
    if tag is None or tag.kind not in ("Tm", "UnicyclicA", "UnicyclicB", "UnicyclicC", "Cycle", "Path"):
        raise ValueError("canonical ordering needs a Tm, unicyclic-family or cycle tag")
    if tag.kind in ("Tm", "Path"):
        return SequenceOrdering(spider_ordering(g, 1))
    if tag.kind == "Cycle":
        n = g.n
        return SequenceOrdering(spider_ordering(g.remove_edge(1, n), 1) + [(1, n)])
    if tag.kind == "UnicyclicB":
        # pendant-to-pendant: close the cycle at the center instead, on the
        # spider whose long leg runs through the added edge
        spec = TmSpec(tag.get("m"), tag.get("legs"))
        first = spec.leg_vertices()[tag.get("leg2") - 1][0]
        last = _edge(1, first)
    else:
        last = tuple(tag.get("added"))
    return SequenceOrdering(spider_ordering(g.remove_edge(*last), 1) + [last])


# recognising the unicyclic forms -------------------------------------------------


def _spider_centers(tree: Graph) -> list[int]:
    """Vertices ``c`` making ``tree`` a spider with at least two legs at ``c``."""
    if not tree.is_connected() or len(tree.edges) != tree.n - 1:
        return []
    degs = {v: tree.degree(v) for v in tree.vertices}
    big = [v for v, d in degs.items() if d >= 3]
    if len(big) > 1:
        return []
    if big:
        return big
    return [v for v, d in degs.items() if d == 2]


def recognize_forms(g: Graph) -> dict[str, tuple[int, Edge]]:
    """Which constructions produce ``g`` from a spider.

    Keys among ``A`` (pendant to center), ``B`` (pendant to pendant),
    ``C`` (center to a non-adjacent internal vertex) and ``cycle``; values are
    one witness ``(center, added edge)``.
    """
    out: dict[str, tuple[int, Edge]] = {}
    if not is_unicyclic(g):
        return out
    if all(g.degree(v) == 2 for v in g.vertices):
        out["cycle"] = (1, _edge(1, g.n))
    for e in sorted(cycle_edges(g)):
        h = g.remove_edge(*e)
        for c in _spider_centers(h):
            u, v = e
            du, dv = h.degree(u), h.degree(v)
            for a, b in ((u, v), (v, u)):
                if a == c and h.degree(b) == 1:
                    out.setdefault("A", (c, e))
                elif a == c and h.degree(b) == 2 and not h.has_edge(c, b):
                    out.setdefault("C", (c, e))
            if du == 1 and dv == 1 and c not in e:
                out.setdefault("B", (c, e))
    return out


def in_classified_form(g: Graph) -> bool:
    return bool(recognize_forms(g))


def verify_pd_identity(
    g: Graph,
    kind: EdgeBinomialKind,
    ordering: SequenceOrdering,
    s_max: int,
    ring: PolyRing | None = None,
) -> bool:
    """``((a_1..a_{i-1}) + I^s) : a_i == ((a_1..a_{i-1}) : a_i) + I^{s-1}`` for ``2 <= s <= s_max``."""
    return not pd_identity_failures(g, kind, ordering, s_max, ring)


def pd_identity_failures(g, kind, ordering, s_max, ring=None) -> list[tuple[int, int]]:
    from .ideal import ideal_colon_element, ideal_equal, ideal_power

    kind = EdgeBinomialKind.parse(kind)
    ring = _default_ring(g, ring)
    gens = [edge_binomial(a, b, kind, ring) for a, b in ordering.edges]
    I = Ideal(ring, gens)
    powers = {1: I}
    for s in range(2, s_max + 1):
        powers[s] = ideal_power(I, s)
    bad = []
    for i in range(1, len(gens) + 1):
        prefix = Ideal(ring, gens[: i - 1])
        base = ideal_colon_element(prefix, gens[i - 1])
        for s in range(2, s_max + 1):
            lhs = ideal_colon_element(Ideal(ring, prefix.generators + powers[s].generators), gens[i - 1])
            rhs = Ideal(ring, base.generators + powers[s - 1].generators)
            if not ideal_equal(lhs, rhs):
                bad.append((i, s))
    return bad


# classification -------------------------------------------------------------------


@dataclass
class ClassificationRow:
    graph_id: str
    graph: Graph
    n: int
    form: str
    standard: DSequenceReport
    parity: DSequenceReport | None

    @property
    def agree(self) -> bool:
        in_form = self.form != "none"
        ok = self.standard.is_dsequence == in_form and self.standard.verdict is not Verdict.INCONCLUSIVE
        if self.parity is not None and in_form:
            ok = ok and self.parity.is_dsequence
        return ok

    def csv_row(self) -> dict:
        tried = self.standard.stats.get("orderings_tried", 0)
        if self.parity is not None:
            tried += self.parity.stats.get("orderings_tried", 0)
        return {
            "graph_id": self.graph_id,
            "n": self.n,
            "form": self.form,
            "standard_verdict": self.standard.verdict.value,
            "parity_verdict": self.parity.verdict.value if self.parity else "",
            "orderings_tried": tried,
        }


CSV_COLUMNS = ["graph_id", "n", "form", "standard_verdict", "parity_verdict", "orderings_tried"]


def graph_id(g: Graph) -> str:
    return f"n{g.n}:" + "-".join(f"{a}.{b}" for a, b in g.sorted_edges())


def classify_unicyclic(n_max: int, parity: bool = True, n_min: int = 3) -> list[ClassificationRow]:
    """Exhaustive d-sequence verdicts for every connected unicyclic class."""
    if n_max > 7:
        raise ValueError("classification is limited to n <= 7")
    rows = []
    for g in enumerate_unicyclic(n_max, n_min):
        forms = recognize_forms(g)
        form = "+".join(sorted(forms)) if forms else "none"
        std = search_d_sequence(g, STANDARD)
        par = search_d_sequence(g, PARITY) if parity else None
        rows.append(ClassificationRow(graph_id(g), g, g.n, form, std, par))
    return rows


def classification_csv(rows: list[ClassificationRow]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r.csv_row())
    return buf.getvalue()
