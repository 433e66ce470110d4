"""Graded Betti tables and Castelnuovo-Mumford regularity of ``S/I``.

The resolution is built as a Schreyer frame: starting from a reduced
Groebner basis, each level's syzygies come from the S-pairs of the previous
level (only pairs whose quotient monomials minimally generate, per
component), with tails obtained by reducing in the induced Schreyer order.
That frame is a free resolution but usually not minimal.  Tensoring with
the residue field leaves only the constant entries of each differential,
so

    beta_{k,j} = rank F_{k,j} - rank(d_k)_j - rank(d_{k+1})_j

where ``(d_k)_j`` is the constant part of ``d_k`` between the degree ``j``
generators.  No explicit minimization is needed.

Terms of a module element in ``F_{k-1}`` are packed into one int::

    (total_monomial << IDX_BITS) | component

where the total monomial of ``m * e_b`` is ``m`` times the leading total
monomial of ``e_b``.  Indices are assigned component by component, so
comparing packed ints is exactly the induced Schreyer order.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from heapq import heapify, heappop, heappush

from .field import CoefficientField
from .groebner import groebner_raw
from .linalg import SparseEchelon
from .ring import PolyRing

IDX_BITS = 28
_IDX_MASK = (1 << IDX_BITS) - 1


class ResolutionError(RuntimeError):
    pass


@dataclass
class BettiTable:
    """Graded Betti numbers ``beta_{i,j}`` of a module, keyed by ``(i, j)``."""

    entries: dict[tuple[int, int], int]
    certified: bool = True
    module_tag: str = ""
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def pd(self) -> int:
        return max((i for (i, j), b in self.entries.items() if b), default=0)

    @property
    def regularity(self) -> int:
        return max((j - i for (i, j), b in self.entries.items() if b), default=0)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def total(self, i: int) -> int:
        return sum(b for (k, _), b in self.entries.items() if k == i)

    def nonzero(self) -> dict[tuple[int, int], int]:
        return {k: v for k, v in sorted(self.entries.items()) if v}

    def to_json(self) -> dict:
        return {
            "entries": [[i, j, b] for (i, j), b in sorted(self.entries.items()) if b],
            "pd": self.pd,
            "certified": self.certified,
        }

    @classmethod
    def from_json(cls, d: dict) -> "BettiTable":
        return cls({(i, j): b for i, j, b in d["entries"]}, d.get("certified", True))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def pretty(self) -> str:
        """Staircase layout: rows are ``j - i``, columns are ``i``."""
        nz = self.nonzero()
        if not nz:
            return "(zero module)"
        cols = range(0, self.pd + 1)
        rows = range(min(j - i for i, j in nz), self.regularity + 1)
        width = max(len(str(b)) for b in nz.values()) + 1
        lines = ["     " + "".join(f"{i:>{width}}" for i in cols)]
        lines.append("total:" + "".join(f"{self.total(i):>{width}}" for i in cols)[1:])
        for r in rows:
            cells = []
            for i in cols:
                b = nz.get((i, i + r), 0)
                cells.append(f"{b if b else '.':>{width}}")
            lines.append(f"{r:>4}:" + "".join(cells))
        return "\n".join(lines)


@dataclass
class RegularityResult:
    value: int
    certified: bool
    cap_used: int | None = None

    def to_json(self) -> dict:
        return {"value": self.value, "certified": self.certified, "cap_used": self.cap_used}


def _min_generators(mons: list[tuple[int, int]], guard: int) -> list[tuple[int, int]]:
    """Minimal generators of a monomial ideal given as ``(monomial, tag)``.

    Ties keep the first occurrence.
    """
    mons = sorted(mons, key=lambda t: t[0])
    out = []
    seen = set()
    for m, tag in mons:
        if m in seen:
            continue
        for n, _ in out:
            if not ((m - n) & guard):
                break
        else:
            out.append((m, tag))
            seen.add(m)
    return out


def _frame_resolution(ring: PolyRing, gb: list[dict], cap: int | None):
    """Build the Schreyer frame level by level; return Betti data."""
    p = ring.field.p
    guard = ring.guard
    lcm = ring.lcm
    degree = ring.degree
    S = IDX_BITS

    # level 1
    order = sorted(range(len(gb)), key=lambda a: max(gb[a]))
    gb = [gb[a] for a in order]
    tm = [max(g) for g in gb]
    comp = [0] * len(gb)
    vecs = [{m << S: c for m, c in g.items()} for g in gb]
    prev_tm = [0]

    counts: dict[tuple[int, int], int] = {(0, 0): 1}
    ranks: dict[tuple[int, int], int] = {}
    certified = True
    level = 1
    frame_sizes = [1]
    n_reductions = 0

    while tm:
        frame_sizes.append(len(tm))
        for a in range(len(tm)):
            key = (level, degree(tm[a]))
            counts[key] = counts.get(key, 0) + 1
        # constant part of d_level, grouped by internal degree
        blocks: dict[int, SparseEchelon] = {}
        for a, v in enumerate(vecs):
            row = {}
            for T, c in v.items():
                b = T & _IDX_MASK
                if (T >> S) == prev_tm[b]:
                    row[b] = c
            if row:
                d = degree(tm[a])
                ech = blocks.get(d)
                if ech is None:
                    ech = blocks[d] = SparseEchelon(p)
                ech.add(row)
        for d, ech in blocks.items():
            if ech.rank:
                ranks[(level, d)] = ech.rank

        # reducers of F_{level-1} terms: per component, (lead total, index)
        reducers: dict[int, list] = {}
        for a in range(len(tm)):
            reducers.setdefault(comp[a], []).append((tm[a], a))

        # next level leads
        new_tm: list[int] = []
        new_comp: list[int] = []
        partner: list[int] = []
        start = 0
        n = len(tm)
        while start < n:
            c = comp[start]
            end = start
            while end < n and comp[end] == c:
                end += 1
            for j in range(start, end):
                Mj = tm[j]
                quots = []
                for i in range(start, j):
                    quots.append((lcm(tm[i], Mj) - Mj, i))
                for q, i in _min_generators(quots, guard):
                    M = q + Mj
                    if cap is not None and degree(M) > cap:
                        certified = False
                        continue
                    new_tm.append(M)
                    new_comp.append(j)
                    partner.append(i)
            start = end

        # tails: reduce d(sigma) in F_{level-1}
        new_vecs = []
        for M, j, i in zip(new_tm, new_comp, partner):
            sigma = {(M << S) | j: 1}
            sigma[(M << S) | i] = (p - 1) if p else -1
            qj = (M - tm[j]) << S
            qi = (M - tm[i]) << S
            f = {T + qj: c for T, c in vecs[j].items()}
            for T, c in vecs[i].items():
                T += qi
                v = f.get(T)
                if v is None:
                    f[T] = (-c % p) if p else -c
                else:
                    v -= c
                    if p:
                        v %= p
                    if v:
                        f[T] = v
                    else:
                        del f[T]
            heap = [-T for T in f]
            heapify(heap)
            while heap:
                T = -heappop(heap)
                c = f.pop(T, None)
                if c is None:
                    continue
                b = T & _IDX_MASK
                Mt = T >> S
                for Ma, a in reducers[b]:
                    if not ((Mt - Ma) & guard):
                        break
                else:
                    raise ResolutionError("frame element failed to reduce; basis is not a Groebner basis")
                n_reductions += 1
                sh = (Mt - Ma) << S
                key = (Mt << S) | a
                v = sigma.get(key)
                nc = -c
                if p:
                    nc %= p
                sigma[key] = nc if v is None else ((v + nc) % p if p else v + nc)
                lead_a = (Ma << S) | b
                for T2, c2 in vecs[a].items():
                    if T2 == lead_a:
                        continue
                    T2 += sh
                    w = f.get(T2)
                    d = c * c2
                    if w is None:
                        w = -d
                        if p:
                            w %= p
                        f[T2] = w
                        heappush(heap, -T2)
                    else:
                        w -= d
                        if p:
                            w %= p
                        if w:
                            f[T2] = w
                        else:
                            del f[T2]
            new_vecs.append({T: c for T, c in sigma.items() if c})

        prev_tm = tm
        tm, comp, vecs = new_tm, new_comp, new_vecs
        level += 1

    betti = {}
    for (k, d), cnt in counts.items():
        b = cnt - ranks.get((k, d), 0) - ranks.get((k + 1, d), 0)
        if b < 0:
            raise ResolutionError("negative Betti number; frame inconsistent")
        if b:
            betti[(k, d)] = b
    stats = {"frame_sizes": frame_sizes, "reductions": n_reductions}
    return betti, certified, stats


def betti_table(ring: PolyRing, gens: list[dict], cap: int | None = None, tag: str = "") -> BettiTable:
    """Graded Betti numbers of ``S / <gens>`` for homogeneous ``gens``."""
    t0 = time.perf_counter()
    gb = groebner_raw(gens, ring)
    if gb == [{0: 1}]:
        return BettiTable({}, True, tag)
    if not gb:
        return BettiTable({(0, 0): 1}, True, tag)
    betti, certified, stats = _frame_resolution(ring, gb, cap)
    stats["gb_size"] = len(gb)
    stats["seconds"] = round(time.perf_counter() - t0, 3)
    return BettiTable(betti, certified, tag, stats)


# ideal-level entry points ---------------------------------------------------------


def default_cap(ideal) -> int:
    """Number of generators times the largest generator degree."""
    gens = ideal.generators
    return max(1, len(gens) * max((g.total_degree() for g in gens), default=1))


def minimal_free_resolution(ideal, degree_cap: int | None = None) -> BettiTable:
    """Graded Betti table of ``S / ideal``.

    Frame elements above ``degree_cap`` are dropped and the table is then
    flagged uncertified.
    """
    if not ideal.is_homogeneous():
        raise ValueError("resolution needs a homogeneous ideal")
    cap = default_cap(ideal) if degree_cap is None else degree_cap
    return betti_table(ideal.ring, [g.terms for g in ideal.generators], cap, ideal.provenance)


def regularity(ideal, degree_cap: int | None = None) -> RegularityResult:
    """``reg S/ideal`` with a certification flag."""
    cap = default_cap(ideal) if degree_cap is None else degree_cap
    table = minimal_free_resolution(ideal, cap)
    return RegularityResult(table.regularity, table.certified, cap)


# graph-level regularity ----------------------------------------------------------

MAX_VERTICES = 10
# graph-level entry points resolve over F_32003 unless given a ring
RESOLUTION_FIELD = CoefficientField(32003)


def _guard(n: int) -> None:
    if n > MAX_VERTICES:
        raise ValueError(f"instance too large: {n} vertices (limit {MAX_VERTICES})")


def regularity_of_power(g, kind, s: int, ring: PolyRing | None = None, degree_cap: int | None = None) -> RegularityResult:
    """``reg S / J^s`` (standard) or ``reg S / I^s`` (parity) of ``g``."""
    from .binomial import binomial_edge_ideal, graph_ring
    from .ideal import ideal_power

    if s < 1:
        raise ValueError("power must be at least 1")
    _guard(g.n)
    ring = ring or graph_ring(g, RESOLUTION_FIELD)
    return regularity(ideal_power(binomial_edge_ideal(g, kind, ring), s), degree_cap)


def partial_sequence_ideal(g, kind, ordering, i: int, s: int, ring: PolyRing):
    """``(a_1, ..., a_i) + J^s`` for the edge binomials listed by ``ordering``."""
    from .binomial import binomial_edge_ideal, edge_binomial
    from .ideal import Ideal, ideal_power

    if not 0 <= i <= len(ordering.edges):
        raise ValueError("prefix length out of range")
    prefix = [edge_binomial(a, b, kind, ring) for a, b in ordering.edges[:i]]
    power = ideal_power(binomial_edge_ideal(g, kind, ring), s)
    return Ideal(ring, prefix + list(power.generators), f"prefix {i} + power {s}")


def regularity_of_partial_sequence(g, kind, ordering, i: int, s: int, ring: PolyRing | None = None) -> RegularityResult:
    from .binomial import graph_ring

    _guard(g.n)
    ring = ring or graph_ring(g, RESOLUTION_FIELD)
    return regularity(partial_sequence_ideal(g, kind, ordering, i, s, ring))


def check_product_configuration(h, m: int) -> None:
    """``h``'s edges must form disjoint paths, each meeting ``1..m`` in at most one endpoint."""
    from .graphs import Graph, _components

    if m < 2 or m > h.n:
        raise ValueError("need 2 <= m <= number of vertices")
    used: set[int] = set()
    for comp in _components(h):
        if len(comp) == 1 and h.degree(next(iter(comp))) == 0:
            continue
        sub = Graph(h.n, [e for e in h.edges if e[0] in comp])
        degs = [sub.degree(v) for v in comp]
        if len(sub.edges) != len(comp) - 1 or max(degs) > 2:
            raise ValueError("H must be a disjoint union of paths")
        meet = comp & set(range(1, m + 1))
        if len(meet) > 1:
            raise ValueError("a path meets the complete graph in more than one vertex")
        if meet:
            v = next(iter(meet))
            if sub.degree(v) != 1:
                raise ValueError("a path must meet the complete graph at a free (end) vertex")
            if v in used:
                raise ValueError("two paths meet the complete graph at the same vertex")
            used.add(v)


def regularity_of_product(h, m: int, ring: PolyRing | None = None) -> RegularityResult:
    """``reg S / (I_H * J_{K_m})`` with ``K_m`` on vertices ``1..m``."""
    from .binomial import PARITY, STANDARD, binomial_edge_ideal, graph_ring
    from .graphs import complete_graph, Graph
    from .ideal import ideal_product

    check_product_configuration(h, m)
    _guard(h.n)
    ring = ring or graph_ring(h, RESOLUTION_FIELD)
    k = Graph(h.n, complete_graph(m).edges)
    return regularity(ideal_product(binomial_edge_ideal(h, PARITY, ring), binomial_edge_ideal(k, STANDARD, ring)))


def gluing_additivity_check(parts, gluing, field=None) -> tuple[bool, dict]:
    """Glue ``parts`` at free vertices and compare ``reg S/J_G`` with the sum over parts.

    ``gluing`` lists ``(a, u, b, v)``: vertex ``u`` of part ``a`` is identified
    with vertex ``v`` of part ``b``.  Each identified vertex must be free in
    both parts, and no vertex may be shared by three parts.
    """
    from .binomial import STANDARD, binomial_edge_ideal, graph_ring
    from .graphs import Graph, free_vertices

    offsets = []
    total = 0
    for p in parts:
        offsets.append(total)
        total += p.n
    parent = list(range(total + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    touched: dict[tuple[int, int], int] = {}
    for a, u, b, v in gluing:
        if a == b:
            raise ValueError("gluing must join two different parts")
        for part, w in ((a, u), (b, v)):
            if w not in free_vertices(parts[part]):
                raise ValueError(f"vertex {w} of part {part} is not free")
            touched[(part, w)] = touched.get((part, w), 0) + 1
            if touched[(part, w)] > 1:
                raise ValueError("a vertex is shared by three parts")
        parent[find(offsets[a] + u)] = find(offsets[b] + v)
    reps = sorted({find(x) for x in range(1, total + 1)})
    label = {r: k + 1 for k, r in enumerate(reps)}
    edges = []
    for p, off in zip(parts, offsets):
        edges += [(label[find(off + x)], label[find(off + y)]) for x, y in p.edges]
    glued = Graph(len(reps), edges)
    _guard(glued.n)

    def reg(g):
        ring = graph_ring(g, field or RESOLUTION_FIELD)
        return regularity(binomial_edge_ideal(g, STANDARD, ring))

    part_regs = [reg(p) for p in parts]
    whole = reg(glued)
    certified = whole.certified and all(r.certified for r in part_regs)
    ok = certified and whole.value == sum(r.value for r in part_regs)
    return ok, {"glued": glued, "parts": [r.value for r in part_regs], "whole": whole.value, "certified": certified}
