"""Binomial edge ideals, parity binomial edge ideals and their colon identities."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from itertools import combinations

from .field import CoefficientField
from .graphs import Edge, Graph, _edge, graph_Ge, is_bridge, odd_girth
from .ideal import Ideal, ideal_colon_element
from .poly import Polynomial
from .ring import MonomialOrder, PolyRing


class EdgeBinomialKind(enum.Enum):
    STANDARD = "standard"
    PARITY = "parity"

    @classmethod
    def parse(cls, text: "str | EdgeBinomialKind") -> "EdgeBinomialKind":
        if isinstance(text, cls):
            return text
        t = text.lower()
        if t in ("standard", "j", "f"):
            return cls.STANDARD
        if t in ("parity", "i", "g"):
            return cls.PARITY
        raise ValueError(f"unknown binomial kind {text!r}")


STANDARD = EdgeBinomialKind.STANDARD
PARITY = EdgeBinomialKind.PARITY


def graph_ring(g: Graph | int, field: CoefficientField | None = None, order: MonomialOrder | None = None) -> PolyRing:
    n = g if isinstance(g, int) else g.n
    return PolyRing.for_graph(max(n, 1), field, order)


def _check_char(ring: PolyRing, kind: EdgeBinomialKind) -> None:
    if kind is PARITY and ring.field.p == 2:
        raise ValueError("parity binomials need characteristic other than 2")


def edge_binomial(i: int, j: int, kind: EdgeBinomialKind, ring: PolyRing) -> Polynomial:
    """``x_i y_j - x_j y_i`` (standard) or ``x_i x_j - y_i y_j`` (parity), with ``i < j``."""
    if i == j:
        raise ValueError("edge binomial needs two distinct vertices")
    kind = EdgeBinomialKind.parse(kind)
    _check_char(ring, kind)
    i, j = min(i, j), max(i, j)
    x, y = ring.x, ring.y
    if kind is STANDARD:
        a, b = x(i), y(j)
        c, d = x(j), y(i)
    else:
        a, b = x(i), x(j)
        c, d = y(i), y(j)
    p = ring.field.p
    vm = ring.var_monomial
    return Polynomial(ring, {vm(a) + vm(b): 1, vm(c) + vm(d): (p - 1) if p else -1})


def binomial_edge_ideal(g: Graph, kind: EdgeBinomialKind = STANDARD, ring: PolyRing | None = None) -> Ideal:
    kind = EdgeBinomialKind.parse(kind)
    ring = ring or graph_ring(g)
    gens = [edge_binomial(a, b, kind, ring) for a, b in g.sorted_edges()]
    name = "J_G" if kind is STANDARD else "I_G"
    tag = g.family_tag.kind if g.family_tag else "graph"
    return Ideal(ring, gens, f"{name} of {tag} {g.sorted_edges()}")


def bipartition(g: Graph) -> tuple[set[int], set[int]] | None:
    """A 2-colouring of ``g`` (vertex 1 of each component on side 1), or None."""
    side: dict[int, int] = {}
    adj = g.adjacency()
    for r in g.vertices:
        if r in side:
            continue
        side[r] = 0
        stack = [r]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in side:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    return None
    return {v for v in g.vertices if side[v] == 0}, {v for v in g.vertices if side[v] == 1}


def phi_map(f: Polynomial, partition: tuple) -> Polynomial:
    """Swap ``x_i`` and ``y_i`` for ``i`` in the second part; fix the first part."""
    ring = f.ring
    n = ring.n_vertices
    v1, v2 = set(partition[0]), set(partition[1])
    if v1 & v2:
        raise ValueError("partition parts overlap")
    if v1 | v2 != set(range(1, n + 1)):
        raise ValueError("partition must cover every vertex")
    perm = list(range(ring.nvars))
    for i in v2:
        perm[ring.x(i)], perm[ring.y(i)] = ring.y(i), ring.x(i)
    return f.substitute(perm)


def phi_ideal(a: Ideal, partition: tuple) -> Ideal:
    return Ideal(a.ring, [phi_map(g, partition) for g in a.generators], f"phi({a.provenance})")


def simple_paths(g: Graph, i: int, j: int) -> list[list[int]]:
    """All simple paths from ``i`` to ``j`` as vertex lists (depth first)."""
    adj = g.adjacency()
    out: list[list[int]] = []
    path = [i]
    on = {i}

    def dfs(u: int) -> None:
        for w in sorted(adj[u]):
            if w == j:
                out.append(path + [j])
            elif w not in on:
                on.add(w)
                path.append(w)
                dfs(w)
                path.pop()
                on.discard(w)

    if i != j:
        dfs(i)
    return out


def path_monomials(ring: PolyRing, path: list[int]) -> list[Polynomial]:
    """``g_{P,t}`` for ``0 <= t <= s``: the first ``t`` inner vertices contribute ``y``, the rest ``x``."""
    inner = path[1:-1]
    out = []
    for t in range(len(inner) + 1):
        m = 0
        for k, v in enumerate(inner):
            m += ring.var_monomial(ring.y(v) if k < t else ring.x(v))
        out.append(Polynomial(ring, {m: 1}))
    return out


def neighbourhood_binomials(g: Graph, ends: tuple[int, int], ring: PolyRing) -> list[Polynomial]:
    """``f_kl`` for ``k, l`` both in ``N(i)`` or both in ``N(j)``."""
    pairs = set()
    for v in ends:
        for k, l in combinations(sorted(g.neighbors(v)), 2):
            pairs.add((k, l))
    return [edge_binomial(k, l, STANDARD, ring) for k, l in sorted(pairs)]


@dataclass
class CheckResult:
    identity_name: str
    graph: Graph
    edge: Edge
    lhs_gb: list[str]
    rhs_gb: list[str]
    equal: bool
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "identity_name": self.identity_name,
            "graph": self.graph.to_json(),
            "edge": list(self.edge),
            "lhs_gb": self.lhs_gb,
            "rhs_gb": self.rhs_gb,
            "equal": self.equal,
        }
        out.update(self.extra)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _compare(name: str, g: Graph, e: Edge, lhs: Ideal, rhs: Ideal, **extra) -> CheckResult:
    lg, rg = lhs.gb(), rhs.gb()
    return CheckResult(name, g, _edge(*e), lg.to_strings(), rg.to_strings(), lg == rg, extra)


def colon_identity_bridge(g: Graph, e: Edge, ring: PolyRing | None = None) -> CheckResult:
    """``J_G : f_e == J_{G_e}`` for a non-edge ``e`` that is a bridge of ``G + e``."""
    i, j = e
    if g.has_edge(i, j):
        raise ValueError(f"{_edge(i, j)} is already an edge")
    if not is_bridge(g.add_edge(i, j), e):
        raise ValueError(f"{_edge(i, j)} is not a bridge of G + e")
    ring = ring or graph_ring(g)
    lhs = ideal_colon_element(binomial_edge_ideal(g, STANDARD, ring), edge_binomial(i, j, STANDARD, ring))
    rhs = binomial_edge_ideal(graph_Ge(g, e), STANDARD, ring)
    return _compare("colon-bridge", g, e, lhs, rhs)


def colon_identity_path(g: Graph, e: Edge, ring: PolyRing | None = None) -> CheckResult:
    """``J_G : f_e == J_{G_e} + (g_{P,t})`` over all paths ``P`` from ``i`` to ``j``."""
    i, j = e
    if g.has_edge(i, j):
        raise ValueError(f"{_edge(i, j)} is already an edge")
    ring = ring or graph_ring(g)
    lhs = ideal_colon_element(binomial_edge_ideal(g, STANDARD, ring), edge_binomial(i, j, STANDARD, ring))
    paths = simple_paths(g, min(i, j), max(i, j))
    extra_gens = []
    for P in paths:
        extra_gens += path_monomials(ring, P)
    rhs = Ideal(ring, binomial_edge_ideal(graph_Ge(g, e), STANDARD, ring).generators + tuple(extra_gens))
    return _compare("colon-path", g, e, lhs, rhs, n_paths=len(paths))


def colon_identity_parity(g: Graph, e: Edge, ring: PolyRing | None = None) -> CheckResult:
    """Parity colon by an edge binomial.

    * If ``e`` is an edge of a non-bipartite ``g`` with ``g - e`` bipartite:
      ``I_{G-e} : g_e == I_{G-e} + (f_kl : k, l in N_{G-e}(u) or N_{G-e}(v))``,
      cross-checked against ``phi(J_{(G-e)_e})``.
    * If ``e`` is a non-edge, ``g`` bipartite and ``e`` a bridge of ``g + e``:
      ``I_G : g_e == I_G + (f_kl : k, l in N_G(i) or N_G(j))``.
    """
    u, v = e
    ring = ring or graph_ring(g)
    _check_char(ring, PARITY)
    if g.has_edge(u, v):
        if odd_girth(g) == float("inf"):
            raise ValueError("odd-cycle variant needs a non-bipartite graph")
        base = g.remove_edge(u, v)
        part = bipartition(base)
        if part is None:
            raise ValueError("G - e must be bipartite")
        name = "colon-parity-odd"
    else:
        base = g
        if not is_bridge(g.add_edge(u, v), e):
            raise ValueError(f"{_edge(u, v)} is not a bridge of G + e")
        part = bipartition(g.add_edge(u, v))
        if part is None:
            raise ValueError("G must be bipartite")
        name = "colon-parity-bridge"
    I = binomial_edge_ideal(base, PARITY, ring)
    lhs = ideal_colon_element(I, edge_binomial(u, v, PARITY, ring))
    rhs = Ideal(ring, I.generators + tuple(neighbourhood_binomials(base, (u, v), ring)))
    extra = {}
    if name == "colon-parity-odd":
        cross = phi_ideal(binomial_edge_ideal(graph_Ge(base, (u, v)), STANDARD, ring), part)
        extra["phi_cross_check"] = cross.gb() == rhs.gb()
    res = _compare(name, g, e, lhs, rhs, **extra)
    if "phi_cross_check" in extra:
        res.equal = res.equal and extra["phi_cross_check"]
    return res
