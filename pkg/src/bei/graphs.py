"""Simple graphs on vertices ``1..n``, their invariants and the graph families.

Spider trees ``T_m`` put the center at vertex 1 and number the legs
consecutively: leg ``i`` has vertices ``p[i][0], ..., p[i][s_i]`` with
``p[i][0]`` adjacent to the center and ``p[i][s_i]`` the pendant vertex.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class FamilyTag:
    """Which construction produced a graph, with its parameters."""

    kind: str
    params: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(sorted(self.params)))

    KINDS = ("Tm", "UnicyclicA", "UnicyclicB", "UnicyclicC", "Cycle", "Complete", "Star", "Flower", "Path", "Custom")

    def get(self, name: str, default=None):
        for k, v in self.params:
            if k == name:
                return v
        return default

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        for k, v in self.params:
            out[k] = list(v) if isinstance(v, tuple) else v
        return out

    @classmethod
    def from_json(cls, d: dict | None) -> "FamilyTag | None":
        if not d:
            return None
        params = []
        for k, v in d.items():
            if k == "kind":
                continue
            if isinstance(v, list):
                v = tuple(tuple(x) if isinstance(x, list) else x for x in v)
            params.append((k, v))
        return cls(d["kind"], tuple(params))


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset
    family_tag: FamilyTag | None = field(default=None, compare=False)

    def __init__(self, n: int, edges: Iterable, family_tag: FamilyTag | None = None):
        es = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge {u}-{v} outside vertices 1..{n}")
            es.add(_edge(u, v))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(es))
        object.__setattr__(self, "family_tag", family_tag)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return _edge(u, v) in self.edges

    def neighbors(self, v: int) -> set[int]:
        return {b if a == v else a for a, b in self.edges if v in (a, b)}

    def adjacency(self) -> dict[int, set[int]]:
        adj = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def add_edge(self, u: int, v: int, tag: FamilyTag | None = None) -> "Graph":
        return Graph(self.n, self.edges | {_edge(u, v)}, tag)

    def remove_edge(self, u: int, v: int) -> "Graph":
        return Graph(self.n, self.edges - {_edge(u, v)})

    def relabel(self, perm: dict[int, int], tag: FamilyTag | None = None) -> "Graph":
        return Graph(self.n, [(perm[a], perm[b]) for a, b in self.edges], tag)

    def components(self) -> int:
        return len(_components(self))

    def is_connected(self) -> bool:
        return self.components() <= 1

    # I/O -------------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "edges": [list(e) for e in self.sorted_edges()],
            "family_tag": self.family_tag.to_json() if self.family_tag else None,
        }

    @classmethod
    def from_json(cls, d: dict | str) -> "Graph":
        if isinstance(d, str):
            d = json.loads(d)
        return cls(d["n"], [tuple(e) for e in d["edges"]], FamilyTag.from_json(d.get("family_tag")))

    def to_edge_list(self) -> str:
        return "".join(f"{a} {b}\n" for a, b in self.sorted_edges())

    @classmethod
    def from_edge_list(cls, text: str, n: int | None = None) -> "Graph":
        """Parse ``u v`` lines; ``#`` starts a comment, ``n <count>`` fixes the vertex count."""
        edges = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if parts[0] == "n" and len(parts) == 2:
                n = int(parts[1])
                continue
            if len(parts) != 2:
                raise ValueError(f"bad edge line: {line!r}")
            edges.append((int(parts[0]), int(parts[1])))
        if n is None:
            n = max((max(e) for e in edges), default=0)
        return cls(n, edges, FamilyTag("Custom"))

    def __repr__(self) -> str:
        tag = f", {self.family_tag.kind}" if self.family_tag else ""
        return f"Graph(n={self.n}, edges={self.sorted_edges()}{tag})"


def load_graph(path: str | Path) -> Graph:
    """Read a graph from a ``.json`` file or an edge-list file."""
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        return Graph.from_json(text)
    return Graph.from_edge_list(text)


def _components(g: Graph, skip: Edge | None = None) -> list[set[int]]:
    adj = {v: [] for v in g.vertices}
    for e in g.edges:
        if e == skip:
            continue
        a, b = e
        adj[a].append(b)
        adj[b].append(a)
    seen: set[int] = set()
    comps = []
    for v in g.vertices:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(comp)
    return comps


# families ------------------------------------------------------------------


@dataclass(frozen=True)
class TmSpec:
    """A spider: ``m`` legs, leg ``i`` with ``legs[i] + 1`` edges."""

    m: int
    legs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "legs", tuple(self.legs))
        if self.m < 2:
            raise ValueError("T_m needs m >= 2")
        if len(self.legs) != self.m:
            raise ValueError("need one leg length per leg")
        if any(s < 0 for s in self.legs):
            raise ValueError("leg lengths must be >= 0")

    @property
    def n_vertices(self) -> int:
        return 1 + sum(s + 1 for s in self.legs)

    @property
    def sigma(self) -> int:
        return sum(self.legs)

    def leg_vertices(self) -> list[list[int]]:
        out = []
        nxt = 2
        for s in self.legs:
            out.append(list(range(nxt, nxt + s + 1)))
            nxt += s + 1
        return out


def build_Tm(spec: TmSpec) -> Graph:
    edges = []
    for leg in spec.leg_vertices():
        prev = 1
        for v in leg:
            edges.append((prev, v))
            prev = v
    return Graph(spec.n_vertices, edges, FamilyTag("Tm", (("m", spec.m), ("legs", spec.legs))))


def build_unicyclic(spec: TmSpec, kind: str, leg: int | None = None, depth: int = 1, leg2: int | None = None) -> Graph:
    """Add one edge to the spider ``spec`` (legs are 1-based).

    * ``A``: pendant vertex of ``leg`` to the center.
    * ``B``: pendant vertex of ``leg`` to pendant vertex of ``leg2``.
    * ``C``: center to the internal vertex at distance ``depth + 1`` from it
      on ``leg`` (depth 1 is the second vertex of the leg).
    """
    kind = kind.upper()
    legs = spec.leg_vertices()
    tree = build_Tm(spec)
    if kind == "A":
        if leg is None:
            leg = next((i + 1 for i, s in enumerate(spec.legs) if s >= 1), None)
            if leg is None:
                raise ValueError("kind A needs a leg with s >= 1")
        if spec.legs[leg - 1] < 1:
            raise ValueError(f"kind A: leg {leg} has s = 0, its pendant is already adjacent to the center")
        u, v = 1, legs[leg - 1][-1]
        girth = spec.legs[leg - 1] + 2
    elif kind == "B":
        leg = 1 if leg is None else leg
        leg2 = (2 if leg != 2 else 1) if leg2 is None else leg2
        if leg == leg2:
            raise ValueError("kind B needs two different legs")
        u, v = legs[leg - 1][-1], legs[leg2 - 1][-1]
        girth = spec.legs[leg - 1] + spec.legs[leg2 - 1] + 3
    elif kind == "C":
        if leg is None:
            leg = next((i + 1 for i, s in enumerate(spec.legs) if s >= depth + 1), None)
            if leg is None:
                raise ValueError(f"kind C needs a leg with an internal vertex at depth {depth}")
        if depth < 1 or depth + 1 > spec.legs[leg - 1]:
            raise ValueError(f"kind C: leg {leg} has no internal vertex at depth {depth}")
        u, v = 1, legs[leg - 1][depth]
        girth = depth + 2
    else:
        raise ValueError(f"unknown kind {kind!r}")
    tag = FamilyTag(
        "Unicyclic" + kind,
        (("m", spec.m), ("legs", spec.legs), ("leg", leg), ("leg2", leg2), ("depth", depth if kind == "C" else None),
         ("added", _edge(u, v)), ("girth", girth)),
    )
    return tree.add_edge(u, v, tag)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs n >= 3")
    return Graph(n, [(i, i % n + 1) for i in range(1, n + 1)], FamilyTag("Cycle", (("n", n),)))


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(1, n)], FamilyTag("Path", (("n", n),)))


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(1, n + 1), 2), FamilyTag("Complete", (("n", n),)))


def star_graph(k: int) -> Graph:
    return Graph(k + 1, [(1, i) for i in range(2, k + 2)], FamilyTag("Star", (("k", k),)))


def flower_graph(h: int, k: int) -> Graph:
    """``h`` triangles and ``k`` claws glued at vertex 1 (a leaf of each claw)."""
    edges = []
    nxt = 2
    for _ in range(h):
        a, b = nxt, nxt + 1
        edges += [(1, a), (1, b), (a, b)]
        nxt += 2
    for _ in range(k):
        c, l1, l2 = nxt, nxt + 1, nxt + 2
        edges += [(1, c), (c, l1), (c, l2)]
        nxt += 3
    return Graph(nxt - 1, edges, FamilyTag("Flower", (("h", h), ("k", k))))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    return Graph(g.n + h.n, list(g.edges) + [(a + g.n, b + g.n) for a, b in h.edges], FamilyTag("Custom"))


def glue(g: Graph, v: int, h: Graph, w: int) -> Graph:
    """Identify vertex ``v`` of ``g`` with vertex ``w`` of ``h``.

    ``h``'s vertices other than ``w`` are renumbered after ``g``'s.
    """
    perm = {}
    nxt = g.n + 1
    for u in h.vertices:
        if u == w:
            perm[u] = v
        else:
            perm[u] = nxt
            nxt += 1
    return Graph(g.n + h.n - 1, list(g.edges) + [(perm[a], perm[b]) for a, b in h.edges], FamilyTag("Custom"))


# invariants ------------------------------------------------------------------


def _bfs_dist(adj: dict[int, set[int]], r: int) -> tuple[dict[int, int], dict[int, int]]:
    dist = {r: 0}
    parent = {r: 0}
    queue = [r]
    for u in queue:
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
    return dist, parent


def girth(g: Graph) -> float:
    """Length of a shortest cycle; ``math.inf`` for forests."""
    adj = g.adjacency()
    best = math.inf
    for r in g.vertices:
        dist, parent = _bfs_dist(adj, r)
        for a, b in g.edges:
            if a in dist and b in dist and parent[a] != b and parent[b] != a:
                best = min(best, dist[a] + dist[b] + 1)
    return best


def odd_girth(g: Graph) -> float:
    """Length of a shortest odd cycle; ``math.inf`` for bipartite graphs."""
    adj = g.adjacency()
    best = math.inf
    for r in g.vertices:
        dist, _ = _bfs_dist(adj, r)
        for a, b in g.edges:
            if a in dist and dist.get(b) == dist[a]:
                best = min(best, 2 * dist[a] + 1)
    return best


def is_bridge(g: Graph, e: Edge) -> bool:
    e = _edge(*e)
    if e not in g.edges:
        raise ValueError(f"{e} is not an edge")
    return len(_components(g, skip=e)) > g.components()


def graph_Ge(g: Graph, e: Edge) -> Graph:
    """Add every edge between two neighbours of ``i`` and between two neighbours of ``j``."""
    i, j = e
    if g.has_edge(i, j):
        raise ValueError(f"{_edge(i, j)} is already an edge")
    new = set(g.edges)
    for v in (i, j):
        for a, b in combinations(sorted(g.neighbors(v)), 2):
            new.add((a, b))
    return Graph(g.n, new, FamilyTag("Custom"))


def maximal_cliques(g: Graph) -> list[frozenset[int]]:
    """Bron-Kerbosch with pivoting."""
    adj = g.adjacency()
    out: list[frozenset[int]] = []

    def bk(r: set[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            out.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in list(p - adj[pivot]):
            bk(r | {v}, p & adj[v], x & adj[v])
            p.discard(v)
            x.add(v)

    bk(set(), set(g.vertices), set())
    return out


def clique_degree(g: Graph, v: int) -> int:
    """Number of maximal cliques containing ``v``."""
    return sum(1 for c in maximal_cliques(g) if v in c)


def free_vertices(g: Graph) -> list[int]:
    cliques = maximal_cliques(g)
    return [v for v in g.vertices if sum(1 for c in cliques if v in c) == 1]


def internal_vertex_count(g: Graph) -> int:
    """``i(G)``: vertices lying in at least two maximal cliques."""
    cliques = maximal_cliques(g)
    return sum(1 for v in g.vertices if sum(1 for c in cliques if v in c) >= 2)


def is_block_graph(g: Graph) -> bool:
    """Every biconnected block is a clique."""
    for blk in _blocks(g):
        vs = {v for e in blk for v in e}
        if len(blk) != len(vs) * (len(vs) - 1) // 2:
            return False
    return True


def _blocks(g: Graph) -> list[set[Edge]]:
    """Biconnected components as edge sets (Hopcroft-Tarjan)."""
    adj = g.adjacency()
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    stack: list[Edge] = []
    blocks: list[set[Edge]] = []
    counter = [0]

    def dfs(u: int, parent: int) -> None:
        disc[u] = low[u] = counter[0]
        counter[0] += 1
        for w in sorted(adj[u]):
            if w not in disc:
                stack.append(_edge(u, w))
                dfs(w, u)
                low[u] = min(low[u], low[w])
                if low[w] >= disc[u]:
                    blk = set()
                    while True:
                        e = stack.pop()
                        blk.add(e)
                        if e == _edge(u, w):
                            break
                    blocks.append(blk)
            elif w != parent and disc[w] < disc[u]:
                stack.append(_edge(u, w))
                low[u] = min(low[u], disc[w])

    for v in g.vertices:
        if v not in disc:
            dfs(v, 0)
    return blocks


def _petals(g: Graph, v: int, adj: dict[int, set[int]]) -> list[tuple[frozenset[int], str]]:
    """Triangle and claw petals at ``v`` (vertex sets excluding ``v``)."""
    nv = adj[v]
    out = []
    for a, b in combinations(sorted(nv), 2):
        if b in adj[a]:
            out.append((frozenset((a, b)), "C3"))
    for c in sorted(nv):
        leaves = sorted(adj[c] - nv - {v})
        for l1, l2 in combinations(leaves, 2):
            if l2 not in adj[l1]:
                out.append((frozenset((c, l1, l2)), "K13"))
    return out


def find_flower(g: Graph) -> tuple[int, int, int] | None:
    """An induced ``F_{h,k}(v)`` with ``h + k = 3`` as ``(v, h, k)``, or None.

    A flower with more petals contains one with exactly three, so three
    pairwise compatible petals decide the question.
    """
    adj = g.adjacency()
    for v in g.vertices:
        petals = _petals(g, v, adj)
        if len(petals) < 3:
            continue

        def compatible(p: frozenset[int], q: frozenset[int]) -> bool:
            if p & q:
                return False
            return all(not (adj[a] & q) for a in p)

        for trio in combinations(petals, 3):
            if all(compatible(p[0], q[0]) for p, q in combinations(trio, 2)):
                h = sum(1 for _, kind in trio if kind == "C3")
                return (v, h, 3 - h)
    return None


def is_flower_free(g: Graph) -> bool:
    return find_flower(g) is None


# canonical labelling and enumeration ---------------------------------------------


def _refine(adj: list[list[int]], colors: list[int]) -> list[int]:
    """Colour refinement; colour ids depend only on the isomorphism class."""
    n = len(adj)
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def canonical_form(g: Graph) -> tuple[int, tuple[Edge, ...]]:
    """Isomorphism-invariant key: the minimal relabelled edge list over the
    leaves of an individualisation-refinement search."""
    n = g.n
    adj = [[] for _ in range(n)]
    for a, b in g.edges:
        adj[a - 1].append(b - 1)
        adj[b - 1].append(a - 1)
    best: list = [None]

    def search(colors: list[int]) -> None:
        colors = _refine(adj, colors)
        if len(set(colors)) == n:
            key = tuple(sorted(_edge(colors[a - 1] + 1, colors[b - 1] + 1) for a, b in g.edges))
            if best[0] is None or key < best[0]:
                best[0] = key
            return
        sizes: dict[int, int] = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        target = min(c for c, k in sizes.items() if k > 1)
        for v in range(n):
            if colors[v] == target:
                # individualise v: it gets a colour just below its cell
                search([2 * c + (1 if c == target and u != v else 0) for u, c in enumerate(colors)])

    search([0] * n)
    return (n, best[0] or ())


def is_unicyclic(g: Graph) -> bool:
    return g.is_connected() and len(g.edges) == g.n


def enumerate_unicyclic(n_max: int, n_min: int = 3) -> Iterator[Graph]:
    """All connected unicyclic graphs on ``n_min..n_max`` vertices up to isomorphism.

    Grown by attaching leaves: removing a leaf from a unicyclic graph that is
    not a cycle leaves a unicyclic graph.
    """
    if n_max > 9:
        raise ValueError("enumeration is limited to n <= 9")
    level: dict = {}
    for n in range(3, n_max + 1):
        nxt: dict = {}
        cyc = cycle_graph(n)
        nxt[canonical_form(cyc)] = cyc
        for g in level.values():
            for v in g.vertices:
                h = Graph(n, list(g.edges) + [(v, n)])
                nxt.setdefault(canonical_form(h), h)
        level = nxt
        if n >= n_min:
            for key in sorted(level):
                _, edges = key
                yield Graph(n, edges, FamilyTag("Custom"))


def cycle_edges(g: Graph) -> set[Edge]:
    """Edges lying on some cycle (the non-bridges)."""
    return {e for e in g.edges if not is_bridge(g, e)}


def enumerate_graphs(n: int) -> list[Graph]:
    """All simple graphs on ``n`` vertices up to isomorphism (``n <= 7``)."""
    if n > 7:
        raise ValueError("graph enumeration is limited to n <= 7")
    level = {canonical_form(Graph(n, [])): Graph(n, [])}
    out = list(level.values())
    pairs = list(combinations(range(1, n + 1), 2))
    while level:
        nxt: dict = {}
        for g in level.values():
            for a, b in pairs:
                if (a, b) not in g.edges:
                    h = g.add_edge(a, b)
                    nxt.setdefault(canonical_form(h), h)
        level = nxt
        out += list(level.values())
    return [Graph(n, g.edges, FamilyTag("Custom")) for g in out]
