"""The pinned instance corpus: edge-list files plus a JSON manifest.

Instances are generated deterministically by :func:`generate_instances`;
``write_corpus`` pins them to disk and ``load_corpus`` reads them back.  Sweep
entries (every graph or every unicyclic class on ``n`` vertices) carry no
graph file and are expanded by the harness at run time.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from pathlib import Path

from .graphs import (
    FamilyTag,
    Graph,
    TmSpec,
    build_Tm,
    build_unicyclic,
    canonical_form,
    complete_graph,
    cycle_graph,
    enumerate_graphs,
    girth,
    is_block_graph,
    is_flower_free,
    path_graph,
)

CORPUS_DIR = Path(__file__).parent / "corpus"
MANIFEST = "manifest.json"


@dataclass(frozen=True)
class Instance:
    id: str
    theorem: str
    graph: Graph | None
    params: dict = field(default_factory=dict, hash=False)

    @property
    def n(self) -> int:
        return self.graph.n if self.graph is not None else self.params["n"]

    def describe(self) -> dict:
        out = {"id": self.id}
        if self.graph is not None:
            out["n"] = self.graph.n
            out["edges"] = [list(e) for e in self.graph.sorted_edges()]
            if self.graph.family_tag and self.graph.family_tag.kind != "Custom":
                out["family"] = self.graph.family_tag.to_json()
        out.update(self.params)
        return out


# generators -------------------------------------------------------------------


def spider_specs(max_vertices: int, min_vertices: int = 3):
    """Spiders with non-increasing leg lengths and at most ``max_vertices`` vertices."""
    for m in range(2, max_vertices):
        for combo in combinations_with_replacement(range(max_vertices), m):
            legs = tuple(sorted(combo, reverse=True))
            spec = TmSpec(m, legs)
            if min_vertices <= spec.n_vertices <= max_vertices:
                yield spec


def _dedup(graphs):
    seen = set()
    for g in graphs:
        key = canonical_form(g)
        if key not in seen:
            seen.add(key)
            yield g


def family_graphs(kind: str, max_vertices: int) -> list[Graph]:
    """Unicyclic family members of kind ``A``, ``B`` or ``C``, one per isomorphism class."""
    out = []
    for spec in spider_specs(max_vertices):
        lengths = spec.legs
        if kind == "A":
            for k in sorted({i for i, s in enumerate(lengths) if s >= 1 and lengths.index(s) == i}):
                out.append(build_unicyclic(spec, "A", leg=k + 1))
        elif kind == "B":
            for k in range(spec.m):
                for k2 in range(k + 1, spec.m):
                    out.append(build_unicyclic(spec, "B", leg=k + 1, leg2=k2 + 1))
        elif kind == "C":
            for k, s in enumerate(lengths):
                if lengths.index(s) != k:
                    continue
                for depth in range(1, s):
                    out.append(build_unicyclic(spec, "C", leg=k + 1, depth=depth))
        else:
            raise ValueError(f"unknown family kind {kind!r}")
    return list(_dedup(out))


def tm_graphs(max_vertices: int) -> list[Graph]:
    return list(_dedup(build_Tm(s) for s in spider_specs(max_vertices)))


def flower_free_block_graphs(max_vertices: int) -> list[Graph]:
    out = []
    for n in range(2, max_vertices + 1):
        for g in enumerate_graphs(n):
            if g.is_connected() and is_block_graph(g) and is_flower_free(g):
                out.append(g)
    return out


def _odd_or_three(g: Graph) -> bool:
    gi = girth(g)
    return gi == 3 or gi % 2 == 1


# parity product configurations: (m, edges of H); K_m sits on 1..m
PRODUCT_CONFIGS = [
    (2, [(2, 3)]),
    (2, [(3, 4)]),
    (2, [(2, 3), (3, 4)]),
    (2, [(1, 3), (2, 4)]),
    (2, [(2, 3), (3, 4), (4, 5)]),
    (2, [(1, 3), (2, 4), (4, 5)]),
    (3, [(3, 4)]),
    (3, [(1, 4), (2, 5)]),
    (3, [(3, 4), (4, 5)]),
    (3, [(1, 4), (2, 5), (3, 6)]),
    (3, [(3, 4), (4, 5), (5, 6)]),
    (3, [(1, 4), (5, 6)]),
]

# gluing configurations: parts and (part_a, u, part_b, v) identifications
GLUING_CONFIGS = [
    ([path_graph(3), path_graph(3)], [(0, 3, 1, 1)]),
    ([complete_graph(3), path_graph(2)], [(0, 3, 1, 1)]),
    ([complete_graph(3), complete_graph(3)], [(0, 1, 1, 1)]),
    ([path_graph(2), complete_graph(3), path_graph(3)], [(0, 2, 1, 1), (1, 3, 2, 1)]),
    ([complete_graph(4), path_graph(3)], [(0, 4, 1, 1)]),
]

PARITY_EXAMPLE_EDGES = [(1, 2), (2, 3), (1, 3), (4, 5), (4, 6), (1, 4)]


def _sigma(g: Graph) -> int:
    return sum(g.family_tag.get("legs"))


def generate_instances() -> list[Instance]:
    """Every instance of the shipped corpus, in a fixed order."""
    items: list[tuple[str, Graph | None, dict]] = []

    def add(theorem, g, **params):
        items.append((theorem, g, params))

    for n in range(3, 7):
        add("Cycle-J", cycle_graph(n))
    for n in (3, 5, 7):
        add("Cycle-I", cycle_graph(n))
    for g in tm_graphs(6):
        add("Tm-powers", g)
    fam_a = family_graphs("A", 6)
    fam_c = family_graphs("C", 6)
    for g in fam_a:
        add("Thm0.2(i)-J", g)
    for g in fam_a:
        if _odd_or_three(g):
            add("Thm0.2(i)-I", g)
    for g in fam_c:
        add("Thm0.2(ii)-J", g)
    for g in fam_c:
        if _odd_or_three(g):
            add("Thm0.2(ii)-I", g)

    a_inst = build_unicyclic(TmSpec(2, (1, 0)), "A", leg=1)
    a_inst4 = build_unicyclic(TmSpec(2, (2, 0)), "A", leg=1)
    c_inst = build_unicyclic(TmSpec(2, (2, 0)), "C", leg=1, depth=1)
    c_inst4 = build_unicyclic(TmSpec(2, (3, 0)), "C", leg=1, depth=2)
    for g in (a_inst, a_inst4, c_inst, c_inst4):
        add("PartialSequence", g)

    # single-ideal values at s = 1, up to 7 vertices
    single = {
        "lemma-a": [g for g in family_graphs("A", 7) if g.n >= 4][::5],
        "lemma-c": [g for g in family_graphs("C", 7)][::3],
    }
    for g in single["lemma-a"]:
        add("SingleIdeal", g, lemma="standard-a")
    for g in single["lemma-c"]:
        add("SingleIdeal", g, lemma="standard-c")
    for g in [g for g in family_graphs("A", 7) if _odd_or_three(g)][::4]:
        add("SingleIdeal", g, lemma="parity-a")
    for g in [g for g in family_graphs("C", 7) if _odd_or_three(g)][::3]:
        add("SingleIdeal", g, lemma="parity-c")

    for m, edges in PRODUCT_CONFIGS:
        n = max(max(e) for e in edges)
        add("ParityProduct", Graph(n, edges), m=m)
    for parts, gluing in GLUING_CONFIGS:
        add(
            "Gluing",
            None,
            n=sum(p.n for p in parts) - len(gluing),
            parts=[{"n": p.n, "edges": [list(e) for e in p.sorted_edges()]} for p in parts],
            gluing=[list(x) for x in gluing],
        )
    for g in flower_free_block_graphs(6):
        add("FlowerFree", g)

    for n in range(2, 7):
        add("ColonIdentities", None, sweep="all-graphs", n=n)

    pd_graphs = [cycle_graph(3), cycle_graph(4), cycle_graph(5), path_graph(4), build_Tm(TmSpec(3, (1, 0, 0)))]
    pd_graphs += family_graphs("A", 5) + family_graphs("C", 5) + family_graphs("B", 5)
    for g in _dedup(pd_graphs):
        add("PDIdentity", g, kind="standard")
    for g in _dedup(pd_graphs):
        if _odd_or_three(g) or g.family_tag.kind in ("Tm", "Path"):
            add("PDIdentity", g, kind="parity")
    add("PDIdentity", Graph(6, PARITY_EXAMPLE_EDGES), kind="parity", ordering=[list(e) for e in PARITY_EXAMPLE_EDGES])

    for n in range(3, 7):
        add("Thm0.1-classification", None, sweep="unicyclic", n=n)
    canon = family_graphs("A", 8) + family_graphs("B", 8) + family_graphs("C", 8)
    canon += [cycle_graph(n) for n in range(3, 9)]
    for g in canon:
        add("Thm0.1-classification", g, check="canonical-ordering")

    out = []
    counters: dict[str, int] = {}
    for theorem, g, params in items:
        k = counters.get(theorem, 0) + 1
        counters[theorem] = k
        out.append(Instance(f"{theorem}#{k:03d}", theorem, g, params))
    return out


# on-disk form ---------------------------------------------------------------------


def _graph_file(g: Graph) -> str:
    body = f"n {g.n}\n" + g.to_edge_list()
    digest = hashlib.sha256(body.encode()).hexdigest()[:12]
    return f"graphs/n{g.n}-{digest}.edges", body


def write_corpus(root: str | Path = CORPUS_DIR, instances: list[Instance] | None = None) -> Path:
    root = Path(root)
    (root / "graphs").mkdir(parents=True, exist_ok=True)
    entries = []
    for inst in instances if instances is not None else generate_instances():
        entry = {"id": inst.id, "theorem": inst.theorem, "params": inst.params}
        if inst.graph is not None:
            rel, body = _graph_file(inst.graph)
            (root / rel).write_text(body)
            entry["graph"] = rel
            tag = inst.graph.family_tag
            if tag is not None and tag.kind != "Custom":
                entry["family_tag"] = tag.to_json()
        entries.append(entry)
    path = root / MANIFEST
    path.write_text(json.dumps({"version": 1, "instances": entries}, indent=1, sort_keys=True) + "\n")
    return path


def load_corpus(root: str | Path = CORPUS_DIR) -> list[Instance]:
    root = Path(root)
    data = json.loads((root / MANIFEST).read_text())
    out = []
    for e in data["instances"]:
        g = None
        if "graph" in e:
            g = Graph.from_edge_list((root / e["graph"]).read_text())
            tag = FamilyTag.from_json(e.get("family_tag"))
            g = Graph(g.n, g.edges, tag or g.family_tag)
        out.append(Instance(e["id"], e["theorem"], g, e["params"]))
    return out
