"""Batch verification of the regularity formulas and ideal identities.

Each registered theorem turns a corpus instance (and a power ``s`` where it
applies) into :class:`TheoremCheckResult` rows.  Regularity values come from
the resolution module, optionally through a content-addressed cache; property
checks report ``predicted = computed = 1`` when the property holds.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import __version__
from .binomial import (
    PARITY,
    STANDARD,
    binomial_edge_ideal,
    bipartition,
    colon_identity_bridge,
    colon_identity_parity,
    colon_identity_path,
    graph_ring,
    phi_ideal,
)
from .cache import ResultCache, ideal_key
from .corpus import CORPUS_DIR, Instance, load_corpus
from .dseq import (
    SequenceOrdering,
    Verdict,
    canonical_ordering,
    check_d_sequence,
    pd_identity_failures,
    recognize_forms,
    search_d_sequence,
)
from .field import CoefficientField
from .graphs import (
    Graph,
    enumerate_graphs,
    enumerate_unicyclic,
    girth,
    internal_vertex_count,
    is_bridge,
    odd_girth,
)
from .ideal import Ideal, ideal_power, ideal_product
from .resolution import BettiTable, RegularityResult, default_cap, minimal_free_resolution, partial_sequence_ideal
from .ring import DEGREVLEX, MonomialOrder

QQ = CoefficientField(0)


@dataclass
class HarnessConfig:
    field: CoefficientField = field(default_factory=CoefficientField.prime)
    order: MonomialOrder = DEGREVLEX
    cap: int | None = None
    cache_dir: str | None = None
    reverify_q: bool = False
    jobs: int = 1

    def cache(self) -> ResultCache | None:
        return ResultCache(self.cache_dir) if self.cache_dir else None


@dataclass
class TheoremCheckResult:
    theorem_id: str
    instance: dict
    predicted: int | None
    computed: RegularityResult
    agree: bool
    runtime_ms: int
    reason: str = "ok"
    detail: dict = field(default_factory=dict)

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "theorem_id": self.theorem_id,
            "instance": self.instance,
            "predicted": self.predicted,
            "computed": self.computed.to_json(),
            "agree": self.agree,
            "reason": self.reason,
        }
        if self.detail:
            out["detail"] = self.detail
        if timings:
            out["runtime_ms"] = self.runtime_ms
        return out


def _result(theorem_id, instance, predicted, computed: RegularityResult, t0: float, **detail) -> TheoremCheckResult:
    if not computed.certified:
        reason = detail.pop("reason", "uncertified")
        agree = False
    elif predicted == computed.value:
        reason, agree = "ok", True
    else:
        reason, agree = "disagree", False
    detail.pop("reason", None)
    ms = int((time.perf_counter() - t0) * 1000)
    return TheoremCheckResult(theorem_id, instance, predicted, computed, agree, ms, reason, detail)


def _holds(ok: bool) -> RegularityResult:
    return RegularityResult(int(ok), True, None)


# regularity with cache and optional rational re-check -----------------------------


def _table(ideal: Ideal, cap: int, cache: ResultCache | None) -> BettiTable:
    if cache is None:
        return minimal_free_resolution(ideal, cap)
    key = ideal_key(ideal, "betti", cap=cap)
    hit = cache.get(key)
    if hit is not None:
        return BettiTable.from_json(hit)
    table = minimal_free_resolution(ideal, cap)
    cache.put(key, table.to_json())
    return table


def compute_regularity(ideal: Ideal, cfg: HarnessConfig, cache: ResultCache | None = None) -> tuple[RegularityResult, dict]:
    cap = cfg.cap if cfg.cap is not None else default_cap(ideal)
    table = _table(ideal, cap, cache)
    res = RegularityResult(table.regularity, table.certified, cap)
    extra: dict = {}
    if cfg.reverify_q and not ideal.ring.field.is_rational:
        q = _table(ideal.to_ring(ideal.ring.with_field(QQ)), cap, cache)
        same = q.nonzero() == table.nonzero() and q.certified == table.certified
        extra["rational_recheck"] = same
        if not same:
            res = RegularityResult(res.value, False, cap)
            extra["reason"] = "field-mismatch"
    return res, extra


# predictions ------------------------------------------------------------------------


def _sigma(g: Graph) -> int:
    return sum(g.family_tag.get("legs"))


def predict_family_a(g: Graph, kind, s: int) -> int | None:
    """Family (a): center joined to a pendant vertex."""
    i, gi = internal_vertex_count(g), girth(g)
    if kind is STANDARD:
        return 2 * s + i - 1 if gi == 3 else 2 * s + i - 3
    if gi == 3:
        return 2 * s + i
    return 2 * s + i - 2 if gi % 2 else None


def predict_family_c(g: Graph, kind, s: int) -> int | None:
    """Family (c): center joined to an internal vertex; standard ``s = 1`` uses the single-ideal value."""
    i, gi = internal_vertex_count(g), girth(g)
    if kind is STANDARD and s == 1:
        return predict_single(g, "standard-c")
    if kind is PARITY and gi > 3 and gi % 2 == 0:
        return None
    return 2 * s + i - 1 if gi == 3 else 2 * s + i - 2


def predict_single(g: Graph, lemma: str) -> int:
    sigma, gi = _sigma(g), girth(g)
    if lemma == "standard-a":
        return 1 + sigma
    if lemma == "standard-c":
        return 1 + sigma if gi == 3 else sigma
    if lemma == "parity-a":
        return 2 + sigma
    if lemma == "parity-c":
        return 1 + sigma
    raise ValueError(f"unknown single-ideal value {lemma!r}")


def predict_partial(g: Graph, s: int) -> int:
    kind = g.family_tag.kind
    if kind == "UnicyclicC" and s == 1:
        return predict_single(g, "standard-c")
    return 2 * s + _sigma(g) - 1


# per-theorem runners ---------------------------------------------------------------


def _power_row(tid, inst, kind, s, predicted, cfg, cache):
    t0 = time.perf_counter()
    g = inst.graph
    ring = graph_ring(g, cfg.field, cfg.order)
    ideal = ideal_power(binomial_edge_ideal(g, kind, ring), s)
    res, extra = compute_regularity(ideal, cfg, cache)
    return [_result(tid, {**inst.describe(), "s": s}, predicted, res, t0, **extra)]


def _run_cycle(kind):
    def run(tid, inst, s, cfg, cache):
        n = inst.graph.n
        pred = 2 * s + n - 4 if kind is STANDARD else 2 * s + n - 2
        return _power_row(tid, inst, kind, s, pred, cfg, cache)

    return run


def _run_tm(tid, inst, s, cfg, cache):
    return _power_row(tid, inst, STANDARD, s, 2 * s + internal_vertex_count(inst.graph) - 1, cfg, cache)


def _run_family(predict, kind):
    def run(tid, inst, s, cfg, cache):
        return _power_row(tid, inst, kind, s, predict(inst.graph, kind, s), cfg, cache)

    return run


def _run_partial(tid, inst, s, cfg, cache):
    g = inst.graph
    ring = graph_ring(g, cfg.field, cfg.order)
    ordering = canonical_ordering(g)
    rows = []
    for i in range(len(ordering)):
        t0 = time.perf_counter()
        ideal = partial_sequence_ideal(g, STANDARD, ordering, i, s, ring)
        res, extra = compute_regularity(ideal, cfg, cache)
        rows.append(_result(tid, {**inst.describe(), "s": s, "prefix": i}, predict_partial(g, s), res, t0, **extra))
    return rows


def _run_single(tid, inst, s, cfg, cache):
    lemma = inst.params["lemma"]
    kind = STANDARD if lemma.startswith("standard") else PARITY
    t0 = time.perf_counter()
    ring = graph_ring(inst.graph, cfg.field, cfg.order)
    res, extra = compute_regularity(binomial_edge_ideal(inst.graph, kind, ring), cfg, cache)
    return [_result(tid, inst.describe(), predict_single(inst.graph, lemma), res, t0, **extra)]


def _run_product(tid, inst, s, cfg, cache):
    from .graphs import complete_graph
    from .resolution import check_product_configuration

    t0 = time.perf_counter()
    h, m = inst.graph, inst.params["m"]
    check_product_configuration(h, m)
    ring = graph_ring(h, cfg.field, cfg.order)
    k = Graph(h.n, complete_graph(m).edges)
    ideal = ideal_product(binomial_edge_ideal(h, PARITY, ring), binomial_edge_ideal(k, STANDARD, ring))
    res, extra = compute_regularity(ideal, cfg, cache)
    return [_result(tid, inst.describe(), 2 + len(h.edges), res, t0, **extra)]


def _run_gluing(tid, inst, s, cfg, cache):
    from .resolution import gluing_additivity_check

    t0 = time.perf_counter()
    parts = [Graph(p["n"], [tuple(e) for e in p["edges"]]) for p in inst.params["parts"]]
    gluing = [tuple(x) for x in inst.params["gluing"]]
    _, info = gluing_additivity_check(parts, gluing, cfg.field)
    computed = RegularityResult(info["whole"], info["certified"], None)
    return [_result(tid, inst.describe(), sum(info["parts"]), computed, t0, parts_reg=info["parts"])]


def _run_flower_free(tid, inst, s, cfg, cache):
    t0 = time.perf_counter()
    ring = graph_ring(inst.graph, cfg.field, cfg.order)
    res, extra = compute_regularity(binomial_edge_ideal(inst.graph, STANDARD, ring), cfg, cache)
    return [_result(tid, inst.describe(), internal_vertex_count(inst.graph) + 1, res, t0, **extra)]


def colon_identity_counts(g: Graph) -> dict:
    """Check every applicable colon identity on ``g``; returns counts of cases and failures."""
    counts = {"path": 0, "bridge": 0, "parity_bridge": 0, "parity_odd": 0, "phi": 0, "failures": []}
    ring = graph_ring(g, QQ)
    bip = bipartition(g)
    for i in g.vertices:
        for j in range(i + 1, g.n + 1):
            e = (i, j)
            if g.has_edge(i, j):
                if odd_girth(g) != float("inf") and bipartition(g.remove_edge(i, j)) is not None:
                    counts["parity_odd"] += 1
                    if not colon_identity_parity(g, e, ring).equal:
                        counts["failures"].append(["parity-odd", list(e)])
                continue
            counts["path"] += 1
            if not colon_identity_path(g, e, ring).equal:
                counts["failures"].append(["path", list(e)])
            if is_bridge(g.add_edge(i, j), e):
                counts["bridge"] += 1
                if not colon_identity_bridge(g, e, ring).equal:
                    counts["failures"].append(["bridge", list(e)])
                if bip is not None:
                    counts["parity_bridge"] += 1
                    if not colon_identity_parity(g, e, ring).equal:
                        counts["failures"].append(["parity-bridge", list(e)])
    if bip is not None and g.edges:
        counts["phi"] += 1
        same = phi_ideal(binomial_edge_ideal(g, STANDARD, ring), bip).gb() == binomial_edge_ideal(g, PARITY, ring).gb()
        if not same:
            counts["failures"].append(["phi", []])
    return counts


def _run_colon(tid, inst, s, cfg, cache):
    rows = []
    for g in enumerate_graphs(inst.params["n"]):
        t0 = time.perf_counter()
        c = colon_identity_counts(g)
        ok = not c["failures"]
        desc = {"id": inst.id, "n": g.n, "edges": [list(e) for e in g.sorted_edges()]}
        rows.append(_result(tid, desc, 1, _holds(ok), t0, **c))
    return rows


def _run_pd(tid, inst, s, cfg, cache):
    t0 = time.perf_counter()
    g = inst.graph
    kind = PARITY if inst.params["kind"] == "parity" else STANDARD
    if "ordering" in inst.params:
        ordering = SequenceOrdering(tuple(e) for e in inst.params["ordering"])
    else:
        ordering = canonical_ordering(g)
    s_max = max(s, 2)
    report = check_d_sequence(g, kind, ordering)
    desc = {**inst.describe(), "s_max": s_max}
    if not report.is_dsequence:
        return [_result(tid, desc, 1, RegularityResult(0, False, None), t0, reason="precondition")]
    bad = pd_identity_failures(g, kind, ordering, s_max)
    return [_result(tid, desc, 1, _holds(not bad), t0, failures=[list(b) for b in bad])]


def _run_classification(tid, inst, s, cfg, cache):
    rows = []
    if inst.graph is not None:
        t0 = time.perf_counter()
        g = inst.graph
        ordering = canonical_ordering(g)
        std = check_d_sequence(g, STANDARD, ordering)
        par = check_d_sequence(g, PARITY, ordering)
        ok = std.is_dsequence and par.is_dsequence
        detail = {"ordering": ordering.to_json(), "standard": std.verdict.value, "parity": par.verdict.value}
        return [_result(tid, inst.describe(), 1, _holds(ok), t0, **detail)]
    for g in enumerate_unicyclic(inst.params["n"], inst.params["n"]):
        t0 = time.perf_counter()
        forms = recognize_forms(g)
        std = search_d_sequence(g, STANDARD)
        computed = RegularityResult(int(std.is_dsequence), std.verdict is not Verdict.INCONCLUSIVE, None)
        detail = {"form": "+".join(sorted(forms)) or "none", "standard": std.verdict.value}
        if forms:
            par = search_d_sequence(g, PARITY)
            detail["parity"] = par.verdict.value
            if not par.is_dsequence:
                computed = RegularityResult(0, computed.certified, None)
        desc = {"id": inst.id, "n": g.n, "edges": [list(e) for e in g.sorted_edges()]}
        rows.append(_result(tid, desc, int(bool(forms)), computed, t0, **detail))
    return rows


# registry -------------------------------------------------------------------------------


@dataclass(frozen=True)
class Theorem:
    id: str
    summary: str
    run: Callable
    s_values: tuple[int, ...] | None = (1, 2)


REGISTRY: dict[str, Theorem] = {
    t.id: t
    for t in [
        Theorem("Thm0.1-classification", "d-sequence iff unicyclic form (a)/(b)/(c); canonical orderings verify", _run_classification, None),
        Theorem("Thm0.2(i)-J", "reg S/J^s on family (a)", _run_family(predict_family_a, STANDARD)),
        Theorem("Thm0.2(i)-I", "reg S/I^s on family (a), girth 3 or odd", _run_family(predict_family_a, PARITY)),
        Theorem("Thm0.2(ii)-J", "reg S/J^s on family (c); s = 1 via the single-ideal value", _run_family(predict_family_c, STANDARD)),
        Theorem("Thm0.2(ii)-I", "reg S/I^s on family (c), girth 3 or odd", _run_family(predict_family_c, PARITY)),
        Theorem("Cycle-J", "reg S/J^s of C_n is 2s + n - 4", _run_cycle(STANDARD)),
        Theorem("Cycle-I", "reg S/I^s of an odd cycle is 2s + n - 2", _run_cycle(PARITY)),
        Theorem("Tm-powers", "reg S/J^s of a spider is 2s + i(G) - 1", _run_tm),
        Theorem("PartialSequence", "reg of prefix ideal plus J^s for every prefix", _run_partial),
        Theorem("SingleIdeal", "reg S/J and reg S/I of family members", _run_single, None),
        Theorem("ParityProduct", "reg S/(I_H J_Km) is 2 + |E(H)|", _run_product, None),
        Theorem("Gluing", "reg is additive under gluing at free vertices", _run_gluing, None),
        Theorem("FlowerFree", "reg S/J is i(G) + 1 for flower-free block graphs", _run_flower_free, None),
        Theorem("ColonIdentities", "colon identities and phi(J_G) = I_G on all small graphs", _run_colon, None),
        Theorem("PDIdentity", "power-colon identity along verified d-sequences", _run_pd, (3,)),
    ]
}


def _in_range(x: int, rng) -> bool:
    return rng is None or x in rng


def select_instances(theorem_id: str, n_range=None, corpus: list[Instance] | None = None) -> list[Instance]:
    if theorem_id not in REGISTRY:
        raise KeyError(f"unknown theorem id {theorem_id!r}")
    corpus = load_corpus() if corpus is None else corpus
    return [i for i in corpus if i.theorem == theorem_id and _in_range(i.n, n_range)]


def _units(theorem_id: str, instances: list[Instance], s_range) -> list[tuple[str, Instance, int]]:
    th = REGISTRY[theorem_id]
    if th.s_values is None:
        return [(theorem_id, inst, 1) for inst in instances]
    s_vals = sorted(s_range) if s_range is not None else list(th.s_values)
    if theorem_id == "PDIdentity":
        # one unit per instance checking every 2 <= s <= s_max
        return [(theorem_id, inst, max(s_vals)) for inst in instances]
    return [(theorem_id, inst, s) for inst in instances for s in s_vals]


def _run_unit(unit, cfg: HarnessConfig) -> tuple[list[TheoremCheckResult], dict]:
    theorem_id, inst, s = unit
    cache = cfg.cache()
    rows = REGISTRY[theorem_id].run(theorem_id, inst, s, cfg, cache)
    return rows, cache.stats() if cache else {"hits": 0, "misses": 0}


@dataclass
class RunManifest:
    version: str
    field: str
    order: str
    theorems: list[str]
    instances: list[str]
    s_range: list[int] | None
    cache_hits: int = 0
    cache_misses: int = 0
    totals: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "field": self.field,
            "order": self.order,
            "theorems": self.theorems,
            "instances": self.instances,
            "s_range": self.s_range,
            "cache": {"hits": self.cache_hits, "misses": self.cache_misses},
            "totals": self.totals,
        }


def run_units(units, cfg: HarnessConfig) -> tuple[list[TheoremCheckResult], dict]:
    stats = {"hits": 0, "misses": 0}
    rows: list[TheoremCheckResult] = []
    if cfg.jobs > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            outs = list(pool.map(_run_unit, units, [cfg] * len(units)))
    else:
        outs = [_run_unit(u, cfg) for u in units]
    for r, st in outs:
        rows += r
        stats["hits"] += st["hits"]
        stats["misses"] += st["misses"]
    return rows, stats


def verify_theorem(
    theorem_id: str,
    n_range: Iterable[int] | None = None,
    s_range: Iterable[int] | None = None,
    config: HarnessConfig | None = None,
    instances: list[Instance] | None = None,
    instance_filter: Callable[[Instance], bool] | None = None,
) -> list[TheoremCheckResult]:
    """Rows for every selected corpus instance of ``theorem_id`` (and every ``s``)."""
    rows, _ = verify(theorem_id, n_range, s_range, config, instances, instance_filter)
    return rows


def verify(theorem_id, n_range=None, s_range=None, config=None, instances=None, instance_filter=None):
    cfg = config or HarnessConfig()
    n_range = set(n_range) if n_range is not None else None
    insts = select_instances(theorem_id, n_range, instances)
    if instance_filter is not None:
        insts = [i for i in insts if instance_filter(i)]
    units = _units(theorem_id, insts, s_range)
    rows, stats = run_units(units, cfg)
    manifest = RunManifest(
        __version__,
        str(cfg.field),
        str(cfg.order),
        [theorem_id],
        [i.id for i in insts],
        sorted(s_range) if s_range is not None else None,
        stats["hits"],
        stats["misses"],
        summarize(rows),
    )
    return rows, manifest


def summarize(rows: list[TheoremCheckResult]) -> dict:
    out = {"rows": len(rows), "agree": 0, "disagree": 0, "uncertified": 0, "other": 0}
    for r in rows:
        if r.agree:
            out["agree"] += 1
        elif r.reason == "disagree":
            out["disagree"] += 1
        elif r.reason == "uncertified":
            out["uncertified"] += 1
        else:
            out["other"] += 1
    return out


CSV_FIELDS = ["theorem_id", "instance_id", "n", "edges", "s", "prefix", "predicted", "computed", "certified", "agree", "reason"]


def results_csv(rows: list[TheoremCheckResult]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        inst = r.instance
        w.writerow(
            {
                "theorem_id": r.theorem_id,
                "instance_id": inst.get("id", ""),
                "n": inst.get("n", ""),
                "edges": " ".join(f"{a}-{b}" for a, b in inst.get("edges", [])),
                "s": inst.get("s", ""),
                "prefix": inst.get("prefix", ""),
                "predicted": r.predicted,
                "computed": r.computed.value,
                "certified": r.computed.certified,
                "agree": r.agree,
                "reason": r.reason,
            }
        )
    return buf.getvalue()


def results_json(rows: list[TheoremCheckResult], manifest: RunManifest | None = None, timings: bool = False) -> str:
    out: dict = {"results": [r.to_json(timings) for r in rows]}
    if manifest is not None:
        out["totals"] = manifest.totals
    return json.dumps(out, indent=1, sort_keys=True)
