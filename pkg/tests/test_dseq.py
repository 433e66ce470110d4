import random
from itertools import combinations

from hypothesis import given, strategies as st

from bei.binomial import PARITY, STANDARD, bipartition, graph_ring
from bei.corpus import PARITY_EXAMPLE_EDGES, family_graphs
from bei.dseq import (
    SequenceOrdering,
    Verdict,
    canonical_ordering,
    check_d_sequence,
    classification_csv,
    classify_unicyclic,
    recognize_forms,
    search_d_sequence,
    verify_pd_identity,
)
from bei.graphs import (
    Graph,
    TmSpec,
    build_Tm,
    build_unicyclic,
    cycle_edges,
    cycle_graph,
    disjoint_union,
    enumerate_unicyclic,
    path_graph,
    star_graph,
)

OFF_CYCLE_CLAW = Graph(6, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (4, 6)])


def test_check_examples():
    for n in range(2, 6):
        g = path_graph(n)
        assert check_d_sequence(g, STANDARD, SequenceOrdering(sorted(g.edges))).is_dsequence
    c3 = cycle_graph(3)
    assert check_d_sequence(c3, STANDARD, SequenceOrdering([(1, 2), (2, 3), (1, 3)])).is_dsequence
    g = Graph(6, PARITY_EXAMPLE_EDGES)
    order = SequenceOrdering([(1, 2), (2, 3), (1, 3), (4, 5), (4, 6), (1, 4)])
    assert check_d_sequence(g, PARITY, order).is_dsequence


def test_failed_ordering_reports_violation():
    g = OFF_CYCLE_CLAW
    r = check_d_sequence(g, STANDARD, SequenceOrdering(sorted(g.edges)))
    assert r.verdict is Verdict.NOT_THIS_ORDERING
    assert r.violation is not None
    assert "violation" in r.dumps()


def test_canonical_ordering_examples():
    t = build_Tm(TmSpec(2, (1, 0)))
    order = canonical_ordering(t)
    assert list(order.edges) == [(1, 2), (2, 3), (1, 4)]
    assert check_d_sequence(t, STANDARD, order).is_dsequence
    a = build_unicyclic(TmSpec(3, (2, 1, 0)), "A", leg=2)
    order = canonical_ordering(a)
    assert order.edges[-1] == a.family_tag.get("added")
    tree = order.prefix_graph(a, len(order) - 1)
    assert tree.is_connected() and len(tree.edges) == a.n - 1
    assert list(canonical_ordering(cycle_graph(5)).edges) == [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]


def test_search_examples():
    assert search_d_sequence(OFF_CYCLE_CLAW, STANDARD).verdict is Verdict.NO_ORDERING_EXISTS
    twin = disjoint_union(star_graph(3), star_graph(3))
    assert search_d_sequence(twin, STANDARD).verdict is Verdict.NO_ORDERING_EXISTS
    a = build_unicyclic(TmSpec(3, (1, 1, 0)), "A", leg=1)
    found = search_d_sequence(a, STANDARD)
    assert found.is_dsequence
    assert check_d_sequence(a, STANDARD, found.ordering).is_dsequence


def test_small_budget_is_inconclusive():
    r = search_d_sequence(OFF_CYCLE_CLAW, STANDARD, budget=1)
    assert r.verdict is Verdict.INCONCLUSIVE


def test_pd_identity_examples():
    p3 = path_graph(3)
    assert verify_pd_identity(p3, STANDARD, SequenceOrdering(sorted(p3.edges)), 3)
    c3 = cycle_graph(3)
    assert verify_pd_identity(c3, STANDARD, canonical_ordering(c3), 2)


def test_classification_examples():
    rows = {r.graph_id: r for r in classify_unicyclic(4)}
    for g in (cycle_graph(3), cycle_graph(4)):
        row = next(r for r in rows.values() if r.n == g.n and "cycle" in r.form)
        assert row.standard.is_dsequence and row.agree
    pendant = next(r for r in rows.values() if r.n == 4 and "cycle" not in r.form)
    assert "A" in pendant.form and pendant.standard.is_dsequence
    assert not recognize_forms(OFF_CYCLE_CLAW)
    csv_text = classification_csv(list(rows.values()))
    assert csv_text.splitlines()[0] == "graph_id,n,form,standard_verdict,parity_verdict,orderings_tried"


def test_witness_reproduces():
    for g in enumerate_unicyclic(5):
        r = search_d_sequence(g, STANDARD)
        if r.is_dsequence:
            again = check_d_sequence(g, STANDARD, r.ordering)
            assert again.is_dsequence


def test_cycle_last_pruning_is_sound_for_standard_binomials():
    # every unicyclic graph with at most 6 edges
    for g in enumerate_unicyclic(6):
        pruned = search_d_sequence(g, STANDARD, prune=True)
        full = search_d_sequence(g, STANDARD, prune=False)
        assert pruned.verdict == full.verdict
        if full.is_dsequence:
            assert full.ordering.edges[-1] in cycle_edges(g)


def test_canonical_orderings_on_small_families():
    for kind in ("A", "B", "C"):
        for g in family_graphs(kind, 6):
            order = canonical_ordering(g)
            assert check_d_sequence(g, STANDARD, order).is_dsequence, g
            assert check_d_sequence(g, PARITY, order).is_dsequence, g


seeds = st.integers(min_value=0, max_value=10**6)


@given(seeds)
def test_minimal_generation_always_holds(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 5)
    g = Graph(n, [e for e in combinations(range(1, n + 1), 2) if rng.random() < 0.5])
    edges = sorted(g.edges)
    rng.shuffle(edges)
    r = check_d_sequence(g, STANDARD, SequenceOrdering(edges))
    assert (r.violation or {}).get("reason") != "not minimally generated"


@given(seeds)
def test_parity_and_standard_agree_on_bipartite_graphs(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    left = {v for v in range(1, n + 1) if rng.random() < 0.5}
    edges = [(a, b) for a, b in combinations(range(1, n + 1), 2) if (a in left) != (b in left) and rng.random() < 0.6]
    g = Graph(n, edges)
    assert bipartition(g) is not None or not edges
    order = sorted(g.edges)
    rng.shuffle(order)
    ring = graph_ring(g)
    s = check_d_sequence(g, STANDARD, SequenceOrdering(order), ring)
    p = check_d_sequence(g, PARITY, SequenceOrdering(order), ring)
    assert s.verdict == p.verdict
