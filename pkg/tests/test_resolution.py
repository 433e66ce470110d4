import random
from collections import Counter
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from bei.binomial import PARITY, STANDARD, binomial_edge_ideal, graph_ring
from bei.dseq import canonical_ordering
from bei.graphs import Graph, TmSpec, build_Tm, build_unicyclic, complete_graph, cycle_graph, internal_vertex_count, path_graph
from bei.ideal import Ideal
from bei.poly import Polynomial
from bei.resolution import (
    BettiTable,
    gluing_additivity_check,
    minimal_free_resolution,
    regularity,
    regularity_of_partial_sequence,
    regularity_of_power,
    regularity_of_product,
)
from bei.ring import LEX, PolyRing

from conftest import FP, QQ


def J(g, field=FP, kind=STANDARD, order=None):
    return binomial_edge_ideal(g, kind, graph_ring(g, field, order))


def test_principal_quadric():
    t = minimal_free_resolution(J(path_graph(2)))
    assert t.nonzero() == {(0, 0): 1, (1, 2): 1}
    assert t.regularity == 1 and t.certified


def test_triangle_table():
    t = minimal_free_resolution(J(complete_graph(3)))
    assert t.nonzero() == {(0, 0): 1, (1, 2): 3, (2, 3): 2}
    assert t.regularity == 1 and t.pd == 2


def test_paths_are_koszul():
    for n in range(2, 6):
        t = minimal_free_resolution(J(path_graph(n)))
        assert t.nonzero() == {(k, 2 * k): comb(n - 1, k) for k in range(n)}
        assert t.regularity == n - 1


def test_regularity_examples():
    assert regularity(J(cycle_graph(5))).value == 3
    assert regularity(J(cycle_graph(3), kind=PARITY)).value == 3
    for legs in [(1, 0), (2, 1), (1, 1, 0), (2, 0, 0)]:
        t = build_Tm(TmSpec(len(legs), legs))
        assert regularity(J(t)).value == internal_vertex_count(t) + 1


def test_power_examples():
    assert regularity_of_power(cycle_graph(4), STANDARD, 2).value == 4
    a = build_unicyclic(TmSpec(2, (1, 0)), "A")
    assert regularity_of_power(a, STANDARD, 1).value == 2
    assert regularity_of_power(cycle_graph(3), PARITY, 1).value == 3
    with pytest.raises(ValueError):
        regularity_of_power(cycle_graph(3), STANDARD, 0)


def test_partial_sequence_examples():
    a = build_unicyclic(TmSpec(2, (1, 0)), "A")
    order = canonical_ordering(a)
    assert regularity_of_partial_sequence(a, STANDARD, order, 0, 2) == regularity_of_power(a, STANDARD, 2)
    assert regularity_of_partial_sequence(a, STANDARD, order, 1, 1).value == 2
    n = len(order)
    assert regularity_of_partial_sequence(a, STANDARD, order, n - 1, 2).value == 2 * 2 + 1 - 1


def test_product_examples():
    assert regularity_of_product(Graph(3, [(2, 3)]), 2).value == 3
    assert regularity_of_product(Graph(4, [(2, 3), (3, 4)]), 2).value == 4
    assert regularity_of_product(Graph(5, [(2, 4), (3, 5)]), 3).value == 4
    with pytest.raises(ValueError):
        regularity_of_product(Graph(4, [(1, 3), (2, 3)]), 2)


def test_gluing_examples():
    ok, info = gluing_additivity_check([path_graph(3), path_graph(3)], [(0, 3, 1, 1)])
    assert ok and info["whole"] == 4 and info["parts"] == [2, 2]
    ok, info = gluing_additivity_check([complete_graph(3), path_graph(2)], [(0, 3, 1, 1)])
    assert ok and info["whole"] == 2
    ok, info = gluing_additivity_check([cycle_graph(4)], [])
    assert ok and info["whole"] == info["parts"][0]


def test_degree_cap_flags_partial_tables():
    t = minimal_free_resolution(J(cycle_graph(4)), degree_cap=2)
    assert not t.certified
    full = minimal_free_resolution(J(cycle_graph(4)))
    assert full.certified and full.regularity == 2


def test_table_round_trip():
    t = minimal_free_resolution(J(cycle_graph(4)))
    assert BettiTable.from_json(t.to_json()).nonzero() == t.nonzero()
    assert "total" in t.pretty()


def _koszul(degrees):
    out = Counter()
    for k in range(len(degrees) + 1):
        for sub in combinations(degrees, k):
            out[(k, sum(sub))] += 1
    return dict(sorted(out.items()))


seeds = st.integers(min_value=0, max_value=10**6)


@settings(max_examples=25)
@given(seeds)
def test_regular_sequences_have_koszul_tables(seed):
    # powers of linearly independent linear forms form a regular sequence
    rng = random.Random(seed)
    ring = PolyRing.for_graph(2, FP)
    r = rng.randint(1, 3)
    degrees = [rng.randint(1, 3) for _ in range(r)]
    gens = []
    for k, d in enumerate(degrees):
        coeffs = [rng.randint(-3, 3) for _ in range(ring.nvars)]
        coeffs[k] = 1
        for j in range(k):
            coeffs[j] = 0
        lin = Polynomial.from_exponents(ring, [(c, [int(i == v) for i in range(ring.nvars)]) for v, c in enumerate(coeffs)])
        gens.append(lin ** d)
    t = minimal_free_resolution(Ideal(ring, gens))
    assert t.nonzero() == _koszul(degrees)
    assert t.regularity == sum(d - 1 for d in degrees)


@settings(max_examples=25)
@given(seeds)
def test_tables_agree_across_orders_and_fields(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 5)
    g = Graph(n, [e for e in combinations(range(1, n + 1), 2) if rng.random() < 0.5])
    if not g.edges:
        return
    kind = rng.choice([STANDARD, PARITY])
    base = minimal_free_resolution(J(g, FP, kind))
    assert minimal_free_resolution(J(g, FP, kind, LEX)).nonzero() == base.nonzero()
    assert minimal_free_resolution(J(g, QQ, kind)).nonzero() == base.nonzero()
    assert base[(1, 2)] == len(g.edges)
    assert base[(0, 0)] == 1
    assert base.pd <= 2 * n


@pytest.mark.slow
def test_power_regularity_grows_by_two():
    for g in (cycle_graph(4), build_unicyclic(TmSpec(2, (1, 0)), "A"), build_Tm(TmSpec(2, (1, 1)))):
        r1 = regularity_of_power(g, STANDARD, 1).value
        r2 = regularity_of_power(g, STANDARD, 2).value
        assert r2 >= r1 + 2
