import random
from itertools import combinations

from hypothesis import given, strategies as st

from bei.binomial import PARITY, STANDARD, binomial_edge_ideal, edge_binomial, graph_ring
from bei.dseq import canonical_ordering
from bei.graphs import Graph, TmSpec, build_unicyclic, complete_graph, cycle_graph, path_graph
from bei.ideal import (
    Ideal,
    colon_power_stability_check,
    ideal_colon_element,
    ideal_intersect,
    ideal_power,
    ideal_product,
    ideal_sum,
    minimal_generators,
    truncated_colon_complete,
)
from bei.poly import Polynomial
from bei.ring import PolyRing

from conftest import FP, QQ, random_poly


def var(ring, name):
    return Polynomial.parse(ring, name)


def f(i, j, ring):
    return edge_binomial(i, j, STANDARD, ring)


def test_sum_examples():
    ring = graph_ring(3, QQ)
    a = Ideal(ring, [f(1, 2, ring)])
    assert ideal_sum(a, Ideal(ring, [])).equals(a)
    J = binomial_edge_ideal(path_graph(3), STANDARD, ring)
    assert ideal_sum(a, Ideal(ring, [f(2, 3, ring)])).equals(J)
    rhs = J + Ideal(ring, [var(ring, "x2"), var(ring, "y2")])
    assert rhs.equals(J.colon(f(1, 3, ring)))


def test_product_and_power_examples():
    ring = graph_ring(4, QQ)
    a = Ideal(ring, [f(1, 2, ring)])
    assert ideal_product(a, Ideal(ring, [Polynomial.constant(ring, 1)])).equals(a)
    sq = ideal_product(a, a)
    assert sq.equals(Ideal(ring, [f(1, 2, ring) ** 2]))
    assert ideal_power(a, 1).equals(a) and ideal_power(a, 2).equals(sq)
    # parity P2 on {1,2} times standard K2 on {3,4}
    b = Ideal(ring, [edge_binomial(1, 2, PARITY, ring)])
    c = Ideal(ring, [f(3, 4, ring)])
    gens = minimal_generators(b * c)
    assert len(gens) == 1 and gens[0].total_degree() == 4


def test_colon_examples():
    ring = graph_ring(3, QQ)
    J = binomial_edge_ideal(path_graph(3), STANDARD, ring)
    assert ideal_colon_element(J, Polynomial.constant(ring, 1)).equals(J)
    expected = J + Ideal(ring, [var(ring, "x2"), var(ring, "y2")])
    colon = ideal_colon_element(J, f(1, 3, ring))
    assert colon.equals(expected)
    assert truncated_colon_complete(J, f(1, 3, ring), colon, 4)


def test_colon_by_pendant_edge_adds_neighbour_binomial():
    # joining 4 to the center of a cherry: the colon picks up f23
    g = Graph(4, [(1, 2), (1, 3)])
    ring = graph_ring(g, QQ)
    J = binomial_edge_ideal(g, STANDARD, ring)
    assert ideal_colon_element(J, f(1, 4, ring)).equals(J + Ideal(ring, [f(2, 3, ring)]))


def test_intersection_examples():
    ring = graph_ring(2, QQ)
    x1, y1 = var(ring, "x1"), var(ring, "y1")
    assert ideal_intersect(Ideal(ring, [x1]), Ideal(ring, [y1])).equals(Ideal(ring, [x1 * y1]))
    J = binomial_edge_ideal(path_graph(2), STANDARD, ring)
    assert ideal_intersect(J, J).equals(J)


def test_minimal_generators_examples():
    ring = graph_ring(3, QQ)
    assert len(minimal_generators(Ideal(ring, [f(1, 2, ring), f(1, 2, ring) * 2]))) == 1
    J = binomial_edge_ideal(complete_graph(3), STANDARD, ring)
    sq = ideal_power(J, 2)
    assert len(sq.generators) == 6
    assert len(minimal_generators(sq)) == 6
    g = Graph(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (2, 4)])
    assert len(minimal_generators(binomial_edge_ideal(g))) == len(g.edges)


def test_colon_power_stability_examples():
    ring = graph_ring(3, QQ)
    J = binomial_edge_ideal(path_graph(3), STANDARD, ring)
    assert colon_power_stability_check(J, f(1, 3, ring), 3)
    g = Graph(4, [(1, 2), (2, 3), (1, 3)])
    r4 = graph_ring(g, QQ)
    I = binomial_edge_ideal(g, PARITY, r4)
    assert colon_power_stability_check(I, edge_binomial(1, 4, PARITY, r4), 3)
    a = Ideal(ring, [f(1, 2, ring)])
    assert colon_power_stability_check(a, f(1, 2, ring), 3)
    assert ideal_colon_element(a, f(1, 2, ring)).is_unit()


def test_json_round_trip_keeps_provenance():
    ring = graph_ring(3, QQ)
    J = binomial_edge_ideal(cycle_graph(3), STANDARD, ring).with_provenance("J of C3")
    back = Ideal.from_json(J.to_json())
    assert back.provenance == "J of C3"
    assert back.equals(J)
    assert [str(g) for g in back.generators] == [str(g) for g in J.generators]


def test_gb_cache_matches_generators():
    J = binomial_edge_ideal(cycle_graph(4), STANDARD, graph_ring(4, QQ))
    J.gb()
    assert J.check_gb_cache()


def _neighbour_ideal(hi, e, ring):
    pairs = set()
    for v in e:
        pairs.update(combinations(sorted(hi.neighbors(v)), 2))
    return Ideal(ring, [f(k, l, ring) for k, l in sorted(pairs)])


def test_intersection_reads_as_product_on_family_a():
    # I = (f1..fi) + J_G and J the neighbourhood binomials of the next edge:
    # I meet J equals J times (x_c, y_c, J of G minus the center c)
    checked = 0
    for legs in ((1, 0, 0), (1, 1, 0)):
        g = build_unicyclic(TmSpec(3, legs), "A", leg=1)
        ring = graph_ring(g, QQ)
        order = canonical_ordering(g)
        fs = [f(a, b, ring) for a, b in order.edges]
        JG = binomial_edge_ideal(g, STANDARD, ring)
        rest = Graph(g.n, [e for e in g.edges if 1 not in e])
        X = Ideal(ring, [var(ring, "x1"), var(ring, "y1")]) + binomial_edge_ideal(rest, STANDARD, ring)
        for i in range(len(fs) - 1):
            J = _neighbour_ideal(Graph(g.n, order.edges[:i]), order.edges[i], ring)
            if J.is_zero():
                continue
            I = Ideal(ring, fs[:i]) + JG
            assert ideal_intersect(I, J).equals(J * X)
            checked += 1
    assert checked == 2


seeds = st.integers(min_value=0, max_value=10**6)


def _random_graph_ideal(rng, n=3, kind=STANDARD):
    ring = graph_ring(n, FP)
    edges = [e for e in combinations(range(1, n + 1), 2) if rng.random() < 0.6]
    return ring, binomial_edge_ideal(Graph(n, edges), kind, ring)


@given(seeds)
def test_colon_sound_and_complete(seed):
    rng = random.Random(seed)
    ring, a = _random_graph_ideal(rng, 3, rng.choice([STANDARD, PARITY]))
    h = random_poly(ring, rng, terms=2, homogeneous=2)
    if not h:
        return
    colon = ideal_colon_element(a, h)
    for g in colon.generators:
        assert a.contains(g * h)
    assert a.is_subset(colon)
    assert truncated_colon_complete(a, h, colon, 3)


def test_non_zerodivisor_colon_is_trivial():
    ring = graph_ring(3, QQ)
    J = binomial_edge_ideal(path_graph(3), STANDARD, ring)
    assert ideal_colon_element(J, var(ring, "x1")).equals(J)


@given(seeds)
def test_power_additivity(seed):
    rng = random.Random(seed)
    _, a = _random_graph_ideal(rng, 3)
    if a.is_zero():
        return
    s, t = rng.randint(1, 2), 1
    assert ideal_power(a, s + t).equals(ideal_product(ideal_power(a, s), ideal_power(a, t)))


@given(seeds)
def test_intersection_is_meet(seed):
    rng = random.Random(seed)
    ring, a = _random_graph_ideal(rng, 3)
    _, b = _random_graph_ideal(rng, 3, PARITY)
    b = b.to_ring(ring)
    m = ideal_intersect(a, b)
    assert m.is_subset(a) and m.is_subset(b)
    c = a * b
    assert c.is_subset(m)
