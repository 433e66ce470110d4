import random

from hypothesis import given, strategies as st

from bei.binomial import STANDARD, binomial_edge_ideal, edge_binomial, graph_ring
from bei.graphs import Graph, complete_graph, path_graph
from bei.groebner import (
    buchberger,
    normal_form,
    reduce_randomized,
    truncated_membership,
)
from bei.ideal import Ideal
from bei.poly import Polynomial
from bei.ring import LEX, PolyRing

from conftest import FP, QQ, random_poly


def P(ring, text):
    return Polynomial.parse(ring, text)


def test_principal_basis(ring3):
    f = P(ring3, "x1*y2 - x2*y1")
    gb = buchberger([f])
    assert gb.generators == [f.monic()]


def test_path_generators_already_a_basis():
    g = path_graph(3)
    ring = graph_ring(g, QQ)
    gens = list(binomial_edge_ideal(g, STANDARD, ring).generators)
    gb = buchberger(gens)
    assert sorted(gb.to_strings()) == sorted(str(h.monic()) for h in gens)


def test_triangle_basis_is_quadratic_and_decides_membership():
    # K3 is a closed graph, so its generators already form a Groebner basis
    g = complete_graph(3)
    ring = graph_ring(g, QQ)
    gens = list(binomial_edge_ideal(g, STANDARD, ring).generators)
    gb = buchberger(gens)
    assert len(gb) == len(gens)
    f = P(ring, "x2*y1*y3 - x3*y1*y2")
    assert gb.contains(f) == truncated_membership(f, gens, 3)
    assert gb.contains(f)


def test_normal_form_examples(ring3):
    f = P(ring3, "x1*y2 - x2*y1")
    assert not normal_form(f, buchberger([f]))
    J = binomial_edge_ideal(path_graph(2), STANDARD, graph_ring(2, QQ))
    one = Polynomial.constant(J.ring, 1)
    assert normal_form(one, J.gb()) == one
    K = binomial_edge_ideal(complete_graph(3), STANDARD, graph_ring(3, QQ))
    x2f13 = P(K.ring, "x2") * edge_binomial(1, 3, STANDARD, K.ring)
    assert not normal_form(x2f13, K.gb())


def test_ideal_equal_examples():
    ring = graph_ring(3, QQ)
    f12, f23 = edge_binomial(1, 2, STANDARD, ring), edge_binomial(2, 3, STANDARD, ring)
    assert Ideal(ring, [f12]).equals(Ideal(ring, [f12 * 3]))
    assert not Ideal(ring, [f12]).equals(Ideal(ring, [f12, f23]))
    J = Ideal(ring, [f12, f23])
    rhs = Ideal(ring, [f12, f23, P(ring, "x2"), P(ring, "y2")])
    assert J.colon(edge_binomial(1, 3, STANDARD, ring)).equals(rhs)


def test_empty_input_is_zero_ideal(ring3):
    gb = buchberger([], ring3)
    assert gb.is_zero_ideal()


def _random_homogeneous_ideal(rng, ring, k=3):
    return [random_poly(ring, rng, terms=3, homogeneous=2) for _ in range(k)]


seeds = st.integers(min_value=0, max_value=10**6)


@given(seeds)
def test_confluence_and_idempotence(seed):
    rng = random.Random(seed)
    ring = PolyRing.for_graph(2, FP)
    gens = [g for g in _random_homogeneous_ideal(rng, ring) if g]
    if not gens:
        return
    gb = buchberger(gens)
    f = random_poly(ring, rng, terms=5, max_deg=4)
    nf = normal_form(f, gb)
    assert reduce_randomized(f, gb.generators, rng) == nf
    assert normal_form(nf, gb) == nf
    assert not normal_form(f - nf, gb)
    # no remainder term is divisible by a leading monomial
    for m in nf.terms:
        assert all(not ring.divides(l, m) for l in gb.leading_monomials)


@given(seeds)
def test_basis_of_homogeneous_input_is_homogeneous_and_reduced(seed):
    rng = random.Random(seed)
    ring = PolyRing.for_graph(2, QQ)
    gens = [g for g in _random_homogeneous_ideal(rng, ring) if g]
    if not gens:
        return
    gb = buchberger(gens)
    for g in gb.generators:
        assert g.is_homogeneous()
        assert g.lead_coefficient == 1
    leads = gb.leading_monomials
    for k, g in enumerate(gb.generators):
        for m in g.terms:
            assert all(not ring.divides(l, m) for j, l in enumerate(leads) if j != k)


@given(seeds)
def test_truncated_membership_agrees(seed):
    rng = random.Random(seed)
    ring = PolyRing.for_graph(2, FP)
    gens = [g for g in _random_homogeneous_ideal(rng, ring) if g]
    if not gens:
        return
    gb = buchberger(gens)
    D = 4
    # a random element of the ideal and a random polynomial
    inside = sum((g * random_poly(ring, rng, terms=2, homogeneous=1) for g in gens), Polynomial(ring, {}))
    other = random_poly(ring, rng, terms=3, homogeneous=3)
    for f in (inside, other):
        assert gb.contains(f) == truncated_membership(f, gens, D)


def test_basis_is_deterministic():
    g = Graph(4, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)])
    ring = graph_ring(g, QQ)
    gens = list(binomial_edge_ideal(g, STANDARD, ring).generators)
    assert buchberger(gens).to_strings() == buchberger(list(reversed(gens))).to_strings()


def test_lex_basis_generates_same_ideal():
    g = complete_graph(3)
    r1 = graph_ring(g, QQ)
    r2 = r1.with_order(LEX)
    gens = list(binomial_edge_ideal(g, STANDARD, r1).generators)
    gb_lex = buchberger([h.to_ring(r2) for h in gens])
    for h in buchberger(gens).generators:
        assert gb_lex.contains(h.to_ring(r2))
