import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from bei.graphs import (
    Graph,
    TmSpec,
    build_Tm,
    build_unicyclic,
    canonical_form,
    complete_graph,
    cycle_graph,
    enumerate_graphs,
    enumerate_unicyclic,
    find_flower,
    flower_graph,
    free_vertices,
    girth,
    glue,
    graph_Ge,
    internal_vertex_count,
    is_block_graph,
    is_bridge,
    is_flower_free,
    is_unicyclic,
    load_graph,
    maximal_cliques,
    odd_girth,
    path_graph,
    star_graph,
)
from bei.corpus import spider_specs

INF = float("inf")


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def random_graph(rng, n, p=0.45):
    return Graph(n, [e for e in combinations(range(1, n + 1), 2) if rng.random() < p])


def test_Tm_examples():
    assert nx.is_isomorphic(to_nx(build_Tm(TmSpec(2, (0, 0)))), to_nx(path_graph(3)))
    assert nx.is_isomorphic(to_nx(build_Tm(TmSpec(3, (0, 0, 0)))), to_nx(star_graph(3)))
    p5 = build_Tm(TmSpec(2, (1, 1)))
    assert nx.is_isomorphic(to_nx(p5), to_nx(path_graph(5)))
    assert p5.degree(1) == 2
    with pytest.raises(ValueError):
        TmSpec(1, (1,))


def test_unicyclic_examples():
    a = build_unicyclic(TmSpec(2, (1, 0)), "A")
    assert a.n == 4 and girth(a) == 3 and is_unicyclic(a)
    c = build_unicyclic(TmSpec(2, (2, 0)), "C", depth=1)
    assert girth(c) == 3 and is_unicyclic(c)
    b = build_unicyclic(TmSpec(2, (1, 1)), "B")
    assert nx.is_isomorphic(to_nx(b), to_nx(cycle_graph(5)))
    # the only internal vertex of a length-1 leg is adjacent to the center
    with pytest.raises(ValueError):
        build_unicyclic(TmSpec(2, (1, 0)), "C", leg=1, depth=1)


def test_girth_examples():
    assert girth(cycle_graph(5)) == 5 and odd_girth(cycle_graph(5)) == 5
    assert girth(path_graph(4)) == INF and odd_girth(build_Tm(TmSpec(3, (1, 0, 2)))) == INF
    assert girth(cycle_graph(6)) == 6 and odd_girth(cycle_graph(6)) == INF


def test_bridge_examples():
    assert is_bridge(path_graph(3), (1, 2))
    assert not is_bridge(complete_graph(3), (1, 2))
    g = build_unicyclic(TmSpec(3, (2, 1, 0)), "A", leg=2)
    assert not is_bridge(g, g.family_tag.get("added"))


def test_Ge_examples():
    assert graph_Ge(Graph(4, [(1, 2), (1, 3)]), (1, 4)).edges == {(1, 2), (1, 3), (2, 3)}
    two = Graph(4, [(1, 2), (3, 4)])
    assert graph_Ge(two, (2, 3)).edges == two.edges
    star = star_graph(3)
    assert graph_Ge(star, (2, 3)).edges == star.edges


def test_internal_vertex_examples():
    for n in range(2, 8):
        assert internal_vertex_count(path_graph(n)) == n - 2
    assert internal_vertex_count(build_unicyclic(TmSpec(2, (1, 0)), "A")) == 1
    for legs in [(2, 0), (3, 1), (2, 1, 1)]:
        g = build_unicyclic(TmSpec(len(legs), legs), "A", leg=1)
        assert girth(g) >= 4
        assert internal_vertex_count(g) == 2 + sum(legs)


def test_flower_examples():
    assert is_flower_free(star_graph(3))
    g = flower_graph(2, 1)
    assert not is_flower_free(g) and find_flower(g) is not None
    for spec in spider_specs(7):
        for leg, s in enumerate(spec.legs, 1):
            if s == 1:
                assert is_flower_free(build_unicyclic(spec, "A", leg=leg))


def test_enumeration_counts_match_networkx_atlas():
    atlas = nx.graph_atlas_g()
    for n in range(1, 6):
        expected = sum(1 for h in atlas if h.number_of_nodes() == n)
        assert len(enumerate_graphs(n)) == expected


@pytest.mark.slow
def test_enumeration_count_six_vertices():
    assert len(enumerate_graphs(6)) == 156


def test_unicyclic_counts():
    counts = [sum(1 for _ in enumerate_unicyclic(n, n)) for n in range(3, 8)]
    assert counts == [1, 2, 5, 13, 33]
    # independent count: connected atlas graphs with |E| = |V|
    atlas = [h for h in nx.graph_atlas_g() if 3 <= h.number_of_nodes() <= 7]
    oracle = [sum(1 for h in atlas if h.number_of_nodes() == n and h.number_of_edges() == n and nx.is_connected(h))
              for n in range(3, 8)]
    assert counts == oracle


def test_edge_list_round_trip(tmp_path):
    g = build_unicyclic(TmSpec(3, (1, 1, 0)), "B", leg=1, leg2=2)
    assert Graph.from_edge_list(g.to_edge_list(), g.n).edges == g.edges
    assert Graph.from_json(g.to_json()).family_tag == g.family_tag
    path = tmp_path / "g.edges"
    path.write_text(g.to_edge_list())
    assert load_graph(path).edges == g.edges


def test_glue_adds_vertices_once():
    g = glue(complete_graph(3), 3, path_graph(3), 1)
    assert g.n == 5 and len(g.edges) == 5


seeds = st.integers(min_value=0, max_value=10**6)


@given(seeds)
def test_invariants_match_networkx(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(2, 7))
    h = to_nx(g)
    try:
        expected = nx.girth(h)
    except AttributeError:
        expected = min((len(c) for c in nx.minimum_cycle_basis(h)), default=INF)
    assert girth(g) == expected
    assert sorted(map(sorted, maximal_cliques(g))) == sorted(map(sorted, nx.find_cliques(h)))
    bridges = {tuple(sorted(e)) for e in nx.bridges(h)}
    assert {e for e in g.edges if is_bridge(g, e)} == bridges


@given(seeds)
def test_internal_and_free_partition(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(2, 7))
    free = set(free_vertices(g))
    assert len(free) + internal_vertex_count(g) == g.n
    # free means exactly one maximal clique
    for v in g.vertices:
        assert (v in free) == (sum(v in c for c in maximal_cliques(g)) == 1)


@given(seeds)
def test_block_graph_matches_networkx(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(2, 7))
    h = to_nx(g)
    expected = all(
        h.subgraph(c).number_of_edges() == len(c) * (len(c) - 1) // 2
        for c in nx.biconnected_components(h)
    )
    assert is_block_graph(g) == expected


@given(seeds)
def test_canonical_form_is_invariant(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(2, 7))
    perm = list(g.vertices)
    rng.shuffle(perm)
    h = g.relabel(dict(zip(g.vertices, perm)))
    assert canonical_form(g) == canonical_form(h)


@given(seeds)
def test_Ge_leaves_graph_alone_for_small_neighbourhoods(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(3, 7))
    non_edges = [e for e in combinations(g.vertices, 2) if e not in g.edges]
    if not non_edges:
        return
    e = rng.choice(non_edges)
    if all(len(g.neighbors(v)) <= 1 for v in e):
        assert graph_Ge(g, e).edges == g.edges


def _family_members(n_max):
    for spec in spider_specs(n_max):
        for leg, s in enumerate(spec.legs, 1):
            if s >= 1:
                yield build_unicyclic(spec, "A", leg=leg)
            for depth in range(1, s):
                yield build_unicyclic(spec, "C", leg=leg, depth=depth)
            for leg2 in range(leg + 1, spec.m + 1):
                yield build_unicyclic(spec, "B", leg=leg, leg2=leg2)


def test_family_members_are_unicyclic_over_a_spider():
    count = 0
    for g in _family_members(8):
        count += 1
        assert len(g.edges) == g.n and is_unicyclic(g)
        assert girth(g) == g.family_tag.get("girth")
        tree = g.remove_edge(*g.family_tag.get("added"))
        assert tree.is_connected() and len(tree.edges) == tree.n - 1
        branch = [v for v in tree.vertices if tree.degree(v) >= 3]
        assert len(branch) <= 1
    assert count > 50


def test_internal_count_closed_form_on_families():
    for g in _family_members(8):
        kind = g.family_tag.kind[-1]
        if kind == "B":
            continue
        sigma = sum(g.family_tag.get("legs"))
        if girth(g) == 3:
            expected = sigma
        else:
            # kind C keeps the leg's pendant free; kind A has none on the cycle
            expected = 2 + sigma if kind == "A" else 1 + sigma
        assert internal_vertex_count(g) == expected, g
