from __future__ import annotations

import json
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import random_graph
from specdet import graph as G
from specdet.families import cycle_graph, path_graph, star_graph
from specdet.io import emit_graph6, from_edge_json, load_graph, parse_graph6, read_graph6_file, to_dot, to_edge_json


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return G.build_graph(n, [e for e, b in zip(pairs, mask) if b])


def test_build_rejects_loops_and_range():
    with pytest.raises(G.GraphError):
        G.build_graph(3, [(1, 1)])
    with pytest.raises(G.GraphError):
        G.build_graph(3, [(0, 3)])


def test_complement_and_join_counts():
    c5 = cycle_graph(5)
    assert G.complement(c5).m == 5
    j = G.join(c5, G.empty_graph(2))
    assert (j.n, j.m) == (7, 15)
    u = G.disjoint_union(c5, path_graph(3))
    assert (u.n, u.m) == (8, 7)


def test_line_graph_of_star_is_complete():
    lg = G.line_graph(star_graph(5))
    assert (lg.n, lg.m) == (4, 6)


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_structure_agrees_with_oracles(g):
    edges = g.edges()
    assert G.is_connected(g) == oracles.connected(g.n, edges)
    assert G.is_bipartite(g) == oracles.bipartite_bfs(g.n, edges)
    ng = nx.Graph()
    ng.add_nodes_from(range(g.n))
    ng.add_edges_from(edges)
    assert G.triangle_count(g) == sum(nx.triangles(ng).values()) // 3
    assert len(G.components(g)) == nx.number_connected_components(ng)


def test_girth_and_diameter():
    assert G.girth(cycle_graph(7)) == 7
    assert G.diameter(path_graph(6)) == 5
    assert G.girth(path_graph(4)) == float("inf")


def test_relabel_rejects_non_permutation():
    with pytest.raises(G.GraphError):
        G.relabel(cycle_graph(3), [0, 0, 1])


# graph6


def test_emit_single_vertex():
    assert emit_graph6(G.empty_graph(1)) == "@"


def test_known_string_against_independent_decoder():
    n, edges = oracles.graph6_decode("D?{")
    g = parse_graph6("D?{")
    assert g.n == n == 5
    assert sorted(g.edges()) == sorted(edges)
    assert emit_graph6(g) == "D?{"


def test_round_trip_500_random():
    rng = random.Random(11)
    for _ in range(500):
        n = rng.randint(0, 70)
        g = random_graph(rng, n, rng.random())
        s = emit_graph6(g)
        assert parse_graph6(s) == g
        assert s == nx.to_graph6_bytes(_to_nx(g), header=False).decode().strip()


def _to_nx(g):
    ng = nx.Graph()
    ng.add_nodes_from(range(g.n))
    ng.add_edges_from(g.edges())
    return ng


@pytest.mark.parametrize("bad", ["D?", "D?{{", "D?|", "D\x7f{", ""])
def test_malformed_graph6(bad):
    with pytest.raises(G.GraphError):
        parse_graph6(bad)


def test_header_and_file(tmp_path):
    p = tmp_path / "g.g6"
    p.write_text(">>graph6<<D?{\n\nC~\n")
    gs = read_graph6_file(p)
    assert [g.n for g in gs] == [5, 4]


def test_edge_json_and_dot():
    g = cycle_graph(4)
    obj = to_edge_json(g)
    assert from_edge_json(json.dumps(obj)) == g
    assert load_graph(json.dumps(obj)) == g
    assert to_dot(g).count("--") == 4
