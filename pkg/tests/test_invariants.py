from __future__ import annotations

import random

import pytest

import oracles
from conftest import random_graph
from specdet import graph as G
from specdet.families import (
    complete_bipartite,
    cycle_graph,
    lattice_graph,
    path_graph,
    petersen_graph,
    star_graph,
    triangular_graph,
)
from specdet.graph import complete_graph, disjoint_union, empty_graph
from specdet.invariants import (
    SrgError,
    SrgParams,
    bipartite_components_from_NL,
    bipartite_components_from_Q,
    bipartite_from_L_and_Q,
    components_from_L,
    components_from_NL,
    detect_srg,
    edges_from_spectrum,
    invariant_report,
    is_bipartite_from_A,
    is_bipartite_from_NL,
    is_regular_from_spectrum,
    isolated_from_NL,
    lovasz_theta_srg,
    spanning_trees,
    srg_girth_diameter,
    srg_spectrum,
    triangles_from_spectrum,
)
from specdet.quadratic import QuadraticNumber
from specdet.spectra import SpectrumError, char_poly


def test_counts_from_spectrum_on_random_graphs():
    rng = random.Random(7)
    for _ in range(150):
        g = random_graph(rng, rng.randint(1, 12), rng.random())
        p = char_poly(g, "A")
        assert edges_from_spectrum(p) == g.m
        assert triangles_from_spectrum(p) == G.triangle_count(g)
        assert (is_regular_from_spectrum(p) is not None) == G.is_regular(g)
        assert components_from_L(char_poly(g, "L")) == len(G.components(g))
        assert components_from_NL(char_poly(g, "NL")) == len(G.components(g))
        assert bipartite_components_from_Q(char_poly(g, "Q")) == G.bipartite_component_count(g)
        assert bipartite_components_from_NL(char_poly(g, "NL")) == G.bipartite_component_count(g)
        assert isolated_from_NL(char_poly(g, "NL")) == sum(1 for d in g.degrees() if d == 0)


def test_bipartite_tests_agree_with_structure():
    rng = random.Random(8)
    for _ in range(150):
        g = random_graph(rng, rng.randint(1, 7), rng.random())
        truth = oracles.bipartite_bfs(g.n, g.edges())
        assert is_bipartite_from_A(char_poly(g, "A")) == truth
        assert is_bipartite_from_NL(char_poly(g, "NL")) == truth
        if G.is_connected(g):
            assert bipartite_from_L_and_Q(char_poly(g, "L"), char_poly(g, "Q")) == truth


def test_isolated_vertices_in_nl_bipartite_count():
    g = disjoint_union(cycle_graph(3), empty_graph(2), path_graph(2))
    assert bipartite_components_from_NL(char_poly(g, "NL")) == 3


def test_spanning_trees_match_brute_force():
    rng = random.Random(9)
    checked = 0
    while checked < 40:
        g = random_graph(rng, rng.randint(2, 7), 0.6)
        if not G.is_connected(g):
            continue
        assert spanning_trees(char_poly(g, "L")) == oracles.spanning_trees_brute(g.n, g.edges())
        checked += 1
    with pytest.raises(SpectrumError):
        spanning_trees(char_poly(empty_graph(3), "L"))


def test_cayley_formula():
    for n in range(3, 9):
        assert spanning_trees(char_poly(complete_graph(n), "L"), n) == n ** (n - 2)


def test_integrality_guard():
    from specdet.spectra import CharPoly

    with pytest.raises(SpectrumError):
        triangles_from_spectrum(CharPoly((1, 0, -1, -1), "A"))  # cube power sum 3: 1/2 triangle


@pytest.mark.parametrize(
    "g,params",
    [
        (petersen_graph(), (10, 3, 0, 1)),
        (lattice_graph(3), (9, 4, 1, 2)),
        (lattice_graph(4), (16, 6, 2, 2)),
        (lattice_graph(5), (25, 8, 3, 2)),
        (triangular_graph(4), (6, 4, 2, 4)),
        (triangular_graph(5), (10, 6, 3, 4)),
        (triangular_graph(6), (15, 8, 4, 4)),
        (cycle_graph(5), (5, 2, 0, 1)),
    ],
)
def test_detect_srg_matches_structure(g, params):
    assert G.is_strongly_regular(g) == params
    found = detect_srg(char_poly(g, "A"))
    assert found is not None and found[0].astuple() == params


@pytest.mark.parametrize("g", [cycle_graph(6), complete_graph(4), star_graph(5), complete_bipartite(2, 3)])
def test_detect_srg_rejects(g):
    assert detect_srg(char_poly(g, "A")) is None


def test_srg_spectrum_and_theta():
    s = srg_spectrum((10, 3, 0, 1))
    assert (s.p1, s.p2, s.m1, s.m2) == (QuadraticNumber(1), QuadraticNumber(-2), 5, 4)
    assert lovasz_theta_srg((10, 3, 0, 1)) == 4
    assert lovasz_theta_srg((5, 2, 0, 1)) == QuadraticNumber.sqrt(5)
    assert lovasz_theta_srg((16, 6, 2, 2)) == 4
    assert srg_girth_diameter((10, 3, 0, 1)) == (5, 2)
    assert srg_girth_diameter((16, 6, 2, 2)) == (3, 2)


def test_srg_param_errors():
    with pytest.raises(SrgError):
        SrgParams(10, 3, 1, 1)
    with pytest.raises(SrgError):
        SrgParams(5, 4, 3, 0)
    with pytest.raises(SrgError):
        lovasz_theta_srg((6, 2, 1, 0))  # two triangles: disconnected


def test_report_keys():
    rep = invariant_report(char_poly(petersen_graph(), "A"), char_poly(petersen_graph(), "L"))
    assert rep["srg"] == {"n": 10, "d": 3, "lambda": 0, "mu": 1}
    assert rep["spanning_trees"] == 2000 and rep["theta"] == "4"
