from __future__ import annotations

import json
from collections import defaultdict

import networkx as nx
import numpy as np
import pytest

import oracles
from specdet import census as CS
from specdet.canon import canonical_form
from specdet.families import complete_bipartite, cycle_graph, star_graph
from specdet.graph import GraphError, build_graph, complete_graph, disjoint_union, empty_graph, is_connected, is_regular
from specdet.io import emit_graph6
from specdet.spectra import char_poly, parse_kinds


@pytest.mark.parametrize("n", range(0, 6))
def test_counts_match_brute_force_quotient(n):
    want = oracles.classes_by_quotient(n) if n else 1
    assert len(list(CS.enumerate_graphs(n))) == want


@pytest.mark.parametrize("n", [6, 7, 8])
def test_counts_match_burnside(n):
    graphs = list(CS.enumerate_graphs(n))
    assert len(graphs) == oracles.classes_by_burnside(n)
    assert len({canonical_form(g) for g in graphs}) == len(graphs)


def test_cap_errors():
    with pytest.raises(CS.CapError):
        list(CS.enumerate_graphs(11))
    with pytest.raises(CS.CapError):
        list(CS.enumerate_graphs(10))
    with pytest.raises(CS.CapError):
        CS.ds_verdict(complete_graph(10), ["A"])


def test_predicate_filter():
    trees = list(CS.enumerate_graphs(7, lambda g: g.m == 6 and is_connected(g)))
    assert len(trees) == 11


def _to_graph(nxg):
    idx = {v: i for i, v in enumerate(sorted(nxg.nodes()))}
    return build_graph(len(idx), [(idx[a], idx[b]) for a, b in nxg.edges()])


@pytest.mark.parametrize("n,d", [(10, 3), (10, 4), (8, 3), (9, 4), (7, 2)])
def test_regular_enumeration_matches_swap_oracle(n, d):
    ref_nx = oracles.regular_classes_by_swaps(n, d)
    ref = [_to_graph(g) for g in ref_nx]
    conn = sum(1 for g in ref_nx if nx.is_connected(g))
    mine_all = CS.enumerate_regular(n, d, connected=False)
    assert {canonical_form(g) for g in mine_all} == {canonical_form(g) for g in ref}
    mine = CS.enumerate_regular(n, d)
    assert len(mine) == conn
    assert all(is_regular(g) and is_connected(g) for g in mine)


def test_regular_counts_of_record():
    # (10,3) and (10,4) fixtures, confirmed by the swap oracle above
    assert len(CS.enumerate_regular(10, 3)) == 19
    assert len(CS.enumerate_regular(10, 4)) == 59


def test_regular_small_cases():
    assert [emit_graph6(g) for g in CS.enumerate_regular(4, 2)] == [emit_graph6(canonical_form(cycle_graph(4)).graph())]
    assert CS.enumerate_regular(5, 3) == []
    with pytest.raises(GraphError):
        CS.enumerate_regular(4, 4)


def test_classes_at_five():
    classes = CS.cospectral_classes(CS.enumerate_graphs(5), ["A"])
    big = [c for c in classes if len(c) > 1]
    assert len(big) == 1
    forms = {canonical_form(g) for g in big[0]}
    assert forms == {canonical_form(star_graph(5)), canonical_form(disjoint_union(cycle_graph(4), empty_graph(1)))}
    assert all(len(c) == 1 for c in CS.cospectral_classes(CS.enumerate_graphs(4), ["A"]))


def test_refinement_never_merges():
    graphs = list(CS.enumerate_graphs(6))
    coarse = CS.cospectral_classes(graphs, ["A"])
    fine = CS.cospectral_classes(graphs, ["A", "cA"])
    assert len(fine) >= len(coarse)
    where = {canonical_form(g): i for i, c in enumerate(coarse) for g in c}
    for c in fine:
        assert len({where[canonical_form(g)] for g in c}) == 1
    for c in coarse:
        keys = {char_poly(g, "A") for g in c}
        assert len(keys) == 1


def test_ds_verdicts():
    v = CS.ds_verdict(star_graph(5), ["A"])
    assert not v.is_ds
    assert [canonical_form(g) for g in v.mates] == [canonical_form(disjoint_union(cycle_graph(4), empty_graph(1)))]
    assert CS.ds_verdict(star_graph(6), ["A"]).is_ds
    assert CS.ds_verdict(complete_graph(4), ["A"]).is_ds
    assert not CS.ds_verdict(complete_bipartite(1, 3), ["NL"]).is_ds


def test_census_all_kinds_at_five_matches_oracle_fingerprints():
    row = CS.ds_census(5, parse_kinds("A,L,Q,NL"))
    # oracle: brute-force class representatives, cofactor polys for A/L/Q, numpy for NL
    import itertools

    pairs = list(itertools.combinations(range(5), 2))
    reps = {}
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        reps.setdefault(oracles.canon_brute(5, edges), edges)
    groups = defaultdict(int)
    for edges in reps.values():
        key = (
            oracles.charpoly_interpolated(oracles.adjacency(5, edges)),
            oracles.charpoly_interpolated(oracles.laplacian(5, edges, -1)),
            oracles.charpoly_interpolated(oracles.laplacian(5, edges, 1)),
            tuple(np.round(_nl_eigs(5, edges), 8)),
        )
        groups[key] += 1
    assert row.total == len(reps) == 34
    assert row.class_count == len(groups)
    assert row.singleton_count == sum(1 for s in groups.values() if s == 1)
    assert row.largest == max(groups.values())


def _nl_eigs(n, edges):
    a = np.array(oracles.adjacency(n, edges), dtype=float)
    deg = a.sum(axis=1)
    inv = np.array([1 / np.sqrt(d) if d else 0.0 for d in deg])
    return np.sort(np.linalg.eigvalsh(inv[:, None] * (np.diag(deg) - a) * inv[None, :])) + 0.0


def test_census_row_json_and_export():
    row = CS.ds_census(5, ["A"])
    obj = json.loads(row.ndjson())
    assert obj["ds_fraction"] == "16/17" and obj["singleton_count"] <= obj["class_count"]
    assert row.graph6_export().strip().splitlines() == row.nics_classes[0]


def test_jobs_do_not_change_results():
    a = CS.ds_census(7, ["A"], jobs=1)
    b = CS.ds_census(7, ["A"], jobs=2)
    assert a.ndjson() == b.ndjson()


def test_cache_round_trip(tmp_path):
    first = CS.ds_census(6, ["A", "L"], cache_dir=tmp_path)
    assert (tmp_path / "fingerprints.sqlite").exists()
    CS._MEMO.pop(6, None)
    assert (tmp_path / "graphs_n6.g6").exists()
    second = CS.ds_census(6, ["A", "L"], cache_dir=tmp_path)
    assert first.ndjson() == second.ndjson()
    cache = CS.FingerprintCache(tmp_path / "fingerprints.sqlite")
    g = cycle_graph(6)
    hx = canonical_form(g).hex()
    assert cache.get(hx, parse_kinds("A")[0]) == char_poly(g, "A")
    # a hash hit with a different full key is treated as a miss
    cache.db.execute("UPDATE fp SET canon = 'x' WHERE h = ?", (cache.key(hx),))
    assert cache.get(hx, parse_kinds("A")[0]) is None
    cache.close()


def test_streaming_census_with_resume(tmp_path):
    direct = CS.ds_census(6, ["A"])

    class Stop(Exception):
        pass

    calls = []

    def stop_after_first(msg):
        calls.append(msg)
        raise Stop

    with pytest.raises(Stop):
        CS._census_streaming(6, parse_kinds("A"), tmp_path, stop_after_first, checkpoint_every=20)
    assert calls and list(tmp_path.glob("*.ckpt"))
    resumed = CS._census_streaming(6, parse_kinds("A"), tmp_path, None, checkpoint_every=20)
    assert resumed.ndjson() == direct.ndjson()
