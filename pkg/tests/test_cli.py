from __future__ import annotations

import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from specdet.canon import are_isomorphic
from specdet.cli import run
from specdet.families import cycle_graph
from specdet.graph import disjoint_union, empty_graph
from specdet.io import emit_graph6, parse_graph6


def schema(name):
    return json.loads(resources.files("specdet").joinpath("schemas", f"{name}.json").read_text())


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    s5 = tmp_path / "s5.g6"
    s5.write_text(call("gen", "--family", "star", "--n", "5")[1])
    c4k1 = tmp_path / "c4k1.g6"
    c4k1.write_text(emit_graph6(disjoint_union(cycle_graph(4), empty_graph(1))) + "\n")
    return tmp_path, str(s5), str(c4k1)


def test_gen_formats():
    code, out = call("gen", "--family", "turan", "--n", "17", "--k", "7", "--out", "g6")
    assert code == 0 and len(out.splitlines()) == 1
    g = parse_graph6(out.strip())
    assert (g.n, g.m) == (17, 123)
    code, out = call("gen", "--family", "turan", "--n", "6", "--k", "3", "--out", "json")
    jsonschema.validate(json.loads(out), schema("graph"))
    code, out = call("gen", "--family", "cycle", "--n", "4", "--out", "dot")
    assert out.startswith("graph G {")
    code, out = call("gen", "--family", "complete_multipartite", "--param", "parts=1,2,3")
    assert parse_graph6(out.strip()).m == 11


def test_cospectral_outputs(files):
    _, s5, c4k1 = files
    assert call("cospectral", "--kinds", "A", s5, c4k1) == (0, "COSPECTRAL NONISOMORPHIC\n")
    assert call("cospectral", "--kinds", "A,L,Q,NL", s5, c4k1) == (0, "DIFFER kind=L\n")


def test_ds_lists_mate(files):
    _, s5, _ = files
    code, out = call("ds", "--kinds", "A", "--graph", s5)
    obj = json.loads(out)
    jsonschema.validate(obj, schema("ds"))
    assert obj["ds"] is False
    mates = [parse_graph6(m) for m in obj["mates"]]
    assert any(are_isomorphic(m, disjoint_union(cycle_graph(4), empty_graph(1))) for m in mates)


def test_spectrum_invariants_srg_schemas(files):
    _, s5, _ = files
    code, out = call("spectrum", s5, "--numeric")
    jsonschema.validate(json.loads(out), schema("spectrum"))
    petersen = call("gen", "--family", "petersen")[1].strip()
    code, out = call("invariants", petersen)
    jsonschema.validate(json.loads(out), schema("invariants"))
    code, out = call("srg", petersen)
    obj = json.loads(out)
    jsonschema.validate(obj, schema("srg"))
    assert obj["srg"]["params"] == {"n": 10, "d": 3, "lambda": 0, "mu": 1}
    code, out = call("srg", "--params", "5,2,0,1")
    obj = json.loads(out)
    jsonschema.validate(obj, schema("srg"))
    assert obj["theta"] == "sqrt(5)"


def test_census_and_export(files):
    tmp, _, _ = files
    export = tmp / "nics.g6"
    code, out = call("census", "--n-list", "4,5", "--kinds", "A", "--jobs", "1", "--export", str(export))
    rows = [json.loads(line) for line in out.splitlines()]
    for r in rows:
        jsonschema.validate(r, schema("census"))
    assert [r["ds_fraction"] for r in rows] == ["1", "16/17"]
    blocks = export.read_text().strip().split("\n\n")
    assert len(blocks) == 1 and len(blocks[0].splitlines()) == 2


def test_construct_and_certify(files, nics_pairs):
    tmp, _, _ = files
    lk = call("construct", "line", call("gen", "--family", "complete_bipartite", "--p", "4", "--q", "4")[1].strip())[1].strip()
    code, out = call("construct", "seidel", lk, "--independent", "--seed", "0")
    assert code == 0
    assert call("cospectral", "--kinds", "A,L,Q,NL,cA,cL,cQ,cNL", lk, out.strip())[1] == "COSPECTRAL NONISOMORPHIC\n"
    g1, g2 = (emit_graph6(g) for g in nics_pairs[-1])
    code, out = call("certify", "ns_join", g1, g2, g1, g2)
    assert code == 0
    jsonschema.validate(json.loads(out), schema("certificate"))
    code, out = call("construct", "corona", g1, g1, "--kind", "duplication_edge")
    assert parse_graph6(out.strip()).n == 220


def test_error_exit_codes(tmp_path, capsys):
    assert call("gen", "--family", "nope")[0] == 1
    assert call("spectrum", "D?")[0] == 1
    assert call("spectrum", str(tmp_path / "missing.g6"))[0] == 2
    assert call("census", "--n", "10", "--kinds", "A")[0] == 1
    assert call("srg", "--params", "10,3,1,1")[0] == 1
    assert call("certify", "sb_vv", "D?{", "D?{", "D?{", "D?{")[0] == 1
    err = capsys.readouterr().err
    assert all(line.startswith("error: ") for line in err.strip().splitlines())


def test_output_is_deterministic():
    a = subprocess.run([sys.executable, "-m", "specdet.cli", "construct", "gm", "IJXTSYQ`W", "--seed", "3"], capture_output=True, text=True)
    b = subprocess.run([sys.executable, "-m", "specdet.cli", "construct", "gm", "IJXTSYQ`W", "--seed", "3"], capture_output=True, text=True)
    assert a.returncode == b.returncode
    assert a.stdout == b.stdout


def test_progress_goes_to_stderr():
    p = subprocess.run([sys.executable, "-m", "specdet.cli", "census", "--n", "4", "--jobs", "1"], capture_output=True, text=True)
    assert p.returncode == 0
    assert "enumerated" in p.stderr and "enumerated" not in p.stdout
    json.loads(p.stdout)
