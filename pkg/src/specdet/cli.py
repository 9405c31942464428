"""Command-line front end.

Exit codes: 0 success, 1 precondition error, 2 I/O error.  Data goes to
stdout, progress and diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

from . import census, constructions, families, invariants
from .canon import are_isomorphic
from .graph import GraphError, complement, disjoint_union, join, line_graph
from .io import emit_graph6, load_graph, to_dot, to_edge_json
from .spectra import SpectrumError, char_poly, first_difference, numeric_roots, parse_kinds

OUT_FORMATS = ("g6", "json", "dot")


class IOFailure(Exception):
    """Unreadable or unwritable file."""


# ----------------------------------------------------------------------------
# helpers


def _read_graphs(arg: str) -> list:
    """Graphs from a file (graph6 lines or one JSON object) or a literal string."""
    if arg == "-":
        text = sys.stdin.read()
    elif os.path.exists(arg):
        try:
            text = Path(arg).read_text()
        except OSError as exc:
            raise IOFailure(f"cannot read {arg}: {exc.strerror}") from None
    else:
        text = arg
        if "/" in arg or arg.endswith((".g6", ".json")):
            raise IOFailure(f"cannot read {arg}: no such file")
    s = text.strip()
    if s.startswith("{"):
        return [load_graph(s)]
    lines = [ln.strip() for ln in s.splitlines() if ln.strip()]
    if not lines:
        raise GraphError(f"no graph found in {arg!r}")
    return [load_graph(ln) for ln in lines]


def _read_graph(arg: str):
    return _read_graphs(arg)[0]


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _emit(g, fmt: str) -> str:
    if fmt == "g6":
        return emit_graph6(g) + "\n"
    if fmt == "json":
        return _dump(to_edge_json(g)) + "\n"
    return to_dot(g)


def _ints(text: str | None) -> list[int]:
    if not text:
        return []
    return [int(x) for x in text.split(",") if x.strip()]


def _value(text: str):
    if "," in text:
        return _ints(text)
    try:
        return int(text)
    except ValueError:
        return text


def _progress(msg: str):
    print(msg, file=sys.stderr, flush=True)


def _poly_json(p) -> list[str]:
    return [str(c) for c in p.coeffs]


# ----------------------------------------------------------------------------
# commands


def cmd_gen(args, out):
    params = {}
    for name in ("n", "k", "p", "q"):
        v = getattr(args, name)
        if v is not None:
            params[name] = v
    for item in args.param or []:
        key, _, val = item.partition("=")
        if not val:
            raise GraphError(f"--param expects NAME=VALUE, got {item!r}")
        params[key] = _value(val)
    if args.family not in families.FAMILY_NAMES:
        raise GraphError(f"unknown family {args.family!r}; expected one of {', '.join(families.FAMILY_NAMES)}")
    g = families.generate(args.family, **params)
    out.write(_emit(g, args.out))


def cmd_spectrum(args, out):
    kinds = parse_kinds(args.kinds)
    for g in _read_graphs(args.graph):
        polys = {k.value: char_poly(g, k) for k in kinds}
        rec = {
            "graph": emit_graph6(g),
            "n": g.n,
            "charpolys": {k: _poly_json(p) for k, p in polys.items()},
            "pretty": {k: str(p) for k, p in polys.items()},
        }
        if args.numeric:
            rec["numeric"] = {k: [round(x, 12) + 0.0 for x in numeric_roots(p)] for k, p in polys.items()}
        out.write(_dump(rec) + "\n")


def cmd_cospectral(args, out):
    kinds = parse_kinds(args.kinds)
    a, b = _read_graph(args.a), _read_graph(args.b)
    if a.n != b.n:
        out.write(f"DIFFER kind=n ({a.n} vs {b.n} vertices)\n")
        return
    bad = first_difference(a, b, kinds)
    if bad is None:
        iso = are_isomorphic(a, b)
        out.write("COSPECTRAL" + (" ISOMORPHIC" if iso else " NONISOMORPHIC") + "\n")
    else:
        out.write(f"DIFFER kind={bad}\n")


def cmd_invariants(args, out):
    for g in _read_graphs(args.graph):
        rep = invariants.invariant_report(char_poly(g, "A"), char_poly(g, "L"), char_poly(g, "Q"))
        rep["graph"] = emit_graph6(g)
        out.write(_dump(rep) + "\n")


def _srg_record(P, spec) -> dict:
    rec = {"params": P.to_json(), "spectrum": spec.to_json(), "theta": None, "girth": None, "diameter": None}
    if P.mu > 0:
        rec["theta"] = str(invariants.lovasz_theta_srg(P))
        rec["girth"], rec["diameter"] = invariants.srg_girth_diameter(P)
    return rec


def cmd_srg(args, out):
    if args.params:
        vals = _ints(args.params)
        if len(vals) != 4:
            raise GraphError("--params expects n,d,lambda,mu")
        P = invariants.SrgParams(*vals)
        out.write(_dump(_srg_record(P, invariants.srg_spectrum(P))) + "\n")
        return
    if not args.graph:
        raise GraphError("srg needs a graph or --params")
    for g in _read_graphs(args.graph):
        found = invariants.detect_srg(char_poly(g, "A"), g.n)
        rec = {"graph": emit_graph6(g), "srg": _srg_record(*found) if found else None}
        out.write(_dump(rec) + "\n")


def cmd_ds(args, out):
    kinds = parse_kinds(args.kinds)
    for g in _read_graphs(args.graph):
        v = census.ds_verdict(g, kinds, allow_n10=args.allow_n10, cache_dir=args.cache_dir)
        rec = v.to_json()
        rec["graph"] = emit_graph6(g)
        rec["kinds"] = [k.value for k in kinds]
        out.write(_dump(rec) + "\n")


def cmd_census(args, out):
    kinds = parse_kinds(args.kinds)
    sizes = _ints(args.n_list) if args.n_list else [args.n]
    if not sizes or sizes == [None]:
        raise GraphError("census needs --n")
    for n in sizes:
        row = census.ds_census(n, kinds, allow_n10=args.allow_n10, jobs=args.jobs, cache_dir=args.cache_dir, progress=_progress)
        out.write(row.ndjson())
        if args.export:
            path = Path(args.export)
            try:
                with open(path, "a") as fh:
                    fh.write(row.graph6_export())
                    if row.nics_classes:
                        fh.write("\n")
            except OSError as exc:
                raise IOFailure(f"cannot write {path}: {exc.strerror}") from None


def cmd_construct(args, out):
    op = args.op
    graphs = [_read_graph(a) for a in args.graphs]
    rng = random.Random(args.seed)

    def need(count):
        if len(graphs) != count:
            raise GraphError(f"construct {op} takes {count} graph argument(s), got {len(graphs)}")

    results = []
    if op == "seidel":
        need(1)
        U = _ints(args.set)
        if not U:
            found = constructions.find_seidel_sets(graphs[0], rng, independent=args.independent)
            if not found:
                raise GraphError("no Seidel set satisfying the regularity condition was found")
            U = found[0]
            _progress(f"seidel set: {','.join(map(str, U))}")
        elif not constructions.seidel_regular_condition(graphs[0], U):
            raise GraphError("set fails the Seidel regularity condition")
        results = [constructions.seidel_switch(graphs[0], U)]
    elif op == "gm":
        need(1)
        B = _ints(args.set)
        if not B:
            found = constructions.find_gm_blocks(graphs[0], rng)
            if not found:
                raise GraphError("no GM block was found")
            B = found[0]
            _progress(f"gm block: {','.join(map(str, B))}")
        results = [constructions.gm_switch(graphs[0], B, verify=True)]
    elif op == "coalesce":
        need(2)
        v1, v2 = _ints(args.vertices)
        results = [constructions.coalesce(graphs[0], v1, graphs[1], v2)]
    elif op == "schwenk":
        need(3)
        v1, v2, u = _ints(args.vertices)
        results = list(constructions.schwenk_pair(graphs[0], v1, graphs[1], v2, graphs[2], u))
    elif op == "corona":
        need(2)
        results = [constructions.corona_product(args.kind or "corona", graphs[0], graphs[1])]
    elif op == "sb":
        need(2)
        results = [constructions.sb_join(args.kind or "vv", graphs[0], graphs[1])]
    elif op == "split":
        need(2)
        results = [constructions.splitting_join(args.kind or "NS", graphs[0], graphs[1])]
    elif op == "duplication":
        need(1)
        results = [constructions.duplication(graphs[0])]
    elif op == "subdivision":
        need(1)
        results = [constructions.subdivision(graphs[0])]
    elif op == "incidence":
        need(1)
        results = [constructions.bipartite_incidence(graphs[0])]
    elif op == "complement":
        need(1)
        results = [complement(graphs[0])]
    elif op == "line":
        need(1)
        results = [line_graph(graphs[0])]
    elif op == "union":
        results = [disjoint_union(graphs)]
    elif op == "join":
        need(2)
        results = [join(graphs[0], graphs[1])]
    for g in results:
        out.write(_emit(g, args.out))


def cmd_certify(args, out):
    graphs = [_read_graph(a) for a in args.graphs]
    family = constructions.RECIPES.get(args.recipe, (None,))[0]
    if family is None:
        raise GraphError(f"unknown recipe {args.recipe!r}; expected one of {', '.join(constructions.RECIPE_NAMES)}")
    if family.startswith("closed_corona"):
        if len(graphs) != 3:
            raise GraphError("closed-neighbourhood recipes take G1 G2 H")
        seeds = ((graphs[0], graphs[1]), graphs[2])
    else:
        if len(graphs) != 4:
            raise GraphError("this recipe takes G1 H1 G2 H2")
        seeds = ((graphs[0], graphs[1]), (graphs[2], graphs[3]))
    cert = constructions.certified_nics(args.recipe, seeds)
    out.write(_dump(cert.to_json()) + "\n")


# ----------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="specdet", description="Exact spectral graph determination toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    def kinds_flag(p, default="A"):
        p.add_argument("--kinds", default=default, help="comma list from A,L,Q,NL,cA,cL,cQ,cNL")

    def cache_flags(p):
        p.add_argument("--cache-dir", default=None, help="cache directory (env SPECDET_CACHE)")
        p.add_argument("--allow-n10", action="store_true", help="permit long-running n=10 work")

    p = sub.add_parser("gen", help="generate a family member")
    p.add_argument("--family", required=True)
    for name in ("n", "k", "p", "q"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--param", action="append", help="extra NAME=VALUE (comma lists allowed)")
    p.add_argument("--out", choices=OUT_FORMATS, default="g6")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("spectrum", help="exact characteristic polynomials")
    p.add_argument("graph")
    kinds_flag(p, "A,L,Q,NL")
    p.add_argument("--numeric", action="store_true", help="also print rounded numeric roots")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("cospectral", help="compare two graphs by fingerprint")
    p.add_argument("a")
    p.add_argument("b")
    kinds_flag(p)
    p.set_defaults(func=cmd_cospectral)

    p = sub.add_parser("invariants", help="invariants read off the spectra")
    p.add_argument("graph")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("srg", help="detect SRG parameters or report them")
    p.add_argument("graph", nargs="?")
    p.add_argument("--params", help="n,d,lambda,mu")
    p.set_defaults(func=cmd_srg)

    p = sub.add_parser("ds", help="DS verdict by exhaustive search")
    p.add_argument("--graph", required=True)
    kinds_flag(p)
    cache_flags(p)
    p.set_defaults(func=cmd_ds)

    p = sub.add_parser("census", help="cospectral-class census over all graphs on n vertices")
    p.add_argument("--n", type=int)
    p.add_argument("--n-list", help="comma list of sizes")
    kinds_flag(p)
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--export", help="append NICS classes as graph6 blocks to this file")
    cache_flags(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("construct", help="apply a graph operation")
    p.add_argument(
        "op",
        choices=(
            "seidel", "gm", "coalesce", "schwenk", "corona", "sb", "split", "duplication",
            "subdivision", "incidence", "complement", "line", "union", "join",
        ),
    )
    p.add_argument("graphs", nargs="*")
    p.add_argument("--kind", help="variant for corona / sb / split")
    p.add_argument("--set", help="vertex set for seidel or gm (searched when omitted)")
    p.add_argument("--vertices", help="glue vertices for coalesce (v1,v2) or schwenk (v1,v2,u)")
    p.add_argument("--independent", action="store_true", help="seidel search over independent sets")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", choices=OUT_FORMATS, default="g6")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("certify", help="build and certify a NICS pair")
    p.add_argument("recipe")
    p.add_argument("graphs", nargs="+")
    p.set_defaults(func=cmd_certify)
    return ap


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "cache_dir", None) is None and os.environ.get("SPECDET_CACHE") and hasattr(args, "cache_dir"):
        args.cache_dir = os.environ["SPECDET_CACHE"]
    try:
        args.func(args, out)
    except IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GraphError, SpectrumError, invariants.SrgError, constructions.CertificateError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
