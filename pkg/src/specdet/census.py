"""Exhaustive small-n enumeration, cospectral classes and DS censuses.

Enumeration is canonical augmentation: a graph ``H`` on k+1 vertices is
kept as a child of its parent ``P = H - v`` only when ``v`` could be the
canonical deletion vertex ``w`` of ``H`` (a maximum-degree vertex in the
last cell of the equitable partition, first in canonical order) and
``H - w`` is isomorphic to ``P``.  Children of one parent are deduplicated
by canonical form, so every isomorphism class appears exactly once.
"""

from __future__ import annotations

import hashlib
import json
import os
import pickle
import sqlite3
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Iterator

from .canon import _equitable, _form_from_search, _search, canonical_form, canonical_graph_from_bits
from .graph import Graph, GraphError, _bits, _from_rows, delete_vertex, is_connected
from .io import emit_graph6, parse_graph6
from .spectra import CharPoly, MatrixKind, char_poly, parse_kinds

MAX_N = 10
KNOWN_COUNTS = {0: 1, 1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346, 9: 274668, 10: 12005168}


class CapError(GraphError):
    """Requested size exceeds the enumeration cap."""


def _check_cap(n: int, allow_n10: bool):
    if n < 0:
        raise GraphError("n must be nonnegative")
    if n > MAX_N:
        raise CapError(f"n={n} exceeds the hard cap of {MAX_N}")
    if n == MAX_N and not allow_n10:
        raise CapError("n=10 is long-running; pass allow_n10=True (--allow-n10) to run it")


# ----------------------------------------------------------------------------
# canonical augmentation


def _children(parent: Graph, pbits: int, masks: Iterable[int]) -> list[tuple[int, Graph]]:
    """Canonical children of canonical ``parent`` over candidate neighbour masks."""
    k = parent.n
    prow = parent.rows
    degs = [r.bit_count() for r in prow]
    D = max(degs, default=-1)
    top = 0
    for u, d in enumerate(degs):
        if d == D:
            top |= 1 << u
    vbit = 1 << k
    seen: dict[int, Graph] = {}
    for S in masks:
        s = S.bit_count()
        mx = D + 1 if S & top else D
        if s < mx:
            continue
        rows = [r | vbit if S >> u & 1 else r for u, r in enumerate(prow)]
        rows.append(S)
        n = k + 1
        cells, tr0 = _equitable(rows, n)
        last = cells[-1]
        if k not in last:
            continue
        h = _from_rows(rows)
        search = _search(h, (cells, tr0))
        form = _form_from_search(n, search)
        if len(last) > 1:
            order = form.order
            lastset = set(last)
            w = next(u for u in order if u in lastset)
            if w != k and canonical_form(delete_vertex(h, w)).bits != pbits:
                continue
        if form.bits not in seen:
            seen[form.bits] = canonical_graph_from_bits(n, form.bits)
    return sorted(seen.items())


def _all_masks(k: int):
    return range(1 << k)


def _augment(parents: list[tuple[int, Graph]], masks_for: Callable[[Graph], Iterable[int]]) -> list[tuple[int, Graph]]:
    out = []
    for pbits, p in parents:
        out.extend(_children(p, pbits, masks_for(p)))
    return out


def enumerate_levels(n: int, masks_for=None, keep: Callable[[Graph, int], bool] | None = None) -> list[tuple[int, Graph]]:
    """Canonical graphs on n vertices as ``(bits, graph)`` sorted by bits.

    ``masks_for(parent)`` yields candidate neighbour masks (default: all);
    ``keep(graph, target_n)`` prunes intermediate graphs (must be hereditary
    for the canonical-deletion parent).
    """
    masks_for = masks_for or (lambda p: _all_masks(p.n))
    level = [(0, _from_rows([]))]
    for _ in range(n):
        level = _augment(level, masks_for)
        if keep is not None:
            level = [(b, g) for b, g in level if keep(g, n)]
        level.sort(key=lambda bg: bg[0])
    return level


def enumerate_graphs(n: int, predicate: Callable[[Graph], bool] | None = None, allow_n10: bool = False, cache_dir=None) -> Iterator[Graph]:
    """One canonical graph per isomorphism class on n vertices."""
    _check_cap(n, allow_n10)
    graphs = _cached_level(n, cache_dir)
    for g in graphs:
        if predicate is None or predicate(g):
            yield g


_MEMO: dict[int, list[Graph]] = {}


def _cached_level(n: int, cache_dir=None) -> list[Graph]:
    path = None
    if cache_dir is not None or os.environ.get("SPECDET_CACHE"):
        path = Path(cache_dir or os.environ["SPECDET_CACHE"]) / f"graphs_n{n}.g6"
    graphs = _MEMO.get(n)
    if graphs is None and path is not None and path.exists():
        loaded = [parse_graph6(line) for line in path.read_text().splitlines() if line]
        if len(loaded) == KNOWN_COUNTS.get(n, len(loaded)):
            graphs = loaded
    if graphs is None:
        graphs = [g for _, g in enumerate_levels(n)]
    if path is not None and not path.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text("".join(emit_graph6(g) + "\n" for g in graphs))
        tmp.replace(path)
    if n <= 9:
        _MEMO[n] = graphs
    return graphs


def _regular_masks(n: int, d: int):
    def masks_for(p: Graph):
        k = p.n
        remaining = n - k  # vertices still to add, including the new one
        degs = [r.bit_count() for r in p.rows]
        must = 0
        allowed = 0
        for u, du in enumerate(degs):
            deficit = d - du
            if deficit > 0:
                allowed |= 1 << u
            if deficit == remaining:
                must |= 1 << u
        free = allowed & ~must
        free_bits = list(_bits(free))
        base = must.bit_count()
        if base > d:
            return
        # subsets of the free vertices, size small enough to keep deg(v) <= d
        m = len(free_bits)
        for sub in range(1 << m):
            if base + sub.bit_count() > d:
                continue
            S = must
            for i in _bits(sub):
                S |= 1 << free_bits[i]
            # the new vertex needs d - |S| more neighbours among later vertices
            if d - S.bit_count() > remaining - 1:
                continue
            yield S

    return masks_for


def _regular_keep(d: int):
    def keep(g: Graph, n: int) -> bool:
        rem = n - g.n
        total = 0
        for r in g.rows:
            deficit = d - r.bit_count()
            if deficit < 0 or deficit > rem:
                return False
            total += deficit
        # deficits are filled by edges to later vertices, each taking at most d
        return total <= rem * d and (rem > 0 or total == 0)

    return keep


def enumerate_regular(n: int, d: int, connected: bool = True) -> list[Graph]:
    """All d-regular graphs on n vertices up to isomorphism (connected by default)."""
    if n < 0 or d < 0 or (n > 0 and d >= n):
        raise GraphError(f"need 0 <= d < n, got n={n}, d={d}")
    if n > 16:
        raise CapError("regular enumeration is capped at n = 16")
    if (n * d) % 2:
        return []
    level = enumerate_levels(n, _regular_masks(n, d), _regular_keep(d))
    out = [g for _, g in level if all(r.bit_count() == d for r in g.rows)]
    if connected:
        out = [g for g in out if is_connected(g)]
    return out


# ----------------------------------------------------------------------------
# fingerprint cache


class FingerprintCache:
    """SQLite store of char polys keyed by a hash of the canonical form.

    A hit is only trusted when the stored full canonical key matches.
    """

    def __init__(self, path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.db = sqlite3.connect(str(self.path))
        self.db.execute(
            "CREATE TABLE IF NOT EXISTS fp (h TEXT, kind TEXT, canon TEXT, coeffs TEXT, PRIMARY KEY (h, kind))"
        )
        self.hits = 0
        self.misses = 0

    @staticmethod
    def key(canon_hex: str) -> str:
        return hashlib.sha256(canon_hex.encode()).hexdigest()[:32]

    def get(self, canon_hex: str, kind: MatrixKind) -> CharPoly | None:
        row = self.db.execute(
            "SELECT canon, coeffs FROM fp WHERE h = ? AND kind = ?", (self.key(canon_hex), kind.value)
        ).fetchone()
        if row is None or row[0] != canon_hex:
            self.misses += 1
            return None
        self.hits += 1
        return CharPoly(tuple(Fraction(c) for c in json.loads(row[1])), kind.value)

    def put_many(self, items):
        self.db.executemany(
            "INSERT OR REPLACE INTO fp VALUES (?, ?, ?, ?)",
            [(self.key(c), k.value, c, json.dumps([str(x) for x in p.coeffs])) for c, k, p in items],
        )
        self.db.commit()

    def close(self):
        self.db.close()


def default_cache_dir() -> Path:
    env = os.environ.get("SPECDET_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "specdet"


# ----------------------------------------------------------------------------
# classes and verdicts


def _fp_worker(args):
    g6, kinds = args
    g = parse_graph6(g6)
    return tuple(char_poly(g, k).coeffs for k in kinds)


def fingerprints(graphs: list[Graph], kinds, jobs: int = 1, cache: FingerprintCache | None = None) -> list[tuple]:
    """Fingerprint keys (tuple of coefficient tuples, one per kind), in input order."""
    kinds = parse_kinds(kinds)
    results: list = [None] * len(graphs)
    todo = []
    hexes = None
    if cache is not None:
        hexes = [canonical_form(g).hex() for g in graphs]
        for i, hx in enumerate(hexes):
            polys = [cache.get(hx, k) for k in kinds]
            if all(p is not None for p in polys):
                results[i] = tuple(p.coeffs for p in polys)
            else:
                todo.append(i)
    else:
        todo = list(range(len(graphs)))
    if jobs > 1 and len(todo) > 1000:
        from multiprocessing import Pool

        with Pool(jobs) as pool:
            out = pool.map(_fp_worker, [(emit_graph6(graphs[i]), kinds) for i in todo], chunksize=500)
    else:
        out = [tuple(char_poly(graphs[i], k).coeffs for k in kinds) for i in todo]
    for i, fp in zip(todo, out):
        results[i] = fp
    if cache is not None and todo:
        cache.put_many((hexes[i], k, CharPoly(fp[j], k.value)) for i, fp in zip(todo, out) for j, k in enumerate(kinds))
    return results


def cospectral_classes(graphs: Iterable[Graph], kinds=("A",), jobs: int = 1, cache=None) -> list[list[Graph]]:
    """Partition by exact fingerprint; members and classes ordered by canonical form."""
    kinds = parse_kinds(kinds)
    graphs = list(graphs)
    keys = fingerprints(graphs, kinds, jobs=jobs, cache=cache)
    forms = [canonical_form(g) for g in graphs]
    groups: dict[tuple, list[int]] = {}
    for i, key in enumerate(keys):
        groups.setdefault(key, []).append(i)
    classes = []
    for idx in groups.values():
        idx.sort(key=lambda i: forms[i].bits)
        classes.append(idx)
    classes.sort(key=lambda idx: forms[idx[0]].bits)
    return [[graphs[i] for i in idx] for idx in classes]


@dataclass(frozen=True)
class DsVerdict:
    is_ds: bool
    mates: tuple = ()

    def to_json(self) -> dict:
        return {"ds": self.is_ds, "mates": [emit_graph6(g) for g in self.mates]}


def ds_verdict(g: Graph, kinds=("A",), allow_n10: bool = False, cache_dir=None) -> DsVerdict:
    """All nonisomorphic graphs on ``g.n`` vertices sharing ``g``'s fingerprint."""
    kinds = parse_kinds(kinds)
    _check_cap(g.n, allow_n10)
    target = tuple(char_poly(g, k).coeffs for k in kinds)
    me = canonical_form(g)
    m = g.m
    mates = []
    for h in enumerate_graphs(g.n, allow_n10=allow_n10, cache_dir=cache_dir):
        # every kind here fixes the edge count except NL; skip cheaply when safe
        if h.m != m and MatrixKind.NL not in kinds and MatrixKind.cNL not in kinds:
            continue
        if tuple(char_poly(h, k).coeffs for k in kinds) == target and canonical_form(h) != me:
            mates.append(h)
    return DsVerdict(not mates, tuple(mates))


@dataclass
class CensusRow:
    n: int
    kinds: tuple
    total: int
    class_count: int
    singleton_count: int
    largest: int
    nics_classes: list = field(default_factory=list)  # lists of graph6 strings

    @property
    def ds_fraction(self) -> Fraction:
        return Fraction(self.singleton_count, self.total) if self.total else Fraction(1)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "kinds": [str(k) for k in self.kinds],
            "total": self.total,
            "class_count": self.class_count,
            "singleton_count": self.singleton_count,
            "largest": self.largest,
            "ds_fraction": str(self.ds_fraction),
            "ds_fraction_float": float(self.ds_fraction),
            "nics_classes": self.nics_classes,
        }

    def ndjson(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True) + "\n"

    def graph6_export(self) -> str:
        """NICS classes as graph6 lines, classes separated by blank lines."""
        return "\n".join("".join(g6 + "\n" for g6 in cls) for cls in self.nics_classes)


def _row_from_classes(n, kinds, classes) -> CensusRow:
    sizes = [len(c) for c in classes]
    return CensusRow(
        n=n,
        kinds=tuple(kinds),
        total=sum(sizes),
        class_count=len(classes),
        singleton_count=sum(1 for s in sizes if s == 1),
        largest=max(sizes, default=0),
        nics_classes=[[emit_graph6(g) for g in c] for c in classes if len(c) > 1],
    )


def ds_census(n: int, kinds=("A",), allow_n10: bool = False, jobs: int = 1, cache_dir=None, progress=None, checkpoint_every: int = 100_000) -> CensusRow:
    """Cospectral-class census over all graphs on n vertices."""
    kinds = parse_kinds(kinds)
    _check_cap(n, allow_n10)
    if n == MAX_N:
        return _census_streaming(n, kinds, cache_dir, progress, checkpoint_every)
    graphs = list(enumerate_graphs(n, cache_dir=cache_dir))
    if progress:
        progress(f"n={n}: {len(graphs)} graphs enumerated")
    cache = None
    if cache_dir is not None:
        cache = FingerprintCache(Path(cache_dir) / "fingerprints.sqlite")
    try:
        classes = cospectral_classes(graphs, kinds, jobs=jobs, cache=cache)
    finally:
        if cache is not None:
            cache.close()
    return _row_from_classes(n, kinds, classes)


def _census_streaming(n, kinds, cache_dir, progress, checkpoint_every) -> CensusRow:
    """Parent-by-parent census with resumable checkpoints (used for n = 10)."""
    root = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    root.mkdir(parents=True, exist_ok=True)
    ckpt = root / f"census_n{n}_{'-'.join(k.value for k in kinds)}.ckpt"
    parents = [(canonical_form(g).bits, g) for g in enumerate_graphs(n - 1, cache_dir=cache_dir)]
    state = {"next_parent": 0, "groups": {}, "done": 0}
    if ckpt.exists():
        with open(ckpt, "rb") as fh:
            state = pickle.load(fh)
    groups: dict = state["groups"]
    since = 0
    for pi in range(state["next_parent"], len(parents)):
        pbits, p = parents[pi]
        for bits, h in _children(p, pbits, _all_masks(p.n)):
            key = tuple(char_poly(h, k).coeffs for k in kinds)
            groups.setdefault(key, []).append(bits)
            state["done"] += 1
            since += 1
        if since >= checkpoint_every:
            state["next_parent"] = pi + 1
            with open(ckpt.with_suffix(".tmp"), "wb") as fh:
                pickle.dump(state, fh)
            ckpt.with_suffix(".tmp").replace(ckpt)
            since = 0
            if progress:
                progress(f"n={n}: {state['done']} graphs processed")
    classes = sorted((sorted(v) for v in groups.values()), key=lambda c: c[0])
    graphs_classes = [[canonical_graph_from_bits(n, b) for b in c] for c in classes]
    return _row_from_classes(n, kinds, graphs_classes)


def stderr_progress(msg: str):
    print(msg, file=sys.stderr, flush=True)
