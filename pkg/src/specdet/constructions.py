"""Graph operations that produce cospectral mates, plus NICS certificates.

Vertex-order conventions (fixed, so outputs are reproducible):

* duplication ``Du(G)``: originals ``0..n-1``, duplicates ``n..2n-1``
  (``u_i = n + i``);
* coronas: the base graph (``G`` or ``Du(G)``) first, then the copies of
  ``H`` in owner order (vertex index, or edge index in ``Graph.edges()``
  order), each copy in ``H``'s own order;
* subdivision / bipartite incidence: originals, then one vertex per edge;
* sb joins: ``S(G1)`` block then ``R(G2)`` block;
* splitting joins: ``G``, then the shadows ``v'_i``, then ``H``;
* coalescence: ``G1`` unchanged, then ``G2`` minus the glued vertex.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .canon import are_isomorphic, canonical_form
from .graph import (
    Graph,
    GraphError,
    _bits,
    _from_rows,
    delete_vertex,
    induced_subgraph,
    is_regular,
    join,
)
from .io import emit_graph6
from .spectra import (
    BASE_KINDS,
    are_cospectral,
    char_poly,
    fingerprint,
    parse_kinds,
)
from .invariants import is_regular_from_spectrum


class CertificateError(ValueError):
    """A theorem hypothesis failed, or a produced pair failed verification."""


def _mask(vertices, n: int) -> int:
    m = 0
    for v in vertices:
        v = int(v)
        if not 0 <= v < n:
            raise GraphError(f"vertex {v} out of range for n={n}")
        m |= 1 << v
    return m


def _add_edge(rows, u, v):
    rows[u] |= 1 << v
    rows[v] |= 1 << u


# ----------------------------------------------------------------------------
# switching


def seidel_switch(g: Graph, U) -> Graph:
    """Complement the edges between ``U`` and its complement."""
    n = g.n
    umask = _mask(U, n)
    out = ((1 << n) - 1) & ~umask
    rows = []
    for v, r in enumerate(g.rows):
        if umask >> v & 1:
            rows.append((r & umask) | (~r & out))
        else:
            rows.append((r & out) | (~r & umask))
    return _from_rows(rows)


def seidel_regular_condition(g: Graph, U) -> bool:
    """``U`` induces a k-regular subgraph with ``|U| = n - 2(d - k)``."""
    if not is_regular(g):
        raise GraphError("Seidel regularity condition needs a regular graph")
    n = g.n
    d = g.degree(0) if n else 0
    U = sorted(set(int(u) for u in U))
    _mask(U, n)
    sub = induced_subgraph(g, U)
    if not is_regular(sub):
        return False
    k = sub.degree(0) if sub.n else 0
    return len(U) == n - 2 * (d - k)


def gm_check(g: Graph, block) -> list[int]:
    """Validate a Godsil-McKay block; returns the outside vertices to switch.

    Every outside vertex must see 0, b/2 or b vertices of the block, and the
    block must induce a regular subgraph (needed for cospectrality).
    """
    block = sorted(set(int(b) for b in block))
    bmask = _mask(block, g.n)
    b = len(block)
    if b == 0:
        raise GraphError("GM block must be nonempty")
    if not is_regular(induced_subgraph(g, block)):
        raise GraphError(f"GM block {block} does not induce a regular subgraph")
    half = []
    for w in range(g.n):
        if bmask >> w & 1:
            continue
        c = (g.rows[w] & bmask).bit_count()
        if c in (0, b):
            continue
        if 2 * c == b:
            half.append(w)
            continue
        raise GraphError(f"outside vertex {w} has {c} neighbours in a block of size {b} (need 0, {b // 2} or {b})")
    return half


def gm_switch(g: Graph, block, verify: bool = False) -> Graph:
    """Godsil-McKay switch: complement block adjacency of half-degree outsiders."""
    half = gm_check(g, block)
    bmask = _mask(block, g.n)
    rows = list(g.rows)
    for w in half:
        rows[w] ^= bmask
        for v in _bits(bmask):
            rows[v] ^= 1 << w
    h = _from_rows(rows)
    if verify and not are_cospectral(g, h, ["A"]):
        raise AssertionError("GM switch produced a non-cospectral graph")
    return h


def find_seidel_sets(g: Graph, rng: random.Random | None = None, max_size: int = 6, independent: bool = False, limit: int = 1, tries: int = 20000) -> list[list[int]]:
    """Subsets satisfying the Seidel regularity condition whose switch is nonisomorphic.

    Exhaustive over sizes ``1..max_size`` for n <= 12, random sampling beyond.
    """
    if not is_regular(g):
        raise GraphError("Seidel search needs a regular graph")
    n = g.n
    d = g.degree(0) if n else 0
    sizes = [n - 2 * (d - k) for k in range(d + 1)]
    sizes = [s for s in sizes if 1 <= s <= min(max_size, n - 1)]
    found: list[list[int]] = []

    def ok(U):
        if independent and any(g.has_edge(a, b) for a, b in combinations(U, 2)):
            return False
        return seidel_regular_condition(g, U) and not are_isomorphic(g, seidel_switch(g, U))

    if n <= 12:
        for s in sizes:
            for U in combinations(range(n), s):
                if ok(list(U)):
                    found.append(list(U))
                    if len(found) >= limit:
                        return found
        return found
    rng = rng or random.Random(0)
    for _ in range(tries):
        if not sizes:
            break
        s = rng.choice(sizes)
        U = sorted(rng.sample(range(n), s))
        if U not in found and ok(U):
            found.append(U)
            if len(found) >= limit:
                break
    return found


def find_gm_blocks(g: Graph, rng: random.Random | None = None, sizes=(4, 6), limit: int = 1, tries: int = 20000, nontrivial: bool = True) -> list[list[int]]:
    """Valid GM blocks with at least one half-degree outsider.

    Exhaustive for n <= 12 (block sizes as given, capped at 6), random beyond.
    With ``nontrivial`` the switched graph must also be nonisomorphic.
    """
    n = g.n
    sizes = [s for s in sizes if 2 <= s <= min(6, n - 1) and s % 2 == 0]
    found: list[list[int]] = []

    def ok(B):
        try:
            half = gm_check(g, B)
        except GraphError:
            return False
        if not half:
            return False
        return not nontrivial or not are_isomorphic(g, gm_switch(g, B))

    if n <= 12:
        for s in sizes:
            for B in combinations(range(n), s):
                if ok(list(B)):
                    found.append(list(B))
                    if len(found) >= limit:
                        return found
        return found
    rng = rng or random.Random(0)
    for _ in range(tries):
        if not sizes:
            break
        B = sorted(rng.sample(range(n), rng.choice(sizes)))
        if B not in found and ok(B):
            found.append(B)
            if len(found) >= limit:
                break
    return found


# ----------------------------------------------------------------------------
# coalescence


def coalesce(g1: Graph, v1: int, g2: Graph, v2: int) -> Graph:
    """Glue ``v2`` of ``g2`` onto ``v1`` of ``g1``."""
    if not 0 <= v1 < g1.n or not 0 <= v2 < g2.n:
        raise GraphError("coalescence vertex out of range")
    n1 = g1.n
    newid = {}
    nxt = n1
    for u in range(g2.n):
        if u == v2:
            newid[u] = v1
        else:
            newid[u] = nxt
            nxt += 1
    rows = list(g1.rows) + [0] * (g2.n - 1)
    for a, b in g2.edges():
        _add_edge(rows, newid[a], newid[b])
    return _from_rows(rows)


def schwenk_pair(g1: Graph, v1: int, g2: Graph, v2: int, gamma: Graph, u: int) -> tuple[Graph, Graph]:
    """Coalesce ``gamma`` at ``u`` onto ``v1`` of ``g1`` and onto ``v2`` of ``g2``."""
    if not are_cospectral(g1, g2, ["A"]):
        raise CertificateError("schwenk_pair: G1 and G2 are not A-cospectral")
    if not are_cospectral(delete_vertex(g1, v1), delete_vertex(g2, v2), ["A"]):
        raise CertificateError("schwenk_pair: G1-v1 and G2-v2 are not A-cospectral")
    a = coalesce(g1, v1, gamma, u)
    b = coalesce(g2, v2, gamma, u)
    if not are_cospectral(a, b, ["A"]):
        raise AssertionError("coalescences are not A-cospectral")
    return a, b


# ----------------------------------------------------------------------------
# duplication and corona products


def duplication(g: Graph) -> Graph:
    n = g.n
    rows = [0] * (2 * n)
    for i, j in g.edges():
        _add_edge(rows, i, n + j)
        _add_edge(rows, j, n + i)
    return _from_rows(rows)


CORONA_KINDS = ("corona", "edge", "duplication", "duplication_neighborhood", "duplication_edge", "closed_neighborhood")


def corona_product(kind: str, g: Graph, h: Graph) -> Graph:
    """One of the six corona-type products of ``g`` (base) and ``h`` (copies)."""
    if kind not in CORONA_KINDS:
        raise GraphError(f"unknown corona kind {kind!r}; expected one of {CORONA_KINDS}")
    n1, n2 = g.n, h.n
    edges = g.edges()
    base = duplication(g) if kind.startswith("duplication") else g
    owners = edges if kind in ("edge", "duplication_edge") else list(range(n1))
    rows = list(base.rows) + [0] * (len(owners) * n2)
    off = base.n
    hedges = h.edges()
    for k, owner in enumerate(owners):
        start = off + k * n2
        for a, b in hedges:
            _add_edge(rows, start + a, start + b)
        if kind in ("corona", "duplication"):
            attach = [owner]
        elif kind in ("edge", "duplication_edge"):
            attach = list(owner)
        elif kind == "duplication_neighborhood":
            attach = [n1 + j for j in _bits(g.rows[owner])]
        else:  # closed_neighborhood
            attach = [owner] + list(_bits(g.rows[owner]))
        for v in attach:
            for t in range(n2):
                _add_edge(rows, v, start + t)
    return _from_rows(rows)


# ----------------------------------------------------------------------------
# subdivision-type joins


def subdivision(g: Graph) -> Graph:
    n = g.n
    edges = g.edges()
    rows = [0] * (n + len(edges))
    for k, (u, v) in enumerate(edges):
        _add_edge(rows, u, n + k)
        _add_edge(rows, v, n + k)
    return _from_rows(rows)


def bipartite_incidence(g: Graph) -> Graph:
    n = g.n
    edges = g.edges()
    rows = list(g.rows) + [0] * len(edges)
    for k, (u, v) in enumerate(edges):
        _add_edge(rows, u, n + k)
        _add_edge(rows, v, n + k)
    return _from_rows(rows)


SB_KINDS = ("vv", "ee", "ev", "ve")


def sb_join(kind: str, g1: Graph, g2: Graph) -> Graph:
    """Join of ``S(g1)`` and ``R(g2)``; ``kind`` picks which vertex classes are joined.

    First letter: original (v) or edge (e) vertices of ``S(g1)``; second
    letter: original or edge vertices of ``R(g2)``.
    """
    if kind not in SB_KINDS:
        raise GraphError(f"unknown sb_join kind {kind!r}; expected one of {SB_KINDS}")
    s = subdivision(g1)
    r = bipartite_incidence(g2)
    n1, m1, n2, m2 = g1.n, g1.m, g2.n, g2.m
    rows = list(s.rows) + [row << s.n for row in r.rows]
    left = range(0, n1) if kind[0] == "v" else range(n1, n1 + m1)
    off = s.n
    right = range(off, off + n2) if kind[1] == "v" else range(off + n2, off + n2 + m2)
    for a in left:
        for b in right:
            _add_edge(rows, a, b)
    return _from_rows(rows)


SPLIT_KINDS = ("NS", "NNS")


def splitting_join(kind: str, g: Graph, h: Graph) -> Graph:
    """NS / NNS join: ``G v H`` plus shadows ``v'_i`` wired into ``G``."""
    if kind not in SPLIT_KINDS:
        raise GraphError(f"unknown splitting join {kind!r}; expected NS or NNS")
    n = g.n
    gh = join(g, h)
    # reorder to G, shadows, H
    rows = [0] * (2 * n + h.n)
    for a, b in gh.edges():
        a2 = a if a < n else a + n
        b2 = b if b < n else b + n
        _add_edge(rows, a2, b2)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            adj = g.has_edge(i, j)
            if (kind == "NS" and adj) or (kind == "NNS" and not adj):
                _add_edge(rows, n + i, j)
    return _from_rows(rows)


# ----------------------------------------------------------------------------
# certificates


def _corona(kind):
    return lambda a, b: corona_product(kind, a, b)


RECIPES: dict[str, tuple[str, tuple[str, ...], object]] = {
    # name: (hypothesis family, certified kinds, builder(first, second))
    "duplication_corona": ("corona", ("A", "L", "Q"), _corona("duplication")),
    "duplication_neighborhood_corona": ("corona", ("A", "L", "Q"), _corona("duplication_neighborhood")),
    "duplication_edge_corona": ("corona", ("A", "L", "Q"), _corona("duplication_edge")),
    "closed_neighborhood_corona_left": ("closed_corona_left", ("A", "L", "Q"), _corona("closed_neighborhood")),
    "closed_neighborhood_corona_right": ("closed_corona_right", ("A", "L", "Q"), _corona("closed_neighborhood")),
    "sb_vv": ("sb_join", ("A", "L", "NL"), lambda a, b: sb_join("vv", a, b)),
    "sb_ee": ("sb_join", ("A", "L", "NL"), lambda a, b: sb_join("ee", a, b)),
    "sb_ev": ("sb_join", ("A", "L", "NL"), lambda a, b: sb_join("ev", a, b)),
    "sb_ve": ("sb_join", ("A", "L", "NL"), lambda a, b: sb_join("ve", a, b)),
    "ns_join": ("splitting_join", ("A", "L", "Q", "NL"), lambda a, b: splitting_join("NS", a, b)),
    "nns_join": ("splitting_join", ("A", "L", "Q", "NL"), lambda a, b: splitting_join("NNS", a, b)),
}

RECIPE_NAMES = tuple(RECIPES)


@dataclass(frozen=True)
class NicsCertificate:
    recipe: dict
    kinds: tuple
    graphs: tuple  # (Graph, Graph)
    fingerprints: tuple  # (SpectralFingerprint, SpectralFingerprint)
    canonical: tuple  # (CanonicalForm, CanonicalForm)
    observed: dict = field(default_factory=dict)  # extra base kinds: equal or not

    def to_json(self) -> dict:
        return {
            "recipe": self.recipe,
            "kinds": [str(k) for k in self.kinds],
            "graphs": [emit_graph6(g) for g in self.graphs],
            "charpolys": self.fingerprints[0].to_json(),
            "canonical": [c.hex() for c in self.canonical],
            "observed": self.observed,
        }


def _regular_degree(g: Graph, label: str) -> int:
    d = is_regular_from_spectrum(char_poly(g, "A"), g.n)
    if d is None:
        raise CertificateError(f"hypothesis failed: seed {label} is not regular")
    return d


def _require_cospectral(a: Graph, b: Graph, label: str):
    if not are_cospectral(a, b, ["A"]):
        raise CertificateError(f"hypothesis failed: seeds {label} are not A-cospectral")


def _require_nonisomorphic(a: Graph, b: Graph, label: str):
    if are_isomorphic(a, b):
        raise CertificateError(f"hypothesis failed: seeds {label} are isomorphic (need a NICS pair)")


def certified_nics(recipe: str, seeds: Sequence, observe: bool = True) -> NicsCertificate:
    """Build a pair by ``recipe`` and certify it.

    ``seeds`` is ``((G1, H1), (G2, H2))`` for the corona, sb-join and
    splitting-join recipes; for the closed-neighbourhood recipes it is
    ``((G1, G2), H)`` with ``G1, G2`` the cospectral regular pair.
    """
    if recipe not in RECIPES:
        raise CertificateError(f"unknown recipe {recipe!r}; expected one of {RECIPE_NAMES}")
    family, kind_names, build = RECIPES[recipe]
    kinds = parse_kinds(kind_names)
    try:
        first, second = seeds
    except (TypeError, ValueError):
        raise CertificateError("seeds must be a pair: (first pair, second pair or graph)") from None

    if family in ("closed_corona_left", "closed_corona_right"):
        g1, g2 = first
        h = second
        if not isinstance(h, Graph):
            raise CertificateError("closed-neighbourhood recipes take ((G1, G2), H)")
        _regular_degree(g1, "G1")
        _regular_degree(g2, "G2")
        _require_cospectral(g1, g2, "(G1, G2)")
        _require_nonisomorphic(g1, g2, "(G1, G2)")
        if family == "closed_corona_left":
            a, b = build(g1, h), build(g2, h)
        else:
            a, b = build(h, g1), build(h, g2)
        seed_g6 = {"G1": emit_graph6(g1), "G2": emit_graph6(g2), "H": emit_graph6(h)}
    else:
        (g1, h1), (g2, h2) = first, second
        r1 = _regular_degree(g1, "G1")
        if _regular_degree(h1, "H1") != r1:
            raise CertificateError("hypothesis failed: seeds G1 and H1 have different degrees")
        r2 = _regular_degree(g2, "G2")
        if _regular_degree(h2, "H2") != r2:
            raise CertificateError("hypothesis failed: seeds G2 and H2 have different degrees")
        _require_cospectral(g1, h1, "(G1, H1)")
        _require_cospectral(g2, h2, "(G2, H2)")
        _require_nonisomorphic(g2, h2, "(G2, H2)")
        a, b = build(g1, g2), build(h1, h2)
        seed_g6 = {"G1": emit_graph6(g1), "H1": emit_graph6(h1), "G2": emit_graph6(g2), "H2": emit_graph6(h2)}

    fa, fb = fingerprint(a, kinds), fingerprint(b, kinds)
    if fa != fb:
        bad = [k.value for k in kinds if fa[k] != fb[k]]
        raise CertificateError(f"verification failed: outputs differ on kinds {bad}")
    ca, cb = canonical_form(a), canonical_form(b)
    if ca == cb:
        raise CertificateError("verification failed: outputs are isomorphic")
    if is_regular(a) or is_regular(b):
        raise CertificateError("verification failed: an output is regular")
    observed = {}
    if observe:
        for k in BASE_KINDS:
            if k not in kinds:
                observed[k.value] = char_poly(a, k) == char_poly(b, k)
    return NicsCertificate(
        recipe={"name": recipe, "operation": family, "seeds": seed_g6},
        kinds=kinds,
        graphs=(a, b),
        fingerprints=(fa, fb),
        canonical=(ca, cb),
        observed=observed,
    )
