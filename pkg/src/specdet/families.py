"""Named graph families with fixed, documented vertex orders.

Labeling conventions (relied on by fixtures):

* star, wheel, friendship, generalized friendship: hub is vertex 0;
* complete multipartite and Turan: parts are consecutive blocks, parts in
  nondecreasing size order;
* pyramid ``K_k v empty(n-k)``: clique first;
* lollipop: cycle ``0..p-1``, then the path starting at the vertex adjacent to 0;
* sandglass: path ``0..L-1``, then the two triangle tips at vertex 0,
  then the two at vertex ``L-1``;
* nice sunlike: cycle ``0..l-1`` with v1 = 0, then v1's pendant, then two
  pendants per ``u_i`` in order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import (
    Graph,
    GraphError,
    build_graph,
    complement,
    complete_graph,
    disjoint_union,
    empty_graph,
    join,
    line_graph,
)


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> Graph:
    """``S_n = K_{1,n-1}`` on n vertices, hub 0."""
    if n < 1:
        raise GraphError("star needs n >= 1")
    return build_graph(n, [(0, i) for i in range(1, n)])


def complete_bipartite(p: int, q: int) -> Graph:
    return complete_multipartite([p, q])


def complete_multipartite(parts) -> Graph:
    parts = sorted(int(p) for p in parts)
    if any(p < 1 for p in parts):
        raise GraphError("part sizes must be positive")
    g = empty_graph(0)
    for p in parts:
        g = join(g, empty_graph(p))
    return g


def turan_parts(n: int, k: int) -> list[int]:
    if not 2 <= k <= n:
        raise GraphError(f"Turan graph needs 2 <= k <= n, got n={n}, k={k}")
    q, s = divmod(n, k)
    return [q] * (k - s) + [q + 1] * s


def turan_graph(n: int, k: int) -> Graph:
    return complete_multipartite(turan_parts(n, k))


def pyramid_graph(n: int, k: int) -> Graph:
    if not 1 <= k < n:
        raise GraphError("pyramid needs 1 <= k < n")
    return join(complete_graph(k), empty_graph(n - k))


def friendship_graph(p: int) -> Graph:
    return generalized_friendship(p, 2)


def generalized_friendship(p: int, q: int) -> Graph:
    if p < 1 or q < 1:
        raise GraphError("generalized friendship needs p, q >= 1")
    return join(complete_graph(1), disjoint_union([complete_graph(q)] * p))


def wheel_graph(n: int) -> Graph:
    """``W_n = K_1 v C_{n-1}`` on n vertices."""
    if n < 4:
        raise GraphError("wheel needs n >= 4")
    return join(complete_graph(1), cycle_graph(n - 1))


def lollipop_graph(n: int, p: int) -> Graph:
    """Cycle ``C_p`` with a pendant path; n vertices in total."""
    if not 3 <= p < n:
        raise GraphError("lollipop needs 3 <= p < n")
    edges = [(i, (i + 1) % p) for i in range(p)]
    edges += [(i, i + 1) for i in range(p - 1, n - 1)]
    edges[p] = (0, p)
    return build_graph(n, edges)


def sandglass_graph(path_len: int) -> Graph:
    if path_len < 2:
        raise GraphError("sandglass needs a path with at least 2 vertices")
    L = path_len
    edges = [(i, i + 1) for i in range(L - 1)]
    a, b, c, d = L, L + 1, L + 2, L + 3
    edges += [(0, a), (0, b), (a, b), (L - 1, c), (L - 1, d), (c, d)]
    return build_graph(L + 4, edges)


def petersen_graph() -> Graph:
    return complement(line_graph(complete_graph(5)))


def lattice_graph(q: int) -> Graph:
    """``L_2(q)``, the line graph of ``K_{q,q}``."""
    if q < 2:
        raise GraphError("lattice graph needs q >= 2")
    return line_graph(complete_bipartite(q, q))


def triangular_graph(k: int) -> Graph:
    """``T(k)``, the line graph of ``K_k``."""
    if k < 2:
        raise GraphError("triangular graph needs k >= 2")
    return line_graph(complete_graph(k))


def nice_sunlike_graph(l: int, steps) -> Graph:
    """Cycle ``C_l``; vertex 0 gets one pendant, each ``u_i`` two pendants.

    ``u_i`` sits at the cumulative sum of ``steps[:i+1]`` along the cycle.
    """
    steps = [int(s) for s in steps]
    if any(s not in (4, 6) for s in steps):
        raise GraphError("nice-graph steps must each be 4 or 6")
    if l < 3 or sum(steps) >= l:
        raise GraphError("steps must stay strictly inside one turn of the cycle")
    edges = [(i, (i + 1) % l) for i in range(l)]
    nxt = l
    edges.append((0, nxt))
    nxt += 1
    pos = 0
    for s in steps:
        pos += s
        edges += [(pos, nxt), (pos, nxt + 1)]
        nxt += 2
    return build_graph(nxt, edges)


@dataclass(frozen=True)
class FamilySpec:
    """A named family plus its integer parameters."""

    family: str
    params: dict = field(default_factory=dict)

    def __hash__(self):
        return hash((self.family, tuple(sorted((k, str(v)) for k, v in self.params.items()))))


_FAMILIES = {
    "complete": (lambda n: complete_graph(n), ("n",)),
    "empty": (lambda n: empty_graph(n), ("n",)),
    "path": (lambda n: path_graph(n), ("n",)),
    "cycle": (lambda n: cycle_graph(n), ("n",)),
    "star": (lambda n: star_graph(n), ("n",)),
    "complete_bipartite": (lambda p, q: complete_bipartite(p, q), ("p", "q")),
    "complete_multipartite": (lambda parts: complete_multipartite(parts), ("parts",)),
    "turan": (lambda n, k: turan_graph(n, k), ("n", "k")),
    "pyramid": (lambda n, k: pyramid_graph(n, k), ("n", "k")),
    "friendship": (lambda p: friendship_graph(p), ("p",)),
    "generalized_friendship": (lambda p, q: generalized_friendship(p, q), ("p", "q")),
    "wheel": (lambda n: wheel_graph(n), ("n",)),
    "lollipop": (lambda n, p: lollipop_graph(n, p), ("n", "p")),
    "sandglass": (lambda path_len: sandglass_graph(path_len), ("path_len",)),
    "petersen": (lambda: petersen_graph(), ()),
    "lattice": (lambda q: lattice_graph(q), ("q",)),
    "triangular": (lambda k: triangular_graph(k), ("k",)),
    "nice_sunlike": (lambda l, steps: nice_sunlike_graph(l, steps), ("l", "steps")),
}

FAMILY_NAMES = tuple(_FAMILIES)


def family_params(name: str) -> tuple[str, ...]:
    try:
        return _FAMILIES[name][1]
    except KeyError:
        raise GraphError(f"unknown family {name!r}") from None


def generate(spec: FamilySpec | str, **params) -> Graph:
    """Build a family member, e.g. ``generate("turan", n=17, k=7)``."""
    if isinstance(spec, FamilySpec):
        name, params = spec.family, dict(spec.params)
    else:
        name = spec
    builder, names = _FAMILIES.get(name, (None, None))
    if builder is None:
        raise GraphError(f"unknown family {name!r}")
    missing = [p for p in names if p not in params]
    extra = [p for p in params if p not in names]
    if missing or extra:
        raise GraphError(f"family {name!r} takes parameters {names}; missing {missing}, unexpected {extra}")
    return builder(**{p: params[p] for p in names})
