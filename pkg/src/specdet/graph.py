"""Simple undirected graphs stored as per-vertex neighbour bitmasks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised on malformed graph input or invalid construction parameters."""


@dataclass(frozen=True)
class Graph:
    """A finite simple undirected graph on vertices ``0..n-1``.

    ``rows[v]`` is an int whose bit ``u`` is set iff ``{u, v}`` is an edge.
    Instances are immutable and hashable; equality is labeled equality.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise GraphError(f"expected {self.n} rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for v, r in enumerate(self.rows):
            if r >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            if r & ~full:
                raise GraphError(f"row {v} references a vertex >= n")
            for u in _bits(r):
                if not self.rows[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    @property
    def m(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u] >> (u + 1) << (u + 1))]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _from_rows(rows: Sequence[int]) -> Graph:
    # trusted constructor for internally built rows; skips validation
    g = object.__new__(Graph)
    object.__setattr__(g, "n", len(rows))
    object.__setattr__(g, "rows", tuple(rows))
    return g


def build_graph(n: int, edges: Iterable[Sequence[int]] = ()) -> Graph:
    """Build a graph from an edge list; duplicates are merged."""
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    rows = [0] * n
    for e in edges:
        u, v = (int(x) for x in e)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop ({u}, {v}) not allowed")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return _from_rows(rows)


def from_adjacency(matrix: Sequence[Sequence[int]]) -> Graph:
    n = len(matrix)
    rows = [0] * n
    for i, row in enumerate(matrix):
        if len(row) != n:
            raise GraphError("adjacency matrix must be square")
        for j, a in enumerate(row):
            if a:
                rows[i] |= 1 << j
    return Graph(n, tuple(rows))


def adjacency_matrix(g: Graph) -> list[list[int]]:
    return [[(g.rows[i] >> j) & 1 for j in range(g.n)] for i in range(g.n)]


def empty_graph(n: int) -> Graph:
    return _from_rows([0] * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return _from_rows([full ^ (1 << v) for v in range(n)])


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return _from_rows([(~r & full) ^ (1 << v) for v, r in enumerate(g.rows)])


def disjoint_union(*graphs: Graph) -> Graph:
    """Disjoint union; the i-th graph's vertices are shifted by the sizes before it."""
    if len(graphs) == 1 and not isinstance(graphs[0], Graph):
        graphs = tuple(graphs[0])
    rows: list[int] = []
    offset = 0
    for g in graphs:
        rows.extend(r << offset for r in g.rows)
        offset += g.n
    return _from_rows(rows)


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union of ``g`` and ``h`` plus every edge between them."""
    n1, n2 = g.n, h.n
    hmask = ((1 << n2) - 1) << n1
    gmask = (1 << n1) - 1
    rows = [r | hmask for r in g.rows] + [(r << n1) | gmask for r in h.rows]
    return _from_rows(rows)


def line_graph(g: Graph) -> Graph:
    """Vertices are the edges of ``g`` in :meth:`Graph.edges` order."""
    edges = g.edges()
    incident: list[int] = [0] * g.n
    for k, (u, v) in enumerate(edges):
        incident[u] |= 1 << k
        incident[v] |= 1 << k
    rows = [(incident[u] | incident[v]) ^ (1 << k) for k, (u, v) in enumerate(edges)]
    return _from_rows(rows)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced by ``vertices``, relabeled ``0..k-1`` in increasing order."""
    vs = sorted(set(vertices))
    for v in vs:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    pos = {v: i for i, v in enumerate(vs)}
    rows = []
    for v in vs:
        r = 0
        for u in _bits(g.rows[v]):
            i = pos.get(u)
            if i is not None:
                r |= 1 << i
        rows.append(r)
    return _from_rows(rows)


def delete_vertex(g: Graph, v: int) -> Graph:
    return induced_subgraph(g, [u for u in range(g.n) if u != v])


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Return the graph with vertex ``v`` renamed ``perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        raise GraphError("relabeling must be a permutation of range(n)")
    rows = [0] * g.n
    for v, r in enumerate(g.rows):
        nr = 0
        for u in _bits(r):
            nr |= 1 << perm[u]
        rows[perm[v]] = nr
    return _from_rows(rows)


def add_vertex(g: Graph, neighbors: int) -> Graph:
    """Append vertex ``n`` adjacent to the vertices in bitmask ``neighbors``."""
    n = g.n
    bit = 1 << n
    rows = [r | bit if neighbors >> v & 1 else r for v, r in enumerate(g.rows)]
    rows.append(neighbors)
    return _from_rows(rows)


# ----------------------------------------------------------------------------
# combinatorial structure (independent of any spectral code)


def components(g: Graph) -> list[list[int]]:
    seen = 0
    comps = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.rows[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(list(_bits(comp)))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def bipartition(g: Graph) -> tuple[list[int], list[int]] | None:
    """A 2-colouring ``(side0, side1)`` if ``g`` is bipartite, else ``None``."""
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in _bits(g.rows[v]):
                if colour[u] < 0:
                    colour[u] = 1 - colour[v]
                    queue.append(u)
                elif colour[u] == colour[v]:
                    return None
    return ([v for v in range(g.n) if colour[v] == 0], [v for v in range(g.n) if colour[v] == 1])


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


def bipartite_component_count(g: Graph) -> int:
    return sum(1 for c in components(g) if is_bipartite(induced_subgraph(g, c)))


def triangle_count(g: Graph) -> int:
    t = 0
    for u, v in g.edges():
        t += (g.rows[u] & g.rows[v]).bit_count()
    return t // 3


def is_regular(g: Graph) -> bool:
    return len(set(g.degrees())) <= 1


def bfs_distances(g: Graph, s: int) -> list[int]:
    """Distances from ``s``; unreachable vertices get -1."""
    dist = [-1] * g.n
    dist[s] = 0
    seen = 1 << s
    frontier = 1 << s
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.rows[v]
        frontier = nxt & ~seen
        seen |= frontier
        for v in _bits(frontier):
            dist[v] = d
    return dist


def diameter(g: Graph) -> float:
    """Largest distance; ``inf`` for disconnected graphs, 0 for n <= 1."""
    best = 0
    for s in range(g.n):
        dist = bfs_distances(g, s)
        if min(dist) < 0:
            return float("inf")
        best = max(best, max(dist))
    return best


def girth(g: Graph) -> float:
    """Length of a shortest cycle (``inf`` for forests); BFS from every vertex."""
    if g.n > 64:
        raise GraphError("girth is only computed for n <= 64")
    best = float("inf")
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in _bits(g.rows[v]):
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    parent[u] = v
                    queue.append(u)
                elif parent[v] != u:
                    best = min(best, dist[u] + dist[v] + 1)
    return best


def structure_report(g: Graph, with_girth: bool | None = None) -> dict:
    """Structural summary computed by traversal and direct counting."""
    comps = components(g)
    bip = bipartition(g)
    degs = g.degrees()
    report = {
        "n": g.n,
        "edges": g.m,
        "degrees": degs,
        "is_regular": len(set(degs)) <= 1,
        "components": len(comps),
        "bipartite_components": sum(1 for c in comps if is_bipartite(induced_subgraph(g, c))),
        "bipartition": bip,
        "triangles": triangle_count(g),
    }
    if with_girth or (with_girth is None and g.n <= 64):
        report["girth"] = girth(g)
    return report


def is_strongly_regular(g: Graph) -> tuple[int, int, int, int] | None:
    """Structural SRG test; returns ``(n, d, lambda, mu)`` or ``None``."""
    if g.n < 2 or not is_regular(g):
        return None
    d = g.degree(0)
    lam = mu = None
    for u, v in combinations(range(g.n), 2):
        common = (g.rows[u] & g.rows[v]).bit_count()
        if g.has_edge(u, v):
            if lam is None:
                lam = common
            elif lam != common:
                return None
        else:
            if mu is None:
                mu = common
            elif mu != common:
                return None
    if lam is None or mu is None:
        return None
    return (g.n, d, lam, mu)
