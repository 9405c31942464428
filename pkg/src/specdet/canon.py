"""Canonical labeling and isomorphism testing.

Individualization-refinement: the degree partition is refined to an equitable
ordered partition, then a search tree individualizes vertices of the first
smallest non-singleton cell.  The canonical leaf minimizes
``(refinement trace at each level, upper-triangle adjacency bit-string)``;
subtrees are pruned by comparing traces and by automorphisms that fix the
current path pointwise (discovered at equal leaves, plus twin transpositions
known up front).
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, _bits, _from_rows


@dataclass(frozen=True)
class CanonicalForm:
    """``order[i]`` is the vertex placed at canonical position ``i``.

    ``bits`` holds the upper-triangle adjacency bit-string of the canonically
    relabeled graph read row-major, first bit most significant.  Only ``n``
    and ``bits`` take part in equality and hashing.
    """

    n: int
    bits: int
    order: tuple[int, ...] = ()

    def __eq__(self, other):
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return self.n == other.n and self.bits == other.bits

    def __hash__(self):
        return hash((self.n, self.bits))

    @property
    def key(self) -> tuple[int, int]:
        return (self.n, self.bits)

    def hex(self) -> str:
        nbits = self.n * (self.n - 1) // 2
        width = max(1, (nbits + 3) // 4)
        return f"{self.n}:{self.bits:0{width}x}"

    def graph(self) -> Graph:
        return canonical_graph_from_bits(self.n, self.bits)


def canonical_graph_from_bits(n: int, bits: int) -> Graph:
    rows = [0] * n
    pos = n * (n - 1) // 2
    for i in range(n):
        for j in range(i + 1, n):
            pos -= 1
            if bits >> pos & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return _from_rows(rows)


def _refine(rows, cells, queue):
    """Refine ordered partition ``cells`` in place against splitter masks.

    Returns the trace: one entry per split, recording the position of the
    split cell and the (count, size) signature of its fragments.
    """
    trace = []
    inq = set(queue)
    qi = 0
    while qi < len(queue):
        splitter = queue[qi]
        qi += 1
        if splitter not in inq:
            continue
        inq.discard(splitter)
        touched = 0
        for v in _bits(splitter):
            touched |= rows[v]
        if not touched:
            continue
        i = 0
        while i < len(cells):
            cell = cells[i]
            if len(cell) == 1:
                i += 1
                continue
            cmask = 0
            for v in cell:
                cmask |= 1 << v
            if not cmask & touched:
                i += 1
                continue
            groups: dict[int, list[int]] = {}
            for v in cell:
                c = (rows[v] & splitter).bit_count()
                grp = groups.get(c)
                if grp is None:
                    groups[c] = [v]
                else:
                    grp.append(v)
            if len(groups) == 1:
                i += 1
                continue
            counts = sorted(groups)
            frags = [groups[c] for c in counts]
            trace.append((i, tuple((c, len(groups[c])) for c in counts)))
            cells[i:i + 1] = frags
            fmasks = []
            for f in frags:
                fm = 0
                for v in f:
                    fm |= 1 << v
                fmasks.append(fm)
            if cmask in inq:
                inq.discard(cmask)
                skip = -1
            else:
                sizes = [len(f) for f in frags]
                skip = sizes.index(max(sizes))
            for j, fm in enumerate(fmasks):
                if j != skip:
                    queue.append(fm)
                    inq.add(fm)
            i += len(frags)
    return trace


def _initial_partition(rows, n):
    by_deg: dict[int, list[int]] = {}
    for v in range(n):
        by_deg.setdefault(rows[v].bit_count(), []).append(v)
    return [by_deg[d] for d in sorted(by_deg)]


def equitable_partition(g: Graph) -> list[list[int]]:
    """Coarsest equitable refinement of the degree partition (ordered)."""
    return _equitable(g.rows, g.n)[0]


def _twin_generators(rows, n):
    gens = []
    for closed in (False, True):
        groups: dict[int, list[int]] = {}
        for v in range(n):
            key = rows[v] | (1 << v) if closed else rows[v]
            groups.setdefault(key, []).append(v)
        for grp in groups.values():
            for a, b in zip(grp, grp[1:]):
                perm = list(range(n))
                perm[a], perm[b] = b, a
                gens.append(tuple(perm))
    return gens


def _orbit_roots(gens, n):
    """Orbit representatives; ``gens`` are lists of moved ``(v, g(v))`` pairs."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v, w in g:
            a, b = find(v), find(w)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


class _Search:
    def __init__(self, rows, n):
        self.rows = rows
        self.n = n
        self.autos = []
        self.moved = []  # per generator: moved (v, g(v)) pairs
        for g in _twin_generators(rows, n):
            self._add_auto(g)
        self._orbits = {}
        self.best_traces = None
        self.best_rows = None
        self.best_order = None
        self.path: list[int] = []
        self.tried: list[list[int]] = []

    def _leaf_rows(self, order):
        n = self.n
        pos = [0] * n
        for i, v in enumerate(order):
            pos[v] = i
        rows = self.rows
        out = []
        for i, v in enumerate(order):
            r = 0
            for u in _bits(rows[v]):
                p = pos[u]
                if p > i:
                    r |= 1 << (n - 1 - p)
            out.append(r)
        return out

    def _add_auto(self, g):
        self.autos.append(g)
        self.moved.append([(v, w) for v, w in enumerate(g) if v != w])

    def _roots(self, depth):
        key = (tuple(self.path[:depth]), len(self.autos))
        roots = self._orbits.get(key)
        if roots is None:
            prefix = self.path[:depth]
            gens = [m for g, m in zip(self.autos, self.moved) if all(g[v] == v for v in prefix)]
            roots = _orbit_roots(gens, self.n) if gens else None
            if len(self._orbits) > 4096:
                self._orbits.clear()
            self._orbits[key] = roots
        return roots

    def _redundant(self, v, depth, tried=None):
        if tried is None:
            tried = self.tried[depth]
        if not tried:
            return False
        roots = self._roots(depth)
        if roots is None:
            return False
        r = roots[v]
        return any(roots[t] == r for t in tried)

    def _path_redundant(self):
        # the path vertex at each level is the last entry tried there
        for depth, v in enumerate(self.path):
            if self._redundant(v, depth, self.tried[depth][:-1]):
                return True
        return False

    def run(self, cells, traces):
        self._explore(cells, traces)

    def _explore(self, cells, traces):
        depth = len(traces) - 1
        if self.best_traces is not None and traces > self.best_traces[:depth + 1]:
            return
        if len(cells) == self.n:
            self._leaf(cells, traces)
            return
        target = None
        for i, c in enumerate(cells):
            if len(c) > 1 and (target is None or len(c) < len(cells[target])):
                target = i
                if len(c) == 2:
                    break
        cell = cells[target]
        self.tried.append([])
        children = []
        best_tr = None
        for v in cell:
            if self._redundant(v, depth):
                continue
            self.tried[depth].append(v)
            new_cells = [list(c) for c in cells]
            rest = [u for u in cell if u != v]
            new_cells[target:target + 1] = [[v], rest]
            tr = (target, _refine(self.rows, new_cells, [1 << v]))
            if best_tr is None or tr < best_tr:
                best_tr = tr
                children = [(v, new_cells)]
            elif tr == best_tr:
                children.append((v, new_cells))
        self.tried[depth] = []
        nauto = len(self.autos)
        for v, new_cells in children:
            if self._redundant(v, depth):
                continue
            self.tried[depth].append(v)
            self.path.append(v)
            self._explore(new_cells, traces + [best_tr])
            self.path.pop()
            if len(self.autos) != nauto:
                nauto = len(self.autos)
                if self._path_redundant():
                    break
        self.tried.pop()

    def _leaf(self, cells, traces):
        order = [c[0] for c in cells]
        leaf_rows = self._leaf_rows(order)
        if self.best_traces is None or traces < self.best_traces:
            self._take(order, leaf_rows, traces)
        elif leaf_rows == self.best_rows:
            gamma = [0] * self.n
            for a, b in zip(self.best_order, order):
                gamma[a] = b
            gamma = tuple(gamma)
            if any(gamma[v] != v for v in range(self.n)):
                self._add_auto(gamma)
        elif leaf_rows < self.best_rows:
            self._take(order, leaf_rows, traces)

    def _take(self, order, leaf_rows, traces):
        self.best_order = order
        self.best_rows = leaf_rows
        self.best_traces = list(traces)


def _equitable(rows, n):
    cells = _initial_partition(rows, n)
    queue = []
    for c in cells:
        m = 0
        for v in c:
            m |= 1 << v
        queue.append(m)
    tr0 = _refine(rows, cells, queue)
    return cells, tr0


def _search(g: Graph, start=None) -> _Search:
    cells, tr0 = start if start is not None else _equitable(g.rows, g.n)
    s = _Search(g.rows, g.n)
    s.run([list(c) for c in cells], [(-1, tr0)])
    return s


def _form_from_search(n: int, s: _Search) -> CanonicalForm:
    bits = 0
    for i, r in enumerate(s.best_rows):
        bits = (bits << (n - 1 - i)) | r
    return CanonicalForm(n, bits, tuple(s.best_order))


def canonical_form(g: Graph) -> CanonicalForm:
    """Canonical form: equal ``bits`` iff the graphs are isomorphic."""
    n = g.n
    if n == 0:
        return CanonicalForm(0, 0, ())
    return _form_from_search(n, _search(g))


def canonical_labeling(g: Graph) -> list[int]:
    """``perm[v]`` = canonical position of vertex ``v``."""
    order = canonical_form(g).order
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    return perm


def automorphism_generators(g: Graph) -> list[tuple[int, ...]]:
    """Automorphisms found during the canonical search (twin swaps included)."""
    if g.n == 0:
        return []
    return list(_search(g).autos)


def canonical_graph(g: Graph) -> Graph:
    return canonical_form(g).graph()


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)
