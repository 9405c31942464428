"""Graph matrices, exact characteristic polynomials and cospectrality.

Integer matrices go through FLINT's exact charpoly.  The normalized
Laplacian is handled through the similar rational matrix ``D^+ (D - A)``:
isolated vertices contribute factors of ``x``; on the remaining vertices the
matrix is scaled by the lcm of the degrees to make it integral, and the
coefficients are rescaled afterwards.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import flint

from . import poly
from .graph import Graph, complement, induced_subgraph


class SpectrumError(ValueError):
    """Raised for malformed polynomials or fingerprints."""


class MatrixKind(str, enum.Enum):
    A = "A"
    L = "L"
    Q = "Q"
    NL = "NL"
    cA = "cA"
    cL = "cL"
    cQ = "cQ"
    cNL = "cNL"

    @property
    def base(self) -> "MatrixKind":
        return MatrixKind(self.value[1:]) if self.is_complement else self

    @property
    def is_complement(self) -> bool:
        return self.value.startswith("c")

    def __str__(self):
        return self.value


ALL_KINDS = tuple(MatrixKind)
BASE_KINDS = (MatrixKind.A, MatrixKind.L, MatrixKind.Q, MatrixKind.NL)


def parse_kinds(spec: str | Iterable) -> tuple[MatrixKind, ...]:
    """``"A,L,Q"`` (or an iterable of names/kinds) -> kinds in canonical order."""
    if isinstance(spec, str):
        names = [s.strip() for s in spec.split(",") if s.strip()]
    else:
        names = list(spec)
    out = set()
    for name in names:
        try:
            out.add(MatrixKind(str(name)))
        except ValueError:
            raise SpectrumError(f"unknown matrix kind {name!r}; expected one of {[k.value for k in ALL_KINDS]}") from None
    if not out:
        raise SpectrumError("empty kind set")
    return tuple(k for k in ALL_KINDS if k in out)


# ----------------------------------------------------------------------------
# matrices


def matrix_of(g: Graph, kind: MatrixKind | str) -> list[list]:
    """Exact matrix of ``kind``: ints for A/L/Q, Fractions for the NL surrogate."""
    kind = MatrixKind(kind)
    if kind.is_complement:
        return matrix_of(complement(g), kind.base)
    n = g.n
    A = [[(g.rows[i] >> j) & 1 for j in range(n)] for i in range(n)]
    if kind is MatrixKind.A:
        return A
    deg = g.degrees()
    if kind is MatrixKind.L:
        return [[deg[i] if i == j else -A[i][j] for j in range(n)] for i in range(n)]
    if kind is MatrixKind.Q:
        return [[deg[i] if i == j else A[i][j] for j in range(n)] for i in range(n)]
    out = []
    for i in range(n):
        if deg[i] == 0:
            out.append([Fraction(0)] * n)
        else:
            inv = Fraction(1, deg[i])
            out.append([Fraction(1) if i == j else -A[i][j] * inv for j in range(n)])
    return out


def incidence_matrices(g: Graph) -> tuple[list[list[int]], list[list[int]]]:
    """``(B, N)``: unsigned incidence and oriented incidence (tail = smaller end, +1)."""
    edges = g.edges()
    B = [[0] * len(edges) for _ in range(g.n)]
    N = [[0] * len(edges) for _ in range(g.n)]
    for k, (u, v) in enumerate(edges):
        B[u][k] = B[v][k] = 1
        N[u][k] = 1
        N[v][k] = -1
    return B, N


# ----------------------------------------------------------------------------
# characteristic polynomials


@dataclass(frozen=True, eq=False)
class CharPoly:
    """Monic characteristic polynomial, coefficients degree-descending.

    Equality and hashing look only at the coefficients; ``kind`` is a label.
    """

    coeffs: tuple
    kind: str | None = None

    def __post_init__(self):
        cs = tuple(c if isinstance(c, Fraction) else Fraction(c) for c in self.coeffs)
        if not cs or cs[0] != 1:
            raise SpectrumError("characteristic polynomial must be monic")
        object.__setattr__(self, "coeffs", cs)
        if self.kind is not None:
            object.__setattr__(self, "kind", str(MatrixKind(str(self.kind))))

    def __eq__(self, other):
        if not isinstance(other, CharPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x) -> Fraction:
        return poly.evaluate(self.coeffs, x)

    def coefficient(self, power: int) -> Fraction:
        """Coefficient of ``x**power``."""
        if not 0 <= power <= self.degree:
            return Fraction(0)
        return self.coeffs[self.degree - power]

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_json(self) -> dict:
        return {"kind": self.kind, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict | str) -> "CharPoly":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(tuple(Fraction(c) for c in obj["coeffs"]), obj.get("kind"))

    def __str__(self):
        n = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            k = n - i
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}" if mag.denominator != 1 else f"{mag}{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"CharPoly({self.kind}: {self})"


def _int_rows_charpoly(g: Graph, kind: MatrixKind) -> list[int]:
    n = g.n
    rows = g.rows
    if kind is MatrixKind.A:
        flat = [(rows[i] >> j) & 1 for i in range(n) for j in range(n)]
    else:
        s = 1 if kind is MatrixKind.Q else -1
        flat = []
        for i in range(n):
            r = rows[i]
            d = r.bit_count()
            flat.extend(d if i == j else s * ((r >> j) & 1) for j in range(n))
    if n == 0:
        return [1]
    return [int(c) for c in reversed(flint.fmpz_mat(n, n, flat).charpoly().coeffs())]


def _nl_charpoly(g: Graph) -> list[Fraction]:
    live = [v for v in range(g.n) if g.rows[v]]
    iso = g.n - len(live)
    h = induced_subgraph(g, live) if iso else g
    n = h.n
    if n == 0:
        return [Fraction(1)] + [Fraction(0)] * iso
    deg = h.degrees()
    ell = 1
    for d in deg:
        ell = lcm(ell, d)
    flat = []
    for i in range(n):
        w = ell // deg[i]
        r = h.rows[i]
        flat.extend(ell if i == j else -w * ((r >> j) & 1) for j in range(n))
    cm = [int(c) for c in reversed(flint.fmpz_mat(n, n, flat).charpoly().coeffs())]
    # chi_{M/ell}(x) = ell^{-n} chi_M(ell x): descending index i carries ell^{-i}
    out = []
    scale = 1
    for c in cm:
        out.append(Fraction(c, scale))
        scale *= ell
    return out + [Fraction(0)] * iso


def char_poly(g: Graph, kind: MatrixKind | str = MatrixKind.A) -> CharPoly:
    """Exact characteristic polynomial of the ``kind`` matrix of ``g``."""
    kind = MatrixKind(kind)
    h = complement(g) if kind.is_complement else g
    base = kind.base
    if base is MatrixKind.NL:
        coeffs = _nl_charpoly(h)
    else:
        coeffs = _int_rows_charpoly(h, base)
    return CharPoly(tuple(coeffs), kind.value)


def faddeev_leverrier(matrix: Sequence[Sequence]) -> tuple[Fraction, ...]:
    """Characteristic polynomial by Faddeev-LeVerrier in exact arithmetic.

    Pure Python, O(n^4); kept as an independent engine for cross-checks.
    """
    n = len(matrix)
    M = [[Fraction(x) for x in row] for row in matrix]
    coeffs = [Fraction(1)]
    Mk = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        # Mk <- M @ Mk + c I
        prod = [[sum(M[i][t] * Mk[t][j] for t in range(n) if M[i][t]) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += c
        Mk = prod
        tr = sum(sum(M[i][t] * Mk[t][i] for t in range(n)) for i in range(n))
        c = -tr / k
        coeffs.append(c)
    return tuple(coeffs)


# ----------------------------------------------------------------------------
# fingerprints


@dataclass(frozen=True)
class SpectralFingerprint:
    """Kind -> CharPoly map; equality over the same kind set is cospectrality."""

    polys: tuple  # ((MatrixKind, CharPoly), ...) in canonical kind order

    def __getitem__(self, kind) -> CharPoly:
        kind = MatrixKind(kind)
        for k, p in self.polys:
            if k is kind:
                return p
        raise KeyError(kind)

    @property
    def kinds(self) -> tuple[MatrixKind, ...]:
        return tuple(k for k, _ in self.polys)

    def key(self) -> tuple:
        return tuple((k.value, p.coeffs) for k, p in self.polys)

    def to_json(self) -> dict:
        return {k.value: [str(c) for c in p.coeffs] for k, p in self.polys}


def fingerprint(g: Graph, kinds=ALL_KINDS) -> SpectralFingerprint:
    kinds = parse_kinds(kinds)
    return SpectralFingerprint(tuple((k, char_poly(g, k)) for k in kinds))


def first_difference(g: Graph, h: Graph, kinds) -> MatrixKind | None:
    """First kind (canonical order) on which the spectra differ, else None."""
    for k in parse_kinds(kinds):
        if g.n != h.n or char_poly(g, k) != char_poly(h, k):
            return k
    return None


def are_cospectral(g: Graph, h: Graph, kinds=(MatrixKind.A,)) -> bool:
    return first_difference(g, h, kinds) is None


# ----------------------------------------------------------------------------
# root analysis on exact polynomials


def _coeffs_of(p) -> tuple[Fraction, ...]:
    if isinstance(p, CharPoly):
        return p.coeffs
    cs = poly.normalize(p)
    if not cs or cs[0] != 1:
        raise SpectrumError("polynomial must be monic")
    return cs


def root_signature(p) -> tuple[int, int, int]:
    """``(negatives, zeros, positives)`` of a real-rooted monic polynomial."""
    cs = _coeffs_of(p)
    n = len(cs) - 1
    zeros = poly.trailing_zeros(cs)
    core = cs[: len(cs) - zeros]
    pos = poly.sign_variations(core)
    neg = poly.sign_variations(poly.reflect(core))
    if neg + zeros + pos != n:
        raise SpectrumError("polynomial is not real-rooted: Descartes counts do not add up")
    return neg, zeros, pos


def positive_root_count(p) -> int:
    """Positive roots of a real-rooted polynomial (need not be monic)."""
    cs = poly.normalize(p)
    core = cs[: len(cs) - poly.trailing_zeros(cs)]
    return poly.sign_variations(core)


def power_sums(p, upto: int) -> list[Fraction]:
    """``[p_1, ..., p_upto]`` with ``p_k`` the sum of k-th powers of the roots."""
    if upto < 1:
        raise SpectrumError("power_sums needs upto >= 1")
    cs = _coeffs_of(p)
    n = len(cs) - 1
    a = [Fraction(0)] + [cs[i] for i in range(1, n + 1)]  # monic: x^n + a1 x^{n-1} + ...
    out: list[Fraction] = []
    for k in range(1, upto + 1):
        s = -k * a[k] if k <= n else Fraction(0)
        for i in range(1, min(k - 1, n) + 1):
            s -= a[i] * out[k - i - 1]
        out.append(s)
    return out


def root_multiplicity(p, r) -> int:
    cs = _coeffs_of(p)
    r = Fraction(r)
    m = 0
    while len(cs) > 1:
        q, rem = poly.divide_linear(cs, r)
        if rem != 0:
            break
        cs = q
        m += 1
    return m


def distinct_root_count(p) -> int:
    cs = _coeffs_of(p)
    return len(poly.squarefree_part(cs)) - 1


def numeric_roots(p) -> list[float]:
    """Double approximations of the roots, descending (reporting only)."""
    return poly.real_roots(_coeffs_of(p))


def numeric_spectrum(g: Graph, kind: MatrixKind | str = MatrixKind.A) -> list[float]:
    return numeric_roots(char_poly(g, kind))
