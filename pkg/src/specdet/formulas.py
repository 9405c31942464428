"""Closed-form adjacency spectra of structured families and DS procedures."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import poly
from .canon import are_isomorphic
from .families import complete_bipartite, turan_parts
from .graph import Graph, GraphError, disjoint_union, empty_graph
from .quadratic import QuadraticNumber
from .spectra import CharPoly, SpectrumError, are_cospectral, numeric_roots, root_signature


@dataclass(frozen=True)
class ClosedSpectrum:
    """Multiset of exact eigenvalues: ``((value, multiplicity), ...)``, descending."""

    items: tuple

    def __post_init__(self):
        merged: dict[QuadraticNumber, int] = {}
        for v, m in self.items:
            v = v if isinstance(v, QuadraticNumber) else QuadraticNumber(v)
            if m < 0:
                raise SpectrumError("negative multiplicity")
            if m:
                merged[v] = merged.get(v, 0) + int(m)
        items = sorted(merged.items(), key=lambda vm: vm[0], reverse=True)
        object.__setattr__(self, "items", tuple(items))

    @property
    def n(self) -> int:
        return sum(m for _, m in self.items)

    def multiplicity(self, value) -> int:
        value = value if isinstance(value, QuadraticNumber) else QuadraticNumber(value)
        return dict(self.items).get(value, 0)

    def to_charpoly(self, kind: str | None = "A") -> CharPoly:
        """Exact polynomial; irrational values must come in conjugate pairs."""
        cs: tuple = (Fraction(1),)
        mults = dict(self.items)
        done = set()
        for v, m in self.items:
            if v in done:
                continue
            if v.is_rational:
                factor = (Fraction(1), -v.a)
            else:
                c = v.conjugate()
                if mults.get(c) != m:
                    raise SpectrumError(f"{v} lacks a conjugate of equal multiplicity")
                done.add(c)
                factor = (Fraction(1), -(v + c).a, (v * c).a)
            for _ in range(m):
                cs = poly.multiply(cs, factor)
            done.add(v)
        return CharPoly(cs, kind)

    def numeric(self) -> list[float]:
        out = []
        for v, m in self.items:
            out += [float(v)] * m
        return sorted(out, reverse=True)

    def to_json(self) -> list[dict]:
        return [{"value": v.to_json(), "mult": m} for v, m in self.items]

    @classmethod
    def from_json(cls, obj: list) -> "ClosedSpectrum":
        return cls(tuple((QuadraticNumber.from_json(e["value"]), int(e["mult"])) for e in obj))

    def __str__(self):
        return "{" + ", ".join(f"[{v}]^{m}" if m > 1 else str(v) for v, m in self.items) + "}"


def complete_bipartite_spectrum(p: int, q: int) -> ClosedSpectrum:
    if p < 1 or q < 1:
        raise GraphError("K_{p,q} needs p, q >= 1")
    r = QuadraticNumber.sqrt(p * q)
    return ClosedSpectrum(((r, 1), (QuadraticNumber(0), p + q - 2), (-r, 1)))


def regular_multipartite_spectrum(q: int, k: int) -> ClosedSpectrum:
    """Spectrum of the complete k-partite graph with all parts of size q."""
    if q < 1 or k < 1:
        raise GraphError("regular multipartite needs q, k >= 1")
    return ClosedSpectrum(((q * (k - 1), 1), (0, (q - 1) * k), (-q, k - 1)))


def turan_spectrum(n: int, k: int) -> ClosedSpectrum:
    turan_parts(n, k)  # validates 2 <= k <= n
    q, s = divmod(n, k)
    if s == 0:
        return regular_multipartite_spectrum(q, k)
    disc = (n - 2 * (q + 1) * s + 1) ** 2 + 4 * q * (q + 1) * s * (k - s)
    root = QuadraticNumber.sqrt(disc)
    half = Fraction(1, 2)
    hi = (root + (n - 2 * q - 1)) * half
    lo = (-root + (n - 2 * q - 1)) * half
    return ClosedSpectrum(((-q - 1, s - 1), (-q, k - s - 1), (0, n - k), (hi, 1), (lo, 1)))


def join_spectrum_regular(spec1: ClosedSpectrum, r1: int, n1: int, spec2: ClosedSpectrum, r2: int, n2: int) -> ClosedSpectrum:
    """Adjacency spectrum of the join of an r1-regular and an r2-regular graph."""
    for spec, r, nn, name in ((spec1, r1, n1, "first"), (spec2, r2, n2, "second")):
        if spec.n != nn:
            raise SpectrumError(f"{name} spectrum has {spec.n} eigenvalues, declared size {nn}")
        if spec.multiplicity(r) == 0:
            raise SpectrumError(f"declared degree {r} is not an eigenvalue of the {name} spectrum")
    items = list(spec1.items) + list(spec2.items)
    items += [(QuadraticNumber(r1), -1), (QuadraticNumber(r2), -1)]
    merged: dict = {}
    for v, m in items:
        merged[v] = merged.get(v, 0) + m
    root = QuadraticNumber.sqrt((r1 - r2) ** 2 + 4 * n1 * n2)
    half = Fraction(1, 2)
    for v in ((root + (r1 + r2)) * half, (-root + (r1 + r2)) * half):
        merged[v] = merged.get(v, 0) + 1
    return ClosedSpectrum(tuple(merged.items()))


def _factor_pairs(N: int) -> list[tuple[int, int]]:
    return [(a, N // a) for a in range(1, isqrt(N) + 1) if N % a == 0]


def is_am_minimizer(p: int, q: int) -> bool:
    if p < 1 or q < 1:
        raise GraphError("AM-minimizer needs p, q >= 1")
    return p + q == min(a + b for a, b in _factor_pairs(p * q))


def complete_bipartite_is_ds(p: int, q: int) -> bool:
    return is_am_minimizer(p, q)


def complete_bipartite_cospectral_mate(p: int, q: int) -> Graph | None:
    """``K_{a,b}`` plus ``p+q-a-b`` isolated vertices, or None when DS."""
    if is_am_minimizer(p, q):
        return None
    a, b = min(_factor_pairs(p * q), key=lambda ab: (ab[0] + ab[1], ab[0]))
    mate = disjoint_union(complete_bipartite(a, b), empty_graph(p + q - a - b))
    kpq = complete_bipartite(p, q)
    if not are_cospectral(kpq, mate, ["A"]) or are_isomorphic(kpq, mate):
        raise AssertionError(f"mate construction failed for ({p},{q})")
    return mate


def multipartite_spectral_bounds_check(parts, pA, tol: float = 1e-9) -> bool:
    """One positive root, ``n-k`` zeros, ``k-1`` negatives interlacing the part sizes."""
    parts = sorted(int(x) for x in parts)
    k, n = len(parts), sum(parts)
    if pA.degree != n:
        return False
    if root_signature(pA) != (k - 1, n - k, 1):
        return False
    negs = sorted(-x for x in numeric_roots(pA) if x < 0)[: k - 1]
    for i, mag in enumerate(negs):
        if not parts[i] - tol <= mag <= parts[i + 1] + tol:
            return False
    return True
