"""Structural quantities read off characteristic polynomials alone.

Nothing here looks at a graph: every function takes CharPoly objects (or
SRG parameters), so anything it returns is determined by the spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import poly
from .quadratic import QuadraticNumber
from .spectra import (
    CharPoly,
    SpectrumError,
    _coeffs_of,
    distinct_root_count,
    positive_root_count,
    power_sums,
    root_multiplicity,
)


class SrgError(ValueError):
    """Infeasible or unsupported strongly regular parameters."""


def _integral(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise SpectrumError(f"{what} is not an integer ({x}); input is not an adjacency polynomial")
    return int(x)


def edges_from_spectrum(pA) -> int:
    return _integral(power_sums(pA, 2)[1] / 2, "edge count")


def triangles_from_spectrum(pA) -> int:
    return _integral(power_sums(pA, 3)[2] / 6, "triangle count")


def closed_walks_from_spectrum(pA, length: int) -> int:
    return _integral(power_sums(pA, length)[length - 1], "closed-walk count")


def is_regular_from_spectrum(pA, n: int | None = None) -> int | None:
    """Degree ``d`` if the spectrum is that of a d-regular graph, else None.

    Uses sum(lambda^2) = n * lambda_1 exactly when regular: ``d = p_2 / n``
    must be an integral root and no root may exceed it.
    """
    cs = _coeffs_of(pA)
    n = len(cs) - 1 if n is None else n
    if n == 0:
        return None
    d = power_sums(cs, 2)[1] / n
    if d.denominator != 1:
        return None
    if root_multiplicity(cs, d) == 0:
        return None
    if positive_root_count(poly.taylor_shift(cs, d)) != 0:
        return None
    return int(d)


def is_bipartite_from_A(pA) -> bool:
    """Spectrum symmetric about 0: ``p(x) == (-1)^n p(-x)``."""
    cs = _coeffs_of(pA)
    n = len(cs) - 1
    ref = poly.reflect(cs)
    if n % 2:
        ref = tuple(-c for c in ref)
    return ref == cs


def components_from_L(pL) -> int:
    return poly.trailing_zeros(_coeffs_of(pL))


def bipartite_components_from_Q(pQ) -> int:
    return poly.trailing_zeros(_coeffs_of(pQ))


def components_from_NL(pNL) -> int:
    return poly.trailing_zeros(_coeffs_of(pNL))


def isolated_from_NL(pNL) -> int:
    """Isolated vertices: ``n`` minus the trace (each live vertex adds 1)."""
    cs = _coeffs_of(pNL)
    n = len(cs) - 1
    return _integral(n + cs[1], "isolated-vertex count") if n else 0


def bipartite_components_from_NL(pNL) -> int:
    """Eigenvalue-2 multiplicity counts nontrivial bipartite components;
    isolated vertices (bipartite, eigenvalue 0) are added via the trace."""
    return root_multiplicity(pNL, 2) + isolated_from_NL(pNL)


def is_bipartite_from_NL(pNL) -> bool:
    return bipartite_components_from_NL(pNL) == components_from_NL(pNL)


def spanning_trees(pL, n: int | None = None) -> int:
    """Number of spanning trees of a connected graph: ``|[x^1] p_L| / n``."""
    cs = _coeffs_of(pL)
    n = len(cs) - 1 if n is None else n
    if n < 1:
        raise SpectrumError("spanning_trees needs n >= 1")
    if components_from_L(cs) != 1:
        raise SpectrumError("graph is disconnected (0 is not a simple Laplacian eigenvalue)")
    return _integral(abs(cs[n - 1]) / n, "spanning-tree count")


def bipartite_from_L_and_Q(pL, pQ) -> bool:
    a, b = _coeffs_of(pL), _coeffs_of(pQ)
    if len(a) != len(b):
        raise SpectrumError("L and Q polynomials have different degrees")
    return a == b


# ----------------------------------------------------------------------------
# strongly regular graphs


@dataclass(frozen=True)
class SrgParams:
    n: int
    d: int
    lam: int
    mu: int

    def __post_init__(self):
        n, d, lam, mu = self.n, self.d, self.lam, self.mu
        if min(n, d, lam, mu) < 0:
            raise SrgError("SRG parameters must be nonnegative")
        if not 0 < d < n - 1:
            raise SrgError(f"SRG needs 0 < d < n-1, got n={n}, d={d}")
        if (n - d - 1) * mu != d * (d - lam - 1):
            raise SrgError(f"infeasible parameters ({n},{d},{lam},{mu}): (n-d-1)mu != d(d-lam-1)")

    def astuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.d, self.lam, self.mu)

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "lambda": self.lam, "mu": self.mu}


@dataclass(frozen=True)
class SrgSpectrum:
    d: int
    p1: QuadraticNumber
    p2: QuadraticNumber
    m1: int
    m2: int

    def items(self) -> list[tuple[QuadraticNumber, int]]:
        return [(QuadraticNumber(self.d), 1), (self.p1, self.m1), (self.p2, self.m2)]

    def charpoly(self) -> CharPoly:
        if self.p1.is_rational:
            cs = (Fraction(1), -Fraction(self.d))
            for r, m in ((self.p1.a, self.m1), (self.p2.a, self.m2)):
                for _ in range(m):
                    cs = poly.multiply(cs, (1, -r))
        else:
            # conjugate pair with equal multiplicities
            quad = (Fraction(1), -(self.p1 + self.p2).a, (self.p1 * self.p2).a)
            cs = (Fraction(1), -Fraction(self.d))
            for _ in range(self.m1):
                cs = poly.multiply(cs, quad)
        return CharPoly(cs, "A")

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "p1": self.p1.to_json(),
            "p2": self.p2.to_json(),
            "m1": self.m1,
            "m2": self.m2,
        }


def _params(params) -> SrgParams:
    return params if isinstance(params, SrgParams) else SrgParams(*params)


def srg_spectrum(params) -> SrgSpectrum:
    """Eigenvalues ``d, p1 > p2`` and multiplicities of an SRG."""
    P = _params(params)
    n, d, lam, mu = P.astuple()
    disc = (lam - mu) ** 2 + 4 * (d - mu)
    root = QuadraticNumber.sqrt(disc)
    p1 = (QuadraticNumber(lam - mu) + root) / 2
    p2 = (QuadraticNumber(lam - mu) - root) / 2
    skew = 2 * d + (n - 1) * (lam - mu)
    if skew == 0:
        if (n - 1) % 2:
            raise SrgError("conference parameters need odd n")
        m1 = m2 = (n - 1) // 2
    else:
        s = isqrt(disc)
        if s * s != disc:
            raise SrgError(f"non-conference parameters with irrational eigenvalues (disc={disc})")
        t = Fraction(skew, s)
        f1 = (n - 1 - t) / 2
        f2 = (n - 1 + t) / 2
        if f1.denominator != 1 or f2.denominator != 1 or f1 < 0 or f2 < 0:
            raise SrgError(f"non-integral multiplicities {f1}, {f2}")
        m1, m2 = int(f1), int(f2)
    spec = SrgSpectrum(d, p1, p2, m1, m2)
    tr1 = p1 * m1 + p2 * m2 + d
    tr2 = p1 * p1 * m1 + p2 * p2 * m2 + d * d
    if tr1 != 0 or tr2 != n * d:
        raise SrgError("eigenvalue data fails the trace identities")
    return spec


def detect_srg(pA, n: int | None = None) -> tuple[SrgParams, SrgSpectrum] | None:
    """Recover ``(n, d, lambda, mu)`` from an adjacency polynomial, if any."""
    cs = _coeffs_of(pA)
    n = len(cs) - 1 if n is None else n
    d = is_regular_from_spectrum(cs, n)
    if d is None or root_multiplicity(cs, d) != 1:
        return None
    if distinct_root_count(cs) != 3:
        return None
    rest, rem = poly.divide_linear(cs, d)
    assert rem == 0
    quad = poly.squarefree_part(rest)
    if len(quad) != 3:
        return None
    s_sum, s_prod = -quad[1], quad[2]
    lam = d + s_sum + s_prod
    mu = d + s_prod
    if lam.denominator != 1 or mu.denominator != 1 or lam < 0 or mu < 0:
        return None
    try:
        P = SrgParams(n, d, int(lam), int(mu))
        spec = srg_spectrum(P)
    except SrgError:
        return None
    if spec.charpoly().coeffs != cs:
        return None
    return P, spec


def lovasz_theta_srg(params) -> QuadraticNumber:
    """theta = -n * p2 / (d - p2) for a connected SRG."""
    P = _params(params)
    if P.mu == 0:
        raise SrgError("parameters describe a disconnected graph (mu = 0)")
    spec = srg_spectrum(P)
    return (spec.p2 * (-P.n)) / (QuadraticNumber(P.d) - spec.p2)


def srg_girth_diameter(params) -> tuple[int, int]:
    P = _params(params)
    if P.mu == 0:
        raise SrgError("parameters describe a disconnected graph (mu = 0)")
    if P.lam > 0:
        g = 3
    elif P.mu >= 2:
        g = 4
    else:
        g = 5
    return g, 2


def invariant_report(pA, pL=None, pQ=None) -> dict:
    """JSON-ready summary from an A polynomial (plus optional L and Q)."""
    cs = _coeffs_of(pA)
    n = len(cs) - 1
    srg = detect_srg(cs, n) if n else None
    theta = None
    if srg and srg[0].mu > 0:
        theta = str(lovasz_theta_srg(srg[0]))
    rep = {
        "n": n,
        "edges": edges_from_spectrum(cs),
        "triangles": triangles_from_spectrum(cs),
        "regular": is_regular_from_spectrum(cs, n),
        "bipartite": is_bipartite_from_A(cs),
        "components": components_from_L(pL) if pL is not None else None,
        "srg": srg[0].to_json() if srg else None,
        "theta": theta,
    }
    if pL is not None:
        rep["spanning_trees"] = spanning_trees(pL) if components_from_L(pL) == 1 else 0
    if pQ is not None:
        rep["bipartite_components"] = bipartite_components_from_Q(pQ)
    return rep
