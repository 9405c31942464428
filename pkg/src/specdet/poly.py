"""Exact polynomial helpers on degree-descending coefficient tuples.

Coefficients are ``Fraction`` (ints are accepted on input).  Heavy lifting
(gcd, squarefree factorization, root isolation) goes through FLINT.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, lcm
from typing import Sequence

import flint

Coeffs = tuple  # degree-descending Fractions


def normalize(coeffs: Sequence) -> tuple[Fraction, ...]:
    """Strip leading zeros and coerce to ``Fraction``; the zero poly is ``()``."""
    cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
    i = 0
    while i < len(cs) and cs[i] == 0:
        i += 1
    return tuple(cs[i:])


def degree(p: Sequence) -> int:
    return len(normalize(p)) - 1


def evaluate(p: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in p:
        acc = acc * x + c
    return acc


def derivative(p: Sequence) -> tuple[Fraction, ...]:
    n = len(p) - 1
    return normalize([c * (n - i) for i, c in enumerate(p[:-1])])


def multiply(p: Sequence, q: Sequence) -> tuple[Fraction, ...]:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return normalize(out)


def divmod_poly(p: Sequence, q: Sequence) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    p, q = list(normalize(p)), normalize(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    if len(p) < len(q):
        return (), tuple(p)
    lead = q[0]
    quot = []
    for i in range(len(p) - len(q) + 1):
        c = p[i] / lead
        quot.append(c)
        if c:
            for j in range(1, len(q)):
                p[i + j] -= c * q[j]
    rem = normalize(p[len(p) - len(q) + 1:])
    return tuple(quot), rem


def divide_linear(p: Sequence, r) -> tuple[tuple[Fraction, ...], Fraction]:
    """Synthetic division by ``x - r``: returns (quotient, remainder)."""
    acc = Fraction(0)
    out = []
    for c in p:
        acc = acc * r + c
        out.append(acc)
    return tuple(out[:-1]), out[-1]


def taylor_shift(p: Sequence, c) -> tuple[Fraction, ...]:
    """Coefficients of ``p(x + c)``."""
    c = Fraction(c)
    n = len(p) - 1
    asc = list(reversed(p))
    out = [Fraction(0)] * (n + 1)
    for k, a in enumerate(asc):
        if not a:
            continue
        # a * (x + c)^k
        cp = Fraction(1)
        for j in range(k, -1, -1):
            out[j] += a * comb(k, j) * cp
            cp *= c
    return tuple(reversed(out))


def reflect(p: Sequence) -> tuple[Fraction, ...]:
    """Coefficients of ``p(-x)``."""
    n = len(p) - 1
    return tuple(c if (n - i) % 2 == 0 else -c for i, c in enumerate(p))


def sign_variations(p: Sequence) -> int:
    signs = [1 if c > 0 else -1 for c in p if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def trailing_zeros(p: Sequence) -> int:
    k = 0
    for c in reversed(p):
        if c != 0:
            break
        k += 1
    return k


def to_fmpz_poly(p: Sequence) -> flint.fmpz_poly:
    """Integer polynomial with the same roots (denominators cleared)."""
    den = 1
    for c in p:
        den = lcm(den, Fraction(c).denominator)
    return flint.fmpz_poly([int(Fraction(c) * den) for c in reversed(p)])


def to_fmpq_poly(p: Sequence) -> flint.fmpq_poly:
    return flint.fmpq_poly([flint.fmpq(Fraction(c).numerator, Fraction(c).denominator) for c in reversed(p)])


def from_flint(f) -> tuple[Fraction, ...]:
    out = []
    for c in reversed(f.coeffs()):
        if isinstance(c, flint.fmpq):
            out.append(Fraction(int(c.p), int(c.q)))
        else:
            out.append(Fraction(int(c)))
    return normalize(out)


def gcd(p: Sequence, q: Sequence) -> tuple[Fraction, ...]:
    """Monic gcd over Q."""
    g = from_flint(to_fmpq_poly(p).gcd(to_fmpq_poly(q)))
    if not g:
        return g
    return tuple(c / g[0] for c in g)


def squarefree_part(p: Sequence) -> tuple[Fraction, ...]:
    """Monic ``p / gcd(p, p')``."""
    p = normalize(p)
    quot, rem = divmod_poly(p, gcd(p, derivative(p)))
    assert not rem
    return tuple(c / quot[0] for c in quot)


def real_roots(p: Sequence, tol: float = 1e-12) -> list[float]:
    """Real roots with multiplicity, descending, for a real-rooted polynomial.

    Each squarefree factor is isolated with ball arithmetic; precision is
    raised until every ball is narrower than ``tol``.
    """
    p = normalize(p)
    if len(p) <= 1:
        return []
    _, factors = to_fmpz_poly(p).factor_squarefree()
    roots: list[float] = []
    for f, mult in factors:
        if f.degree() == 1:
            a, b = f.coeffs()  # b*x + a
            roots += [float(Fraction(-int(a), int(b)))] * mult
            continue
        prec = flint.ctx.prec
        try:
            while True:
                found = f.complex_roots()
                if all(float(r.real.rad()) < tol and float(r.imag.rad()) < 1.0 for r, _ in found):
                    break
                flint.ctx.prec *= 2
        finally:
            flint.ctx.prec = prec
        for r, _ in found:
            roots += [float(r.real.mid())] * mult
    roots.sort(reverse=True)
    return roots
