"""Exact numbers of the form a + b*sqrt(delta) with rational a, b."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import isqrt, sqrt


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, t)`` with ``n = s*s*t`` and ``t`` square-free (n >= 0)."""
    if n < 0:
        raise ValueError("squarefree_split needs n >= 0")
    if n == 0:
        return 0, 0
    s, t = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            t *= p
        p += 1 if p == 2 else 2
    t *= n
    return s, t


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@total_ordering
class QuadraticNumber:
    """``a + b*sqrt(delta)``; ``delta`` is square-free, or 0 for rationals.

    Values with different ``delta`` only mix when one side is rational.
    Ordering and equality are exact.
    """

    __slots__ = ("a", "b", "delta")

    def __init__(self, a=0, b=0, delta: int = 0):
        a, b = _frac(a), _frac(b)
        delta = int(delta)
        if delta < 0:
            raise ValueError("delta must be nonnegative")
        s, t = squarefree_split(delta)
        b *= s
        if t == 1:
            a, b, t = a + b, Fraction(0), 0
        if b == 0 or t == 0:
            b, t = Fraction(0), 0
        self.a, self.b, self.delta = a, b, t

    @classmethod
    def sqrt(cls, x) -> "QuadraticNumber":
        """Exact square root of a nonnegative rational."""
        x = _frac(x)
        if x < 0:
            raise ValueError("square root of a negative rational")
        # sqrt(p/q) = sqrt(p*q)/q
        return cls(0, Fraction(1, x.denominator), x.numerator * x.denominator)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.delta)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.delta

    def _common(self, other) -> tuple["QuadraticNumber", "QuadraticNumber", int]:
        if not isinstance(other, QuadraticNumber):
            other = QuadraticNumber(other)
        if self.delta and other.delta and self.delta != other.delta:
            raise ValueError(f"cannot mix sqrt({self.delta}) and sqrt({other.delta})")
        return self, other, self.delta or other.delta

    def __add__(self, other):
        x, y, d = self._common(other)
        return QuadraticNumber(x.a + y.a, x.b + y.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.delta)

    def __sub__(self, other):
        return self + (-_as_q(other))

    def __rsub__(self, other):
        return _as_q(other) - self

    def __mul__(self, other):
        x, y, d = self._common(other)
        return QuadraticNumber(x.a * y.a + x.b * y.b * d, x.a * y.b + x.b * y.a, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_q(other)
        nrm = other.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero quadratic number")
        num = self * other.conjugate()
        return QuadraticNumber(num.a / nrm, num.b / nrm, num.delta)

    def __rtruediv__(self, other):
        return _as_q(other) / self

    def sign(self) -> int:
        """Exact sign of ``a + b*sqrt(delta)``."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 * delta
        diff = self.a * self.a - self.b * self.b * self.delta
        return sa if diff > 0 else sb

    def __eq__(self, other):
        try:
            other = _as_q(other)
        except TypeError:
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.delta == other.delta

    def __lt__(self, other):
        return (self - _as_q(other)).sign() < 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.delta))

    def __float__(self):
        return float(self.a) + float(self.b) * sqrt(self.delta)

    def __repr__(self):
        return f"QuadraticNumber({self})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        root = f"sqrt({self.delta})"
        if self.b == 1:
            rt = root
        elif self.b == -1:
            rt = "-" + root
        else:
            rt = f"{self.b}*{root}"
        if self.a == 0:
            return rt
        if rt.startswith("-"):
            return f"{self.a} - {rt[1:]}"
        return f"{self.a} + {rt}"

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "delta": self.delta}

    @classmethod
    def from_json(cls, obj: dict) -> "QuadraticNumber":
        return cls(Fraction(obj["a"]), Fraction(obj["b"]), int(obj["delta"]))


def _as_q(x) -> QuadraticNumber:
    if isinstance(x, QuadraticNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadraticNumber(x)
    raise TypeError(f"cannot convert {type(x).__name__} to QuadraticNumber")


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n
