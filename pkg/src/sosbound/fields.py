"""Exact scalars: rationals and elements of a single real quadratic field Q(sqrt(m))."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

_SMALL_PRIMES_LIMIT = 100_000


def as_fraction(value) -> Fraction:
    """Coerce an int, Fraction or ``'p/q'`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot convert {value!r} to an exact rational")


class QuadraticElement:
    """The number ``a + b*sqrt(m)`` with ``a, b`` rational and ``m > 1`` square-free.

    Mixed arithmetic with ints and Fractions is supported; mixing two different
    radicands raises ``ValueError``.
    """

    __slots__ = ("a", "b", "m")

    def __init__(self, a, b, m: int):
        if m <= 1:
            raise ValueError("radicand must be a square-free integer > 1")
        self.a = as_fraction(a)
        self.b = as_fraction(b)
        self.m = m

    def _coerce(self, other):
        if isinstance(other, QuadraticElement):
            if other.m != self.m:
                raise ValueError(
                    f"incompatible quadratic fields sqrt({self.m}) and sqrt({other.m})"
                )
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticElement(self.a + o[0], self.b + o[1], self.m)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticElement(-self.a, -self.b, self.m)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticElement(self.a - o[0], self.b - o[1], self.m)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticElement(o[0] - self.a, o[1] - self.b, self.m)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = o
        return QuadraticElement(
            self.a * a + self.m * self.b * b, self.a * b + self.b * a, self.m
        )

    __rmul__ = __mul__

    def conjugate_norm(self) -> Fraction:
        return self.a * self.a - self.m * self.b * self.b

    def inverse(self) -> "QuadraticElement":
        nrm = self.conjugate_norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return QuadraticElement(self.a / nrm, -self.b / nrm, self.m)

    def __truediv__(self, other):
        if isinstance(other, QuadraticElement):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return QuadraticElement(self.a / other, self.b / other, self.m)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = QuadraticElement(1, 0, self.m)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QuadraticElement):
            return self.m == other.m and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.m))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.m)

    def __complex__(self):
        return complex(float(self))

    def __abs__(self):
        return self if float(self) >= 0 else -self

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt({self.m}))"

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "m": self.m}


def square_free_decomposition(n: int) -> tuple[int, int] | None:
    """Write ``n > 0`` as ``s**2 * m`` with ``m`` square-free; ``None`` if factoring is too costly."""
    if n <= 0:
        raise ValueError("positive integer required")
    s, m = 1, 1
    rest = n
    p = 2
    while p * p <= rest and p <= _SMALL_PRIMES_LIMIT:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            m *= p
        p += 1 if p == 2 else 2
    if rest > 1:
        r = math.isqrt(rest)
        if r * r == rest:
            s *= r
        elif rest < _SMALL_PRIMES_LIMIT**2 or p * p > rest:
            # rest is a prime, or a product of two distinct primes above the trial bound
            m *= rest
        else:
            return None
    return s, m


def exact_sqrt(value):
    """Exact non-negative square root of a non-negative rational.

    Returns a Fraction for perfect squares, a QuadraticElement ``b*sqrt(m)``
    otherwise, or ``None`` when the square-free part cannot be determined.
    """
    q = as_fraction(value)
    if q < 0:
        raise ValueError("square root of a negative rational")
    if q == 0:
        return Fraction(0)
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    dec = square_free_decomposition(num * den)
    if dec is None:
        return None
    s, m = dec
    if m == 1:
        return Fraction(s, den)
    return QuadraticElement(0, Fraction(s, den), m)


def radicand_of(value) -> int:
    """The radicand of an exact scalar (1 for rationals)."""
    if isinstance(value, QuadraticElement) and value.b != 0:
        return value.m
    return 1


def is_exact_scalar(value) -> bool:
    return isinstance(value, (int, Fraction, QuadraticElement))
