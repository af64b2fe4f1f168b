"""Standard constraint systems used in tests, the CLI and the acceptance suite."""

from __future__ import annotations

from fractions import Fraction

from .polycore import Polynomial


def binary(n: int) -> list[Polynomial]:
    """x_i^2 - 1 for i = 1..n."""
    xs = Polynomial.variables(n)
    return [x * x - 1 for x in xs]


def four_point(a=2, b=3) -> list[Polynomial]:
    """Radical system with zeros (0,0), (1,0), (0,1), (a,b)."""
    a, b = Fraction(a), Fraction(b)
    x1, x2 = Polynomial.variables(2)
    g1 = x2 * ((x2 - 1) * a - x1 * (b - 1))
    g2 = x1 * (x2 * (a - 1) - (x1 - 1) * b)
    return [g1, g2]


def three_point(a=2, b=3) -> list[Polynomial]:
    """Non-radical system with zeros (0,0), (1,0), (0,1); (0,1) is a double point."""
    a, b = Fraction(a), Fraction(b)
    x1, x2 = Polynomial.variables(2)
    g1 = x2 * ((x2 - 1) * a - x1 * (b - 1))
    g2 = x1 * (x1 + x2 - 1)
    return [g1, g2]


def shifted_cubic_quartic() -> list[Polynomial]:
    """(x1-1)^3 + (x2-1)^3 and (x1-1)^4 (x2-1)^4: not a Groebner basis in any order."""
    x1, x2 = Polynomial.variables(2)
    u, v = x1 - 1, x2 - 1
    return [u**3 + v**3, u**4 * v**4]
