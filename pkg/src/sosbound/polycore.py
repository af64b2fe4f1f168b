"""Sparse multivariate polynomials over exact rationals or floats.

A polynomial is an immutable map from exponent tuples to coefficients.  Exact
polynomials hold ``Fraction`` (or :class:`~sosbound.fields.QuadraticElement`)
coefficients; anything else (float, complex, mpmath numbers) puts the
polynomial in float mode.

Variables are always ``x1..xn`` internally.  Homogenization prepends ``x0``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .fields import QuadraticElement, as_fraction, is_exact_scalar

#: Degree of the zero polynomial.  Never use -1 for it.
ZERO_DEGREE = float("-inf")

Monomial = tuple  # tuple[int, ...]


class PolynomialError(ValueError):
    pass


@lru_cache(maxsize=None)
def grevlex_key(exps: Monomial) -> tuple:
    """Sort key for graded reverse lexicographic order with x1 > x2 > ... > xn."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


@lru_cache(maxsize=None)
def grevlex_x0_last_key(exps: Monomial) -> tuple:
    """Grevlex on ``(x0, x1..xn)`` exponent tuples with x0 the smallest variable."""
    return (sum(exps), -exps[0], tuple(-e for e in reversed(exps[1:])))


ORDERS = {"grevlex": grevlex_key, "grevlex_x0_last": grevlex_x0_last_key}


def order_key(order):
    if callable(order):
        return order
    try:
        return ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown monomial order {order!r}") from None


def _normalize_coeff(c):
    if isinstance(c, bool):
        c = int(c)
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return as_fraction(c)
    return c


def _is_float_coeff(c) -> bool:
    return not is_exact_scalar(c)


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables.

    >>> p = Polynomial.parse("x1^2 + 5*x1*x2 + 3*x1 - x2")
    >>> str(p.top_form())
    'x1^2 + 5*x1*x2'
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, nvars: int | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(v) for v in e)
                if any(v < 0 for v in e):
                    raise PolynomialError(f"negative exponent in {e}")
                c = _normalize_coeff(c)
                if c != 0:
                    clean[e] = c
            lengths = {len(e) for e in terms}
            if len(lengths) > 1:
                raise PolynomialError("exponent vectors of different lengths")
            if nvars is None and lengths:
                nvars = lengths.pop()
            elif lengths and lengths.pop() != nvars:
                raise PolynomialError("exponent length does not match nvars")
        if nvars is None:
            raise PolynomialError("nvars required for the zero polynomial")
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "Polynomial":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c, nvars: int) -> "Polynomial":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw({}, nvars)

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Polynomial":
        """The variable ``x_{i+1}`` (0-based index)."""
        e = [0] * nvars
        e[i] = 1
        return cls._raw({tuple(e): Fraction(1)}, nvars)

    @classmethod
    def variables(cls, nvars: int) -> list["Polynomial"]:
        return [cls.variable(i, nvars) for i in range(nvars)]

    @classmethod
    def parse(cls, text: str, variables: Sequence[str] | None = None) -> "Polynomial":
        return parse_polynomial(text, variables)

    # -- basic queries ------------------------------------------------------
    @property
    def field(self) -> str:
        """``'exact'`` or ``'float'``."""
        return "float" if any(_is_float_coeff(c) for c in self.terms.values()) else "exact"

    @property
    def is_exact(self) -> bool:
        return self.field == "exact"

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        if not self.terms:
            return ZERO_DEGREE
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coeff(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), 0)

    def monomials(self, order="grevlex") -> list[Monomial]:
        """Monomials in decreasing order."""
        return sorted(self.terms, key=order_key(order), reverse=True)

    def leading_monomial(self, order="grevlex") -> Monomial:
        if not self.terms:
            raise PolynomialError("zero polynomial has no leading monomial")
        return max(self.terms, key=order_key(order))

    def leading_coefficient(self, order="grevlex"):
        return self.terms[self.leading_monomial(order)]

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if other.nvars != self.nvars:
            raise PolynomialError(
                f"variable count mismatch: {self.nvars} vs {other.nvars}"
            )

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(other, self.nvars)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return Polynomial._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            other = _normalize_coeff(other)
            if other == 0:
                return Polynomial.zero(self.nvars)
            return Polynomial._raw({e: c * other for e, c in self.terms.items()}, self.nvars)
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._raw({e: c for e, c in out.items() if c != 0}, self.nvars)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, Polynomial):
            raise TypeError("polynomial division is not supported; use groebner.normal_form")
        scalar = _normalize_coeff(scalar)
        return Polynomial._raw({e: c / scalar for e, c in self.terms.items()}, self.nvars)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise PolynomialError("only non-negative integer powers")
        out = Polynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, float)):
            return self.terms == Polynomial.constant(other, self.nvars).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def map_coefficients(self, fn) -> "Polynomial":
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v != 0:
                out[e] = v
        return Polynomial._raw(out, self.nvars)

    def to_float(self) -> "Polynomial":
        return self.map_coefficients(float)

    def max_abs_coefficient(self) -> float:
        return max((abs(complex(c)) for c in self.terms.values()), default=0.0)

    # -- structure ----------------------------------------------------------
    def homogenize(self) -> "Polynomial":
        """Homogenization in ``(x0, x1..xn)`` with ``x0`` prepended."""
        if not self.terms:
            raise PolynomialError("cannot homogenize zero")
        d = self.degree()
        return Polynomial._raw(
            {(d - sum(e),) + e: c for e, c in self.terms.items()}, self.nvars + 1
        )

    def top_form(self) -> "Polynomial":
        if not self.terms:
            raise PolynomialError("top form of zero is undefined")
        d = self.degree()
        return Polynomial._raw(
            {e: c for e, c in self.terms.items() if sum(e) == d}, self.nvars
        )

    def dehomogenize(self) -> "Polynomial":
        """Set the first variable to 1."""
        if self.nvars < 1:
            raise PolynomialError("no variable to dehomogenize")
        out: dict = {}
        for e, c in self.terms.items():
            k = e[1:]
            v = out.get(k, 0) + c
            if v == 0:
                out.pop(k, None)
            else:
                out[k] = v
        return Polynomial._raw(out, self.nvars - 1)

    def derivative(self, i: int) -> "Polynomial":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                k = list(e)
                k[i] -= 1
                out[tuple(k)] = c * e[i]
        return Polynomial._raw(out, self.nvars)

    def substitute(self, values: dict) -> "Polynomial":
        """Substitute scalars for some variables (by 0-based index); they stay in the ring."""
        out: dict = {}
        for e, c in self.terms.items():
            k = list(e)
            for i, v in values.items():
                c = c * v ** e[i]
                k[i] = 0
            k = tuple(k)
            out[k] = out.get(k, 0) + c
        return Polynomial._raw({e: c for e, c in out.items() if c != 0}, self.nvars)

    def restrict(self, keep: Sequence[int], values: dict) -> "Polynomial":
        """Substitute scalars for the variables in ``values`` and drop them from the ring."""
        p = self.substitute(values)
        return Polynomial(
            {tuple(e[i] for i in keep): c for e, c in p.terms.items()}, len(keep)
        )

    def translate(self, shift: Sequence) -> "Polynomial":
        """``p(x + shift)``."""
        xs = Polynomial.variables(self.nvars)
        moved = [x + s for x, s in zip(xs, shift)]
        return self.compose(moved)

    def compose(self, polys: Sequence["Polynomial"]) -> "Polynomial":
        """``p(q1, ..., qn)`` for polynomials ``q`` in a common ring."""
        if len(polys) != self.nvars:
            raise PolynomialError("compose needs one polynomial per variable")
        target = polys[0].nvars if polys else 0
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = polys[i] ** k
            return cache[key]

        out = Polynomial.zero(target)
        for e, c in self.terms.items():
            term = Polynomial.constant(c, target)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    # -- evaluation ---------------------------------------------------------
    def evaluate(self, point: Sequence):
        """Exact substitution (works for any scalar type supporting ``*`` and ``**``)."""
        if len(point) != self.nvars:
            raise PolynomialError("dimension mismatch")
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(point, e):
                if k:
                    t = t * v**k
            total = total + t
        return total

    def eval_complex(self, z: Sequence[complex]) -> complex:
        """Value at a complex point by direct term summation."""
        if len(z) != self.nvars:
            raise PolynomialError(
                f"dimension mismatch: point has {len(z)} entries, polynomial {self.nvars} variables"
            )
        zc = [complex(v) for v in z]
        total = 0j
        for e, c in self.terms.items():
            t = complex(c)
            for v, k in zip(zc, e):
                if k:
                    t *= v**k
            total += t
        return total

    # -- printing -----------------------------------------------------------
    def to_string(self, names: Sequence[str] | None = None, order="grevlex") -> str:
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e in self.monomials(order):
            c = self.terms[e]
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            cs = _coeff_str(c)
            if mono:
                if cs == "1":
                    s = mono
                elif cs == "-1":
                    s = "-" + mono
                else:
                    s = f"{cs}*{mono}"
            else:
                s = cs
            parts.append(s)
        out = parts[0]
        for s in parts[1:]:
            out += " - " + s[1:] if s.startswith("-") else " + " + s
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r}, nvars={self.nvars})"


def _coeff_str(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    if isinstance(c, QuadraticElement):
        if c.b == 0:
            return str(c.a)
        rad = f"sqrt({c.m})" if c.b == 1 else f"-sqrt({c.m})" if c.b == -1 else f"{c.b}*sqrt({c.m})"
        if c.a == 0:
            return rad
        return f"({c.a} - {rad[1:]})" if rad.startswith("-") else f"({c.a} + {rad})"
    if isinstance(c, complex):
        return f"({c.real:.12g}{c.imag:+.12g}j)" if c.imag else f"{c.real:.12g}"
    try:
        return f"{float(c):.12g}"
    except TypeError:
        return str(c)


def gradient(p: Polynomial) -> list[Polynomial]:
    """Vector of partial derivatives."""
    return [p.derivative(i) for i in range(p.nvars)]


def homogenize(p: Polynomial) -> Polynomial:
    return p.homogenize()


def top_form(p: Polynomial) -> Polynomial:
    return p.top_form()


def dehomogenize(p: Polynomial) -> Polynomial:
    return p.dehomogenize()


def eval_complex(p: Polynomial, z: Sequence[complex]) -> complex:
    return p.eval_complex(z)


def monomials_of_degree(nvars: int, d: int) -> list[Monomial]:
    """All exponent tuples of total degree ``d``, increasing in grevlex."""
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=grevlex_key)
    return out


def monomials_up_to(nvars: int, d: int) -> list[Monomial]:
    """All exponent tuples of degree ``<= d``, increasing in grevlex."""
    out = []
    for k in range(d + 1):
        out.extend(monomials_of_degree(nvars, k))
    return out


# -- parsing ------------------------------------------------------------------

class ParseError(PolynomialError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.column = col


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*/^()]))"
)


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


_AUTO_NAME = re.compile(r"x(\d+)$")


def parse_polynomial(text: str, variables: Sequence[str] | None = None) -> Polynomial:
    """Parse a human-readable polynomial such as ``"x1^2 + 5*x1*x2 - 1"``.

    Without ``variables`` the names must be ``x1, x2, ...`` and the variable
    count is the largest index seen.  Decimal literals are read as exact
    rationals; ``a/b`` divides by a numeric constant.
    """
    toks = _tokenize(text)
    if variables is None:
        idx = [int(_AUTO_NAME.match(v).group(1)) for k, v, _ in toks if k == "name" and _AUTO_NAME.match(v)]
        bad = [(v, p) for k, v, p in toks if k == "name" and not _AUTO_NAME.match(v)]
        if bad:
            raise ParseError(f"unknown variable {bad[0][0]!r}", text, bad[0][1])
        if any(i == 0 for i in idx):
            raise ParseError("variables are numbered from x1", text, 0)
        variables = [f"x{i + 1}" for i in range(max(idx, default=1))]
    names = {v: i for i, v in enumerate(variables)}
    n = len(variables)
    pos = [0]

    def peek():
        return toks[pos[0]]

    def take():
        t = toks[pos[0]]
        pos[0] += 1
        return t

    def expect(op):
        t = take()
        if t[1] != op:
            raise ParseError(f"expected {op!r}", text, t[2])

    def expr():
        node = term()
        while peek()[1] in ("+", "-") and peek()[0] == "op":
            op = take()[1]
            rhs = term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term():
        node = unary()
        while peek()[0] == "op" and peek()[1] in ("*", "/"):
            op, _, at = take()[1], None, peek()[2]
            rhs = unary()
            if op == "*":
                node = node * rhs
            else:
                if rhs.degree() > 0:
                    raise ParseError("division by a non-constant", text, at)
                c = rhs.constant_term()
                if c == 0:
                    raise ParseError("division by zero", text, at)
                node = node / c
        return node

    def unary():
        if peek()[0] == "op" and peek()[1] in ("+", "-"):
            op = take()[1]
            node = unary()
            return -node if op == "-" else node
        return power()

    def power():
        base = atom()
        if peek()[0] == "op" and peek()[1] in ("^", "**"):
            take()
            t = take()
            if t[0] != "num" or not t[1].isdigit():
                raise ParseError("exponent must be a non-negative integer", text, t[2])
            base = base ** int(t[1])
        return base

    def atom():
        kind, val, at = take()
        if kind == "num":
            return Polynomial.constant(Fraction(val), n)
        if kind == "name":
            if val not in names:
                raise ParseError(f"unknown variable {val!r}", text, at)
            return Polynomial.variable(names[val], n)
        if val == "(":
            node = expr()
            expect(")")
            return node
        raise ParseError(f"unexpected token {val or 'end of input'!r}", text, at)

    result = expr()
    if peek()[0] != "end":
        raise ParseError(f"unexpected token {peek()[1]!r}", text, peek()[2])
    return result


# -- JSON term lists ----------------------------------------------------------

def coeff_to_json(c):
    if isinstance(c, Fraction):
        return str(c)
    if isinstance(c, QuadraticElement):
        return c.to_json() if c.b != 0 else str(c.a)
    if isinstance(c, complex):
        return [c.real, c.imag]
    return float(c)


def coeff_from_json(c):
    if isinstance(c, str):
        return as_fraction(c)
    if isinstance(c, bool):
        raise PolynomialError("boolean coefficient")
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, float):
        return c
    if isinstance(c, dict) and {"a", "b", "m"} <= c.keys():
        return QuadraticElement(c["a"], c["b"], int(c["m"]))
    if isinstance(c, list) and len(c) == 2:
        return complex(float(c[0]), float(c[1]))
    raise PolynomialError(f"unrecognized coefficient {c!r}")


def to_terms(p: Polynomial) -> list[dict]:
    """``[{"c": "3/2", "e": [1, 0]}, ...]`` in decreasing grevlex order."""
    return [{"c": coeff_to_json(p.terms[e]), "e": list(e)} for e in p.monomials()]


def from_terms(terms: Iterable[dict], nvars: int | None = None) -> Polynomial:
    data = {}
    for t in terms:
        if not isinstance(t, dict) or "c" not in t or "e" not in t:
            raise PolynomialError(f"term must have 'c' and 'e': {t!r}")
        e = tuple(t["e"])
        data[e] = data.get(e, 0) + coeff_from_json(t["c"])
    if nvars is None and not data:
        raise PolynomialError("cannot infer variable count of an empty term list")
    return Polynomial(data, nvars)


def polynomial_from_json(obj, variables: Sequence[str] | None = None, nvars: int | None = None) -> Polynomial:
    """Accept either a term list or a human-readable string."""
    if isinstance(obj, str):
        p = parse_polynomial(obj, variables)
        return p
    if variables is not None and nvars is None:
        nvars = len(variables)
    return from_terms(obj, nvars)


def binomial(n: int, k: int) -> int:
    return math.comb(n, k)
