"""Groebner bases over exact fields, quotient algebras and zero-dimensional varieties."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import exactla
from .polycore import Polynomial, PolynomialError, order_key

DEFAULT_ORDER = "grevlex"
JACOBIAN_RANK_TOL = 1e-8
REAL_TOL = 1e-8
CLUSTER_TOL = 1e-8


class GroebnerError(ValueError):
    pass


class NotMemberError(GroebnerError):
    pass


class VarietyError(GroebnerError):
    """Eigenvalue extraction failed; ``condition`` carries the estimate."""

    def __init__(self, message: str, condition: float = float("inf")):
        super().__init__(f"{message} (condition estimate {condition:.3g})")
        self.condition = condition


class InvariantBreach(RuntimeError):
    pass


# -- raw monomial / dict helpers -----------------------------------------------

def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _mdiv(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _mmul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _axpy(target: dict, poly: dict, shift, factor):
    """target -= factor * x^shift * poly, in place."""
    for e, c in poly.items():
        ee = _mmul(e, shift)
        v = target.get(ee, 0) - factor * c
        if v == 0:
            target.pop(ee, None)
        else:
            target[ee] = v


@dataclass
class _Elem:
    poly: dict
    lm: tuple
    cof: list | None  # cofactors w.r.t. the source generators


def _reduce(p: dict, basis: Sequence[_Elem], key, track: bool = False):
    """Full reduction of ``p`` by ``basis``.  Returns ``(remainder, quotients)``."""
    p = dict(p)
    rem: dict = {}
    quot = [dict() for _ in basis] if track else None
    while p:
        lm = max(p, key=key)
        c = p[lm]
        for j, g in enumerate(basis):
            if _divides(g.lm, lm):
                q = _mdiv(lm, g.lm)
                f = c / g.poly[g.lm]
                _axpy(p, g.poly, q, f)
                p.pop(lm, None)  # exact cancellation is not guaranteed for floats
                if track:
                    v = quot[j].get(q, 0) + f
                    if v == 0:
                        quot[j].pop(q, None)
                    else:
                        quot[j][q] = v
                break
        else:
            rem[lm] = c
            del p[lm]
    return rem, quot


def _combine_cof(cof_terms, basis, ncof):
    """sum_j quot_j * basis[j].cof as a list of dicts."""
    out = [dict() for _ in range(ncof)]
    for q, g in zip(cof_terms, basis):
        if not q:
            continue
        for i in range(ncof):
            for qe, qc in q.items():
                for e, c in g.cof[i].items():
                    ee = _mmul(e, qe)
                    v = out[i].get(ee, 0) + qc * c
                    if v == 0:
                        out[i].pop(ee, None)
                    else:
                        out[i][ee] = v
    return out


def _dict_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) - c
        if v == 0:
            out.pop(e, None)
        else:
            out[e] = v
    return out


def _scaled_shift(d: dict, shift, factor) -> dict:
    return {_mmul(e, shift): c * factor for e, c in d.items()}


# -- public types -------------------------------------------------------------

@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple  # reduced, monic Polynomials
    order: str
    source: tuple
    cofactors: tuple | None = None  # cofactors[j][i]: generators[j] = sum_i cof[j][i]*source[i]
    truncated_at: int | None = None

    @property
    def nvars(self) -> int:
        return self.source[0].nvars

    @property
    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].degree() == 0

    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial(self.order) for g in self.generators]

    def _elems(self) -> list[_Elem]:
        return [_Elem(g.terms, lm, None) for g, lm in zip(self.generators, self.leading_monomials())]


def _check_exact(polys: Sequence[Polynomial]):
    for p in polys:
        if not p.is_exact:
            raise GroebnerError("Groebner bases require exact (rational) coefficients")


def _update(elems, G, B, ih, key):
    """Gebauer-Moeller installation of element ``ih``."""
    mh = elems[ih].lm
    C = list(G)
    D = []
    while C:
        ig = C.pop()
        mg = elems[ig].lm
        lcm_hg = _lcm(mh, mg)

        def lcm_divides(ip):
            return _divides(_lcm(mh, elems[ip].lm), lcm_hg)

        if _coprime(mh, mg) or (
            not any(lcm_divides(ipx) for ipx in C)
            and not any(lcm_divides(pr[1]) for pr in D)
        ):
            D.append((ih, ig))
    E = [(a, b) for a, b in D if not _coprime(mh, elems[b].lm)]
    B_new = []
    for ig1, ig2 in B:
        mg1, mg2 = elems[ig1].lm, elems[ig2].lm
        lcm12 = _lcm(mg1, mg2)
        if (
            not _divides(mh, lcm12)
            or _lcm(mg1, mh) == lcm12
            or _lcm(mg2, mh) == lcm12
        ):
            B_new.append((ig1, ig2))
    B_new.extend(E)
    G_new = [ig for ig in G if not _divides(mh, elems[ig].lm)]
    G_new.append(ih)
    return G_new, B_new


def buchberger(
    gens: Sequence[Polynomial],
    order: str = DEFAULT_ORDER,
    *,
    track_cofactors: bool = False,
    max_degree: int | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are processed by the normal strategy (smallest lcm first, ties by
    pair index).  With ``max_degree`` only pairs whose lcm has degree at most
    that bound are processed; for homogeneous input this yields a basis that
    is correct in every degree ``<= max_degree``.
    """
    gens = [g for g in gens]
    if not gens:
        raise GroebnerError("at least one generator required")
    _check_exact(gens)
    nv = gens[0].nvars
    key = order_key(order)
    ncof = len(gens)
    elems: list[_Elem] = []
    for i, g in enumerate(gens):
        if g.is_zero():
            continue
        lm = max(g.terms, key=key)
        lc = g.terms[lm]
        cof = None
        if track_cofactors:
            cof = [dict() for _ in range(ncof)]
            cof[i] = {(0,) * nv: 1 / lc}
        elems.append(_Elem({e: c / lc for e, c in g.terms.items()}, lm, cof))
    if not elems:
        raise GroebnerError("all generators are zero")

    unit = next((e for e in elems if sum(e.lm) == 0), None)
    G: list[int] = []
    B: list[tuple] = []
    if unit is None:
        # install generators one at a time after reducing by the current basis
        pending = sorted(range(len(elems)), key=lambda i: key(elems[i].lm))
        installed: list[_Elem] = []
        base = list(elems)
        elems = []
        for i in pending:
            e = base[i]
            rem, quot = _reduce(e.poly, [elems[j] for j in G], key, track_cofactors)
            if not rem:
                continue
            cof = None
            if track_cofactors:
                cof = [_dict_sub(e.cof[k], c) for k, c in
                       enumerate(_combine_cof(quot, [elems[j] for j in G], ncof))]
            elem = _make_monic(rem, cof, key)
            elems.append(elem)
            if sum(elem.lm) == 0:
                unit = elem
                break
            G, B = _update(elems, G, B, len(elems) - 1, key)
            installed.append(elem)

    while B and unit is None:
        def pair_key(pr):
            i, j = sorted(pr)
            l = _lcm(elems[i].lm, elems[j].lm)
            return (sum(l), key(l), i, j)

        B.sort(key=pair_key, reverse=True)
        ig1, ig2 = B.pop()
        f1, f2 = elems[ig1], elems[ig2]
        l = _lcm(f1.lm, f2.lm)
        if max_degree is not None and sum(l) > max_degree:
            continue
        s1, s2 = _mdiv(l, f1.lm), _mdiv(l, f2.lm)
        spoly = _dict_sub(_scaled_shift(f1.poly, s1, 1), _scaled_shift(f2.poly, s2, 1))
        cof = None
        if track_cofactors:
            cof = [
                _dict_sub(_scaled_shift(f1.cof[k], s1, 1), _scaled_shift(f2.cof[k], s2, 1))
                for k in range(ncof)
            ]
        basis = [elems[j] for j in G]
        rem, quot = _reduce(spoly, basis, key, track_cofactors)
        if not rem:
            continue
        if track_cofactors:
            cof = [_dict_sub(cof[k], c) for k, c in enumerate(_combine_cof(quot, basis, ncof))]
        elem = _make_monic(rem, cof, key)
        elems.append(elem)
        if sum(elem.lm) == 0:
            unit = elem
            break
        G, B = _update(elems, G, B, len(elems) - 1, key)

    if unit is not None:
        final = [unit]
    else:
        final = _interreduce([elems[j] for j in G], key, track_cofactors, ncof)
    final.sort(key=lambda e: key(e.lm))
    polys = tuple(Polynomial._raw(dict(e.poly), nv) for e in final)
    cofs = None
    if track_cofactors:
        cofs = tuple(tuple(Polynomial._raw(dict(c), nv) for c in e.cof) for e in final)
    return GroebnerBasis(polys, order, tuple(gens), cofs, max_degree)


def _make_monic(poly: dict, cof, key) -> _Elem:
    lm = max(poly, key=key)
    lc = poly[lm]
    p = {e: c / lc for e, c in poly.items()}
    if cof is not None:
        cof = [{e: c / lc for e, c in d.items()} for d in cof]
    return _Elem(p, lm, cof)


def _interreduce(elems: list[_Elem], key, track, ncof) -> list[_Elem]:
    elems = sorted(elems, key=lambda e: key(e.lm))
    out = []
    for i, e in enumerate(elems):
        others = elems[:i] + elems[i + 1:]
        rest = dict(e.poly)
        lc = rest.pop(e.lm)
        rem, quot = _reduce(rest, others, key, track)
        rem[e.lm] = lc
        cof = e.cof
        if track:
            cof = [_dict_sub(cof[k], c) for k, c in enumerate(_combine_cof(quot, others, ncof))]
        out.append(_Elem(rem, e.lm, cof))
    # later elements were reduced against unreduced earlier ones; one more sweep settles it
    changed = True
    while changed:
        changed = False
        for i, e in enumerate(out):
            others = out[:i] + out[i + 1:]
            rest = dict(e.poly)
            lc = rest.pop(e.lm)
            rem, quot = _reduce(rest, others, key, track)
            if rem != rest:
                changed = True
                rem[e.lm] = lc
                cof = e.cof
                if track:
                    cof = [_dict_sub(cof[k], c) for k, c in enumerate(_combine_cof(quot, others, ncof))]
                out[i] = _Elem(rem, e.lm, cof)
    return out


_GB_CACHE: dict = {}


def groebner_basis(gens: Sequence[Polynomial], order: str = DEFAULT_ORDER, **kw) -> GroebnerBasis:
    """Cached :func:`buchberger`."""
    k = (tuple(gens), order, tuple(sorted(kw.items())))
    gb = _GB_CACHE.get(k)
    if gb is None:
        if len(_GB_CACHE) > 256:
            _GB_CACHE.clear()
        gb = _GB_CACHE[k] = buchberger(gens, order, **kw)
    return gb


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Remainder of ``p`` on division by ``gb``; zero iff ``p`` is in the ideal."""
    if p.nvars != gb.nvars:
        raise PolynomialError("variable count mismatch")
    rem, _ = _reduce(p.terms, gb._elems(), order_key(gb.order))
    return Polynomial._raw(rem, p.nvars)


def divide(p: Polynomial, gb: GroebnerBasis):
    """``(quotients, remainder)`` with ``p = sum q_j * gb.generators[j] + r``."""
    elems = gb._elems()
    rem, quot = _reduce(p.terms, elems, order_key(gb.order), track=True)
    return [Polynomial._raw(q, p.nvars) for q in quot], Polynomial._raw(rem, p.nvars)


def is_groebner(gb: GroebnerBasis) -> bool:
    """Every S-polynomial reduces to zero."""
    key = order_key(gb.order)
    elems = gb._elems()
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            a, b = elems[i], elems[j]
            l = _lcm(a.lm, b.lm)
            if gb.truncated_at is not None and sum(l) > gb.truncated_at:
                continue
            s = _dict_sub(
                _scaled_shift(a.poly, _mdiv(l, a.lm), 1 / a.poly[a.lm]),
                _scaled_shift(b.poly, _mdiv(l, b.lm), 1 / b.poly[b.lm]),
            )
            if _reduce(s, elems, key)[0]:
                return False
    return True


# -- quotient algebra -----------------------------------------------------------

INFINITE = "infinite"


@dataclass(frozen=True)
class QuotientAlgebra:
    gb: GroebnerBasis
    basis: tuple  # standard monomials, increasing order
    dim: object  # int or INFINITE
    mult_matrices: tuple | None = None  # one exact matrix per variable
    index: dict = field(default_factory=dict, compare=False)

    @property
    def nvars(self) -> int:
        return self.gb.nvars

    @property
    def is_finite(self) -> bool:
        return self.dim != INFINITE

    def coords(self, p: Polynomial) -> list:
        """Coordinates of the class of ``p`` in the standard-monomial basis."""
        nf = normal_form(p, self.gb)
        v = [Fraction(0)] * len(self.basis)
        for e, c in nf.terms.items():
            v[self.index[e]] = c
        return v

    def element(self, vec: Sequence) -> Polynomial:
        return Polynomial({m: c for m, c in zip(self.basis, vec) if c != 0}, self.nvars)

    def mult_matrix(self, p: Polynomial):
        """Exact matrix of multiplication by ``p`` on the quotient."""
        cols = [self.coords(p * Polynomial({m: 1}, self.nvars)) for m in self.basis]
        return exactla.transpose(cols)

    def float_mult_matrices(self) -> list[np.ndarray]:
        return [exactla.as_float_matrix(m) for m in self.mult_matrices]


def is_zero_dimensional(gb: GroebnerBasis) -> bool:
    if gb.is_unit:
        return True
    lms = gb.leading_monomials()
    n = gb.nvars
    for i in range(n):
        if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in lms):
            return False
    return True


def standard_monomials(gb: GroebnerBasis, max_degree: int | None = None) -> list[tuple]:
    """Monomials outside the leading-term ideal (optionally only up to a degree)."""
    lms = gb.leading_monomials()
    if max_degree is None and not is_zero_dimensional(gb):
        raise GroebnerError("infinitely many standard monomials")
    n = gb.nvars
    key = order_key(gb.order)
    start = (0,) * n
    if any(_divides(lm, start) for lm in lms):
        return []
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(n):
                e = list(m)
                e[i] += 1
                e = tuple(e)
                if e in seen or (max_degree is not None and sum(e) > max_degree):
                    continue
                if any(_divides(lm, e) for lm in lms):
                    continue
                seen.add(e)
                nxt.append(e)
        frontier = nxt
    return sorted(seen, key=key)


def quotient_algebra(gb: GroebnerBasis) -> QuotientAlgebra:
    """Standard monomials, dimension and multiplication matrices of ``R/I``."""
    if gb.truncated_at is not None:
        raise GroebnerError("quotient algebra needs a complete Groebner basis")
    if not is_zero_dimensional(gb):
        return QuotientAlgebra(gb, (), INFINITE, None, {})
    basis = tuple(standard_monomials(gb))
    index = {m: i for i, m in enumerate(basis)}
    n = gb.nvars
    mats = []
    elems = gb._elems()
    key = order_key(gb.order)
    for i in range(n):
        cols = []
        for m in basis:
            e = list(m)
            e[i] += 1
            e = tuple(e)
            v = [Fraction(0)] * len(basis)
            if e in index:
                v[index[e]] = Fraction(1)
            else:
                rem, _ = _reduce({e: Fraction(1)}, elems, key)
                for ee, c in rem.items():
                    v[index[ee]] = c
            cols.append(v)
        mats.append(exactla.transpose(cols) if cols else [])
    return QuotientAlgebra(gb, basis, len(basis), tuple(mats), index)


def ideal_quotient(gens: Sequence[Polynomial]) -> QuotientAlgebra:
    return quotient_algebra(groebner_basis(gens))


# -- varieties ---------------------------------------------------------------------

@dataclass(frozen=True)
class VarietyPoint:
    coords: tuple  # complex entries
    multiplicity: int
    is_singular: bool
    is_real: bool
    jacobian_singular_values: tuple = ()

    def real_coords(self) -> tuple:
        return tuple(c.real for c in self.coords)

    def __str__(self):
        body = ", ".join(
            f"{c.real:.6g}" if self.is_real else f"{c.real:.6g}{c.imag:+.6g}j" for c in self.coords
        )
        return f"({body})"


def _random_combination(qa: QuotientAlgebra, rng: random.Random):
    weights = [Fraction(rng.randint(1, 97), rng.randint(1, 13)) * rng.choice((-1, 1)) for _ in range(qa.nvars)]
    d = qa.dim
    L = exactla.zeros(d, d)
    for w, M in zip(weights, qa.mult_matrices):
        for r in range(d):
            Lr, Mr = L[r], M[r]
            for c in range(d):
                if Mr[c]:
                    Lr[c] += w * Mr[c]
    return weights, L


def _float_roots(poly: list) -> np.ndarray:
    """Simple roots of an exact square-free polynomial (increasing coefficients)."""
    deg = len(poly) - 1
    if deg == 1:
        return np.array([complex(-poly[0] / poly[1])])
    lead = poly[-1]
    coeffs = np.array([complex(c / lead) for c in reversed(poly)])
    roots = np.roots(coeffs)
    dpoly = exactla.poly_deriv(poly)
    fc = [complex(c) for c in poly]
    dc = [complex(c) for c in dpoly]
    polished = []
    for t in roots:
        for _ in range(30):
            num = exactla.poly_eval(fc, t)
            den = exactla.poly_eval(dc, t)
            if den == 0:
                break
            step = num / den
            t = t - step
            if abs(step) <= 1e-16 * max(1.0, abs(t)):
                break
        polished.append(t)
    return np.array(polished)


def _jacobian(gens: Sequence[Polynomial], z) -> np.ndarray:
    n = len(z)
    J = np.zeros((n, len(gens)), dtype=complex)
    for j, g in enumerate(gens):
        for i in range(n):
            J[i, j] = g.derivative(i).eval_complex(z)
    return J


def _extract_points(qa: QuotientAlgebra, gens, rng: random.Random):
    _, L = _random_combination(qa, rng)
    chi = exactla.charpoly(L)
    factors = exactla.squarefree_decomposition(chi)
    Lf = exactla.as_float_matrix(L).astype(complex)
    Ms = [m.astype(complex) for m in qa.float_mult_matrices()]
    d = qa.dim
    scale = max(1.0, np.linalg.norm(Lf, 2))
    found = []
    for poly, k in factors:
        for theta in _float_roots(poly):
            K = np.linalg.matrix_power(Lf - theta * np.eye(d), k)
            _, s, vh = np.linalg.svd(K)
            null = vh[d - k:].conj().T
            small = s[d - k] if k <= d else 0.0
            big = s[d - k - 1] if d - k - 1 >= 0 else scale**k
            if small > 1e-6 * scale**k or (big > 0 and small / big > 1e-4):
                raise VarietyError(
                    "generalized eigenspace not resolved", condition=float(big / max(small, 1e-300))
                )
            pinv = np.linalg.pinv(null)
            coords = []
            merged = False
            for M in Ms:
                R = pinv @ M @ null
                c = np.trace(R) / k
                nil = np.linalg.matrix_power(R - c * np.eye(k), k)
                if np.linalg.norm(nil) > 1e-6 * max(1.0, np.linalg.norm(R)) ** k:
                    merged = True
                coords.append(complex(c))
            if merged:
                return None
            found.append((tuple(coords), k))
    return found


def _snap(coords, rel=1e-12):
    """Zero out real or imaginary parts that are rounding noise."""
    scale = max([1.0] + [abs(c) for c in coords])
    out = []
    for c in coords:
        re_, im_ = c.real, c.imag
        if abs(re_) <= rel * scale:
            re_ = 0.0
        if abs(im_) <= rel * scale:
            im_ = 0.0
        out.append(complex(re_, im_))
    return tuple(out)


def solve_variety(
    qa: QuotientAlgebra,
    gens: Sequence[Polynomial],
    *,
    seed: int = 0,
    rank_tol: float = JACOBIAN_RANK_TOL,
    real_tol: float = REAL_TOL,
) -> list[VarietyPoint]:
    """All points of the variety with multiplicities (eigenvalue method).

    The local multiplicity of a point is the dimension of the generalized
    eigenspace of a random rational combination of the multiplication
    matrices; it is read exactly from the square-free decomposition of that
    combination's characteristic polynomial.
    """
    if not qa.is_finite:
        raise GroebnerError("variety is positive dimensional")
    if qa.dim == 0:
        return []
    rng = random.Random(seed)
    raw = None
    for _ in range(8):
        raw = _extract_points(qa, gens, rng)
        if raw is not None:
            break
    if raw is None:
        raise VarietyError("random combination failed to separate points")
    points = []
    for coords, k in raw:
        z = np.array(coords)
        J = _jacobian(gens, z)
        s = np.linalg.svd(J, compute_uv=False) if J.size else np.array([])
        smax = s[0] if s.size else 0.0
        rank = int(np.sum(s > rank_tol * smax)) if smax > 0 else 0
        coords = _snap(coords)
        is_real = all(abs(c.imag) <= real_tol * max(1.0, abs(c)) for c in coords)
        if is_real:
            coords = tuple(complex(c.real, 0.0) for c in coords)
        points.append(
            VarietyPoint(coords, k, rank < len(coords), is_real, tuple(float(x) for x in s))
        )
    points.sort(key=lambda p: tuple((round(c.real, 9), round(c.imag, 9)) for c in p.coords))
    return points


def variety(gens: Sequence[Polynomial], seed: int = 0) -> list[VarietyPoint]:
    """Convenience wrapper: Groebner basis, quotient, eigenvalue solve."""
    qa = ideal_quotient(gens)
    if not qa.is_finite:
        raise GroebnerError("variety is positive dimensional")
    return solve_variety(qa, gens, seed=seed)


# -- membership lifting -------------------------------------------------------------

@dataclass
class LiftResult:
    """Multipliers with ``h = sum(multipliers[i] * gens[i])``; behaves like a list."""

    multipliers: list
    degree_guaranteed: bool

    def __iter__(self):
        return iter(self.multipliers)

    def __len__(self):
        return len(self.multipliers)

    def __getitem__(self, i):
        return self.multipliers[i]


def lift_membership(
    h: Polynomial,
    gens: Sequence[Polynomial],
    *,
    at_infinity_ok: bool | None = None,
) -> LiftResult:
    """Multipliers ``lambda_i`` with ``h = sum lambda_i g_i``.

    When the generators have no common zero at infinity the multipliers are
    obtained by dividing the homogenization of ``h`` by a Groebner basis of
    the homogenized generators, which gives ``deg(lambda_i) <= deg(h) -
    deg(g_i)``.  Otherwise plain division by the affine basis is used and the
    degree bound is not guaranteed.
    """
    gens = list(gens)
    n = h.nvars
    gb = groebner_basis(gens)
    if not normal_form(h, gb).is_zero():
        raise NotMemberError("not a member of the ideal")
    if h.is_zero():
        return LiftResult([Polynomial.zero(n) for _ in gens], True)
    if at_infinity_ok is None:
        from .assumption import check_at_infinity

        at_infinity_ok = check_at_infinity(gens).holds_at_infinity

    if at_infinity_ok:
        D = int(h.degree())
        hbar = h.homogenize()
        gbars = [g.homogenize() for g in gens]
        hgb = groebner_basis(gbars, "grevlex_x0_last", track_cofactors=True, max_degree=D)
        quot, rem = divide(hbar, hgb)
        if not rem.is_zero():
            raise InvariantBreach("homogenized member not in the homogenized ideal")
        lam = [Polynomial.zero(n + 1) for _ in gens]
        for q, cofs in zip(quot, hgb.cofactors):
            if q.is_zero():
                continue
            for i, c in enumerate(cofs):
                if not c.is_zero():
                    lam[i] = lam[i] + q * c
        out = [l.dehomogenize() for l in lam]
        for l, g in zip(out, gens):
            if not l.is_zero() and l.degree() > D - g.degree():
                raise InvariantBreach("multiplier degree exceeds deg(h) - deg(g_i)")
        return LiftResult(out, True)

    tgb = groebner_basis(gens, track_cofactors=True)
    quot, rem = divide(h, tgb)
    if not rem.is_zero():
        raise InvariantBreach("member with nonzero remainder")
    lam = [Polynomial.zero(n) for _ in gens]
    for q, cofs in zip(quot, tgb.cofactors):
        if q.is_zero():
            continue
        for i, c in enumerate(cofs):
            if not c.is_zero():
                lam[i] = lam[i] + q * c
    return LiftResult(lam, False)


def graded_dimensions(homogeneous: Sequence[Polynomial], max_degree: int) -> list[int]:
    """Hilbert function of ``S/<homogeneous>`` in degrees ``0..max_degree``."""
    if any(not p.is_homogeneous() for p in homogeneous if not p.is_zero()):
        raise GroebnerError("homogeneous generators required")
    gb = groebner_basis(list(homogeneous), max_degree=max_degree)
    counts = [0] * (max_degree + 1)
    for m in standard_monomials(gb, max_degree=max_degree):
        counts[sum(m)] += 1
    return counts
