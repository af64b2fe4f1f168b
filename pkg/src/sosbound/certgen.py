"""Exact certificates ``f - f* = sum(lambda_i g_i) + h^2``.

The square root ``h`` of ``p = f - f*`` in the quotient ring is assembled
point by point.  The quotient splits as a product of local rings, one per
point of the variety; each local piece of ``p`` is a unit (or zero at a
simple point) and has a square root given by a truncated Taylor recursion.
The pieces are glued with the idempotents of the splitting, read off from
the generalized eigenspaces of a random combination of multiplication
matrices.  Reducing modulo the Groebner basis then brings ``deg h`` down to
at most ``sum(deg g_i) - n``, and the multipliers come from
:func:`~sosbound.groebner.lift_membership`.

When every point is rational and all square roots live in one quadratic
field the construction is exact.  Otherwise it runs in mpmath at
``FLOAT_DPS`` digits and the residual is reported instead of being zero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from . import exactla
from .degbound import frak_n
from .fields import QuadraticElement, exact_sqrt, radicand_of
from .groebner import (
    GroebnerError,
    QuotientAlgebra,
    VarietyPoint,
    groebner_basis,
    ideal_quotient,
    lift_membership,
    normal_form,
    solve_variety,
)
from .polycore import (
    Polynomial,
    coeff_from_json,
    from_terms,
    to_terms,
)

FLOAT_DPS = 50
FLOAT_RESIDUAL_TOL = 1e-20
ZERO_VALUE_TOL = 1e-20


class SquareRootError(ValueError):
    pass


class HypothesisError(ValueError):
    """``p`` is negative at a real point or vanishes at a singular point."""

    def __init__(self, message: str, point=None):
        super().__init__(message)
        self.point = point


# -- local square roots ----------------------------------------------------------

def sqrt_mod_power(p: Polynomial, k: int, *, allow_complex: bool = False, b0=None) -> Polynomial:
    """``q`` with ``q^2 - p`` in ``<x_1..x_n>^k``, ``deg q <= k - 1``.

    The constant term of ``p`` must be a nonzero square.  For rationals the
    root is exact (a rational or an element of one quadratic field).  ``b0``
    overrides the choice of square root of the constant term.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    n = p.nvars
    a0 = p.constant_term()
    if b0 is None:
        if a0 == 0:
            raise SquareRootError("no unit square root: constant term is zero")
        if p.is_exact and isinstance(a0, Fraction):
            if a0 < 0:
                raise SquareRootError("no unit square root: negative constant term")
            b0 = exact_sqrt(a0)
            if b0 is None:
                raise SquareRootError("square-free part of the constant term is out of reach")
        else:
            z = mpmath.mpmathify(a0)
            if isinstance(z, mpmath.mpf) and z < 0 and not allow_complex:
                raise SquareRootError("no unit square root: negative constant term")
            b0 = mpmath.sqrt(z)
    elif b0 == 0:
        raise SquareRootError("no unit square root: constant term is zero")
    inv2b0 = 1 / (2 * b0)
    zero = (0,) * n
    q = {zero: b0}
    for t in range(1, k):
        # degree-t part of (q_{<t})^2, nonconstant factors only
        low = [(e, c) for e, c in q.items() if sum(e) > 0]
        cross: dict = {}
        for i, (e1, c1) in enumerate(low):
            for e2, c2 in low:
                if sum(e1) + sum(e2) != t:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                cross[e] = cross.get(e, 0) + c1 * c2
        for e in _monomials_of_degree(n, t):
            a = p.terms.get(e, 0)
            s = cross.get(e, 0)
            if a == 0 and s == 0:
                continue
            b = (a - s) * inv2b0
            if b != 0:
                q[e] = b
    return Polynomial(q, n)


def _monomials_of_degree(n, d):
    from .polycore import monomials_of_degree

    return monomials_of_degree(n, d)


@dataclass(frozen=True)
class LocalSquareRootTask:
    point: tuple
    nilpotency_order: int
    target_value: complex
    multiplicity: int = 1


# -- shared eigen-structure helpers -------------------------------------------------

def _random_weights(n, rng):
    return [Fraction(rng.randint(1, 61), rng.randint(1, 7)) * rng.choice((-1, 1)) for _ in range(n)]


def _combine(mats, weights):
    d = len(mats[0])
    L = exactla.zeros(d, d)
    for w, M in zip(weights, mats):
        for r in range(d):
            for c in range(d):
                if M[r][c]:
                    L[r][c] += w * M[r][c]
    return L


def _mat_pow(A, k, mul):
    out = A
    for _ in range(k - 1):
        out = mul(out, A)
    return out


def _unit_vector(qa: QuotientAlgebra):
    v = [Fraction(0)] * qa.dim
    v[qa.index[(0,) * qa.nvars]] = Fraction(1)
    return v


def _nilpotency_index(mats_shifted, block, mul_vec, is_zero):
    """Smallest k with m^k = 0 on the local block spanned by ``block`` columns."""
    k = 0
    current = list(block)
    while current:
        k += 1
        nxt = []
        for N in mats_shifted:
            for v in current:
                w = mul_vec(N, v)
                if not is_zero(w):
                    nxt.append(w)
        current = _independent(nxt, is_zero)
        if k > len(block) + 1:
            break
    return max(k, 1)


def _independent(vectors, is_zero):
    if not vectors:
        return []
    if all(isinstance(x, Fraction) for x in vectors[0]):
        rows, _ = exactla.rref(vectors)
        return rows
    M = mpmath.matrix(vectors).T
    basis = _mp_column_basis(M)
    return [list(basis[:, j]) for j in range(basis.cols)]


# -- exact path ------------------------------------------------------------------------

def _rationalize(z: complex, limit=10**6):
    return Fraction(z.real).limit_denominator(limit)


def _exact_plan(p: Polynomial, qa: QuotientAlgebra, points: Sequence[VarietyPoint], gens, rng):
    """Exact local data when all points are rational, else None."""
    if not all(pt.is_real for pt in points):
        return None
    rat_points = []
    for pt in points:
        rp = tuple(_rationalize(z) for z in pt.coords)
        if any(g.evaluate(rp) != 0 for g in gens):
            return None
        rat_points.append(rp)
    if len(set(rat_points)) != len(rat_points):
        return None
    for _ in range(10):
        w = _random_weights(qa.nvars, rng)
        thetas = [sum(wi * ci for wi, ci in zip(w, rp)) for rp in rat_points]
        if len(set(thetas)) == len(thetas):
            break
    else:
        return None
    L = _combine(qa.mult_matrices, w)
    d = qa.dim
    plan = []
    total = 0
    for pt, rp, th in zip(points, rat_points, thetas):
        A = [[L[r][c] - (th if r == c else 0) for c in range(d)] for r in range(d)]
        Ak = _mat_pow(A, pt.multiplicity, exactla.matmul)
        right = exactla.nullspace(Ak, d)
        if len(right) != pt.multiplicity:
            return None
        left = exactla.nullspace(exactla.transpose(Ak), d)
        total += len(right)
        plan.append((pt, rp, right, left))
    if total != d:
        return None
    return plan


def _exact_idempotent(qa, right, left):
    """Coordinates of the idempotent for the block with the given eigen-bases."""
    one = _unit_vector(qa)
    FE = [[sum(f[i] * e[i] for i in range(len(f))) for e in right] for f in left]
    rhs = [sum(f[i] * one[i] for i in range(len(f))) for f in left]
    z = exactla.solve(FE, rhs)
    return [sum(right[j][i] * z[j] for j in range(len(right))) for i in range(qa.dim)]


def _apply_poly(qa: QuotientAlgebra, q: Polynomial, vec, mats, zero):
    """``q(M_1..M_n) vec`` using a memo of monomial actions."""
    memo = {(0,) * qa.nvars: list(vec)}

    def act(e):
        if e in memo:
            return memo[e]
        i = next(j for j in range(len(e)) if e[j] > 0)
        prev = list(e)
        prev[i] -= 1
        pv = act(tuple(prev))
        M = mats[i]
        out = [sum((M[r][c] * pv[c] for c in range(len(pv)) if M[r][c] != 0), zero) for r in range(len(pv))]
        memo[e] = out
        return out

    acc = [zero] * len(vec)
    for e, c in q.terms.items():
        v = act(e)
        acc = [a + c * x for a, x in zip(acc, v)]
    return acc


def _quotient_sqrt_exact(p: Polynomial, qa, plan, check_hypotheses):
    values = [p.evaluate(rp) for _, rp, _, _ in plan]
    roots = []
    radicands = set()
    for (pt, rp, right, _), v in zip(plan, values):
        if v < 0:
            raise HypothesisError(f"p is negative at the real point {rp}", rp)
        if v == 0 and pt.multiplicity > 1 and check_hypotheses:
            raise HypothesisError(f"p vanishes at the singular point {rp}", rp)
        r = exact_sqrt(v)
        if r is None:
            return None
        roots.append(r)
        radicands.add(radicand_of(r))
    radicands.discard(1)
    if len(radicands) > 1:
        return None
    zero = Fraction(0)
    h_vec = [zero] * qa.dim
    tasks = []
    for (pt, rp, right, left), v, r in zip(plan, values, roots):
        e_vec = _exact_idempotent(qa, right, left)
        if v == 0:
            tasks.append(LocalSquareRootTask(tuple(complex(c) for c in rp), 1, 0j, pt.multiplicity))
            continue
        shifted = [
            [[M[a][b] - (c if a == b else 0) for b in range(qa.dim)] for a in range(qa.dim)]
            for M, c in zip(qa.mult_matrices, rp)
        ]
        k = _nilpotency_index(shifted, right, exactla.matvec, exactla.vec_is_zero)
        local = p.translate([c for c in rp])
        q_local = sqrt_mod_power(local, k, b0=r)
        q_global = q_local.translate([-c for c in rp])
        contrib = _apply_poly(qa, q_global, e_vec, qa.mult_matrices, zero)
        h_vec = [a + b for a, b in zip(h_vec, contrib)]
        tasks.append(LocalSquareRootTask(tuple(complex(c) for c in rp), k, complex(float(v)), pt.multiplicity))
    h = Polynomial({m: c for m, c in zip(qa.basis, h_vec) if c != 0}, qa.nvars)
    return h, tasks


# -- high precision path ------------------------------------------------------------------

def _to_mp(c):
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / c.denominator
    if isinstance(c, int):
        return mpmath.mpf(c)
    if isinstance(c, QuadraticElement):
        return _to_mp(c.a) + _to_mp(c.b) * mpmath.sqrt(c.m)
    return mpmath.mpmathify(c)


def _mp_matrix(A):
    return mpmath.matrix([[_to_mp(x) for x in row] for row in A])


def _mp_null(A, nullity):
    """Basis (columns) of the numerical null space of ``A`` with known dimension."""
    rows, cols = A.rows, A.cols
    M = A.copy()
    perm = list(range(cols))
    rank = cols - nullity
    for r in range(rank):
        best, bi, bj = -1, r, r
        for i in range(r, rows):
            for j in range(r, cols):
                v = abs(M[i, j])
                if v > best:
                    best, bi, bj = v, i, j
        if bi != r:
            for j in range(cols):
                M[r, j], M[bi, j] = M[bi, j], M[r, j]
        if bj != r:
            for i in range(rows):
                M[i, r], M[i, bj] = M[i, bj], M[i, r]
            perm[r], perm[bj] = perm[bj], perm[r]
        piv = M[r, r]
        for j in range(cols):
            M[r, j] /= piv
        for i in range(rows):
            if i != r and M[i, r] != 0:
                f = M[i, r]
                for j in range(r, cols):
                    M[i, j] -= f * M[r, j]
    N = mpmath.matrix(cols, nullity)
    for k in range(nullity):
        free = rank + k
        vec = [mpmath.mpf(0)] * cols
        vec[free] = mpmath.mpf(1)
        for r in range(rank):
            vec[r] = -M[r, free]
        for pos, orig in enumerate(perm):
            N[orig, k] = vec[pos]
    return N


def _mp_column_basis(M):
    """Independent columns of ``M`` (numerical rank)."""
    cols = []
    scale = max([abs(x) for x in M] + [mpmath.mpf(1)])
    tol = mpmath.mpf(10) ** (-(FLOAT_DPS // 2)) * scale
    basis = []
    for j in range(M.cols):
        v = M[:, j]
        for b in basis:
            v = v - b * (b.H * v)[0]
        nv = mpmath.norm(v)
        if nv > tol:
            basis.append(v / nv)
            cols.append(j)
    out = mpmath.matrix(M.rows, len(basis))
    for k, b in enumerate(basis):
        for i in range(M.rows):
            out[i, k] = b[i]
    return out


def _float_plan(qa: QuotientAlgebra, rng):
    """High-precision points, multiplicities and idempotents from the eigenstructure."""
    d = qa.dim
    mats = [_mp_matrix(M) for M in qa.mult_matrices]
    w = _random_weights(qa.nvars, rng)
    L = _combine(qa.mult_matrices, w)
    chi = exactla.charpoly(L)
    Lm = _mp_matrix(L)
    one = mpmath.matrix([float(x) for x in _unit_vector(qa)])
    plan = []
    for factor, mult in exactla.squarefree_decomposition(chi):
        coeffs = [_to_mp(c) for c in reversed(factor)]
        if len(coeffs) == 2:
            roots = [-coeffs[1] / coeffs[0]]
        else:
            roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * FLOAT_DPS)
        for th in roots:
            A = Lm - th * mpmath.eye(d)
            Ak = A ** mult
            E = _mp_null(Ak, mult)
            F = _mp_null(Ak.T, mult)
            G = F.T * E
            Ginv = G ** -1
            coords = []
            for M in mats:
                R = Ginv * (F.T * M * E)
                coords.append(sum(R[i, i] for i in range(mult)) / mult)
            e_vec = E * (Ginv * (F.T * one))
            plan.append((tuple(coords), mult, E, e_vec))
    return plan, mats


def _pair_up(plan, tol):
    """Split into real points and one representative per conjugate pair."""
    reals, pairs, used = [], [], set()
    for i, item in enumerate(plan):
        if i in used:
            continue
        c = item[0]
        if all(abs(mpmath.im(z)) <= tol * max(1, abs(z)) for z in c):
            reals.append(item)
            used.add(i)
            continue
        for j in range(i + 1, len(plan)):
            if j in used:
                continue
            c2 = plan[j][0]
            if all(abs(z - mpmath.conj(z2)) <= tol * max(1, abs(z)) for z, z2 in zip(c, c2)):
                pairs.append(item)
                used.update((i, j))
                break
        else:
            raise GroebnerError("non-real point without a conjugate partner")
    return reals, pairs


def _quotient_sqrt_float(p: Polynomial, qa: QuotientAlgebra, rng, check_hypotheses):
    with mpmath.workdps(FLOAT_DPS):
        plan, mats = _float_plan(qa, rng)
        reals, pairs = _pair_up(plan, mpmath.mpf(10) ** -(FLOAT_DPS // 3))
        pm = p.map_coefficients(_to_mp)
        h_vec = [mpmath.mpc(0)] * qa.dim
        tasks = []
        for group, weight in ((reals, 1), (pairs, 2)):
            for coords, mult, E, e_vec in group:
                if weight == 1:
                    coords = tuple(mpmath.re(z) for z in coords)
                v = pm.evaluate(coords)
                is_zero = abs(v) <= ZERO_VALUE_TOL * max(1, pm.max_abs_coefficient())
                shown = tuple(complex(z) for z in coords)
                if weight == 1 and not is_zero and mpmath.re(v) < 0:
                    raise HypothesisError(f"p is negative at the real point {shown}", shown)
                if is_zero:
                    if mult > 1 and check_hypotheses:
                        raise HypothesisError(f"p vanishes at the singular point {shown}", shown)
                    tasks.append(LocalSquareRootTask(shown, 1, 0j, mult))
                    continue
                shifted = [M - z * mpmath.eye(qa.dim) for M, z in zip(mats, coords)]
                block = [list(E[:, j]) for j in range(E.cols)]
                k = _nilpotency_index(
                    shifted,
                    block,
                    lambda N, x: list(N * mpmath.matrix(x)),
                    lambda x: mpmath.norm(mpmath.matrix(x)) <= mpmath.mpf(10) ** -(FLOAT_DPS // 2),
                )
                b0 = mpmath.sqrt(mpmath.re(v)) if weight == 1 else mpmath.sqrt(v)
                local = pm.translate(list(coords))
                q_local = sqrt_mod_power(local, k, b0=b0, allow_complex=True)
                q_global = q_local.translate([-z for z in coords])
                contrib = _apply_poly(qa, q_global, list(e_vec), mats_as_lists(mats), mpmath.mpc(0))
                h_vec = [a + weight * b for a, b in zip(h_vec, contrib)]
                tasks.append(LocalSquareRootTask(shown, k, complex(v), mult))
        # the pair contributions enter as 2*Re
        h = {}
        for m, c in zip(qa.basis, h_vec):
            r = mpmath.re(c)
            if r != 0:
                h[m] = r
        return Polynomial(h, qa.nvars), tasks


def mats_as_lists(mats):
    return [[[M[i, j] for j in range(M.cols)] for i in range(M.rows)] for M in mats]


# -- public API ------------------------------------------------------------------------------

@dataclass
class SquareRootResult:
    h: Polynomial
    exact: bool
    tasks: list
    residual: float


def quotient_sqrt(
    p: Polynomial,
    qa: QuotientAlgebra,
    points: Sequence[VarietyPoint] | None = None,
    *,
    gens: Sequence[Polynomial] | None = None,
    seed: int = 0,
    check_hypotheses: bool = True,
    details: bool = False,
):
    """``h`` with ``p - h^2`` in the ideal and ``h`` in normal form.

    Raises :class:`HypothesisError` when ``p`` is negative at a real point
    or vanishes at a singular point.  With ``details=True`` a
    :class:`SquareRootResult` is returned instead of the bare polynomial.
    """
    if not qa.is_finite:
        raise GroebnerError("quotient algebra is infinite dimensional")
    gens = list(gens) if gens is not None else list(qa.gb.source)
    n = qa.nvars
    if p.is_zero() or qa.dim == 0:
        res = SquareRootResult(Polynomial.zero(n), True, [], 0.0)
        return res if details else res.h
    if points is None:
        points = solve_variety(qa, gens, seed=seed)
    rng = random.Random(seed)
    result = None
    plan = _exact_plan(p, qa, points, gens, rng) if p.is_exact else None
    if plan is not None:
        out = _quotient_sqrt_exact(p, qa, plan, check_hypotheses)
        if out is not None:
            h, tasks = out
            h = normal_form(h, qa.gb)
            if not normal_form(p - h * h, qa.gb).is_zero():
                raise AssertionError("exact square root failed to verify")
            result = SquareRootResult(h, True, tasks, 0.0)
    if result is None:
        for pt in points:
            val = p.eval_complex(pt.coords)
            if pt.is_real and val.real < -1e-9 * max(1.0, float(p.max_abs_coefficient())):
                raise HypothesisError(f"p is negative at the real point {pt}", pt)
        h, tasks = _quotient_sqrt_float(p, qa, rng, check_hypotheses)
        with mpmath.workdps(FLOAT_DPS):
            gbm = _mp_gb(qa)
            pm = p.map_coefficients(_to_mp)
            h = _mp_normal_form(h, gbm, qa)
            r = _mp_normal_form(pm - h * h, gbm, qa)
            residual = float(max([abs(c) for c in r.terms.values()], default=0))
        scale = max(1.0, float(p.max_abs_coefficient()))
        if residual > FLOAT_RESIDUAL_TOL * scale:
            raise SquareRootError(f"high-precision square root residual {residual:.3g} too large")
        result = SquareRootResult(h, False, tasks, residual)
    return result if details else result.h


def _mp_gb(qa):
    return qa.gb


def _mp_normal_form(p: Polynomial, gb, qa) -> Polynomial:
    from .groebner import _reduce
    from .polycore import order_key

    rem, _ = _reduce(p.terms, gb._elems(), order_key(gb.order))
    return Polynomial(rem, p.nvars)


@dataclass
class Certificate:
    fstar: object
    h: Polynomial | None
    multipliers: list
    residual: float
    degree_contract_met: bool
    exact: bool = True
    gram: list | None = None
    gram_monomials: list | None = None
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "fstar": _scalar_to_json(self.fstar),
            "h": None if self.h is None else to_terms(self.h),
            "multipliers": [to_terms(l) for l in self.multipliers],
            "residual": self.residual,
            "degreeContractMet": self.degree_contract_met,
            "exact": self.exact,
            "gram": self.gram,
            "gramMonomials": self.gram_monomials,
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, obj: dict, nvars: int) -> "Certificate":
        h = obj.get("h")
        return cls(
            fstar=coeff_from_json(obj["fstar"]),
            h=None if h is None else from_terms(h, nvars),
            multipliers=[from_terms(t, nvars) for t in obj["multipliers"]],
            residual=float(obj["residual"]),
            degree_contract_met=bool(obj["degreeContractMet"]),
            exact=bool(obj.get("exact", True)),
            gram=obj.get("gram"),
            gram_monomials=[tuple(m) for m in obj["gramMonomials"]] if obj.get("gramMonomials") else None,
            notes=list(obj.get("notes", [])),
        )


def _scalar_to_json(c):
    from .polycore import coeff_to_json

    if isinstance(c, int):
        c = Fraction(c)
    return coeff_to_json(c)


def _max_abs(p: Polynomial) -> float:
    return max((abs(complex(c)) for c in p.terms.values()), default=0.0)


def build_certificate(
    f: Polynomial,
    gens: Sequence[Polynomial],
    fstar=None,
    *,
    seed: int = 0,
    at_infinity_ok: bool | None = None,
) -> Certificate:
    """Square-root certificate of ``f - fstar`` modulo the constraints.

    ``fstar=None`` takes the minimum over the real points of the variety.
    """
    with mpmath.workdps(FLOAT_DPS):
        return _build_certificate(f, gens, fstar, seed, at_infinity_ok)


def _build_certificate(f, gens, fstar, seed, at_infinity_ok) -> Certificate:
    gens = list(gens)
    qa = ideal_quotient(gens)
    if not qa.is_finite:
        raise GroebnerError("ideal is positive dimensional")
    if fstar is None:
        fstar = real_variety_minimum(f, gens, seed=seed)
    fstar_exact = Fraction(fstar) if isinstance(fstar, int) else fstar
    p = f - fstar_exact
    sq = quotient_sqrt(p, qa, gens=gens, seed=seed, details=True)
    h = sq.h
    if at_infinity_ok is None:
        from .assumption import check_at_infinity

        at_infinity_ok = check_at_infinity(gens).holds_at_infinity
    if sq.exact:
        rest = p - h * h
        lam = _lift_quadratic(rest, gens, at_infinity_ok)
        notes = []
    else:
        lam = _lift_float(p, h, gens, at_infinity_ok)
        notes = ["high-precision floating-point square root"]
    cert = Certificate(fstar_exact, h, list(lam.multipliers), 0.0, False, sq.exact, notes=notes)
    report = verify_certificate(f, gens, cert)
    cert.residual = report.residual
    cert.degree_contract_met = report.h_degree_ok and report.multiplier_degree_ok and lam.degree_guaranteed
    return cert


def real_variety_minimum(f: Polynomial, gens: Sequence[Polynomial], *, seed: int = 0):
    """Minimum of ``f`` over the real points of the variety.

    Exact (a Fraction) when every real point is rational; otherwise an mpmath
    number computed from the high-precision eigenstructure.
    """
    gens = list(gens)
    qa = ideal_quotient(gens)
    points = solve_variety(qa, gens, seed=seed)
    real = [pt for pt in points if pt.is_real]
    if not real:
        raise GroebnerError("no real points: the problem is infeasible")
    rat = [tuple(_rationalize(z) for z in pt.coords) for pt in real]
    if all(all(g.evaluate(rp) == 0 for g in gens) for rp in rat):
        return min(f.evaluate(rp) for rp in rat)
    with mpmath.workdps(FLOAT_DPS):
        plan, _ = _float_plan(qa, random.Random(seed))
        reals, _ = _pair_up(plan, mpmath.mpf(10) ** -(FLOAT_DPS // 3))
        fm = f.map_coefficients(_to_mp)
        return min(fm.evaluate(tuple(mpmath.re(z) for z in item[0])) for item in reals)


def _split_quadratic(p: Polynomial):
    """``p = A + sqrt(m) B`` with rational ``A, B``; returns (A, B, m)."""
    m = 1
    A, B = {}, {}
    for e, c in p.terms.items():
        if isinstance(c, QuadraticElement):
            if c.b != 0:
                m = c.m
                B[e] = c.b
            if c.a != 0:
                A[e] = c.a
        else:
            A[e] = c
    return Polynomial(A, p.nvars), Polynomial(B, p.nvars), m


def _lift_quadratic(rest: Polynomial, gens, at_infinity_ok):
    A, B, m = _split_quadratic(rest)
    la = lift_membership(A, gens, at_infinity_ok=at_infinity_ok)
    if B.is_zero():
        return la
    lb = lift_membership(B, gens, at_infinity_ok=at_infinity_ok)
    root = QuadraticElement(0, 1, m)
    lam = [a + b.map_coefficients(lambda c: c * root) for a, b in zip(la, lb)]
    return type(la)(lam, la.degree_guaranteed and lb.degree_guaranteed)


def _lift_float(p: Polynomial, h: Polynomial, gens, at_infinity_ok):
    """Multipliers for a high-precision ``h`` by dividing the homogenized residual."""
    from .groebner import LiftResult, _reduce
    from .polycore import order_key

    n = p.nvars
    with mpmath.workdps(FLOAT_DPS):
        pm = p.map_coefficients(_to_mp)
        rest = pm - h * h
        if rest.is_zero():
            return LiftResult([Polynomial.zero(n) for _ in gens], True)
        if at_infinity_ok:
            D = int(rest.degree())
            hgb = groebner_basis([g.homogenize() for g in gens], "grevlex_x0_last", track_cofactors=True, max_degree=D)
            elems = hgb._elems()
            rem, quot = _reduce(rest.homogenize().terms, elems, order_key(hgb.order), track=True)
            lam = [Polynomial.zero(n + 1) for _ in gens]
            for q, cofs in zip(quot, hgb.cofactors):
                qp = Polynomial(q, n + 1)
                if qp.is_zero():
                    continue
                for i, c in enumerate(cofs):
                    if not c.is_zero():
                        lam[i] = lam[i] + qp * c
            return LiftResult([l.dehomogenize() for l in lam], True)
        tgb = groebner_basis(gens, track_cofactors=True)
        rem, quot = _reduce(rest.terms, tgb._elems(), order_key(tgb.order), track=True)
        lam = [Polynomial.zero(n) for _ in gens]
        for q, cofs in zip(quot, tgb.cofactors):
            qp = Polynomial(q, n)
            for i, c in enumerate(cofs):
                if not c.is_zero() and not qp.is_zero():
                    lam[i] = lam[i] + qp * c
        return LiftResult(lam, False)


@dataclass
class ResidualReport:
    residual: float
    exact_zero: bool
    h_degree_ok: bool
    multiplier_degree_ok: bool
    frak_n: int
    multiplier_cap: int

    @property
    def ok(self) -> bool:
        return self.h_degree_ok and self.multiplier_degree_ok

    def to_json(self) -> dict:
        return {
            "residual": self.residual,
            "exactZero": self.exact_zero,
            "hDegreeOk": self.h_degree_ok,
            "multiplierDegreeOk": self.multiplier_degree_ok,
            "frakN": self.frak_n,
            "multiplierCap": self.multiplier_cap,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ResidualReport":
        return cls(
            float(obj["residual"]),
            bool(obj["exactZero"]),
            bool(obj["hDegreeOk"]),
            bool(obj["multiplierDegreeOk"]),
            int(obj["frakN"]),
            int(obj["multiplierCap"]),
        )


def sigma_from_gram(gram, monomials, nvars: int) -> Polynomial:
    """``v^T G v`` for the monomial vector ``v``."""
    terms: dict = {}
    for i, mi in enumerate(monomials):
        for j, mj in enumerate(monomials):
            g = gram[i][j]
            if g == 0:
                continue
            e = tuple(a + b for a, b in zip(mi, mj))
            terms[e] = terms.get(e, 0) + g
    return Polynomial({e: c for e, c in terms.items() if c != 0}, nvars)


def verify_certificate(f: Polynomial, gens: Sequence[Polynomial], cert: Certificate) -> ResidualReport:
    """Recompute ``f - f* - sum(lambda_i g_i) - h^2`` (or ``- sigma`` from the Gram matrix)."""
    with mpmath.workdps(FLOAT_DPS):
        return _verify(f, list(gens), cert)


def _verify(f, gens, cert) -> ResidualReport:
    n = f.nvars
    rest = f - cert.fstar
    for l, g in zip(cert.multipliers, gens):
        rest = rest - l * g
    if cert.h is not None:
        rest = rest - cert.h * cert.h
    if cert.gram is not None:
        rest = rest - sigma_from_gram(cert.gram, cert.gram_monomials, n)
    residual = _max_abs(rest)
    nn = frak_n([int(g.degree()) for g in gens])
    df = int(f.degree()) if not f.is_zero() else 0
    cap = max(2 * nn, df)
    h_ok = cert.h is None or cert.h.is_zero() or cert.h.degree() <= nn
    lam_ok = all(l.is_zero() or l.degree() + g.degree() <= cap for l, g in zip(cert.multipliers, gens))
    return ResidualReport(residual, rest.is_zero() and rest.is_exact, h_ok, lam_ok, nn, cap)
