"""SOS relaxation over the gradient ideal, and copositivity testing built on it.

For an unconstrained problem ``min F`` the critical equations
``dF/dx_i = 0`` form a square system, so the degree bound applies with
``d <= max(n (deg F - 2), ceil(deg F / 2))`` whenever the partials of the
top-degree form of ``F`` have no common nontrivial zero.

A symmetric matrix ``P`` is copositive iff the minimum of
``F_lam = sum_ij x_i^2 x_j^2 P_ij + lam (|x|^2 - 1)^2`` is nonnegative, for any
``lam`` larger than minus the minimum of the quartic form on the unit sphere.
The no-zeros-at-infinity condition for ``F_lam`` is equivalent to every
principal minor of ``P + lam 11^T`` being nonzero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import exactla
from .assumption import AssumptionReport, check_at_infinity
from .degbound import gradient_order
from .fields import as_fraction
from .polycore import Polynomial, from_terms, gradient, to_terms
from .sdp import GAP_TOL, MAX_ITER, UNBOUNDED, SdpError, SdpSolution, build_relaxation, solve

VALUE_TOL = 1e-6
MAX_MINOR_SIZE = 20
LAMBDA_START = 1
LAMBDA_FACTOR = 4
LAMBDA_CAP = 2**20

COPOSITIVE = "copositive"
NOT_COPOSITIVE = "notCopositive"
INCONCLUSIVE = "inconclusive"


class GradientError(ValueError):
    pass


@dataclass
class GradientProblem:
    F: Polynomial
    partials: list
    bound: int
    assumption: AssumptionReport

    @classmethod
    def of(cls, F: Polynomial, *, seed: int = 0) -> "GradientProblem":
        return cls(F, gradient(F), gradient_order(F), check_gradient_assumption(F, seed=seed))


def multiplier_degrees(F: Polynomial, d: int) -> list[int]:
    """Caps ``deg lambda_i <= 2d - deg F + 1`` for every partial."""
    return [2 * d - int(F.degree()) + 1] * F.nvars


def gradient_relaxation(F: Polynomial, d: int, **opts) -> SdpSolution:
    """``F_d``: the order-``d`` SOS relaxation of ``min F`` over the gradient ideal."""
    if F.is_zero() or F.degree() < 1:
        raise GradientError("F must be nonconstant")
    if 2 * d < F.degree():
        raise GradientError(f"order {d} below ceil(deg F / 2)")
    prob = build_relaxation(F, gradient(F), d, multiplier_degrees=multiplier_degrees(F, d))
    return solve(prob, **opts)


def check_gradient_assumption(F: Polynomial, *, seed: int = 0) -> AssumptionReport:
    """No common nontrivial zero of the partials of the top-degree form of ``F``."""
    if F.is_zero() or F.degree() < 2:
        raise GradientError("gradient assumption needs deg F >= 2")
    n = F.nvars
    partials = gradient(F.top_form())
    product = 1
    for p in partials:
        product *= max(int(p.degree()), 0) if not p.is_zero() else 0
    for i, p in enumerate(partials):
        if p.is_zero():
            # the top form ignores x_i, so every partial vanishes on that axis
            axis = tuple(complex(1.0 if j == i else 0.0) for j in range(n))
            return AssumptionReport(False, axis, None, product)
    return check_at_infinity(partials, seed=seed)


def critical_minimum(F: Polynomial, *, seed: int = 0):
    """Smallest value of ``F`` over its real critical points (requires finitely many)."""
    from .certgen import real_variety_minimum

    return real_variety_minimum(F, gradient(F), seed=seed)


def hessian_nonsingular_at_minimizers(F: Polynomial, fstar=None, *, seed: int = 0, tol: float = 1e-8) -> bool:
    """Numerical check of the attainment clause: ``F''`` invertible at complex minimizers."""
    from .groebner import ideal_quotient, solve_variety

    grads = gradient(F)
    qa = ideal_quotient(grads)
    if not qa.is_finite:
        raise GradientError("critical locus is positive dimensional")
    pts = solve_variety(qa, grads, seed=seed)
    if fstar is None:
        reals = [F.eval_complex(p.real_coords()).real for p in pts if p.is_real]
        if not reals:
            return True
        fstar = min(reals)
    fstar = complex(float(fstar))
    hess = [[g.derivative(j) for j in range(F.nvars)] for g in grads]
    for p in pts:
        if abs(F.eval_complex(p.coords) - fstar) > VALUE_TOL * max(1.0, abs(fstar)):
            continue
        H = np.array([[h.eval_complex(p.coords) for h in row] for row in hess])
        s = np.linalg.svd(H, compute_uv=False)
        if s.size and s[-1] <= tol * max(1.0, s[0]):
            return False
    return True


# -- copositivity --------------------------------------------------------------------

def _as_matrix(P) -> list[list[Fraction]]:
    M = [[as_fraction(x) for x in row] for row in P]
    n = len(M)
    if n == 0 or any(len(row) != n for row in M):
        raise GradientError("square matrix required")
    if any(M[i][j] != M[j][i] for i in range(n) for j in range(i)):
        raise GradientError("symmetric matrix required")
    return M


def principal_minors(M) -> dict:
    """Exact determinants of all principal submatrices, keyed by 0-based index tuples."""
    M = _as_matrix(M)
    n = len(M)
    if n > MAX_MINOR_SIZE:
        raise GradientError(f"{2**n - 1} principal minors for n = {n}; sample instead")
    out = {}
    for k in range(1, n + 1):
        for idx in itertools.combinations(range(n), k):
            out[idx] = exactla.determinant([[M[i][j] for j in idx] for i in idx])
    return out


def principal_minors_nonzero(M) -> tuple[bool, tuple | None]:
    """``(True, None)`` when every principal minor is nonzero, else ``(False, first vanishing index set)``."""
    for idx, det in principal_minors(M).items():
        if det == 0:
            return False, idx
    return True, None


def shifted_matrix(P, lam) -> list[list[Fraction]]:
    """``P + lam 11^T``."""
    lam = as_fraction(lam)
    return [[x + lam for x in row] for row in _as_matrix(P)]


def copositivity_polynomial(P, lam) -> Polynomial:
    """``sum_ij x_i^2 x_j^2 P_ij + lam (x_1^2 + ... + x_n^2 - 1)^2``."""
    M = _as_matrix(P)
    lam = as_fraction(lam)
    n = len(M)
    terms: dict = {}
    for i in range(n):
        for j in range(n):
            e = [0] * n
            e[i] += 2
            e[j] += 2
            terms[tuple(e)] = terms.get(tuple(e), Fraction(0)) + M[i][j]
    xs = Polynomial.variables(n)
    norm = sum((x * x for x in xs), Polynomial.constant(-1, n))
    return Polynomial(terms, n) + norm * norm * lam


@dataclass
class CopositivityInstance:
    P: list
    lam: Fraction
    F: Polynomial
    verdict: str
    certified_value: float
    order: int = 0
    status: str = ""
    minors_nonzero: bool = True
    vanishing_minor: tuple | None = None
    attempts: list = field(default_factory=list)  # (lambda, verdict, value) per escalation step

    def to_json(self) -> dict:
        return {
            "P": [[str(x) for x in row] for row in self.P],
            "lambda": str(self.lam),
            "Flambda": to_terms(self.F),
            "verdict": self.verdict,
            "certifiedValue": _num(self.certified_value),
            "order": self.order,
            "status": self.status,
            "minorsNonzero": self.minors_nonzero,
            "vanishingMinor": None if self.vanishing_minor is None else list(self.vanishing_minor),
            "attempts": [{"lambda": str(l), "verdict": v, "value": _num(x)} for l, v, x in self.attempts],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CopositivityInstance":
        P = [[Fraction(x) for x in row] for row in obj["P"]]
        vm = obj.get("vanishingMinor")
        return cls(
            P=P,
            lam=Fraction(obj["lambda"]),
            F=from_terms(obj["Flambda"], len(P)),
            verdict=obj["verdict"],
            certified_value=float(obj["certifiedValue"]),
            order=int(obj.get("order", 0)),
            status=obj.get("status", ""),
            minors_nonzero=bool(obj.get("minorsNonzero", True)),
            vanishing_minor=None if vm is None else tuple(vm),
            attempts=[(Fraction(a["lambda"]), a["verdict"], float(a["value"])) for a in obj.get("attempts", [])],
        )


def _num(x: float):
    if x == float("inf"):
        return "inf"
    if x == float("-inf"):
        return "-inf"
    return x


def _certify_once(M, lam, *, value_tol, tol, max_iter) -> CopositivityInstance:
    F = copositivity_polynomial(M, lam)
    ok, vanishing = principal_minors_nonzero(shifted_matrix(M, lam))
    d = gradient_order(F)
    sol = gradient_relaxation(F, d, tol=tol, max_iter=max_iter)
    value = sol.fd
    if not ok:
        verdict = INCONCLUSIVE
    elif sol.status == UNBOUNDED or value < -value_tol:
        verdict = NOT_COPOSITIVE
    else:
        verdict = COPOSITIVE
    return CopositivityInstance(M, Fraction(lam), F, verdict, value, d, sol.status, ok, vanishing)


def certify_copositivity(
    P,
    lam=None,
    *,
    value_tol: float = VALUE_TOL,
    tol: float = GAP_TOL,
    max_iter: int = MAX_ITER,
) -> CopositivityInstance:
    """Decide copositivity of ``P`` from the sign of the gradient relaxation of ``F_lam``.

    With ``lam`` given a single relaxation is solved.  Otherwise ``lam`` runs
    through 1, 4, 16, ... until two consecutive verdicts agree; if the cap
    is reached first the verdict is inconclusive.
    """
    M = _as_matrix(P)
    if lam is not None:
        lam = as_fraction(lam)
        if lam < 0:
            raise GradientError("lambda must be nonnegative")
        inst = _certify_once(M, lam, value_tol=value_tol, tol=tol, max_iter=max_iter)
        inst.attempts = [(inst.lam, inst.verdict, inst.certified_value)]
        return inst
    attempts = []
    prev = None
    lam = Fraction(LAMBDA_START)
    while lam <= LAMBDA_CAP:
        inst = _certify_once(M, lam, value_tol=value_tol, tol=tol, max_iter=max_iter)
        attempts.append((inst.lam, inst.verdict, inst.certified_value))
        if prev is not None and prev.verdict == inst.verdict:
            inst.attempts = attempts
            return inst
        prev = inst
        lam *= LAMBDA_FACTOR
    prev.verdict = INCONCLUSIVE
    prev.attempts = attempts
    return prev


__all__ = [
    "COPOSITIVE",
    "INCONCLUSIVE",
    "NOT_COPOSITIVE",
    "CopositivityInstance",
    "GradientError",
    "GradientProblem",
    "SdpError",
    "certify_copositivity",
    "check_gradient_assumption",
    "copositivity_polynomial",
    "critical_minimum",
    "gradient_relaxation",
    "hessian_nonsingular_at_minimizers",
    "multiplier_degrees",
    "principal_minors",
    "principal_minors_nonzero",
    "shifted_matrix",
]
