"""Checks for the two standing hypotheses: no zeros at infinity, and no singular optimizer.

The first is decided exactly.  The top forms ``g_i^inf`` have no common
nontrivial complex zero iff the homogeneous ideal they generate contains every
monomial of degree ``sum(deg g_i) - n + 1``.  That degree is the Macaulay
bound for a regular sequence, and a truncated homogeneous Groebner basis
computes the ideal exactly up to it.  No resultant value is ever produced;
the predicate is only exposed under the name ``resultant_nonzero``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .groebner import (
    GroebnerError,
    VarietyPoint,
    groebner_basis,
    ideal_quotient,
    solve_variety,
    standard_monomials,
)
from .polycore import Polynomial

WITNESS_TOL = 1e-8
VALUE_TOL = 1e-6


class AssumptionError(ValueError):
    pass


@dataclass
class AssumptionReport:
    holds_at_infinity: bool
    witness: tuple | None = None
    bezout_dim: int | None = None
    bezout_product: int | None = None
    singular_optimizers: list = field(default_factory=list)

    @property
    def resultant_nonzero(self) -> bool:
        return self.holds_at_infinity

    def to_json(self) -> dict:
        return {
            "resultantNonzero": self.holds_at_infinity,
            "witness": None if self.witness is None else [[z.real, z.imag] for z in self.witness],
            "bezoutDim": self.bezout_dim,
            "bezoutProduct": self.bezout_product,
            "singularOptimizers": [point_to_json(p) for p in self.singular_optimizers],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AssumptionReport":
        w = obj.get("witness")
        return cls(
            holds_at_infinity=bool(obj["resultantNonzero"]),
            witness=None if w is None else tuple(complex(a, b) for a, b in w),
            bezout_dim=obj.get("bezoutDim"),
            bezout_product=obj.get("bezoutProduct"),
            singular_optimizers=[point_from_json(p) for p in obj.get("singularOptimizers", [])],
        )


def point_to_json(p: VarietyPoint) -> dict:
    return {
        "coords": [[z.real, z.imag] for z in p.coords],
        "multiplicity": p.multiplicity,
        "isSingular": p.is_singular,
        "isReal": p.is_real,
    }


def point_from_json(obj: dict) -> VarietyPoint:
    return VarietyPoint(
        tuple(complex(a, b) for a, b in obj["coords"]),
        int(obj["multiplicity"]),
        bool(obj["isSingular"]),
        bool(obj["isReal"]),
    )


def _validate_square(gens: Sequence[Polynomial]):
    gens = list(gens)
    if not gens:
        raise AssumptionError("square system required")
    n = gens[0].nvars
    if len(gens) != n:
        raise AssumptionError(f"square system required ({len(gens)} generators, {n} variables)")
    if any(g.is_zero() for g in gens):
        raise AssumptionError("generators must be nonzero")
    return gens, n


def top_forms_have_no_common_zero(tops: Sequence[Polynomial]) -> bool:
    """Exact test that homogeneous ``tops`` (n forms in n variables) only vanish at 0."""
    n = tops[0].nvars
    top_deg = sum(int(t.degree()) for t in tops) - n + 1
    gb = groebner_basis(list(tops), max_degree=top_deg)
    if gb.is_unit:
        return True
    return not any(sum(m) == top_deg for m in standard_monomials(gb, max_degree=top_deg))


def _chart_points(tops, j, rng, tries=6):
    """Solutions of ``tops`` on the affine chart ``x_j = 1`` (a finite sample)."""
    n = tops[0].nvars
    keep = [i for i in range(n) if i != j]
    restricted = [t.restrict(keep, {j: 1}) for t in tops]
    restricted = [r for r in restricted if not r.is_zero()]
    m = n - 1
    if not restricted:
        # every form vanishes on the whole chart; any point will do
        return [tuple(0.0 for _ in range(m))]
    if any(r.degree() == 0 for r in restricted):
        return []
    for _ in range(tries):
        system = list(restricted)
        for _ in range(m + 1):
            qa = ideal_quotient(system)
            if qa.is_finite:
                if qa.dim == 0:
                    break
                return [p.coords for p in solve_variety(qa, system, seed=rng.randint(0, 10**6))]
            # positive dimensional: cut with a random hyperplane
            coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(m + 1)]
            xs = Polynomial.variables(m)
            cut = Polynomial.constant(coeffs[0], m)
            for c, x in zip(coeffs[1:], xs):
                cut = cut + x * c
            system.append(cut)
    return []


def _extract_witness(tops: Sequence[Polynomial], seed: int = 0):
    n = tops[0].nvars
    rng = random.Random(seed)
    for j in range(n):
        for pt in _chart_points(tops, j, rng):
            w = list(pt)
            w.insert(j, 1.0)
            v = np.array(w, dtype=complex)
            v = v / np.linalg.norm(v)
            scale = [max(1.0, t.max_abs_coefficient()) for t in tops]
            if all(abs(t.eval_complex(v)) <= WITNESS_TOL * s for t, s in zip(tops, scale)):
                return tuple(complex(z) for z in v)
    return None


def check_at_infinity(gens: Sequence[Polynomial], *, seed: int = 0) -> AssumptionReport:
    """Decide whether the top forms of ``gens`` have no common nontrivial complex zero."""
    gens, n = _validate_square(gens)
    tops = [g.top_form() for g in gens]
    product = math.prod(int(g.degree()) for g in gens)
    holds = top_forms_have_no_common_zero(tops)
    witness = None
    if not holds:
        witness = _extract_witness(tops, seed)
    return AssumptionReport(holds, witness, None, product)


def check_bezout(gens: Sequence[Polynomial]) -> tuple[int, int, bool]:
    """``(dim R/I, prod deg g_i, equal)``; equality is equivalent to no zeros at infinity."""
    gens, _ = _validate_square(gens)
    qa = ideal_quotient(gens)
    if not qa.is_finite:
        raise GroebnerError("ideal is positive dimensional")
    product = math.prod(int(g.degree()) for g in gens)
    return qa.dim, product, qa.dim == product


def check_singular_optimizers(
    f: Polynomial, points: Sequence[VarietyPoint], fstar, tol: float = VALUE_TOL
) -> list[VarietyPoint]:
    """Singular points of the variety where ``f`` (complex-valued there) equals ``fstar``."""
    fstar = complex(fstar)
    return [p for p in points if p.is_singular and abs(f.eval_complex(p.coords) - fstar) <= tol]


def real_minimum(f: Polynomial, points: Sequence[VarietyPoint]):
    """Smallest value of ``f`` over the real points, or None when there are none."""
    vals = [f.eval_complex(p.real_coords()).real for p in points if p.is_real]
    return min(vals) if vals else None


def full_report(f: Polynomial, gens: Sequence[Polynomial], fstar=None, *, seed: int = 0) -> AssumptionReport:
    """Both hypotheses in one report.  ``fstar`` defaults to the real-variety minimum."""
    rep = check_at_infinity(gens, seed=seed)
    qa = ideal_quotient(list(gens))
    if qa.is_finite:
        rep.bezout_dim = qa.dim
        if qa.dim > 0:
            pts = solve_variety(qa, list(gens), seed=seed)
            if fstar is None:
                fstar = real_minimum(f, pts)
            if fstar is not None:
                rep.singular_optimizers = check_singular_optimizers(f, pts, fstar)
    return rep
