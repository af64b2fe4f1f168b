"""Closed-form degree bounds for the SOS relaxation of a square complete intersection."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .polycore import Polynomial


class DegreeBoundError(ValueError):
    pass


@dataclass(frozen=True)
class DegreeBoundReport:
    frak_n: int  # sum(deg g_i) - n
    c_coeffs: tuple  # Hilbert numerator coefficients c_0..c_frak_n
    sos_order: int
    multiplier_degree_cap: int  # cap on deg(lambda_i * g_i)
    h_degree_cap: int
    verified: bool = True

    @property
    def tag(self) -> str:
        return "verified" if self.verified else "unverified"

    def to_json(self) -> dict:
        return {
            "frakN": self.frak_n,
            "cCoeffs": list(self.c_coeffs),
            "sosOrder": self.sos_order,
            "multiplierDegreeCap": self.multiplier_degree_cap,
            "hDegreeCap": self.h_degree_cap,
            "status": self.tag,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DegreeBoundReport":
        return cls(
            obj["frakN"],
            tuple(obj["cCoeffs"]),
            obj["sosOrder"],
            obj["multiplierDegreeCap"],
            obj["hDegreeCap"],
            obj.get("status", "verified") == "verified",
        )


def _check_degrees(degrees: Sequence[int]) -> list[int]:
    degrees = [int(d) for d in degrees]
    if not degrees:
        raise DegreeBoundError("empty degree list")
    if any(d < 1 for d in degrees):
        raise DegreeBoundError("all degrees must be at least 1")
    return degrees


def frak_n(degrees: Sequence[int]) -> int:
    degrees = _check_degrees(degrees)
    return sum(degrees) - len(degrees)


def hilbert_coeffs(degrees: Sequence[int]) -> list[int]:
    """Coefficients of prod_i (1 + t + ... + t^(d_i - 1))."""
    degrees = _check_degrees(degrees)
    out = [1]
    for d in degrees:
        nxt = [0] * (len(out) + d - 1)
        for i, c in enumerate(out):
            for j in range(d):
                nxt[i + j] += c
        out = nxt
    return out


def dim_graded_piece(degrees: Sequence[int], d: int) -> int:
    """Dimension of the degree-d piece of S/<homogenized g>, i.e. sum_{k<=d} c_k."""
    if d < 0:
        raise DegreeBoundError("degree must be non-negative")
    return sum(hilbert_coeffs(degrees)[: d + 1])


def sos_order(f: Polynomial, gens: Sequence[Polynomial], *, verified: bool | None = None) -> DegreeBoundReport:
    """Relaxation order max(frak_n, ceil(deg f / 2)) with the certificate's degree caps.

    ``verified`` records whether the no-zeros-at-infinity hypothesis was
    checked; when None it is checked here.
    """
    degrees = [int(g.degree()) for g in gens]
    nn = frak_n(degrees)
    df = max(int(f.degree()), 0) if not f.is_zero() else 0
    if verified is None:
        from .assumption import check_at_infinity

        verified = check_at_infinity(gens).holds_at_infinity
    return DegreeBoundReport(
        frak_n=nn,
        c_coeffs=tuple(hilbert_coeffs(degrees)),
        sos_order=max(nn, -(-df // 2)),
        multiplier_degree_cap=max(2 * nn, df),
        h_degree_cap=nn,
        verified=verified,
    )


def gradient_order(F: Polynomial) -> int:
    """max(n (deg F - 2), ceil(deg F / 2)) for the gradient-ideal relaxation."""
    deg = F.degree()
    if deg < 2:
        raise DegreeBoundError("gradient bound needs deg F >= 2")
    deg = int(deg)
    return max(F.nvars * (deg - 2), math.ceil(deg / 2))
