"""Command-line front end: ``sosbound {check,bound,certify,copositive,gradient} FILE``.

Exit codes: 0 success, 1 definite negative, 2 usage or parse error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

from .assumption import AssumptionError, AssumptionReport, check_at_infinity, full_report
from .certgen import Certificate, HypothesisError, ResidualReport, build_certificate, verify_certificate
from .degbound import DegreeBoundReport, gradient_order, sos_order
from .fields import as_fraction
from .gradpipe import (
    COPOSITIVE,
    INCONCLUSIVE,
    GradientError,
    certify_copositivity,
    check_gradient_assumption,
    gradient_relaxation,
)
from .groebner import GroebnerError
from .polycore import Polynomial, PolynomialError, from_terms, parse_polynomial, to_terms
from .sdp import GAP_TOL, MAX_ITER, OPTIMAL, SdpError, build_relaxation, hierarchy_sweep, solve

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

RESIDUAL_TOL = 1e-6


class InputError(ValueError):
    pass


# -- problem files ------------------------------------------------------------------

@dataclass
class ProblemFile:
    variables: list
    objective: Polynomial
    constraints: list

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def is_square(self) -> bool:
        return len(self.constraints) == self.nvars

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "objective": to_terms(self.objective),
            "constraints": [to_terms(g) for g in self.constraints],
        }


def _load_json(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _infer_nvars(objs) -> int:
    n = 0
    for obj in objs:
        if isinstance(obj, str):
            n = max(n, parse_polynomial(obj).nvars)
        elif isinstance(obj, list):
            n = max([n] + [len(t["e"]) for t in obj if isinstance(t, dict) and "e" in t])
    return max(n, 1)


def _poly(obj, variables, where: str) -> Polynomial:
    try:
        if isinstance(obj, str):
            return parse_polynomial(obj, variables)
        if isinstance(obj, list):
            p = from_terms(obj, len(variables))
            if p.nvars != len(variables):
                raise PolynomialError("exponent vector length differs from the variable count")
            return p
    except PolynomialError as exc:
        raise InputError(f"{where}: {exc}") from None
    except (TypeError, ValueError) as exc:
        raise InputError(f"{where}: {exc}") from None
    raise InputError(f"{where}: expected a string or a term list")


def load_problem(path: str) -> ProblemFile:
    """``{"variables": [...], "objective": poly, "constraints": [poly, ...]}``.

    A polynomial is a string such as ``"x1^2 - 1"`` or a term list
    ``[{"c": "3/2", "e": [2, 0]}, ...]``.  Without ``variables`` the names
    are ``x1..xn``.
    """
    obj = _load_json(path)
    if not isinstance(obj, dict) or "objective" not in obj:
        raise InputError(f"{path}: expected an object with an 'objective' field")
    cons = obj.get("constraints", [])
    if not isinstance(cons, list):
        raise InputError(f"{path}: 'constraints' must be a list")
    variables = obj.get("variables")
    if variables is None:
        try:
            n = _infer_nvars([obj["objective"]] + cons)
        except PolynomialError as exc:
            raise InputError(f"{path}: {exc}") from None
        variables = [f"x{i + 1}" for i in range(n)]
    elif not (isinstance(variables, list) and variables and all(isinstance(v, str) for v in variables)):
        raise InputError(f"{path}: 'variables' must be a nonempty list of names")
    f = _poly(obj["objective"], variables, f"{path}: objective")
    gens = [_poly(g, variables, f"{path}: constraint {i + 1}") for i, g in enumerate(cons)]
    return ProblemFile(list(variables), f, gens)


def load_matrix(path: str):
    """A dense symmetric matrix, either bare or as ``{"P": ..., "lambda": ...}``."""
    obj = _load_json(path)
    lam = None
    if isinstance(obj, dict):
        lam = obj.get("lambda")
        obj = obj.get("P", obj.get("matrix"))
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise InputError(f"{path}: expected a square matrix (list of rows)")
    try:
        M = [[as_fraction(x) for x in row] for row in obj]
        lam = None if lam is None else as_fraction(lam)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: {exc}") from None
    return M, lam


# -- reports ------------------------------------------------------------------------

@dataclass
class CertifyReport:
    mode: str  # "certified" or "relax-only"
    order: int
    values: list  # [{"order", "fd", "status", "traceGrowth"}]
    bound: DegreeBoundReport | None = None
    assumption: AssumptionReport | None = None
    certificate: Certificate | None = None
    residual: ResidualReport | None = None
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "order": self.order,
            "values": self.values,
            "bound": None if self.bound is None else self.bound.to_json(),
            "assumption": None if self.assumption is None else self.assumption.to_json(),
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "residual": None if self.residual is None else self.residual.to_json(),
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, obj: dict, nvars: int) -> "CertifyReport":
        return cls(
            mode=obj["mode"],
            order=int(obj["order"]),
            values=list(obj["values"]),
            bound=None if obj.get("bound") is None else DegreeBoundReport.from_json(obj["bound"]),
            assumption=None if obj.get("assumption") is None else AssumptionReport.from_json(obj["assumption"]),
            certificate=None if obj.get("certificate") is None else Certificate.from_json(obj["certificate"], nvars),
            residual=None if obj.get("residual") is None else ResidualReport.from_json(obj["residual"]),
            notes=list(obj.get("notes", [])),
        )


@dataclass
class GradientReport:
    bound: int
    order: int
    assumption: AssumptionReport
    value: float
    status: str
    trace_growth: bool = False

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "order": self.order,
            "assumption": self.assumption.to_json(),
            "value": _num(self.value),
            "status": self.status,
            "traceGrowth": self.trace_growth,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GradientReport":
        return cls(
            int(obj["bound"]),
            int(obj["order"]),
            AssumptionReport.from_json(obj["assumption"]),
            float(obj["value"]),
            obj["status"],
            bool(obj.get("traceGrowth", False)),
        )


def _num(x: float):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _value_entry(sol) -> dict:
    return {"order": sol.order, "fd": _num(sol.fd), "status": sol.status, "traceGrowth": sol.trace_growth}


# -- commands -----------------------------------------------------------------------

def _emit(args, report, lines):
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        for line in lines:
            print(line)


def _fmt_vec(v) -> str:
    def one(z):
        z = complex(z)
        return f"{z.real:.6g}" if abs(z.imag) < 1e-12 else f"{z.real:.6g}{z.imag:+.6g}j"

    return "(" + ", ".join(one(z) for z in v) + ")"


def cmd_check(args) -> int:
    prob = load_problem(args.file)
    if not prob.is_square:
        raise InputError("check needs a square system (as many constraints as variables)")
    rep = check_at_infinity(prob.constraints, seed=args.seed)
    lines = [f"no zeros at infinity: {'yes' if rep.holds_at_infinity else 'no'}"]
    if rep.witness is not None:
        lines.append(f"common zero of the top forms: {_fmt_vec(rep.witness)}")
    _emit(args, rep, lines)
    return EXIT_OK if rep.holds_at_infinity else EXIT_NEGATIVE


def cmd_bound(args) -> int:
    prob = load_problem(args.file)
    if not prob.is_square:
        raise InputError("bound needs a square system (as many constraints as variables)")
    rep = sos_order(prob.objective, prob.constraints)
    lines = [
        f"frak_n = {rep.frak_n}",
        f"Hilbert numerator coefficients: {list(rep.c_coeffs)}",
        f"relaxation order: {rep.sos_order} ({rep.tag})",
        f"deg h <= {rep.h_degree_cap}, deg(lambda_i g_i) <= {rep.multiplier_degree_cap}",
    ]
    _emit(args, rep, lines)
    return EXIT_OK


def _sdp_opts(args) -> dict:
    return {"tol": args.tol, "max_iter": args.max_iter}


def _floor(gens) -> int:
    return max((math.ceil(int(g.degree()) / 2) for g in gens if not g.is_zero()), default=0)


def cmd_certify(args) -> int:
    prob = load_problem(args.file)
    f, gens = prob.objective, prob.constraints
    if not prob.is_square:
        if args.order is None:
            raise InputError("relax-only mode (non-square system) needs --order")
        sol = solve(build_relaxation(f, gens, args.order), **_sdp_opts(args))
        rep = CertifyReport("relax-only", args.order, [_value_entry(sol)],
                            notes=["non-square system: no degree bound applies"])
        _emit(args, rep, [f"relax-only order {args.order}: f_d = {sol.fd:.10g} ({sol.status})"])
        return EXIT_OK if sol.status == OPTIMAL else EXIT_INCONCLUSIVE

    assumption = check_at_infinity(gens, seed=args.seed)
    if not assumption.holds_at_infinity and not args.force:
        rep = CertifyReport("certified", 0, [], assumption=assumption,
                            notes=["assumption fails: top forms share a nontrivial zero"])
        lines = ["assumption fails: top forms share a nontrivial zero"]
        if assumption.witness is not None:
            lines.append(f"witness: {_fmt_vec(assumption.witness)}")
        _emit(args, rep, lines)
        return EXIT_NEGATIVE
    bound = sos_order(f, gens, verified=assumption.holds_at_infinity)
    d = bound.sos_order if args.order is None else args.order
    lo = max(_floor(gens), 1)
    if d < lo:
        raise SdpError(f"relaxation order {d} below the floor {lo}")
    sweep = hierarchy_sweep(f, gens, lo, d, **_sdp_opts(args))
    sol = sweep[-1]
    notes = []
    if sol.trace_growth:
        notes.append("Gram trace growth: the optimum may not be attained at this order")
    if not assumption.holds_at_infinity:
        notes.append("forced: degree bound not guaranteed")
    try:
        full = full_report(f, gens, seed=args.seed)
        if full.singular_optimizers:
            notes.append("attainment not guaranteed: singular optimizer")
    except GroebnerError:
        pass

    cert = None
    if args.exact:
        try:
            cert = build_certificate(f, gens, seed=args.seed, at_infinity_ok=assumption.holds_at_infinity)
        except (HypothesisError, GroebnerError) as exc:
            notes.append(f"no square-root certificate: {exc}")
    elif math.isfinite(sol.fd):
        cert = Certificate(
            sol.fd, None, list(sol.multipliers), 0.0, False, exact=False,
            gram=sol.gram.tolist(), gram_monomials=[tuple(m) for m in sol.monomials],
            notes=["numerical SOS certificate from the relaxation"],
        )
    residual = None
    if cert is not None:
        residual = verify_certificate(f, gens, cert)
        cert.residual = residual.residual
        if not cert.exact:
            cert.degree_contract_met = residual.ok
    rep = CertifyReport("certified", d, [_value_entry(s) for s in sweep], bound, assumption, cert, residual, notes)
    if args.output and cert is not None:
        with open(args.output, "w") as fh:
            json.dump(cert.to_json(), fh, indent=2)

    lines = [f"f_{s.order} = {s.fd:.10g} ({s.status}{', trace growth' if s.trace_growth else ''})" for s in sweep]
    if cert is not None:
        lines.append(f"f* used = {cert.fstar}")
        if cert.h is not None:
            lines.append(f"h = {cert.h.to_string(prob.variables)}")
        for i, lam in enumerate(cert.multipliers):
            lines.append(f"lambda_{i + 1} = {lam.to_string(prob.variables)}")
    if residual is not None:
        lines.append(f"residual = {residual.residual:.3g}{' (exact zero)' if residual.exact_zero else ''}")
    lines.extend(notes)
    _emit(args, rep, lines)
    if residual is None:
        return EXIT_INCONCLUSIVE
    if residual.exact_zero or residual.residual <= RESIDUAL_TOL:
        return EXIT_OK
    return EXIT_INCONCLUSIVE


def cmd_copositive(args) -> int:
    M, lam = load_matrix(args.file)
    if args.lambda_ is not None:
        lam = as_fraction(args.lambda_)
    inst = certify_copositivity(M, lam, tol=args.tol, max_iter=args.max_iter)
    lines = [f"verdict: {inst.verdict}", f"lambda = {inst.lam}", f"F_lambda,d = {inst.certified_value:.10g} (order {inst.order})"]
    if not inst.minors_nonzero:
        lines.append(f"vanishing principal minor of P + lambda 11^T at indices {list(inst.vanishing_minor)}")
    _emit(args, inst, lines)
    if inst.verdict == COPOSITIVE:
        return EXIT_OK
    if inst.verdict == INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_NEGATIVE


def cmd_gradient(args) -> int:
    prob = load_problem(args.file)
    F = prob.objective
    assumption = check_gradient_assumption(F, seed=args.seed)
    bound = gradient_order(F)
    d = bound if args.order is None else args.order
    sol = gradient_relaxation(F, d, **_sdp_opts(args))
    rep = GradientReport(bound, d, assumption, sol.fd, sol.status, sol.trace_growth)
    lines = [
        f"gradient assumption: {'holds' if assumption.holds_at_infinity else 'fails'}",
        f"order bound: {bound}",
        f"F_{d} = {sol.fd:.10g} ({sol.status})",
    ]
    _emit(args, rep, lines)
    if not assumption.holds_at_infinity and not args.force:
        return EXIT_NEGATIVE
    return EXIT_OK if sol.status == OPTIMAL else EXIT_INCONCLUSIVE


COMMANDS = {
    "check": cmd_check,
    "bound": cmd_bound,
    "certify": cmd_certify,
    "copositive": cmd_copositive,
    "gradient": cmd_gradient,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--tol", type=float, default=GAP_TOL, help="SDP gap tolerance")
    common.add_argument("--max-iter", type=int, default=MAX_ITER, help="SDP iteration limit")
    common.add_argument("--seed", type=int, default=0, help="seed for random linear combinations")
    common.add_argument("--exact", action="store_true", help="exact square-root certificate")
    common.add_argument("--force", action="store_true", help="continue when the assumption fails")
    parser = _Parser(prog="sosbound", description="Degree bounds and certificates for SOS relaxations over ideals.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("file")
        if name in ("certify", "gradient"):
            p.add_argument("--order", type=int, default=None, help="relaxation order (default: the bound)")
        if name == "certify":
            p.add_argument("--output", "-o", default=None, help="write the certificate JSON here")
        if name == "copositive":
            p.add_argument("--lambda", dest="lambda_", default=None, help="fixed lambda (default: escalate)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (InputError, PolynomialError, AssumptionError, SdpError, GradientError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
