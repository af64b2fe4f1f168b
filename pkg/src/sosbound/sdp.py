"""Lasserre's SOS relaxation over an ideal and a dense primal-dual interior-point solver.

The relaxation of order ``d`` is

    f_d = max c   s.t.   f - c = sum_i lambda_i g_i + m^T X m,   X PSD,
                          deg(lambda_i g_i) <= 2d,

with ``m`` the monomials of degree ``<= d`` in graded reverse lexicographic
order.  The multipliers are eliminated exactly: if the rows of ``Q`` span
the left null space of the matrix ``G`` whose columns are the coefficient
vectors of ``x^beta g_i``, the identity holds for some ``lambda`` iff
``Q (coef(f) - c e_1 - coef(m^T X m)) = 0``.  One row ``q0`` of ``Q`` has
constant entry 1 and the others have constant entry 0, so ``c`` can be
solved for and the problem becomes the standard-form SDP

    min <C, X>  s.t.  <A_k, X> = b_k,  X PSD,    f_d = q0 . coef(f) - min.

Any vector ``v`` whose polynomial ``p_v`` satisfies ``p_v m_j`` in the
column span of ``G`` for every ``j`` lies in the kernel of every dual slack
matrix, so the problem is restricted to the orthogonal complement of those
vectors before solving (one step of facial reduction).

Status names refer to the minimization (moment) view of ``f_d``:
``unbounded-below`` means ``f_d = -inf`` (no SOS representation exists) and
``infeasible`` means ``f_d = +inf`` (no feasible moment functional; the
constraints have no real solution).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from . import exactla
from .polycore import Polynomial, monomials_up_to

GAP_TOL = 1e-8
MAX_ITER = 200
STEP_FRACTION = 0.98
TRACE_GROWTH_RATIO = 1e3
DIVERGENCE = 1e10
MP_DPS = 40
MP_BUDGET = 2 * 10**5  # r^3 * m above which the extended-precision rerun is skipped

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded-below"
MAX_ITER_STATUS = "max-iter"


class SdpError(ValueError):
    pass


def moment_matrix_size(n: int, d: int) -> int:
    return math.comb(n + d, d)


@dataclass
class SdpProblem:
    f: Polynomial
    gens: tuple
    order: int
    monomials: tuple  # Gram basis, degree <= d
    coeff_monomials: tuple  # coefficient space, degree <= 2d
    constraint_matrices: list  # full-size symmetric A_k
    rhs: np.ndarray
    objective: np.ndarray  # full-size symmetric C
    offset: float  # f_d = offset - <C, X>
    face: np.ndarray  # orthonormal columns; X = face @ Y @ face.T
    G: np.ndarray
    localizing_blocks: list  # (generator index, multiplier monomials, first column of G)
    f_vector: np.ndarray
    trivial_status: str | None = None
    reason: str = ""
    exact: dict | None = None  # rational reduction data for the high-precision path

    @property
    def moment_matrix_size(self) -> int:
        return len(self.monomials)

    @property
    def objective_vector(self) -> np.ndarray:
        return self.objective.ravel()

    def reduced(self):
        """``(C, [A_k], b)`` restricted to the face with independent constraints."""
        U = self.face
        C = U.T @ self.objective @ U
        As = [U.T @ A @ U for A in self.constraint_matrices]
        b = np.array(self.rhs, dtype=float)
        if not As:
            return C, [], b
        vecs = np.array([A.ravel() for A in As])
        u, s, vt = np.linalg.svd(vecs, full_matrices=False)
        keep = s > 1e-10 * max(1.0, s[0]) if s.size else np.zeros(0, bool)
        T = (u[:, keep] / s[keep]).T  # rows combine the original constraints
        new_b = T @ b
        # consistency: b must lie in the span the dependent constraints allow
        resid = b - u[:, keep] @ (u[:, keep].T @ b)
        if np.linalg.norm(resid) > 1e-8 * (1 + np.linalg.norm(b)):
            raise _Inconsistent()
        new_As = [0.5 * (M + M.T) for M in (vt[keep].reshape(-1, *C.shape))]
        return C, new_As, new_b

    def reduced_mp(self, dps: int):
        """Same as :meth:`reduced`, built from the exact data in mpmath at ``dps`` digits."""
        ex = self.exact
        N = len(self.monomials)
        P = ex["prod_index"]
        with mpmath.workdps(dps):
            comp = exactla.nullspace(ex["W"], N) if ex["W"] else exactla.identity(N)
            cols = []
            for v in comp:  # modified Gram-Schmidt
                w = mpmath.matrix([_mpq(x) for x in v])
                for u in cols:
                    w -= u * mpmath.fdot(list(u), list(w))
                cols.append(w / mpmath.norm(w))
            r = len(cols)
            U = mpmath.matrix(N, r)
            for j, c in enumerate(cols):
                for i in range(N):
                    U[i, j] = c[i]

            def restrict(q):
                M = mpmath.matrix([[_mpq(q[P[i][j]]) for j in range(N)] for i in range(N)])
                return U.T * M * U

            C = restrict(ex["q0"])
            offset = sum((a * b for a, b in zip(ex["q0"], ex["fvec"])), Fraction(0))
            tol = mpmath.mpf(10) ** (-(dps // 2))
            basis, As, b = [], [], []
            for q in ex["rest"]:
                A = restrict(q)
                bk = _mpq(sum((a * c for a, c in zip(q, ex["fvec"])), Fraction(0)))
                v = list(A)
                for u, Au, bu in basis:
                    c = mpmath.fdot(u, v)
                    v = [x - c * y for x, y in zip(v, u)]
                    A = A - Au * c
                    bk -= c * bu
                nv = mpmath.sqrt(mpmath.fdot(v, v))
                if nv > tol:
                    basis.append(([x / nv for x in v], A / nv, bk / nv))
                    As.append((A + A.T) / (2 * nv))
                    b.append(bk / nv)
                elif abs(bk) > tol:
                    raise _Inconsistent()
            return C, As, mpmath.matrix(b) if b else mpmath.matrix(0, 1), offset, U

    def to_sdpa(self) -> str:
        """SDPA sparse text of the reduced problem (dual form, see README)."""
        C, As, b = self.reduced()
        s = C.shape[0]
        lines = [f"* f_d = {self.offset:.17g} + optimal value", f"{len(As)} = m", "1 = nblocks", f"{s} = block sizes"]
        lines.append(" ".join(f"{-v:.17g}" for v in b))
        for k, M in enumerate([-C] + [-A for A in As]):
            for i in range(s):
                for j in range(i, s):
                    if abs(M[i, j]) > 0:
                        lines.append(f"{k} 1 {i + 1} {j + 1} {M[i, j]:.17g}")
        return "\n".join(lines) + "\n"


class _Inconsistent(Exception):
    pass


def _mpq(x) -> mpmath.mpf:
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator if x.denominator != 1 else mpmath.mpf(x.numerator)


def _coeff_vector(p: Polynomial, index: dict, size: int) -> list:
    v = [Fraction(0)] * size
    for e, c in p.terms.items():
        v[index[e]] = Fraction(c)
    return v


def build_relaxation(
    f: Polynomial,
    gens: Sequence[Polynomial],
    d: int,
    *,
    multiplier_degrees: Sequence[int] | None = None,
) -> SdpProblem:
    """SOS relaxation of order ``d``.  ``multiplier_degrees`` overrides ``2d - deg g_i``."""
    gens = list(gens)
    n = f.nvars
    floor = max((math.ceil(int(g.degree()) / 2) for g in gens if not g.is_zero()), default=0)
    if d < floor:
        raise SdpError(f"relaxation order {d} below the floor {floor}")
    if not f.is_exact or any(not g.is_exact for g in gens):
        raise SdpError("exact coefficients required")
    basis = tuple(monomials_up_to(n, d))
    coeffs = tuple(monomials_up_to(n, 2 * d))
    index = {m: i for i, m in enumerate(coeffs)}
    K = len(coeffs)
    N = len(basis)
    const = index[(0,) * n]

    # columns x^beta g_i
    cols = []
    blocks = []
    for i, g in enumerate(gens):
        if g.is_zero():
            continue
        cap = (2 * d - int(g.degree())) if multiplier_degrees is None else int(multiplier_degrees[i])
        mons = tuple(monomials_up_to(n, cap)) if cap >= 0 else ()
        blocks.append((i, mons, len(cols)))
        for beta in mons:
            cols.append(_coeff_vector(g * Polynomial({beta: 1}, n), index, K))
    G_exact = exactla.transpose(cols) if cols else [[Fraction(0)] * 0 for _ in range(K)]

    empty = np.zeros((N, N))
    base = dict(
        f=f, gens=tuple(gens), order=d, monomials=basis, coeff_monomials=coeffs,
        G=np.array([[float(x) for x in row] for row in G_exact]) if cols else np.zeros((K, 0)),
        localizing_blocks=blocks,
    )
    if f.degree() > 2 * d:
        return SdpProblem(
            **base, constraint_matrices=[], rhs=np.zeros(0), objective=empty, offset=-math.inf,
            face=np.eye(N), f_vector=np.zeros(K), trivial_status=UNBOUNDED,
            reason="deg f exceeds 2d: no representation at this order",
        )
    fvec_exact = _coeff_vector(f, index, K)

    # exact left null space of G, normalized on the constant entry
    Q = exactla.nullspace(exactla.transpose(G_exact), K) if cols else exactla.identity(K)
    pivot = next((r for r in Q if r[const] != 0), None)
    if pivot is None:
        return SdpProblem(
            **base, constraint_matrices=[], rhs=np.zeros(0), objective=empty, offset=math.inf,
            face=np.eye(N), f_vector=np.array([float(x) for x in fvec_exact]),
            trivial_status=INFEASIBLE, reason="1 lies in the truncated ideal: no real solutions",
        )
    q0 = [x / pivot[const] for x in pivot]
    rest = [[a - r[const] * b for a, b in zip(r, q0)] for r in Q if r is not pivot]

    # facial reduction: v with Q . coef(p_v m_j) = 0 for all j
    prod_index = [[index[tuple(a + b for a, b in zip(mi, mj))] for mj in basis] for mi in basis]
    Qall = [q0] + rest
    rows = []
    for j in range(N):
        for q in Qall:
            rows.append([q[prod_index[i][j]] for i in range(N)])
    W = exactla.nullspace(rows, N)
    face = _orthonormal_complement(W, N)

    # float constraint data
    Qf = np.array([[float(x) for x in r] for r in rest]) if rest else np.zeros((0, K))
    if Qf.shape[0]:
        u, s, vt = np.linalg.svd(Qf, full_matrices=False)
        Qf = vt[s > 1e-12 * s[0]]
    q0f = np.array([float(x) for x in q0])
    if Qf.shape[0]:
        q0f = q0f - Qf.T @ (Qf @ q0f)
    fvec = np.array([float(x) for x in fvec_exact])
    P = np.array(prod_index)
    objective = q0f[P]
    As = [q[P] for q in Qf]
    rhs = Qf @ fvec if Qf.shape[0] else np.zeros(0)
    return SdpProblem(
        **base, constraint_matrices=As, rhs=rhs, objective=objective,
        offset=float(q0f @ fvec), face=face, f_vector=fvec,
        exact=dict(q0=q0, rest=rest, W=W, prod_index=prod_index, fvec=fvec_exact),
    )


def _orthonormal_complement(W: list, N: int) -> np.ndarray:
    if not W:
        return np.eye(N)
    Wf = np.array([[float(x) for x in w] for w in W]).T  # N x dim W
    u, s, _ = np.linalg.svd(Wf, full_matrices=True)
    r = int(np.sum(s > 1e-12 * s[0]))
    return u[:, r:]


# -- solution types -----------------------------------------------------------------

@dataclass
class SdpSolution:
    fd: float
    gram: np.ndarray
    multipliers: list
    status: str
    duality_gap: float
    iterations: int = 0
    primal_infeasibility: float = 0.0
    dual_infeasibility: float = 0.0
    trace_history: list = field(default_factory=list)
    trace_growth: bool = False
    monomials: tuple = ()
    order: int = 0
    reason: str = ""

    @property
    def min_eigenvalue(self) -> float:
        if self.gram.size == 0:
            return 0.0
        return float(np.linalg.eigvalsh(self.gram).min())

    def to_json(self) -> dict:
        from .polycore import to_terms

        return {
            "fd": _float_json(self.fd),
            "status": self.status,
            "dualityGap": self.duality_gap,
            "iterations": self.iterations,
            "order": self.order,
            "traceGrowth": self.trace_growth,
            "gram": self.gram.tolist(),
            "monomials": [list(m) for m in self.monomials],
            "multipliers": [to_terms(p) for p in self.multipliers],
            "reason": self.reason,
        }

    @classmethod
    def from_json(cls, obj: dict, nvars: int) -> "SdpSolution":
        from .polycore import from_terms

        return cls(
            fd=float(obj["fd"]),
            gram=np.array(obj["gram"], dtype=float),
            multipliers=[from_terms(t, nvars) for t in obj["multipliers"]],
            status=obj["status"],
            duality_gap=float(obj["dualityGap"]),
            iterations=int(obj.get("iterations", 0)),
            trace_growth=bool(obj.get("traceGrowth", False)),
            monomials=tuple(tuple(m) for m in obj.get("monomials", [])),
            order=int(obj.get("order", 0)),
            reason=obj.get("reason", ""),
        )


def _float_json(x: float):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


# -- interior point ------------------------------------------------------------------------

class _NotPD(Exception):
    pass


class _NumpyOps:
    """Dense float64 linear algebra for the interior-point loop."""

    def __init__(self, As):
        self.As = As
        s = As[0].shape[0] if As else 0
        self.Avec = np.array([A.ravel() for A in As]) if As else np.zeros((0, s * s))

    eye = staticmethod(lambda s: np.eye(s))
    sqrt = staticmethod(math.sqrt)

    @staticmethod
    def inner(A, B):
        return float(np.sum(A * B))

    @staticmethod
    def sym(A):
        return 0.5 * (A + A.T)

    @staticmethod
    def trace(A):
        return float(np.trace(A))

    @staticmethod
    def norm(v):
        return float(np.linalg.norm(v))

    def A(self, M):
        return self.Avec @ M.ravel()

    def AT(self, y, s):
        return (self.Avec.T @ y).reshape(s, s) if len(y) else np.zeros((s, s))

    @staticmethod
    def chol(A):
        try:
            return np.linalg.cholesky(A)
        except np.linalg.LinAlgError:
            raise _NotPD() from None

    @staticmethod
    def spd_inverse(A):
        L = np.linalg.inv(_NumpyOps.chol(A))
        out = L.T @ L
        return 0.5 * (out + out.T)

    @staticmethod
    def max_step(X, dX):
        L = np.linalg.inv(np.linalg.cholesky(X))
        M = L @ dX @ L.T
        lam = np.linalg.eigvalsh(0.5 * (M + M.T)).min()
        return math.inf if lam >= 0 else -1.0 / lam

    def schur(self, X, Zinv):
        m = len(self.As)
        M = np.empty((m, m))
        for l, A in enumerate(self.As):
            M[:, l] = self.Avec @ (X @ A @ Zinv).ravel()
        M = 0.5 * (M + M.T)
        try:
            L = np.linalg.cholesky(M)
            return lambda r: np.linalg.solve(L.T, np.linalg.solve(L, r))
        except np.linalg.LinAlgError:
            P = np.linalg.pinv(M)
            return lambda r: P @ r

    @staticmethod
    def vec(xs):
        return np.array(xs, dtype=float)

    @staticmethod
    def dot(a, b):
        return float(a @ b)

    @staticmethod
    def to_float(M):
        return np.array(M, dtype=float)


class _MpOps:
    """The same operations in mpmath at the working precision."""

    def __init__(self, As):
        self.As = As
        self.flat = [list(A) for A in As]

    eye = staticmethod(lambda s: mpmath.eye(s))
    sqrt = staticmethod(mpmath.sqrt)

    @staticmethod
    def inner(A, B):
        return mpmath.fdot(list(A), list(B))

    @staticmethod
    def sym(A):
        return (A + A.T) * mpmath.mpf(0.5)

    @staticmethod
    def trace(A):
        return float(sum(A[i, i] for i in range(A.rows)))

    @staticmethod
    def norm(v):
        return mpmath.norm(v) if len(v) else mpmath.mpf(0)

    def A(self, M):
        flat = list(M)
        return mpmath.matrix([mpmath.fdot(a, flat) for a in self.flat]) if self.flat else mpmath.matrix(0, 1)

    def AT(self, y, s):
        out = mpmath.zeros(s, s)
        for yk, A in zip(y, self.As):
            out += A * yk
        return out

    @staticmethod
    def chol(A):
        try:
            return mpmath.cholesky(A)
        except (ValueError, ZeroDivisionError):
            raise _NotPD() from None

    @staticmethod
    def spd_inverse(A):
        L = _MpOps.chol(A) ** -1
        out = L.T * L
        return (out + out.T) * mpmath.mpf(0.5)

    @staticmethod
    def max_step(X, dX):
        L = mpmath.cholesky(X) ** -1
        M = L * dX * L.T
        lam = min(mpmath.eigsy((M + M.T) * mpmath.mpf(0.5), eigvals_only=True))
        return math.inf if lam >= 0 else float(-1 / lam)

    def schur(self, X, Zinv):
        m = len(self.As)
        M = mpmath.matrix(m, m)
        for l, A in enumerate(self.As):
            T = list(X * A * Zinv)
            for k in range(m):
                M[k, l] = mpmath.fdot(self.flat[k], T)
        M = (M + M.T) * mpmath.mpf(0.5)
        try:
            L = mpmath.cholesky(M)
            return lambda r: mpmath.cholesky_solve(M, r) if L is not None else None
        except (ValueError, ZeroDivisionError):
            return lambda r: mpmath.lu_solve(M, r)

    @staticmethod
    def vec(xs):
        return mpmath.matrix(list(xs))

    @staticmethod
    def dot(a, b):
        return mpmath.fdot(list(a), list(b))

    @staticmethod
    def to_float(M):
        return np.array(M.tolist(), dtype=float)


@dataclass
class _IpmResult:
    X: object
    y: object
    Z: object
    status: str
    gap: float
    iterations: int
    pinf: float
    dinf: float
    traces: list
    pobj: float = 0.0
    dobj: float = 0.0


def interior_point(C, As, b, *, tol=GAP_TOL, max_iter=MAX_ITER, step_fraction=STEP_FRACTION, ops=None) -> _IpmResult:
    """Infeasible-start primal-dual method (HKM direction, Mehrotra predictor-corrector).

    Solves ``min <C,X> s.t. <A_k,X> = b_k, X PSD`` and its dual
    ``max b.y s.t. C - sum y_k A_k = Z PSD``.  ``ops`` selects the
    arithmetic (float64 by default, or mpmath).
    """
    ops = ops or _NumpyOps(As)
    s = C.rows if hasattr(C, "rows") else C.shape[0]
    m = len(As)
    normb = float(ops.norm(b))
    normC = float(ops.norm(C))
    normsA = [float(ops.norm(A)) for A in As]
    xi = max(10.0, math.sqrt(s), s * max([(1 + abs(float(bk))) / (1 + na) for bk, na in zip(b, normsA)] + [0.0]))
    eta = max(10.0, math.sqrt(s), max(normsA + [0.0]), normC)
    X = ops.eye(s) * xi
    Z = ops.eye(s) * eta
    y = ops.vec([0] * m)
    traces = []
    status = MAX_ITER_STATUS
    best = None
    scale = 1 + normb + normC
    it = 0
    for it in range(max_iter + 1):
        Rp = b - ops.A(X)
        Rd = C - Z - ops.AT(y, s)
        pobj = ops.inner(C, X)
        dobj = ops.dot(b, y) if m else 0.0
        mu = ops.inner(X, Z) / s
        # absolute gaps: consecutive orders must agree to 2 * tol in value
        relgap = float(abs(pobj - dobj))
        cgap = float(s * mu)
        pinf = float(ops.norm(Rp)) / (1 + normb) if m else 0.0
        dinf = float(ops.norm(Rd)) / (1 + normC)
        traces.append(ops.trace(X))
        score = max(relgap, cgap, pinf, dinf)
        if best is None or score < best[0]:
            best = (score, X, y, Z, pinf, dinf, max(relgap, cgap), float(pobj), float(dobj))
        if score <= tol:
            status = OPTIMAL
            break
        if float(dobj) > DIVERGENCE * scale and dinf <= 1e-6:
            status = UNBOUNDED  # primal (SOS) infeasible: f_d = -inf
            break
        if float(pobj) < -DIVERGENCE * scale and pinf <= 1e-6:
            status = INFEASIBLE  # moment side infeasible: f_d = +inf
            break
        if it == max_iter:
            break
        try:
            Zinv = ops.spd_inverse(Z)
        except _NotPD:
            break
        msolve = ops.schur(X, Zinv) if m else None
        XRdZ = X * Rd * Zinv if isinstance(ops, _MpOps) else X @ Rd @ Zinv
        mul = (lambda P, Q: P * Q) if isinstance(ops, _MpOps) else (lambda P, Q: P @ Q)

        def direction(Rc):
            dy = msolve(Rp - ops.A(Rc) + ops.A(XRdZ)) if m else ops.vec([])
            dZ = ops.sym(Rd - ops.AT(dy, s))
            dX = ops.sym(Rc - mul(mul(X, dZ), Zinv))
            return dX, dy, dZ

        try:
            dXa, dya, dZa = direction(X * -1)
            ap = min(1.0, ops.max_step(X, dXa))
            ad = min(1.0, ops.max_step(Z, dZa))
            mu_aff = ops.inner(X + dXa * ap, Z + dZa * ad) / s
            sigma = min(1.0, float(mu_aff / mu) ** 3) if mu > 0 else 0.0
            Rc = Zinv * (sigma * mu) - X - mul(mul(dXa, dZa), Zinv)
            dX, dy, dZ = direction(Rc)
            ap = min(1.0, step_fraction * ops.max_step(X, dX))
            ad = min(1.0, step_fraction * ops.max_step(Z, dZ))
        except (_NotPD, np.linalg.LinAlgError, ValueError, ZeroDivisionError):
            break
        X = ops.sym(X + dX * ap)
        y = y + dy * ad
        Z = ops.sym(Z + dZ * ad)
    if status == MAX_ITER_STATUS and best is not None:
        _, X, y, Z, pinf, dinf, gap, pobj, dobj = best
    else:
        gap = max(relgap, cgap)
    return _IpmResult(X, y, Z, status, float(gap), it, pinf, dinf, traces, float(pobj), float(dobj))


def _trace_growth(traces: list) -> bool:
    if len(traces) < 2:
        return False
    low = min(traces)
    return traces[-1] > TRACE_GROWTH_RATIO * max(low, 1e-300) and traces[-1] > traces[0]


def solve(
    prob: SdpProblem,
    *,
    tol: float = GAP_TOL,
    max_iter: int = MAX_ITER,
    step_fraction: float = STEP_FRACTION,
) -> SdpSolution:
    """Solve the relaxation; ``fd`` is the SOS lower bound at the returned iterate."""
    N = prob.moment_matrix_size
    n = prob.f.nvars
    zero_mult = [Polynomial.zero(n) for _ in prob.gens]
    if prob.trivial_status is not None:
        return SdpSolution(prob.offset, np.zeros((N, N)), zero_mult, prob.trivial_status, 0.0,
                           monomials=prob.monomials, order=prob.order, reason=prob.reason)
    try:
        C, As, b = prob.reduced()
    except _Inconsistent:
        return SdpSolution(-math.inf, np.zeros((N, N)), zero_mult, UNBOUNDED, 0.0,
                           monomials=prob.monomials, order=prob.order,
                           reason="coefficient constraints inconsistent on the face")
    U = prob.face
    r = C.shape[0]
    if r == 0 or not As:
        # no free constraints: the optimum is Y = 0 when C is PSD on the face
        lam = np.linalg.eigvalsh(C).min() if r else 0.0
        if lam < -tol:
            return SdpSolution(math.inf, np.zeros((N, N)), zero_mult, INFEASIBLE, 0.0,
                               monomials=prob.monomials, order=prob.order)
        Y = np.zeros((r, r))
        res = _IpmResult(Y, np.zeros(0), C, OPTIMAL, 0.0, 0, 0.0, 0.0, [0.0])
    else:
        res = interior_point(C, As, b, tol=tol, max_iter=max_iter, step_fraction=step_fraction)
    growth = _trace_growth(res.traces)
    fd = None
    if (res.status == MAX_ITER_STATUS or growth) and prob.exact is not None and r**3 * max(len(As), 1) <= MP_BUDGET:
        hi = _solve_mp(prob, tol, max_iter, step_fraction)
        if hi is not None and (hi[0].status == OPTIMAL or res.status != OPTIMAL):
            res, fd, U = hi
            growth = growth or _trace_growth(res.traces)
    gram = U @ res.X @ U.T
    gram = 0.5 * (gram + gram.T)
    if res.status == UNBOUNDED:
        fd = -math.inf
    elif res.status == INFEASIBLE:
        fd = math.inf
    elif fd is None:
        fd = prob.offset - float(np.sum(prob.objective * gram))
    multipliers = _multipliers(prob, gram, fd) if math.isfinite(fd) else zero_mult
    return SdpSolution(
        fd=fd,
        gram=gram,
        multipliers=multipliers,
        status=res.status,
        duality_gap=float(res.gap),
        iterations=res.iterations,
        primal_infeasibility=float(res.pinf),
        dual_infeasibility=float(res.dinf),
        trace_history=res.traces,
        trace_growth=growth,
        monomials=prob.monomials,
        order=prob.order,
    )


def _solve_mp(prob: SdpProblem, tol: float, max_iter: int, step_fraction: float):
    """Rerun in extended precision; returns ``(result, fd, face)`` with float fields, or None."""
    with mpmath.workdps(MP_DPS):
        try:
            C, As, b, offset, U = prob.reduced_mp(MP_DPS)
        except _Inconsistent:
            return None
        if not As:
            return None
        res = interior_point(C, As, b, tol=tol * 1e-2, max_iter=max_iter,
                             step_fraction=step_fraction, ops=_MpOps(As))
        fd = float(_mpq(offset) - _MpOps.inner(C, res.X))
        res.X = _MpOps.to_float(res.X)
        res.Z = _MpOps.to_float(res.Z)
        res.y = np.array([float(v) for v in res.y])
        return res, fd, _MpOps.to_float(U)


def gram_coefficients(prob: SdpProblem, gram: np.ndarray) -> np.ndarray:
    """Coefficient vector of ``m^T gram m`` in the coefficient space."""
    out = np.zeros(len(prob.coeff_monomials))
    index = {m: i for i, m in enumerate(prob.coeff_monomials)}
    for i, mi in enumerate(prob.monomials):
        for j, mj in enumerate(prob.monomials):
            out[index[tuple(a + b for a, b in zip(mi, mj))]] += gram[i, j]
    return out


def _multipliers(prob: SdpProblem, gram: np.ndarray, fd: float) -> list:
    n = prob.f.nvars
    target = prob.f_vector - gram_coefficients(prob, gram)
    target[prob.coeff_monomials.index((0,) * n)] -= fd
    out = [Polynomial.zero(n) for _ in prob.gens]
    if prob.G.shape[1] == 0:
        return out
    lam, *_ = np.linalg.lstsq(prob.G, target, rcond=None)
    for i, mons, start in prob.localizing_blocks:
        terms = {m: float(lam[start + k]) for k, m in enumerate(mons) if lam[start + k] != 0}
        out[i] = Polynomial(terms, n)
    return out


def relax(f, gens, d, **opts) -> SdpSolution:
    return solve(build_relaxation(f, gens, d), **opts)


def hierarchy_sweep(f: Polynomial, gens: Sequence[Polynomial], dmin: int, dmax: int, **opts) -> list:
    """Solutions for orders ``dmin..dmax``."""
    if dmax < dmin:
        raise SdpError("dmax must be at least dmin")
    return [relax(f, gens, d, **opts) for d in range(dmin, dmax + 1)]


def extract_sos(gram, monomials: Sequence[tuple], tol: float = 1e-8, nvars: int | None = None) -> list:
    """Polynomials whose squares sum to ``m^T gram m`` (eigenvalues below ``tol`` dropped)."""
    G = np.asarray(gram, dtype=float)
    G = 0.5 * (G + G.T)
    if nvars is None:
        nvars = len(monomials[0])
    if G.size == 0:
        return []
    w, V = np.linalg.eigh(G)
    if w.min() < -100 * tol:
        raise SdpError(f"Gram not PSD (min eigenvalue {w.min():.3g})")
    out = []
    for lam, v in sorted(zip(w, V.T), key=lambda t: -t[0]):
        if lam <= tol:
            continue
        r = math.sqrt(lam)
        terms = {m: r * c for m, c in zip(monomials, v) if c != 0}
        out.append(Polynomial(terms, nvars))
    return out
