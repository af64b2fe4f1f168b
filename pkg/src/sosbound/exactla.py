"""Exact linear algebra over Q (and any exact field) on lists of lists.

Matrices are ``list[list]`` of Fractions.  Univariate polynomials are
coefficient lists in increasing degree order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def zeros(r: int, c: int) -> list[list]:
    return [[Fraction(0)] * c for _ in range(r)]


def identity(n: int) -> list[list]:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def rref(mat, ncols: int | None = None):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``."""
    rows = [list(r) for r in mat]
    if not rows:
        return rows, []
    ncols = len(rows[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        nz = [j for j in range(c, len(prow)) if prow[j] != 0]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    ri = rows[i]
                    for j in nz:
                        ri[j] = ri[j] - f * prow[j]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(mat) -> int:
    return len(rref(mat)[1])


def nullspace(mat, ncols: int | None = None) -> list[list]:
    """Basis of ``{v : mat v = 0}`` as a list of vectors."""
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    if not mat:
        return identity(ncols)
    rows, pivots = rref(mat, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for row, pc in zip(rows, pivots):
            v[pc] = -row[fcol]
        basis.append(v)
    return basis


def solve(a, b):
    """Solve the square nonsingular system ``a x = b`` (b a vector)."""
    n = len(a)
    aug = [list(a[i]) + [b[i]] for i in range(n)]
    rows, pivots = rref(aug, n)
    if len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return [rows[i][n] for i in range(n)]


def determinant(a) -> Fraction:
    n = len(a)
    m = [list(r) for r in a]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] * inv
            if f != 0:
                for j in range(c, n):
                    m[i][j] -= f * m[c][j]
    return det


def charpoly(a) -> list:
    """Characteristic polynomial ``det(t I - a)``, increasing-degree coefficients.

    Uses exact reduction to upper Hessenberg form followed by the standard
    Hessenberg recurrence.
    """
    n = len(a)
    h = [list(map(Fraction, r)) for r in a]
    for k in range(n - 2):
        piv = next((i for i in range(k + 1, n) if h[i][k] != 0), None)
        if piv is None:
            continue
        if piv != k + 1:
            h[k + 1], h[piv] = h[piv], h[k + 1]
            for row in h:
                row[k + 1], row[piv] = row[piv], row[k + 1]
        inv = 1 / h[k + 1][k]
        for i in range(k + 2, n):
            f = h[i][k] * inv
            if f != 0:
                for j in range(n):
                    h[i][j] -= f * h[k + 1][j]
                for row in h:
                    row[k + 1] += f * row[i]
    # p_0 = 1; p_m(t) = (t - h[m-1][m-1]) p_{m-1} - sum_i h[i][m-1] prod(h[j][j-1]) p_i
    polys = [[Fraction(1)]]
    for m in range(1, n + 1):
        pm = poly_mul([-h[m - 1][m - 1], Fraction(1)], polys[m - 1])
        prod = Fraction(1)
        for i in range(m - 1, 0, -1):
            prod *= h[i][i - 1]
            if prod == 0:
                break
            coef = h[i - 1][m - 1] * prod
            if coef != 0:
                pm = poly_sub(pm, poly_scale(polys[i - 1], coef))
        polys.append(pm)
    return polys[n]


# -- univariate polynomials (increasing degree) --------------------------------

def poly_trim(p: list) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_add(p, q):
    n = max(len(p), len(q))
    return poly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_sub(p, q):
    return poly_add(p, [-c for c in q])


def poly_scale(p, c):
    return poly_trim([x * c for x in p])


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly_trim(out)


def poly_divmod(p, q):
    p, q = poly_trim(p), poly_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    out = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    r = list(p)
    lead = q[-1]
    while len(r) >= len(q) and r:
        c = r[-1] / lead
        k = len(r) - len(q)
        out[k] = c
        for i, b in enumerate(q):
            r[k + i] -= c * b
        r = poly_trim(r[:-1])
    return poly_trim(out), r


def poly_monic(p):
    p = poly_trim(p)
    return [c / p[-1] for c in p] if p else p


def poly_gcd(p, q):
    p, q = poly_trim(p), poly_trim(q)
    while q:
        p, q = q, poly_divmod(p, q)[1]
    return poly_monic(p)


def poly_deriv(p):
    return poly_trim([i * p[i] for i in range(1, len(p))])


def poly_eval(p, t):
    acc = 0
    for c in reversed(p):
        acc = acc * t + c
    return acc


def squarefree_decomposition(p) -> list[tuple[list, int]]:
    """Yun's algorithm over a field of characteristic zero.

    Returns ``[(a_k, k), ...]`` with ``p = lc * prod a_k**k``, ``a_k`` monic,
    square-free and pairwise coprime; trivial factors are omitted.
    """
    p = poly_monic(p)
    if len(p) <= 1:
        return []
    dp = poly_deriv(p)
    a = poly_gcd(p, dp)
    b = poly_divmod(p, a)[0]
    c = poly_divmod(dp, a)[0]
    d = poly_sub(c, poly_deriv(b))
    out = []
    k = 1
    while len(b) > 1:
        a = poly_gcd(b, d)
        if len(a) > 1:
            out.append((a, k))
        b = poly_divmod(b, a)[0]
        c = poly_divmod(d, a)[0]
        d = poly_sub(c, poly_deriv(b))
        k += 1
    return out


def as_float_matrix(a):
    import numpy as np

    return np.array([[float(x) for x in row] for row in a], dtype=float)


def vec_is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)
