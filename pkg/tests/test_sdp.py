import json
import math
import random

import mpmath
import numpy as np
import pytest

from sosbound import instances
from sosbound.certgen import sigma_from_gram
from sosbound.polycore import Polynomial
from sosbound.sdp import (
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    SdpError,
    SdpSolution,
    _MpOps,
    build_relaxation,
    extract_sos,
    hierarchy_sweep,
    interior_point,
    moment_matrix_size,
    relax,
    solve,
)

from conftest import P, P2, random_poly


def test_moment_matrix_size():
    assert moment_matrix_size(2, 2) == 6
    assert build_relaxation(P2("x1"), instances.four_point(), 2).moment_matrix_size == 6


def test_binary_one_variable():
    sol = relax(P("x1"), instances.binary(1), 1)
    assert sol.status == OPTIMAL
    assert sol.fd == pytest.approx(-1, abs=1e-6)


def test_example_3_2_value_despite_singular_optimizer():
    sol = relax(P2("x1 - x2"), instances.three_point(), 2)
    assert sol.fd == pytest.approx(-1, abs=1e-6)


def test_example_3_1_value():
    sol = relax(P2("x1 + x2"), instances.four_point(), 2)
    assert sol.fd == pytest.approx(0, abs=1e-6)
    assert sol.min_eigenvalue > -1e-8


def test_bad_example_trace_growth():
    sol = relax(P("x1"), [P("x1^2")], 1)
    assert abs(sol.fd) < 1e-4
    assert sol.trace_growth


def test_hierarchy_binary_two_variables():
    sols = hierarchy_sweep(P2("x1*x2"), instances.binary(2), 1, 2)
    assert sols[0].fd <= sols[1].fd + 2e-8
    assert sols[-1].fd == pytest.approx(-1, abs=1e-6)


def test_order_below_floor():
    with pytest.raises(SdpError, match="below the floor"):
        build_relaxation(P2("x1"), [P2("x1^4 - 1"), P2("x2^2 - 1")], 1)
    with pytest.raises(SdpError):
        hierarchy_sweep(P2("x1"), instances.binary(2), 3, 2)


def test_objective_degree_too_high_is_unbounded():
    sol = relax(P2("x1^5"), instances.binary(2), 2)
    assert sol.status == UNBOUNDED and sol.fd == -math.inf


def test_unit_ideal_is_infeasible():
    sol = relax(P2("x1"), [P2("x1"), P2("x1 - 1")], 1)
    assert sol.status == INFEASIBLE and sol.fd == math.inf


def test_no_real_points_value_grows():
    # x^2 + 1 = 0 has no real solutions: f_d = +inf
    sol = relax(P("x1"), [P("x1^2 + 1")], 1)
    assert sol.status == INFEASIBLE or sol.fd > 1e6


def test_gram_round_trip_through_squares():
    gens = instances.four_point()
    sol = relax(P2("x1 + x2"), gens, 2)
    squares = extract_sos(sol.gram, sol.monomials, tol=1e-12)
    total = sum((q * q for q in squares), Polynomial.zero(2))
    sigma = sigma_from_gram(sol.gram, sol.monomials, 2)
    diff = total - sigma
    assert max((abs(c) for c in diff.terms.values()), default=0.0) < 1e-5


def test_extract_sos_rejects_indefinite():
    with pytest.raises(SdpError, match="Gram not PSD"):
        extract_sos(np.diag([1.0, -1.0]), [(0,), (1,)])


def test_solution_json_round_trip():
    sol = relax(P2("x1*x2"), instances.binary(2), 1)
    again = SdpSolution.from_json(json.loads(json.dumps(sol.to_json())), 2)
    assert again.to_json() == sol.to_json()
    inf = relax(P2("x1^5"), instances.binary(2), 1)
    assert SdpSolution.from_json(json.loads(json.dumps(inf.to_json())), 2).fd == -math.inf


def test_sdpa_dump_round_trip():
    f, gens = P2("x1 + x2"), instances.four_point()
    lines = build_relaxation(f, gens, 2).to_sdpa().splitlines()
    assert lines[0].startswith("*")
    offset = float(lines[0].split()[3])
    m = int(lines[1].split()[0])
    assert lines[2].startswith("1 ")
    size = int(lines[3].split()[0])
    c = np.array([float(v) for v in lines[4].split()])
    assert len(c) == m
    F = np.zeros((m + 1, size, size))
    for line in lines[5:]:
        k, blk, i, j, v = line.split()
        k, i, j = int(k), int(i) - 1, int(j) - 1
        assert 0 <= k <= m and blk == "1" and i <= j
        F[k, i, j] = F[k, j, i] = float(v)
    # SDPA dual: max <F0, Y> s.t. <F_k, Y> = c_k, Y PSD
    res = interior_point(-F[0], list(-F[1:]), -c)
    assert offset - np.sum(-F[0] * res.X) == pytest.approx(0.0, abs=1e-6)


def test_interior_point_small_known_problem():
    # min <C, X> s.t. trace X = 1: the smallest eigenvalue of C
    C = np.array([[2.0, 1.0], [1.0, 2.0]])
    res = interior_point(C, [np.eye(2)], np.array([1.0]))
    assert res.status == OPTIMAL
    assert np.sum(C * res.X) == pytest.approx(1.0, abs=1e-7)


def test_interior_point_mp_backend_agrees():
    with mpmath.workdps(30):
        C = mpmath.matrix([[2, 1], [1, 2]])
        A = mpmath.eye(2)
        res = interior_point(C, [A], mpmath.matrix([1]), tol=1e-15, ops=_MpOps([A]))
        assert res.status == OPTIMAL
        assert abs(_MpOps.inner(C, res.X) - 1) < 1e-14


def test_hierarchy_monotone_random_binary():
    rng = random.Random(3)
    for _ in range(3):
        f = random_poly(rng, 2, 3)
        sols = hierarchy_sweep(f, instances.binary(2), 1, 3)
        vals = [s.fd for s in sols]
        assert all(a <= b + 2e-8 for a, b in zip(vals, vals[1:]))
        exact = min(f.evaluate((a, b)) for a in (-1, 1) for b in (-1, 1))
        assert vals[-1] == pytest.approx(float(exact), abs=1e-6)


def test_solve_reports_multipliers():
    prob = build_relaxation(P("x1"), instances.binary(1), 1)
    sol = solve(prob)
    assert len(sol.multipliers) == 1
    assert sol.multipliers[0].degree() <= 0
