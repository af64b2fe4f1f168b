import itertools
import json
import math

import pytest
from hypothesis import given, strategies as st

from sosbound import instances
from sosbound.degbound import (
    DegreeBoundError,
    DegreeBoundReport,
    dim_graded_piece,
    frak_n,
    gradient_order,
    hilbert_coeffs,
    sos_order,
)
from sosbound.groebner import graded_dimensions
from sosbound.polycore import Polynomial

from conftest import P2


def test_frak_n():
    assert frak_n([2, 2]) == 2
    assert frak_n([2, 2, 2]) == 3
    assert frak_n([3, 3, 3]) == 6
    with pytest.raises(DegreeBoundError):
        frak_n([])
    with pytest.raises(DegreeBoundError):
        frak_n([0, 2])


def test_hilbert_coeffs_brute_force_oracle():
    assert hilbert_coeffs([3, 4]) == [1, 2, 3, 3, 2, 1]
    assert sum(hilbert_coeffs([3, 4])) == 12
    assert hilbert_coeffs([2, 2]) == [1, 2, 1]


def test_dim_graded_piece_examples():
    assert dim_graded_piece([2, 2], 2) == 4
    assert dim_graded_piece([3, 4], 3) == 9
    with pytest.raises(DegreeBoundError):
        dim_graded_piece([2, 2], -1)


def test_sos_order_examples():
    rep = sos_order(P2("x1 - x2"), instances.three_point())
    assert (rep.frak_n, rep.sos_order, rep.verified) == (2, 2, True)
    x = Polynomial.variables(3)
    rep = sos_order(x[0] * x[1], instances.binary(3))
    assert (rep.frak_n, rep.sos_order) == (3, 3)
    f10 = P2("x1^10 + x2")
    grid = [P2("x1^3 - x1"), P2("x2^3 - x2")]
    rep = sos_order(f10, grid)
    assert rep.sos_order == 5 and rep.multiplier_degree_cap == 10 and rep.h_degree_cap == 4


def test_unverified_tag_when_assumption_fails():
    rep = sos_order(P2("x1"), instances.three_point(a=0))
    assert rep.tag == "unverified"
    again = DegreeBoundReport.from_json(json.loads(json.dumps(rep.to_json())))
    assert again == rep


def test_gradient_order():
    x = Polynomial.variables(3)
    F = x[0] ** 4 + x[1] ** 4 + x[2] ** 4
    assert gradient_order(F) == 6
    assert gradient_order(P2("(x1^2 - 1)^2").restrict([0], {1: 0})) == 2
    with pytest.raises(DegreeBoundError):
        gradient_order(P2("x1 + 1"))


@given(st.lists(st.integers(1, 4), min_size=1, max_size=4))
def test_hilbert_coeffs_properties(degrees):
    c = hilbert_coeffs(degrees)
    assert len(c) == frak_n(degrees) + 1
    assert sum(c) == math.prod(degrees)
    assert c == c[::-1]
    # brute force: count tuples 0 <= e_i < d_i by sum
    counts = [0] * len(c)
    if math.prod(degrees) <= 256:
        for e in itertools.product(*[range(d) for d in degrees]):
            counts[sum(e)] += 1
        assert counts == c
    assert dim_graded_piece(degrees, frak_n(degrees)) == math.prod(degrees)


def test_graded_pieces_match_groebner_on_examples():
    for gens in (instances.four_point(), instances.shifted_cubic_quartic(), instances.binary(3)):
        degrees = [int(g.degree()) for g in gens]
        nn = frak_n(degrees)
        hf = graded_dimensions([g.homogenize() for g in gens], nn + 2)
        for d in range(nn + 3):
            assert dim_graded_piece(degrees, d) == hf[d]
