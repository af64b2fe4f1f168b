import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sosbound import instances
from sosbound.groebner import (
    GroebnerError,
    NotMemberError,
    divide,
    graded_dimensions,
    groebner_basis,
    ideal_quotient,
    is_groebner,
    lift_membership,
    normal_form,
    solve_variety,
    standard_monomials,
)
from sosbound.polycore import Polynomial

from conftest import P, P2, polynomials

# reduced grevlex bases computed independently with sympy (notes/oracles.py), made monic
FROZEN_GB = {
    "four_point": ["x2^3 - 4*x2^2 + 3*x2", "x1^2 - x1 - 1/3*x2^2 + 1/3*x2", "x1*x2 - x2^2 + x2"],
    "three_point": ["x2^3 - 2*x2^2 + x2", "x1^2 - x1 + x2^2 - x2", "x1*x2 - x2^2 + x2"],
    "shifted_cubic_quartic": [
        "x2^10 - 10*x2^9 + 45*x2^8 - 120*x2^7 + 210*x2^6 - 252*x2^5 + 210*x2^4 - 120*x2^3 + 45*x2^2 - 10*x2 + 1",
        "x1*x2^7 - 7*x1*x2^6 + 21*x1*x2^5 - 35*x1*x2^4 + 35*x1*x2^3 - 21*x1*x2^2 + 7*x1*x2 - x1"
        " - x2^7 + 7*x2^6 - 21*x2^5 + 35*x2^4 - 35*x2^3 + 21*x2^2 - 7*x2 + 1",
        "x1^3 - 3*x1^2 + 3*x1 + x2^3 - 3*x2^2 + 3*x2 - 2",
    ],
}


def _monic(p):
    return p / p.leading_coefficient()


@pytest.mark.parametrize("name", sorted(FROZEN_GB))
def test_reduced_basis_matches_oracle(name):
    gb = groebner_basis(getattr(instances, name)())
    ours = {_monic(g) for g in gb.generators}
    assert ours == {P(s) for s in FROZEN_GB[name]}
    assert is_groebner(gb)


def test_normal_forms_example_3_3():
    gb = groebner_basis(instances.shifted_cubic_quartic())
    assert normal_form(P2("(x2 - 1)^10"), gb).is_zero()
    assert normal_form(P2("(x1 - 1)^10"), gb).is_zero()
    assert not normal_form(P2("(x2 - 1)^9"), gb).is_zero()


def test_quotient_dimensions():
    # oracle dims: 4, 4, 24 (sympy) and {x1 x2, x1 + x2} -> 2
    assert ideal_quotient(instances.four_point()).dim == 4
    assert ideal_quotient(instances.three_point()).dim == 4
    assert ideal_quotient(instances.shifted_cubic_quartic()).dim == 24
    assert ideal_quotient([P2("x1*x2"), P2("x1 + x2")]).dim == 2
    assert ideal_quotient(instances.binary(3)).dim == 8


def test_positive_dimensional_and_unit():
    qa = ideal_quotient([P2("x1*x2"), P2("x1*x2^2")])
    assert not qa.is_finite
    gb = groebner_basis([P2("x1"), P2("x1 - 1")])
    assert gb.is_unit
    assert ideal_quotient([P2("x1"), P2("x1 - 1")]).dim == 0


def test_inexact_input_rejected():
    with pytest.raises(GroebnerError):
        groebner_basis([Polynomial({(1,): 0.5}, 1)])


def _sorted_points(pts):
    return sorted((tuple(round(z.real, 8) for z in p.coords), p.multiplicity, p.is_singular) for p in pts)


def test_variety_example_3_1():
    gens = instances.four_point()
    pts = solve_variety(ideal_quotient(gens), gens)
    assert _sorted_points(pts) == [
        ((0.0, 0.0), 1, False), ((0.0, 1.0), 1, False), ((1.0, 0.0), 1, False), ((2.0, 3.0), 1, False)
    ]


def test_variety_example_3_2_double_point():
    # oracle: dim R/(I + m^k) = 2 at (0,1) for k = 3, 4, 5
    gens = instances.three_point()
    pts = solve_variety(ideal_quotient(gens), gens)
    assert _sorted_points(pts) == [((0.0, 0.0), 1, False), ((0.0, 1.0), 2, True), ((1.0, 0.0), 1, False)]
    assert sum(p.multiplicity for p in pts) == 4


def test_variety_example_3_3_single_point():
    gens = instances.shifted_cubic_quartic()
    pts = solve_variety(ideal_quotient(gens), gens)
    assert len(pts) == 1
    assert pts[0].multiplicity == 24
    assert abs(pts[0].coords[0] - 1) < 1e-6 and abs(pts[0].coords[1] - 1) < 1e-6


def test_complex_points():
    gens = [P2("x1^2 + 1"), P2("x2 - x1")]
    pts = solve_variety(ideal_quotient(gens), gens)
    assert len(pts) == 2
    assert all(not p.is_real for p in pts)


def test_lift_membership_degree_bound(rng):
    gens = instances.four_point()
    from conftest import random_poly

    for _ in range(5):
        lams = [random_poly(rng, 2, 2) for _ in gens]
        h = sum((l * g for l, g in zip(lams, gens)), Polynomial.zero(2))
        if h.is_zero():
            continue
        res = lift_membership(h, gens)
        assert sum((l * g for l, g in zip(res, gens)), Polynomial.zero(2)) == h
        assert res.degree_guaranteed
        assert all(l.is_zero() or l.degree() <= h.degree() - 2 for l in res)


def test_lift_non_member():
    with pytest.raises(NotMemberError, match="not a member of the ideal"):
        lift_membership(P2("x1 + 7"), instances.four_point())


def test_graded_dimensions_example_3_3():
    # oracle Hilbert function of the homogenized ideal
    hom = [g.homogenize() for g in instances.shifted_cubic_quartic()]
    assert graded_dimensions(hom, 11) == [1, 3, 6, 9, 12, 15, 18, 21, 23, 24, 24, 24]
    hom = [g.homogenize() for g in instances.four_point()]
    assert graded_dimensions(hom, 6) == [1, 3, 4, 4, 4, 4, 4]


def test_standard_monomials_example_3_1():
    gb = groebner_basis(instances.four_point())
    assert sorted(standard_monomials(gb)) == [(0, 0), (0, 1), (0, 2), (1, 0)]


@given(st.lists(polynomials(max_degree=2, max_terms=4), min_size=1, max_size=3), polynomials(max_degree=3))
def test_division_identity(gens, p):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    gb = groebner_basis(gens)
    if gb.is_unit:
        assert normal_form(p, gb).is_zero()
        return
    quot, rem = divide(p, gb)
    total = rem
    for q, g in zip(quot, gb.generators):
        total = total + q * g
    assert total == p
    lms = gb.leading_monomials()
    for e in rem.terms:
        assert not any(all(a >= b for a, b in zip(e, lm)) for lm in lms)


@given(st.lists(polynomials(max_degree=2, max_terms=4), min_size=1, max_size=3))
def test_basis_membership_and_criterion(gens):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    gb = groebner_basis(gens)
    assert is_groebner(gb)
    for g in gens:
        assert normal_form(g, gb).is_zero()


def test_random_square_systems_points_satisfy_equations():
    rng = random.Random(7)
    from conftest import random_poly

    for _ in range(5):
        gens = [random_poly(rng, 2, 2) for _ in range(2)]
        qa = ideal_quotient(gens)
        if not qa.is_finite or qa.dim == 0:
            continue
        pts = solve_variety(qa, gens)
        assert sum(p.multiplicity for p in pts) == qa.dim
        for p in pts:
            for g in gens:
                assert abs(g.eval_complex(p.coords)) < 1e-6 * max(1.0, g.max_abs_coefficient())
