from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sosbound.fields import QuadraticElement
from sosbound.polycore import (
    ParseError,
    Polynomial,
    PolynomialError,
    from_terms,
    gradient,
    monomials_up_to,
    parse_polynomial,
    to_terms,
)

from conftest import P, polynomials


def test_homogenize_examples():
    h = P("x1^2 + 5*x1*x2 + 3*x1 - x2").homogenize()
    expected = Polynomial.parse("x1^2 + 5*x1*x2 + 3*x0*x1 - x0*x2", ["x0", "x1", "x2"])
    assert h == expected
    assert Polynomial.constant(7, 1).homogenize() == Polynomial.constant(7, 2)
    assert P("x1^3 - 1").homogenize() == Polynomial.parse("x1^3 - x0^3", ["x0", "x1"])


def test_homogenize_zero_raises():
    with pytest.raises(PolynomialError, match="cannot homogenize zero"):
        Polynomial.zero(2).homogenize()


def test_top_form_keeps_highest_degree():
    assert P("x1^2 + 5*x1*x2 + 3*x1 - x2").top_form() == P("x1^2 + 5*x1*x2")
    assert P("x1^2 - 1").top_form() == P("x1^2")


def test_dehomogenize():
    assert Polynomial.parse("x1^2 + 3*x0*x1", ["x0", "x1"]).dehomogenize() == P("x1^2 + 3*x1")
    assert Polynomial.parse("x0^3", ["x0"]).dehomogenize() == Polynomial.constant(1, 0)


def test_derivative_of_copositivity_polynomial():
    # oracle: d/dx (x^4 + (x^2 - 1)^2) = 8x^3 - 4x
    F = P("x1^4 + (x1^2 - 1)^2")
    assert F.derivative(0) == P("8*x1^3 - 4*x1")
    assert gradient(F) == [P("8*x1^3 - 4*x1")]


def test_eval_complex_on_example_points():
    g1 = P("x2*(2*(x2 - 1) - x1*(3 - 1))")
    for pt in [(0, 0), (1, 0), (0, 1), (2, 3)]:
        assert g1.eval_complex(pt) == 0


def test_zero_degree_sentinel():
    z = Polynomial.zero(2)
    assert z.degree() < 0
    assert z.degree() < Polynomial.constant(1, 2).degree()


def test_parse_errors_have_position():
    with pytest.raises(ParseError, match="line 1, column 4"):
        parse_polynomial("x1^^2")
    with pytest.raises(ParseError):
        parse_polynomial("y + 1")


def test_json_terms_round_trip():
    p = P("3/2*x1^2 - x2 + 7")
    assert from_terms(to_terms(p), 2) == p
    q = Polynomial({(1,): QuadraticElement(Fraction(1), Fraction(2), 5)}, 1)
    assert from_terms(to_terms(q), 1) == q


def test_monomials_up_to_count():
    assert len(monomials_up_to(2, 2)) == 6
    assert len(monomials_up_to(3, 4)) == 35


@given(polynomials())
def test_homogenize_round_trip(p):
    if p.is_zero():
        return
    h = p.homogenize()
    assert h.is_homogeneous()
    assert h.degree() == p.degree()
    assert h.dehomogenize() == p


@given(polynomials(), polynomials())
def test_product_top_form(p, q):
    if p.is_zero() or q.is_zero():
        return
    assert (p * q).top_form() == p.top_form() * q.top_form()
    assert (p * q).degree() == p.degree() + q.degree()


@given(polynomials(), polynomials(), st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_evaluation_is_a_ring_map(p, q, pt):
    pt = tuple(Fraction(v) for v in pt)
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


@given(polynomials(), st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_derivative_matches_finite_difference(p, pt):
    # exact symmetric difference is exact for degree <= 2 pieces; use a polynomial identity instead:
    # p(x + t e_i) - p(x) = t * dp/dx_i(x) + O(t^2), checked with two rational steps
    x = [Fraction(v) for v in pt]
    for i in range(2):
        t1, t2 = Fraction(1, 1000), Fraction(1, 2000)

        def slope(t):
            y = list(x)
            y[i] += t
            return (p.evaluate(y) - p.evaluate(x)) / t

        # Richardson extrapolation removes the O(t) error
        approx = 2 * slope(t2) - slope(t1)
        assert abs(float(approx - p.derivative(i).evaluate(x))) < 1e-3
