import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sosbound import instances
from sosbound.certgen import (
    Certificate,
    HypothesisError,
    SquareRootError,
    build_certificate,
    quotient_sqrt,
    real_variety_minimum,
    sqrt_mod_power,
    verify_certificate,
)
from sosbound.fields import QuadraticElement
from sosbound.groebner import GroebnerError, ideal_quotient
from sosbound.polycore import Polynomial, monomials_up_to
from sosbound.sdp import relax

from conftest import P, P2


def _low_terms(poly, k):
    return [e for e, c in poly.terms.items() if sum(e) < k and c != 0]


def test_sqrt_series_oracle():
    q = sqrt_mod_power(P("4 + x1"), 3)
    assert q == P("2 + 1/4*x1 - 1/64*x1^2")
    q = sqrt_mod_power(P2("1 + x1 + x2"), 2)
    assert q == P2("1 + 1/2*x1 + 1/2*x2")


def test_sqrt_needs_unit():
    with pytest.raises(SquareRootError, match="no unit square root"):
        sqrt_mod_power(P2("x1 + x2"), 3)


def test_sqrt_irrational_constant_is_exact():
    q = sqrt_mod_power(P("2 + x1"), 4)
    assert all(isinstance(c, (Fraction, QuadraticElement)) for c in q.terms.values())
    assert _low_terms(q * q - P("2 + x1"), 4) == []


@st.composite
def unit_series(draw):
    n = draw(st.integers(1, 3))
    k = draw(st.integers(1, 6))
    root = Fraction(draw(st.integers(1, 5)), draw(st.integers(1, 3)))
    terms = {(0,) * n: root * root}
    for m in monomials_up_to(n, 3):
        if sum(m) and draw(st.booleans()):
            terms[m] = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 4)))
    return Polynomial(terms, n), k


@given(unit_series())
def test_sqrt_lemma_property(case):
    p, k = case
    q = sqrt_mod_power(p, k)
    assert q.is_exact
    assert q.is_zero() or q.degree() <= k - 1
    assert _low_terms(q * q - p, k) == []


# interpolation oracle (sympy): h in span{1, x1, x2, x2^2} with h = sqrt(x1 + x2) at the four points
ORACLE_H_EX31 = Polynomial(
    {
        (1, 0): Fraction(1),
        (0, 2): QuadraticElement(Fraction(-5, 6), Fraction(1, 6), 5),
        (0, 1): QuadraticElement(Fraction(11, 6), Fraction(-1, 6), 5),
    },
    2,
)


def test_quotient_sqrt_matches_interpolation_oracle():
    gens = instances.four_point()
    qa = ideal_quotient(gens)
    h = quotient_sqrt(P2("x1 + x2"), qa, gens=gens)
    for pt, val in [((0, 0), 0), ((1, 0), 1), ((0, 1), 1), ((2, 3), 5)]:
        v = h.evaluate(pt)
        assert v * v == val
    # the oracle picks the nonnegative root at each point, as does the default seed
    assert h == ORACLE_H_EX31


def test_certificate_example_3_1_exact():
    gens = instances.four_point()
    cert = build_certificate(P2("x1 + x2"), gens)
    assert cert.exact and cert.fstar == 0
    rep = verify_certificate(P2("x1 + x2"), gens, cert)
    assert rep.exact_zero and rep.residual == 0
    assert cert.h.degree() <= 2
    assert all(l.is_zero() or l.degree() + 2 <= 4 for l in cert.multipliers)
    assert cert.degree_contract_met


def test_certificate_binary_one_variable():
    # oracle identity x + 1 = -(x^2 - 1)/2 + (x + 1)^2 / 2
    gens = instances.binary(1)
    cert = build_certificate(P("x1"), gens)
    assert cert.fstar == -1
    assert cert.multipliers[0] == Polynomial.constant(Fraction(-1, 2), 1)
    h2 = cert.h * cert.h
    assert h2 == P("1/2*x1^2 + x1 + 1/2")
    assert verify_certificate(P("x1"), gens, cert).exact_zero


def test_certificate_binary_two_variables():
    gens = instances.binary(2)
    f = P2("x1*x2")
    cert = build_certificate(f, gens)
    assert cert.fstar == -1
    rep = verify_certificate(f, gens, cert)
    assert rep.exact_zero and rep.ok


def test_singular_optimizer_refused():
    with pytest.raises(HypothesisError) as info:
        build_certificate(P2("x1 - x2"), instances.three_point())
    assert info.value.point is not None


def test_float_path_for_cubic_field():
    gens = [P("x1^3 - 3*x1 + 1")]
    f = P("x1")
    cert = build_certificate(f, gens)
    assert not cert.exact
    rep = verify_certificate(f, gens, cert)
    assert rep.residual < 1e-20
    assert abs(float(cert.fstar) + 1.8793852415718) < 1e-10


def test_real_variety_minimum():
    assert real_variety_minimum(P2("x1 + x2"), instances.four_point()) == 0
    assert real_variety_minimum(P2("x1 - x2"), instances.three_point()) == -1
    with pytest.raises(GroebnerError, match="no real points"):
        real_variety_minimum(P2("x1"), [P2("x1^2 + 1"), P2("x2")])


def test_certificate_json_round_trip():
    gens = instances.four_point()
    cert = build_certificate(P2("x1 + x2"), gens)
    text = json.dumps(cert.to_json())
    assert '"fstar": "0"' in text
    again = Certificate.from_json(json.loads(text), 2)
    assert again.h == cert.h and again.multipliers == cert.multipliers
    assert verify_certificate(P2("x1 + x2"), gens, again).exact_zero


def test_numeric_gram_certificate_from_sdp():
    gens = instances.four_point()
    f = P2("x1 + x2")
    sol = relax(f, gens, 2)
    cert = Certificate(sol.fd, None, sol.multipliers, 0.0, False, exact=False,
                       gram=sol.gram.tolist(), gram_monomials=list(sol.monomials))
    assert verify_certificate(f, gens, cert).residual <= 1e-6


def test_random_binary_certificates():
    rng = random.Random(5)
    from conftest import random_poly

    for _ in range(3):
        f = random_poly(rng, 2, 2)
        gens = instances.binary(2)
        cert = build_certificate(f, gens)
        rep = verify_certificate(f, gens, cert)
        assert rep.residual < 1e-20 and rep.ok
