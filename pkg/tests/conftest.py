import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from sosbound.polycore import Polynomial

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def P(text, variables=None):
    """Parse with x1..xn; pass ``variables`` to fix the count."""
    return Polynomial.parse(text, variables)


@st.composite
def polynomials(draw, nvars=2, max_degree=3, max_terms=5, coeff=5):
    n = draw(st.integers(1, nvars)) if nvars is None else nvars
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.integers(0, max_degree)) for _ in range(n))
        if sum(e) > max_degree:
            continue
        terms[e] = Fraction(draw(st.integers(-coeff, coeff)), draw(st.integers(1, 3)))
    return Polynomial(terms, n)


def random_poly(rng: random.Random, n: int, degree: int, lo=-5, hi=5, density=1.0) -> Polynomial:
    from sosbound.polycore import monomials_up_to

    terms = {}
    for m in monomials_up_to(n, degree):
        if rng.random() <= density:
            terms[m] = Fraction(rng.randint(lo, hi))
    # keep the requested degree
    top = [m for m in monomials_up_to(n, degree) if sum(m) == degree]
    terms[rng.choice(top)] = Fraction(rng.choice([c for c in range(lo, hi + 1) if c != 0]))
    return Polynomial(terms, n)


@pytest.fixture
def rng():
    return random.Random(1234)


def P2(text):
    return Polynomial.parse(text, ["x1", "x2"])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
