import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rosette.laurent import LaurentPolynomial

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile("default")

coefficient = st.complex_numbers(max_magnitude=4.0, allow_nan=False, allow_infinity=False).filter(lambda c: abs(c) > 0.05)


@st.composite
def laurent_polys(draw, min_exp=-4, max_exp=8, min_terms=1, max_terms=5):
    exps = draw(st.sets(st.integers(min_exp, max_exp), min_size=min_terms, max_size=max_terms))
    return LaurentPolynomial({n: draw(coefficient) for n in exps})


@st.composite
def polynomials(draw, max_degree=6, min_degree=2):
    n = draw(st.integers(min_degree, max_degree))
    coeffs = {k: draw(coefficient) for k in range(n + 1) if draw(st.booleans()) or k == n}
    return LaurentPolynomial(coeffs)


def random_polynomial(rng: np.random.Generator, degree: int, low: int = 0) -> LaurentPolynomial:
    c = rng.normal(size=degree - low + 1) + 1j * rng.normal(size=degree - low + 1)
    return LaurentPolynomial({low + k: c[k] for k in range(len(c))})


@pytest.fixture
def rng():
    return np.random.default_rng(20240531)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(test_acceptance.RESULTS):
        title, ok, detail = test_acceptance.RESULTS[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title} {detail}".rstrip())
