import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rosette.errors import DomainError, NumericError
from rosette.numeric import (
    cheb_T,
    cheb_T_coefficients,
    cheb_U,
    phi,
    poly_roots,
    psi,
    real_roots,
    real_roots_fn,
    sylvester_resultant,
)

from . import reference_values as ref

GRID = np.linspace(-1, 1, 10001)


def test_chebyshev_reference_values():
    assert cheb_T(3, 0.5) == pytest.approx(ref.CHEB_T3_HALF, abs=1e-15)
    assert cheb_U(2, 0.5) == pytest.approx(ref.CHEB_U2_HALF, abs=1e-15)
    assert cheb_T(0, 0.3) == 1.0
    assert cheb_T(1, 0.3) == 0.3
    assert cheb_U(-1, 0.3) == 0.0
    assert cheb_U(0, 0.3) == 1.0


def test_chebyshev_rejects_negative_degree():
    with pytest.raises(ValueError):
        cheb_T(-1, 0.0)
    with pytest.raises(ValueError):
        cheb_U(-2, 0.0)


@pytest.mark.parametrize("d", range(0, 12))
def test_chebyshev_trig_identities(d):
    x = np.linspace(0, math.pi, 513)[1:-1]
    assert np.allclose(cheb_T(d, np.cos(x)), np.cos(d * x), atol=1e-12)
    assert np.allclose(np.sin(x) * cheb_U(d, np.cos(x)), np.sin((d + 1) * x), atol=1e-11)


@pytest.mark.parametrize("d", range(0, 10))
def test_power_basis_matches_recurrence(d):
    assert np.allclose(np.polyval(cheb_T_coefficients(d), GRID), cheb_T(d, GRID), atol=1e-12)


@pytest.mark.parametrize("d", [1, 3, 5, 7, 9])
def test_odd_chebyshev_bounded_by_linear(d):
    assert np.all(np.abs(cheb_T(d, GRID)) <= d * np.abs(GRID) + 1e-12)


@pytest.mark.parametrize("d", [2, 4, 6])
def test_even_chebyshev_not_bounded_by_linear(d):
    # T_d(0) = +-1 for even d, so the linear bound fails near 0
    assert np.any(np.abs(cheb_T(d, GRID)) > d * np.abs(GRID))


@pytest.mark.parametrize("k", range(0, 9))
def test_second_kind_range(k):
    u = cheb_U(k, GRID)
    assert np.max(np.abs(u)) == pytest.approx(k + 1, abs=1e-9)


def test_psi_reference_value():
    assert psi(1, 2, 1 / 8) == pytest.approx(ref.PSI_1_2_EIGHTH, rel=1e-14)


def test_psi_divisible_minimum():
    # a | b: |psi| >= a/b with equality at the common zeros k/(2a)
    th = np.linspace(0, 1, 200001)
    vals = np.abs(psi(2, 10, th))
    assert vals.min() >= 0.2 - 1e-12
    assert abs(psi(2, 10, 0.25)) == pytest.approx(0.2, abs=1e-12)
    assert abs(psi(2, 10, 0.0)) == pytest.approx(0.2, abs=1e-12)


def test_psi_non_divisible_range_is_unbounded_both_ways():
    th = np.linspace(0.0001, 0.9999, 100001)
    vals = np.abs(psi(2, 5, th))
    assert vals.min() < 0.01
    assert vals.max() > 100


def test_psi_domain():
    with pytest.raises(DomainError):
        psi(3, 2, 0.1)


def test_phi_values():
    assert phi(2, 5, 0.1, 0.0) == pytest.approx(1.0)
    assert phi(2, 5, 0.1, 0.35) == pytest.approx(ref.PHI_2_5_TENTH_035, rel=1e-13)
    assert phi(1, 3, 1.0, 0.25) == pytest.approx(ref.PHI_1_3_1_QUARTER, abs=1e-12)


def test_phi_odd_quotient_bound():
    # a | b and b/a odd: |phi| <= b/a, attained at t_k = 1/(4ac) + k/(2ac)
    a, b, c = 2, 6, 0.25
    t = np.linspace(0, 1 / (a * c), 100001)
    assert np.nanmax(np.abs(phi(a, b, c, t))) <= b / a + 1e-9
    for k in range(4):
        tk = 1 / (4 * a * c) + k / (2 * a * c)
        assert abs(phi(a, b, c, tk)) == pytest.approx(b / a, abs=1e-12)


def test_phi_domain():
    with pytest.raises(DomainError):
        phi(2, 5, 0.0, 0.1)
    with pytest.raises(DomainError):
        phi(5, 2, 0.1, 0.1)


def test_roots_simple():
    rs = poly_roots([1, 0, -1])
    assert np.allclose(sorted(rs.roots.real), [-1, 1])
    assert rs.max_residual < 1e-14


def test_roots_on_unit_circle():
    rs = poly_roots([1, 0, 0, 0, 1])
    assert np.allclose(np.abs(rs.roots), 1.0, atol=1e-14)
    assert len(rs) == 4


def test_double_root_is_merged():
    rs = poly_roots([1, 2, 1])
    assert rs.distinct() == [(complex(-1, 0), 2)]


def test_zero_roots_counted():
    rs = poly_roots([1, -2, 0, 0])
    assert sorted(np.abs(rs.roots)) == pytest.approx([0, 0, 2])


def test_roots_reject_bad_input():
    with pytest.raises(DomainError):
        poly_roots([0, 0])
    with pytest.raises(DomainError):
        poly_roots([3])
    with pytest.raises(NumericError):
        poly_roots([1, float("nan")])


# the relative residual is 1 at z = 0 whenever p(0) != 0, so keep true roots
# either exactly zero or of a modulus the metric can resolve
root_values = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False).filter(
    lambda z: z == 0 or abs(z) > 1e-6)


@given(st.lists(root_values, min_size=1, max_size=8))
def test_roots_reconstruct_polynomial(zs):
    coeffs = np.poly(zs)
    rs = poly_roots(coeffs)
    assert len(rs) == len(zs)
    assert rs.max_residual < 1e-6


def test_real_roots_polynomial():
    assert real_roots([4, 0, -1], -1, 1) == pytest.approx([-0.5, 0.5], abs=1e-14)
    assert real_roots([1, 0], -1, 1) == pytest.approx([0.0], abs=1e-15)
    assert real_roots([1, 0, 1], -2, 2) == []


def test_real_roots_touching():
    # (y - 0.3)^2 touches zero without a sign change
    roots = real_roots([1, -0.6, 0.09], -1, 1)
    assert roots == pytest.approx([0.3], abs=1e-7)


def test_real_roots_fn_trig():
    roots = real_roots_fn(lambda x: np.sin(5 * x), 0.1, 3.0)
    assert roots == pytest.approx([k * math.pi / 5 for k in range(1, 5)], abs=1e-13)


def test_resultants():
    # Res(z - 2, z^2 - 1) = 3 up to sign; Res(z - 1, z + 1) = 2 up to sign
    assert abs(sylvester_resultant([1, -2], [1, 0, -1])) == pytest.approx(3.0)
    assert abs(sylvester_resultant([1, -1], [1, 1])) == pytest.approx(2.0)
    assert abs(sylvester_resultant([1, -1], [1, 0, -1])) == pytest.approx(0.0, abs=1e-14)


@given(st.lists(st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False), min_size=1, max_size=4),
       st.lists(st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False), min_size=1, max_size=4))
def test_resultant_is_product_of_root_differences(xs, ys):
    expected = np.prod([x - y for x in xs for y in ys])
    got = sylvester_resultant(np.poly(xs), np.poly(ys))
    assert abs(got - expected) <= 1e-8 * max(1.0, abs(expected)) * 10 ** len(xs + ys)
