import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rosette import parse_expsum, parse_laurent
from rosette.errors import DomainError, IndeterminateError
from rosette.exact import ExactReal
from rosette.laurent import ExponentialSum, LaurentPolynomial, eval_circle
from rosette.symmetry import (
    analyze_symmetry,
    annulus_bounds,
    classify_group,
    conj_symmetry_check,
    density_coverage,
    distance_to_curve,
    exponent_gcd_m,
    mirror_axes,
    rotation_order,
    symmetry_type,
    zero_pole_orbit_check,
)

from .conftest import coefficient

T = np.arange(1024) / 1024


@pytest.mark.parametrize("expr, label", [
    ("z^2+z^7+z^12", "dihedral(5)"),
    ("2z^2-2i z^7+i z^12", "cyclic(5)"),
    ("z(z-1/2)(z-i)", "trivial"),
    ("(z^3-z^-1)/(2i)", "dihedral(4)"),
    ("z^5+z^10+z^15", "dihedral(1)"),
])
def test_classification_labels(expr, label):
    assert analyze_symmetry(parse_laurent(expr)).label == label


def test_type_and_orders():
    p = parse_laurent("(z^3-z^-1)/(2i)")
    assert symmetry_type(p) == (3, 4)
    q = parse_laurent("z^5+z^10+z^15")
    assert exponent_gcd_m(q) == 5
    assert rotation_order(q) == 1
    assert symmetry_type(q) is None


def test_circle_report():
    r = analyze_symmetry(parse_laurent("3i z^2"))
    assert r.circle and r.classification == "continuous"


def test_needs_two_terms():
    with pytest.raises(DomainError):
        classify_group(LaurentPolynomial.monomial(3))


def _rotation_residual(p, m):
    a1 = p.min_exponent
    lhs = eval_circle(p, T + 1 / m)
    rhs = cmath.exp(2j * math.pi * a1 / m) * eval_circle(p, T)
    return np.max(np.abs(lhs - rhs)) / p.coefficient_scale


def _mirror_residual(p, beta, sigma):
    lhs = eval_circle(p, beta - T)
    rhs = cmath.exp(2j * math.pi * sigma) * np.conj(eval_circle(p, T))
    return np.max(np.abs(lhs - rhs)) / p.coefficient_scale


@pytest.mark.parametrize("expr", ["z^2+z^7+z^12", "2z^2-2i z^7+i z^12", "(z^3-z^-1)/(2i)", "z^-2+3z+i z^4"])
def test_functional_identities(expr):
    p = parse_laurent(expr)
    rep = analyze_symmetry(p)
    assert _rotation_residual(p, rep.exponent_gcd) <= 1e-10
    for beta, sigma in rep.mirror_axes:
        assert _mirror_residual(p, beta, sigma) <= 1e-10


def test_mirror_axes_reflect_the_image():
    p = parse_laurent("z^2+z^7+z^12")
    z = eval_circle(p, T)
    for _, sigma in mirror_axes(p):
        reflected = cmath.exp(2j * math.pi * sigma) * np.conj(z)
        assert np.max(distance_to_curve(p, reflected)) < 1e-9


def test_rotation_moves_image_onto_itself():
    p = parse_laurent("2z^2-2i z^7+i z^12")
    z = eval_circle(p, T)
    rotated = cmath.exp(2j * math.pi / 5) * z
    assert np.max(distance_to_curve(p, rotated)) < 1e-9
    # and a rotation that is not a symmetry does not
    assert np.max(distance_to_curve(p, cmath.exp(2j * math.pi / 7) * z)) > 1e-3


@st.composite
def patterned(draw):
    m = draw(st.integers(2, 6))
    a1 = draw(st.integers(-3, 3))
    k = draw(st.integers(2, 4))
    return LaurentPolynomial({a1 + m * j: draw(coefficient) for j in range(k)}), m


@given(patterned())
def test_exponent_pattern_forces_rotation(pm):
    p, m = pm
    assert exponent_gcd_m(p) % m == 0
    assert _rotation_residual(p, exponent_gcd_m(p)) <= 1e-10


@given(st.lists(st.floats(-3, 3).filter(lambda x: abs(x) > 0.05), min_size=2, max_size=5),
       st.lists(st.integers(-4, 9), min_size=5, max_size=5, unique=True))
def test_real_coefficients_give_horizontal_axis(cs, exps):
    p = LaurentPolynomial(dict(zip(exps, cs)))
    if len(p) < 2:
        return
    axes = mirror_axes(p)
    assert any(abs(s) < 1e-12 for _, s in axes)
    for beta, sigma in axes:
        assert _mirror_residual(p, beta, sigma) <= 1e-10


def test_zero_pole_orbits():
    p = parse_laurent("z^2+z^7+z^12")
    assert zero_pole_orbit_check(p, analyze_symmetry(p))
    # a claimed 7-fold domain rotation is not a symmetry
    assert not zero_pole_orbit_check(p, analyze_symmetry(p), domain_order=7)


def test_conjugate_symmetry_of_sums():
    assert conj_symmetry_check(parse_expsum("2*e(1)+e(sqrt(2))"))
    assert not conj_symmetry_check(parse_expsum("e(1)+i*e(sqrt(2))"))


def test_annulus_two_term():
    g = parse_expsum("2*e(1)+e(sqrt(2))")
    est = annulus_bounds(g, 5000.0)
    assert est.analytic_r_min == pytest.approx(1.0)
    assert est.r_max == pytest.approx(3.0)
    assert est.r_max_exact
    assert est.sample_r_min >= 1.0 - 1e-12


def test_density_coverage():
    g = parse_expsum("2*e(1)+e(sqrt(2))")
    est = density_coverage(g, 5000.0)
    assert est.r_min == pytest.approx(1.0) and est.r_max == pytest.approx(3.0)
    assert est.coverage_fraction >= 0.99


def test_density_rejects_dependent_exponents():
    with pytest.raises(DomainError):
        density_coverage(parse_expsum("e(1)+e(2)"), 100.0)


def test_density_opaque_exponents_need_assertion():
    g = ExponentialSum([(1.0, ExactReal.rational(1)), (0.5, ExactReal.float_value(1.2345))])
    with pytest.raises(IndeterminateError):
        density_coverage(g, 10.0)
    est = density_coverage(g, 10.0, assume_independent=True)
    assert 0 < est.coverage_fraction <= 1
