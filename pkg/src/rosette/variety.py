"""Implicit equation of the real algebraic curve containing ``p(S^1)``.

For a polynomial ``p`` of degree ``n`` and a point ``w``, let
``A(z) = p(z) - w`` and ``B(z) = z^n (conj(p)(1/z) - conj(w))`` where
``conj(p)`` has conjugated coefficients.  The roots of ``B`` are the
conjugate reciprocals ``1/conj(alpha_k)`` of the roots of ``A``, so

    Res(A, B) = (-1)^(n^2) conj(A(0))^n prod_k A(1 / conj(alpha_k)).

:func:`variety_eval` returns this resultant (the Sylvester determinant
value); :func:`variety_product` returns the bare product
``(-1)^(n^2) prod_k A(1/conj(alpha_k))`` whose rotation law is
``h(s^k w) = s^(kn) h(w)``.  Both vanish exactly on ``p(S^1)`` plus the
finitely many extra points of the variety.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .laurent import LaurentPolynomial
from .numeric import poly_roots

ZERO_ROOT = 1e-12


def _check(p: LaurentPolynomial) -> int:
    if p.is_zero or p.min_exponent < 0:
        raise DomainError("the variety needs a polynomial with no negative exponents")
    n = p.max_exponent
    if n < 1:
        raise DomainError("constant polynomial")
    return n


def _a_coeffs(p: LaurentPolynomial, w: complex) -> np.ndarray:
    """Ascending coefficients of ``A = p - w``."""
    c = np.array(p.polynomial_coefficients(), dtype=complex)
    c[0] -= w
    return c


def _b_coeffs(p: LaurentPolynomial, w: complex) -> np.ndarray:
    """Ascending coefficients of ``B = z^n (conj(p)(1/z) - conj(w))``."""
    return np.conj(_a_coeffs(p, w))[::-1]


@dataclass(frozen=True)
class VarietyValue:
    value: complex
    method: str  # "product" or "sylvester"
    scale: float


def variety_scale(p: LaurentPolynomial, w: complex) -> float:
    """Hadamard bound ``||A||_2^(2n)`` for ``|Res(A, B)|``."""
    n = _check(p)
    return float(np.linalg.norm(_a_coeffs(p, w)) ** (2 * n))


def _nominal_sylvester(p: LaurentPolynomial, w) -> np.ndarray:
    """Sylvester matrices with both degrees fixed at ``n`` (no stripping), so
    the value stays a polynomial in ``(w, conj w)``; broadcasts over ``w``."""
    n = _check(p)
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    c = np.array(p.polynomial_coefficients(), dtype=complex)
    mats = np.zeros((len(w), 2 * n, 2 * n), dtype=complex)
    for r in range(n):
        # A descending: c_n ... c_1 (c_0 - w)
        mats[:, r, r:r + n + 1] = c[::-1]
        mats[:, r, r + n] -= w
        # B descending: conj(c_0 - w) conj(c_1) ... conj(c_n)
        mats[:, n + r, r:r + n + 1] = np.conj(c)
        mats[:, n + r, r] -= np.conj(w)
    return mats


def variety_sylvester(p: LaurentPolynomial, w: complex) -> complex:
    """``Res(A, B)`` as a Sylvester determinant with nominal degrees ``n, n``."""
    return complex(np.linalg.det(_nominal_sylvester(p, w))[0])


def _roots_of_a(p: LaurentPolynomial, w: complex) -> np.ndarray:
    return poly_roots(_a_coeffs(p, w)[::-1]).roots


def variety_product(p: LaurentPolynomial, w: complex) -> complex:
    """``(-1)^(n^2) prod_k A(1/conj(alpha_k))``; needs every ``|alpha_k| > 1e-12``."""
    n = _check(p)
    alphas = _roots_of_a(p, w)
    if np.any(np.abs(alphas) <= ZERO_ROOT):
        raise DomainError("A has a root at 0; the product form is undefined")
    a = _a_coeffs(p, w)[::-1]
    vals = np.polyval(a, 1.0 / np.conj(alphas))
    return complex((-1) ** (n * n) * np.prod(vals))


def variety_eval_detailed(p: LaurentPolynomial, w: complex) -> VarietyValue:
    """Resultant value by the root-product route, or by Sylvester near ``alpha = 0``."""
    n = _check(p)
    scale = variety_scale(p, w)
    alphas = _roots_of_a(p, w)
    if np.any(np.abs(alphas) <= ZERO_ROOT):
        return VarietyValue(variety_sylvester(p, w), "sylvester", scale)
    a = _a_coeffs(p, w)
    vals = np.polyval(a[::-1], 1.0 / np.conj(alphas))
    value = (-1) ** (n * n) * np.conj(a[0]) ** n * np.prod(vals)
    return VarietyValue(complex(value), "product", scale)


def variety_eval(p: LaurentPolynomial, w: complex) -> complex:
    """``h(w, conj w) = Res_z(p(z) - w, z^n (conj(p)(1/z) - conj w))``."""
    return variety_eval_detailed(p, w).value


def rotation_invariance_check(p: LaurentPolynomial, w: complex, m: int, k: int) -> float:
    """Relative residual of ``h(s^k w) = s^(kn) h(w)`` for the product form, ``s = e^{2 pi i/m}``."""
    n = _check(p)
    if m < 1:
        raise DomainError("m must be positive")
    if m == 1:
        return 0.0
    rot = cmath.exp(2j * math.pi * k / m)
    h0 = variety_product(p, w)
    h1 = variety_product(p, rot * w)
    expected = rot ** n * h0
    return abs(h1 - expected) / max(abs(h0), abs(h1), 1e-300)


def mirror_invariance_check(p: LaurentPolynomial, w: complex, sigma: float) -> float:
    """Relative residual of the reflection law ``w -> e^{2 pi i sigma} conj(w)``.

    If ``p(conj z) = e^{2 pi i sigma} conj(p(z))`` then the roots of
    ``p - e^{2 pi i sigma} conj(w)`` are the ``conj(alpha_k)`` and
    ``h(e^{2 pi i sigma} conj w) = e^{2 pi i sigma n} conj(h(w))`` for the
    product form.  On the zero set this is plain invariance.
    """
    n = _check(p)
    rot = cmath.exp(2j * math.pi * sigma)
    w1 = rot * complex(w).conjugate()
    h0 = variety_product(p, w)
    h1 = variety_product(p, w1)
    expected = rot ** n * h0.conjugate()
    return abs(h1 - expected) / max(abs(h0), abs(h1), 1e-300)


def variety_grid(p: LaurentPolynomial, re_range: tuple[float, float], im_range: tuple[float, float],
                 n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``|h|`` on an ``n x n`` grid by batched Sylvester determinants.

    Returns ``(re, im, abs_h)`` as flat arrays in row-major order (imaginary
    part outer, real part inner).
    """
    _check(p)
    if n < 2:
        raise DomainError("grid needs at least 2 points per side")
    re = np.linspace(*re_range, n)
    im = np.linspace(*im_range, n)
    rr, ii = np.meshgrid(re, im)
    W = (rr + 1j * ii).ravel()
    vals = np.concatenate([np.linalg.det(_nominal_sylvester(p, W[j:j + 4096])) for j in range(0, len(W), 4096)])
    return rr.ravel(), ii.ravel(), np.abs(vals)
