"""Self-intersections, cusps and point multiplicities of polynomial rosettes.

A pair of distinct points ``z1 = e^{i theta} x`` and ``z2 = e^{-i theta} x``
on the unit circle (``theta`` in (0, pi), ``s = cos theta``) has the same
image exactly when

    g(s, x) = (p(z1) - p(z2)) / (z1 - z2) = sum_k c_{k+1} U_k(s) x^k

vanishes.  Every crossing of two branches is found twice, as ``(s, x)`` and
``(-s, -x)``; the solvers return one record per zero of ``g`` and
:func:`distinct_points` groups them into geometric points.  The common point
of the pair is ``h(s, x) = sum_k c_k T_k(s) x^k``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from functools import reduce

import numpy as np
from numpy.polynomial import chebyshev as C

from .errors import DomainError, NumericError
from .laurent import LaurentPolynomial, derivative, eval_circle, evaluate
from .numeric import cheb_T, cheb_U, poly_roots, real_roots_fn, sylvester_resultant
from .wave import wave_coefficients

TWO_PI = 2 * math.pi
EDGE_EPS = 1e-12
CANDIDATE_IMAG = 0.02
CANDIDATE_RADIUS = 0.05


@dataclass(frozen=True)
class SelfIntersection:
    """One zero ``(s, x)`` of the Dieudonne polynomial and its image point."""

    point: complex
    t1: float
    t2: float
    s: float
    x: complex
    modulus: float
    direction_index: int | None = None
    branch: int | None = None
    cover_degree: int = 1

    def to_dict(self) -> dict:
        return {
            "point": [self.point.real, self.point.imag],
            "t1": self.t1,
            "t2": self.t2,
            "s": self.s,
            "x": [self.x.real, self.x.imag],
            "modulus": self.modulus,
            "direction_index": self.direction_index,
            "branch": self.branch,
        }


@dataclass(frozen=True)
class SelfIntersectionResult:
    """Solver output; ``cover_degree > 1`` marks a non-primitive curve whose
    every point is a ``cover_degree``-fold coincidence (the list then
    describes the primitive curve traced ``cover_degree`` times)."""

    intersections: tuple[SelfIntersection, ...]
    cover_degree: int = 1
    method: str = "general"
    bound: int | None = None
    extras: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.intersections)

    def __iter__(self):
        return iter(self.intersections)

    def points(self) -> np.ndarray:
        return np.array([si.point for si in self.intersections], dtype=complex)

    def to_dict(self) -> dict:
        return {
            "count": len(self.intersections),
            "distinct_points": len(distinct_points(self.intersections)),
            "cover_degree": self.cover_degree,
            "method": self.method,
            "bound": self.bound,
            "intersections": [si.to_dict() for si in self.intersections],
        }


@dataclass(frozen=True)
class Cusp:
    t: float
    point: complex
    derivative_modulus: float
    second_derivative_modulus: float

    def to_dict(self) -> dict:
        return {"t": self.t, "point": [self.point.real, self.point.imag],
                "second_derivative_modulus": self.second_derivative_modulus}


@dataclass(frozen=True)
class Multiplicity:
    count: int
    parameters: tuple[float, ...]
    ordinary: bool
    derivative_values: tuple[complex, ...]

    def to_dict(self) -> dict:
        return {"count": self.count, "parameters": list(self.parameters), "ordinary": self.ordinary}


# --- Chebyshev forms ---------------------------------------------------------------


def _poly_terms(p: LaurentPolynomial):
    if p.is_zero:
        raise DomainError("zero polynomial")
    if p.min_exponent < 0:
        raise DomainError("negative exponents are not supported by the Chebyshev forms")
    return p.terms


def dieudonne_g(p: LaurentPolynomial, s, x):
    """``g(s, x) = sum_k c_{k+1} U_k(s) x^k``."""
    terms = _poly_terms(p)
    s = np.asarray(s, dtype=float)
    x = np.asarray(x, dtype=complex)
    out = np.zeros(np.broadcast(s, x).shape, dtype=complex)
    for n, c in terms:
        if n >= 1:
            out = out + c * cheb_U(n - 1, s) * x ** (n - 1)
    return complex(out) if out.ndim == 0 else out


def h_fn(p: LaurentPolynomial, s, x):
    """``h(s, x) = sum_k c_k T_k(s) x^k``."""
    terms = _poly_terms(p)
    s = np.asarray(s, dtype=float)
    x = np.asarray(x, dtype=complex)
    out = np.zeros(np.broadcast(s, x).shape, dtype=complex)
    for n, c in terms:
        out = out + c * cheb_T(n, s) * x ** n
    return complex(out) if out.ndim == 0 else out


def lemma5_check(p: LaurentPolynomial, theta: float, x: complex) -> float:
    """Residual of ``p(e^{i theta} x) = h(cos theta, x) + i sin(theta) x g(cos theta, x)``."""
    if abs(abs(x) - 1.0) > 1e-12:
        raise DomainError("x must lie on the unit circle")
    s = math.cos(theta)
    lhs = evaluate(p, cmath.exp(1j * theta) * x)
    rhs = h_fn(p, s, x) + 1j * math.sin(theta) * x * dieudonne_g(p, s, x)
    return abs(lhs - rhs)


# --- helpers -------------------------------------------------------------------------


def _scale(p: LaurentPolynomial) -> float:
    return max(p.coefficient_scale, 1e-300)


def primitive_reduction(p: LaurentPolynomial) -> tuple[LaurentPolynomial, int]:
    """Write ``p(z) = q(z^d)`` with the largest ``d``; returns ``(q, d)``."""
    d = reduce(math.gcd, (abs(n) for n in p.exponents if n != 0), 0)
    if d <= 1:
        return p, 1
    return LaurentPolynomial((n // d, c) for n, c in p.terms), d


def _record(p: LaurentPolynomial, s: float, x: complex, cover: int, **kw) -> SelfIntersection:
    theta = math.acos(max(-1.0, min(1.0, s)))
    phi = cmath.phase(x)
    t1 = ((theta + phi) / TWO_PI) % 1.0
    t2 = ((phi - theta) / TWO_PI) % 1.0
    point = complex(h_fn(p, s, x))
    if cover > 1:
        t1, t2 = t1 / cover, t2 / cover
    return SelfIntersection(point, t1, t2, s, x, abs(point), cover_degree=cover, **kw)


def _validate(p_orig: LaurentPolynomial, items, tol: float = 1e-8):
    scale = _scale(p_orig)
    for si in items:
        r = abs(eval_circle(p_orig, si.t1) - eval_circle(p_orig, si.t2))
        if r > tol * scale:
            raise NumericError(f"self-intersection residual {r:.3g} exceeds tolerance")


def _sort(items):
    return tuple(sorted(items, key=lambda si: (round(si.s, 12), round(cmath.phase(si.x) % TWO_PI, 12))))


def distinct_points(items, tol: float = 1e-8) -> list[tuple[complex, int]]:
    """Group records by image point; returns ``(point, number of records)``."""
    out: list[list] = []
    for si in items:
        for entry in out:
            if abs(entry[0] - si.point) <= tol * max(1.0, abs(si.point)):
                entry[1] += 1
                break
        else:
            out.append([si.point, 1])
    return [(p, k) for p, k in out]


# --- two-term closed form --------------------------------------------------------------


def direction_base_angle(v: complex, w: complex, a: int, b: int) -> float:
    """Angle of one intersection line; the others follow at multiples of pi/(b-a).

    For ``x^(b-a) = -eps * e^{i alpha}`` (``alpha = arg(v/w)``) the point is
    parallel to ``x^a v``, so all lines are ``arg(v) + a*alpha/(b-a) + k*pi/(b-a)``.
    For positive real coefficients this is the family of multiples of pi/(b-a).
    """
    alpha = cmath.phase(v / w)
    return (cmath.phase(v) + a * alpha / (b - a)) % (math.pi / (b - a))


def self_intersections_two_term(v: complex, w: complex, a: int, b: int) -> SelfIntersectionResult:
    """Self-intersections of ``v z^a + w z^b`` (``1 <= a < b``) in closed form.

    With ``r = |v|/|w|`` and ``eps = +-1``, ``s = cos theta`` solves
    ``U_{b-1}(s) = eps r U_{a-1}(s)``, i.e. ``sin(b theta) = eps r sin(a theta)``
    for ``theta`` in (0, pi), and ``x`` runs over the ``b-a`` roots of
    ``x^(b-a) = -eps e^{i arg(v/w)}``.  Complex coefficients with any phases
    are covered by this form.
    """
    if not 1 <= a < b:
        raise DomainError("need 1 <= a < b")
    if v == 0 or w == 0:
        raise DomainError("both coefficients must be nonzero")
    p_orig = LaurentPolynomial({a: v, b: w})
    d = math.gcd(a, b)
    a1, b1 = a // d, b // d
    p = LaurentPolynomial({a1: v, b1: w})
    r = abs(v) / abs(w)
    alpha = cmath.phase(v / w)
    k = b1 - a1
    base = direction_base_angle(v, w, a1, b1)
    items = []
    for eps in (1, -1):
        def f(th, eps=eps):
            return np.sin(b1 * th) - eps * r * np.sin(a1 * th)

        def df(th, eps=eps):
            return b1 * np.cos(b1 * th) - eps * r * a1 * np.cos(a1 * th)

        grid = max(2048, 64 * b1)
        thetas = real_roots_fn(f, EDGE_EPS, math.pi - EDGE_EPS, df, lambda _: 1.0 + r, grid=grid)
        rhs_phase = alpha + (math.pi if eps == 1 else 0.0)
        for th in thetas:
            s = math.cos(th)
            if abs(math.sin(a1 * th)) <= 1e-12 and abs(math.sin(b1 * th)) <= 1e-12:
                continue
            for j in range(k):
                x = cmath.exp(1j * (rhs_phase + TWO_PI * j) / k)
                si = _record(p, s, x, d, branch=eps)
                ang = (cmath.phase(si.point) - base) % math.pi
                idx = int(round(ang / (math.pi / k))) % k if si.modulus > 0 else None
                items.append(replace(si, direction_index=idx))
    _validate(p_orig, items)
    return SelfIntersectionResult(_sort(items), d, "two_term", 2 * (b1 - 1) ** 2)


# --- general solver -------------------------------------------------------------------------


def _g_coeffs(p: LaurentPolynomial, s: float) -> np.ndarray:
    """Coefficients of g(s, .) in ascending powers of x."""
    n = p.max_exponent
    out = np.zeros(n, dtype=complex)
    for m, c in p.terms:
        if m >= 1:
            out[m - 1] = c * cheb_U(m - 1, s)
    return out


def _trimmed_g(p: LaurentPolynomial, s: float, low: int) -> np.ndarray:
    return _g_coeffs(p, s)[low:]


def _resultant_at(p: LaurentPolynomial, s: float, low: int) -> complex:
    g = _trimmed_g(p, s, low)
    gstar = np.conj(g[::-1])
    # descending order for the Sylvester matrix
    return sylvester_resultant(g[::-1], gstar[::-1])


def _newton_polish(p: LaurentPolynomial, s: float, phi: float, steps: int = 30):
    """Solve g(s, e^{i phi}) = 0 for real (s, phi) by 2-D Newton."""
    terms = [(m, c) for m, c in p.terms if m >= 1]
    for _ in range(steps):
        x = cmath.exp(1j * phi)
        g = sum(c * cheb_U(m - 1, s) * x ** (m - 1) for m, c in terms)
        dgs = sum(c * _dU(m - 1, s) * x ** (m - 1) for m, c in terms)
        dgphi = sum(c * cheb_U(m - 1, s) * 1j * (m - 1) * x ** (m - 1) for m, c in terms)
        jac = np.array([[dgs.real, dgphi.real], [dgs.imag, dgphi.imag]])
        try:
            step = np.linalg.solve(jac, [g.real, g.imag])
        except np.linalg.LinAlgError:
            break
        s -= step[0]
        phi -= step[1]
        if abs(step[0]) + abs(step[1]) <= 1e-15:
            break
    x = cmath.exp(1j * phi)
    return s, x, abs(complex(dieudonne_g(p, s, x)))


def _dU(k: int, s: float) -> float:
    """Derivative of U_k: ((k+1) T_{k+1} - s U_k) / (s^2 - 1), by recurrence away from +-1."""
    if k <= 0:
        return 0.0
    # differentiate the recurrence U_{j+1} = 2 s U_j - U_{j-1}
    u_prev, u = 1.0, 2 * s
    d_prev, d = 0.0, 2.0
    for _ in range(k - 1):
        u_prev, u, d_prev, d = u, 2 * s * u - u_prev, d, 2 * u + 2 * s * d - d_prev
    return d


def self_intersections_general(p: LaurentPolynomial, nodes: int | None = None) -> SelfIntersectionResult:
    """Self-intersections of a polynomial curve by Quine's resultant method.

    ``R(s) = Res_x(g, g*)`` with ``g*(s, x) = x^m conj(g(s, 1/conj x))`` is
    real on (-1, 1) and vanishes where a root of ``g(s, .)`` meets the unit
    circle.  It is sampled at ``4 n^2 + 1`` Chebyshev nodes by Sylvester
    determinants and interpolated; its real roots in (-1, 1) are matched with
    unit-modulus roots of ``g(s, .)`` and polished by Newton's method in
    ``(s, arg x)``.
    """
    p_orig = p
    if p.is_zero or p.min_exponent < 0:
        raise DomainError("the general solver needs a polynomial (no negative exponents)")
    p, d = primitive_reduction(p)
    n = p.max_exponent
    if n < 2:
        return SelfIntersectionResult((), d, "general", 0)
    low = min(m for m in p.exponents if m >= 1) - 1
    deg_bound = 2 * (n - 1 - low) * (n - 1)
    n_nodes = nodes or 4 * n * n + 1
    if n_nodes <= deg_bound:
        raise NumericError("interpolation degree bound exceeded")
    k = np.arange(n_nodes)
    xs = np.cos(np.pi * (k + 0.5) / n_nodes)
    vals = np.array([_resultant_at(p, float(x), low) for x in xs])
    big = np.max(np.abs(vals))
    scale = _scale(p)
    candidates: list[float] = []
    if big > 0:
        phase = vals[np.argmax(np.abs(vals))] / big
        rv = (vals / phase).real / big
        cheb = C.chebfit(xs, rv, min(deg_bound, n_nodes - 1))
        for r in C.chebroots(cheb):
            # high-order zeros (symmetric curves) blur into small complex clusters
            if abs(r.imag) <= CANDIDATE_IMAG and -1.0 < r.real < 1.0:
                candidates.append(float(r.real))
        # sign changes on a fine grid catch roots the companion step may blur
        grid = np.linspace(-1 + EDGE_EPS, 1 - EDGE_EPS, 8193)
        gv = C.chebval(grid, cheb)
        for i in np.nonzero(gv[:-1] * gv[1:] < 0)[0]:
            candidates.append(0.5 * (grid[i] + grid[i + 1]))
    else:
        # resultant vanishes identically: scan unit-circle crossings of the roots directly
        candidates.extend(_crossing_scan(p, low))
    found: list[tuple[float, complex]] = []
    for s0 in sorted(candidates):
        g = _trimmed_g(p, s0, low)
        if len(np.trim_zeros(g, "b")) < 2:
            continue
        roots = poly_roots(g[::-1]).roots
        for x0 in roots:
            dist = abs(abs(x0) - 1.0)
            if dist > CANDIDATE_RADIUS:
                continue
            s1, x1, res = _newton_polish(p, s0, cmath.phase(x0))
            if not -1.0 + 1e-12 < s1 < 1.0 - 1e-12:
                continue
            if res <= 1e-12 * scale * n * n:
                if not any(abs(s1 - s2) <= 1e-9 and abs(x1 - x2) <= 1e-9 for s2, x2 in found):
                    found.append((s1, x1))
            elif dist <= 1e-8:
                raise NumericError("unit-circle root of g did not polish to a solution")
    items = [_record(p, s, x, d) for s, x in found]
    bound = 2 * (n - 1) ** 2
    if len(items) > bound:
        raise NumericError(f"found {len(items)} self-intersections, above the bound {bound}")
    _validate(p_orig, items)
    return SelfIntersectionResult(_sort(items), d, "general", bound)


def _crossing_scan(p: LaurentPolynomial, low: int, grid: int = 4096) -> list[float]:
    """s values where the product of (|root|^2 - 1) over roots of g(s, .) changes sign."""
    ss = np.linspace(-1 + 1e-9, 1 - 1e-9, grid)
    sign = []
    for s in ss:
        g = _trimmed_g(p, float(s), low)
        roots = poly_roots(g[::-1]).roots if len(np.trim_zeros(g, "b")) > 1 else np.zeros(0)
        sign.append(np.prod(np.sign(np.abs(roots) ** 2 - 1.0)) if len(roots) else 1.0)
    sign = np.asarray(sign)
    return [float(0.5 * (ss[i] + ss[i + 1])) for i in np.nonzero(sign[:-1] * sign[1:] < 0)[0]]


def self_intersections(p: LaurentPolynomial) -> SelfIntersectionResult:
    """Dispatch: closed form for two-term curves with positive exponents, resultant method otherwise."""
    if len(p) == 2 and p.min_exponent >= 1:
        (a, v), (b, w) = p.terms
        return self_intersections_two_term(v, w, a, b)
    return self_intersections_general(p)


def self_intersections_wave(a: int, b: int, c_a: complex, c_b: complex, c: float, t: float) -> SelfIntersectionResult:
    """Self-intersections of the two-term wave flow at time ``t``."""
    base = LaurentPolynomial({a: c_a, b: c_b})
    coeffs = wave_coefficients(base, c, t)
    if len(coeffs) < 2:
        raise DomainError(f"t = {t} is a degenerate time of the flow")
    v = coeffs.coefficient(a)
    w = coeffs.coefficient(b)
    return self_intersections_two_term(v, w, a, b)


# --- cusps and multiplicities -------------------------------------------------------------------


def _as_polynomial_roots(q: LaurentPolynomial) -> np.ndarray:
    """Nonzero roots of a Laurent polynomial (after clearing the power of z)."""
    if q.is_zero:
        raise DomainError("zero polynomial")
    shifted = q * LaurentPolynomial.monomial(-q.min_exponent)
    if shifted.max_exponent == 0:
        return np.zeros(0, dtype=complex)
    rs = poly_roots(shifted.polynomial_coefficients()[::-1])
    if rs.max_residual > 1e-8:
        raise NumericError("root finding failed")
    return rs.roots[rs.roots != 0]


def cusps(p: LaurentPolynomial, tol: float = 1e-8) -> list[Cusp]:
    """Zeros of ``p'`` on the unit circle where ``p''`` does not vanish."""
    dp = derivative(p)
    if dp.is_zero:
        raise DomainError("constant polynomial")
    d2 = derivative(dp)
    scale = _scale(p) * max(1, max(abs(n) for n in p.exponents)) ** 2
    out = []
    for r, _ in _distinct(_as_polynomial_roots(dp)):
        if abs(abs(r) - 1.0) > tol:
            continue
        z = r / abs(r)
        second = abs(evaluate(d2, z)) if not d2.is_zero else 0.0
        if second <= 1e-6 * scale:
            continue
        t = (cmath.phase(z) / TWO_PI) % 1.0
        out.append(Cusp(t, complex(evaluate(p, z)), abs(evaluate(dp, z)), second))
    out.sort(key=lambda cu: cu.t)
    return out


def _distinct(roots, tol: float = 1e-10):
    out: list[tuple[complex, int]] = []
    for r in roots:
        for i, (q, k) in enumerate(out):
            if abs(r - q) <= tol * max(1.0, abs(q)):
                out[i] = (q, k + 1)
                break
        else:
            out.append((complex(r), 1))
    return out


def point_multiplicity(p: LaurentPolynomial, w0: complex, tol: float = 1e-8) -> Multiplicity:
    """Number of unit-circle preimages of ``w0``.

    The point is ordinary when every branch through it is regular and no two
    branches share a tangent line (tangents ``i z p'(z)`` pairwise non-parallel).
    """
    q = p - w0
    if q.is_zero:
        raise DomainError("p is constant equal to w0")
    roots = _as_polynomial_roots(q) if len(q) > 1 or q.exponents[0] != 0 else np.zeros(0)
    on = [r / abs(r) for r, _ in _distinct(roots) if abs(abs(r) - 1.0) <= tol]
    on.sort(key=lambda z: cmath.phase(z) % TWO_PI)
    params = tuple((cmath.phase(z) / TWO_PI) % 1.0 for z in on)
    dp = derivative(p)
    dv = tuple(complex(evaluate(dp, z)) for z in on)
    tangents = [1j * z * d for z, d in zip(on, dv)]
    scale = _scale(p) * max(1, max(abs(n) for n in p.exponents))
    regular = all(abs(d) > tol * scale for d in tangents)
    ordinary = regular and all(
        abs((tangents[i] * tangents[j].conjugate()).imag) > tol * abs(tangents[i]) * abs(tangents[j])
        for i in range(len(tangents)) for j in range(i + 1, len(tangents))
    )
    return Multiplicity(len(on), params, ordinary, dv)
