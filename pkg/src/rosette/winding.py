"""Winding numbers: numeric angle tracking, the argument principle, and the
closed form for two-term curves under the wave flow."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NumericError
from .laurent import CurveSample, LaurentPolynomial, eval_circle
from .numeric import GRID_POINTS, poly_roots, real_roots_fn

NEAR_CURVE = 1e-6
BOUNDARY_TOL = 1e-8
K_TOL = 1e-9
COS_ZERO = 1e-12


def _points(samples) -> np.ndarray:
    if isinstance(samples, np.ndarray):
        return samples.astype(complex)
    pts = [s.point if isinstance(s, CurveSample) else s for s in samples]
    return np.asarray(pts, dtype=complex)


def winding_numeric(samples, w0: complex = 0j) -> int:
    """Winding number of the closed polygon through ``samples`` around ``w0``.

    Sums the principal angle increments of ``sample - w0`` (including the
    closing step).  Raises :class:`NumericError` when the curve comes within
    1e-6 of ``w0`` or when an angular step reaches pi/2.
    """
    z = _points(samples) - w0
    if len(z) < 3:
        raise DomainError("need at least three samples")
    if np.min(np.abs(z)) <= NEAR_CURVE:
        raise NumericError("curve passes too close to the winding point")
    steps = np.angle(np.roll(z, -1) / z)
    if np.max(np.abs(steps)) >= math.pi / 2:
        raise NumericError("angular step too large; resample the curve more densely")
    return int(round(float(steps.sum()) / (2 * math.pi)))


def winding_of_curve(p: LaurentPolynomial, w0: complex = 0j, samples: int = 1024, max_samples: int = 1 << 20) -> int:
    """winding_numeric on ``p(S^1)``, doubling the sample count as needed."""
    n = samples
    while True:
        t = np.arange(n) / n
        try:
            return winding_numeric(eval_circle(p, t), w0)
        except NumericError as exc:
            if "too close" in str(exc) or n >= max_samples:
                raise
            n *= 2


def winding_argument_principle(p: LaurentPolynomial, w0: complex = 0j) -> int:
    """Zeros minus poles of ``p - w0`` inside the unit disk.

    With ``mu = max(0, -a_min)``, counts the roots of ``z^mu (p(z) - w0)``
    strictly inside the disk and subtracts ``mu``.  Raises
    :class:`NumericError` when a root lies within 1e-8 of the unit circle.
    """
    q = p - w0
    if q.is_zero or (len(q) == 1 and q.exponents[0] == 0):
        raise DomainError("constant curve has no winding number")
    mu = max(0, -q.min_exponent)
    shifted = q * LaurentPolynomial.monomial(mu)
    coeffs = shifted.polynomial_coefficients()[::-1]
    if len(coeffs) < 2:
        return -mu
    mod = np.abs(poly_roots(coeffs).roots)
    if np.any(np.abs(mod - 1.0) <= BOUNDARY_TOL):
        raise NumericError("a root lies on the unit circle; the point is on the curve")
    return int(np.sum(mod < 1.0)) - mu


def _cosines(a: int, b: int, c: float, t: float) -> tuple[float, float]:
    ca = math.cos(2 * math.pi * a * c * t)
    cb = math.cos(2 * math.pi * b * c * t)
    return (0.0 if abs(ca) <= COS_ZERO else ca), (0.0 if abs(cb) <= COS_ZERO else cb)


def coefficient_ratio(a: int, b: int, c_a: complex, c_b: complex, c: float, t: float) -> float:
    """``|K| = |c_b cos(2 pi b c t)| / |c_a cos(2 pi a c t)|`` (may be 0 or inf)."""
    ca, cb = _cosines(a, b, c, t)
    if ca == 0 and cb == 0:
        raise DomainError("both terms vanish: the curve degenerates to a point")
    if ca == 0:
        return math.inf
    return abs(c_b * cb) / abs(c_a * ca)


def two_term_winding(a: int, b: int, c_a: complex, c_b: complex, c: float, t: float,
                     tol: float = K_TOL) -> int | None:
    """Winding number about 0 of ``u(., t)`` for ``c_a z^a + c_b z^b``.

    Writing the curve as ``z^a (1 + K z^(b-a))``: the winding is ``a`` when
    ``|K| < 1`` and ``b`` when ``|K| > 1`` (for either sign of ``a``); None when
    ``|K|`` is within ``tol`` of 1, where the curve passes through 0.
    """
    if not a < b:
        raise DomainError("need a < b")
    if c_a == 0 or c_b == 0:
        raise DomainError("both coefficients must be nonzero")
    k = coefficient_ratio(a, b, c_a, c_b, c, t)
    if abs(k - 1.0) <= tol:
        return None
    return a if k < 1.0 else b


def two_term_period(a: int, b: int, c: float) -> float:
    g = math.gcd(abs(a), abs(b))
    if g == 0:
        raise DomainError("constant curve has no period")
    return 1.0 / (c * g)


def crossing_function(a, b, c_a, c_b, c, weight_a: float = 1.0, weight_b: float = 1.0):
    """``(wb |c_b| cos_b)^2 - (wa |c_a| cos_a)^2`` as a vectorized function of t."""
    ka = (weight_a * abs(c_a)) ** 2
    kb = (weight_b * abs(c_b)) ** 2

    def f(t):
        t = np.asarray(t, dtype=float)
        return kb * np.cos(2 * np.pi * b * c * t) ** 2 - ka * np.cos(2 * np.pi * a * c * t) ** 2

    def df(t):
        t = np.asarray(t, dtype=float)
        return (-kb * 2 * np.pi * b * c * np.sin(4 * np.pi * b * c * t)
                + ka * 2 * np.pi * a * c * np.sin(4 * np.pi * a * c * t))

    return f, df, max(ka, kb)


def solve_on_interval(f, df, lo: float, hi: float, scale: float, grid: int | None = None) -> list[float]:
    """Roots of ``f`` on the closed interval ``[lo, hi]``."""
    roots = [float(r) for r in real_roots_fn(f, lo, hi, df, lambda x: scale, grid=grid or GRID_POINTS)]
    for end in (lo, hi):
        if abs(float(f(end))) <= 1e-12 * scale:
            roots.append(float(end))
    roots.sort()
    out: list[float] = []
    for r in roots:
        if not out or r - out[-1] > 1e-10:
            out.append(r)
    return out


@dataclass(frozen=True)
class WindingProfile:
    """Piecewise-constant winding number about 0 along the wave flow."""

    speed: float
    period: float
    window: tuple[float, float]
    breakpoints: tuple[float, ...]
    values: tuple[int | None, ...]
    undefined_times: tuple[float, ...]
    degenerate_times: tuple[float, ...] = ()
    extras: dict = field(default_factory=dict)

    def segments(self) -> list[tuple[float, float, int | None]]:
        edges = [self.window[0], *self.breakpoints, self.window[1]]
        return [(lo, hi, v) for lo, hi, v in zip(edges, edges[1:], self.values)]

    def value_at(self, t: float) -> int | None:
        for lo, hi, v in self.segments():
            if lo < t < hi:
                return v
        return None

    def to_dict(self) -> dict:
        return {
            "speed": self.speed,
            "period": self.period,
            "window": list(self.window),
            "breakpoints": list(self.breakpoints),
            "values": list(self.values),
            "undefined_times": list(self.undefined_times),
            "degenerate_times": list(self.degenerate_times),
        }


def winding_profile(a: int, b: int, c_a: complex, c_b: complex, c: float,
                    window: tuple[float, float] | None = None) -> WindingProfile:
    """Winding profile on ``window`` (default: one full period ``[0, T]``).

    Breakpoints are the times with ``|c_b cos(2 pi b c t)| = |c_a cos(2 pi a c t)|``,
    i.e. ``|phi(t)| = |c_a| / |c_b|``; segment values come from
    :func:`two_term_winding` at the segment midpoints.
    """
    if not c > 0:
        raise DomainError("speed must be positive")
    if not a < b:
        raise DomainError("need a < b")
    period = two_term_period(a, b, c)
    lo, hi = window if window is not None else (0.0, period)
    f, df, scale = crossing_function(a, b, c_a, c_b, c)
    grid = max(2048, int(64 * (hi - lo) * c * max(abs(a), abs(b))))
    roots = solve_on_interval(f, df, lo, hi, scale, grid)
    inner = tuple(r for r in roots if lo < r < hi)
    edges = [lo, *inner, hi]
    values = []
    for x0, x1 in zip(edges, edges[1:]):
        values.append(two_term_winding(a, b, c_a, c_b, c, 0.5 * (x0 + x1)))
    degenerate = []
    for n in {abs(a), abs(b)} - {0}:
        k = 0
        while True:
            t = (2 * k + 1) / (4 * n * c)
            if t > hi + 1e-12:
                break
            if t >= lo - 1e-12:
                degenerate.append(t)
            k += 1
    return WindingProfile(c, period, (lo, hi), inner, tuple(values), tuple(roots), tuple(sorted(set(degenerate))))
