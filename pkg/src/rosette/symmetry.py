"""Rotational and mirror symmetries of rosette curves, and the annulus
filled by exponential sums with rationally independent exponents."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import reduce

import numpy as np
from scipy.spatial import cKDTree

from .errors import DomainError, IndeterminateError, NumericError
from .exact import rationally_independent
from .laurent import (
    TWO_PI,
    ExponentialSum,
    LaurentPolynomial,
    circle_derivative,
    eval_circle,
)
from .numeric import poly_roots

MIRROR_TOL = 1e-10
MAX_EXTRA_ROTATION = 64


@dataclass(frozen=True)
class SymmetryReport:
    """Symmetries derived from exponent arithmetic and coefficient phases.

    ``mirror_axes`` holds pairs ``(beta, sigma)`` with
    ``p(e^{2 pi i (beta - t)}) = e^{2 pi i sigma} * conj(p(e^{2 pi i t}))``;
    the image is symmetric about the line through 0 at angle ``pi*sigma``.
    """

    rotation_order: int
    exponent_gcd: int
    symmetry_type: tuple[int, int] | None
    mirror_axes: tuple[tuple[float, float], ...]
    classification: str
    circle: bool = False
    verified_maximal: bool | None = None
    extra_rotation_orders: tuple[int, ...] = ()

    @property
    def label(self) -> str:
        if self.classification == "trivial":
            return "trivial"
        return f"{self.classification}({self.rotation_order})"

    def to_dict(self) -> dict:
        return {
            "classification": self.classification,
            "label": self.label,
            "rotation_order": self.rotation_order,
            "exponent_gcd": self.exponent_gcd,
            "symmetry_type": list(self.symmetry_type) if self.symmetry_type else None,
            "mirror_axes": [{"beta": b, "sigma": s, "axis_angle": math.pi * s} for b, s in self.mirror_axes],
            "circle": self.circle,
            "verified_maximal": self.verified_maximal,
            "extra_rotation_orders": list(self.extra_rotation_orders),
        }


def _require_terms(p: LaurentPolynomial, k: int = 2):
    if len(p) < k:
        raise DomainError(f"need at least {k} terms, got {len(p)}")


def exponent_gcd_m(p: LaurentPolynomial) -> int:
    """gcd of all pairwise exponent differences."""
    _require_terms(p)
    e = p.exponents
    return reduce(math.gcd, (b - a for a, b in zip(e, e[1:])))


def symmetry_type(p: LaurentPolynomial) -> tuple[int, int] | None:
    """``(a_1 mod m, m)`` when the least exponent is coprime with m, else None.

    ``m = 1`` carries no information and also gives None.
    """
    m = exponent_gcd_m(p)
    a1 = p.min_exponent
    if m == 1 or math.gcd(a1, m) != 1:
        return None
    return a1 % m, m


def rotation_order(p: LaurentPolynomial) -> int:
    """Order ``m / gcd(a_1, m)`` of the image rotation forced by the exponents."""
    m = exponent_gcd_m(p)
    return m // math.gcd(abs(p.min_exponent), m)


def _phase(c: complex) -> float:
    return cmath.phase(c) / TWO_PI


def _mirror_residual(p: LaurentPolynomial, beta: float, sigma: float) -> float:
    rot = cmath.exp(1j * TWO_PI * sigma)
    worst = 0.0
    for n, c in p.terms:
        lhs = c * cmath.exp(1j * TWO_PI * ((n * beta) % 1.0))
        worst = max(worst, abs(lhs - rot * c.conjugate()) / abs(c))
    return worst


def _wrap(x: float) -> float:
    x = x % 1.0
    return 0.0 if x >= 1.0 - 1e-12 or x < 1e-12 else x


def mirror_axes(p: LaurentPolynomial, tol: float = MIRROR_TOL) -> list[tuple[float, float]]:
    """All mirror symmetries ``(beta, sigma)`` with ``beta, sigma`` in [0, 1).

    Candidates for ``beta`` come from the two lowest terms; each is verified on
    every coefficient.  Pairs inducing the same image axis are merged, keeping
    the smallest ``beta``.  A single term (a circle) yields one representative
    pair, with every axis through the origin being a symmetry.
    """
    _require_terms(p, 1)
    (n1, c1) = p.terms[0]
    if len(p) == 1:
        return [(0.0, _wrap(2 * _phase(c1)))]
    n2, c2 = p.terms[1]
    d = n2 - n1
    a1, a2 = _phase(c1), _phase(c2)
    found: list[tuple[float, float]] = []
    for j in range(d):
        beta = _wrap((2 * (a1 - a2) + j) / d)
        sigma = _wrap(2 * a1 + n1 * beta)
        if _mirror_residual(p, beta, sigma) > tol:
            continue
        if any(abs(sigma - s) < 1e-9 or abs(abs(sigma - s) - 1) < 1e-9 for _, s in found):
            continue
        found.append((beta, sigma))
    found.sort(key=lambda bs: (bs[1], bs[0]))
    return found


def distance_to_curve(p: LaurentPolynomial, points, samples: int = 8192, newton_steps: int = 8,
                      starts: int = 16) -> np.ndarray:
    """Distance from each point to the closed curve ``p(S^1)``.

    The ``starts`` nearest samples (KD-tree) seed Newton's method on the
    parameter for the stationarity condition ``Re(conj(p(t) - w) p'(t)) = 0``;
    several seeds keep points near a crossing from locking onto the wrong branch.
    """
    pts = np.atleast_1d(np.asarray(points, dtype=complex))
    t = np.arange(samples) / samples
    z = eval_circle(p, t)
    tree = cKDTree(np.column_stack([z.real, z.imag]))
    k = max(1, min(starts, samples))
    dist, idx = tree.query(np.column_stack([pts.real, pts.imag]), k=k)
    dist, idx = dist.reshape(len(pts), k), idx.reshape(len(pts), k)
    tt = t[idx]
    target = pts[:, None]
    best = dist.min(axis=1)
    for _ in range(newton_steps):
        f0 = eval_circle(p, tt) - target
        f1 = circle_derivative(p, tt, 1)
        f2 = circle_derivative(p, tt, 2)
        g = np.real(np.conj(f0) * f1)
        h = np.abs(f1) ** 2 + np.real(np.conj(f0) * f2)
        ok = h > 0
        step = np.zeros_like(tt)
        step[ok] = g[ok] / h[ok]
        step = np.clip(step, -0.5 / samples, 0.5 / samples)
        tt = tt - step
        best = np.minimum(best, np.abs(eval_circle(p, tt) - target).min(axis=1))
    return best


def _extra_rotations(p: LaurentPolynomial, q: int, samples: int = 4096) -> list[int]:
    """Rotation orders r (multiples of q, r <= 64) that also map the image onto itself."""
    t = np.arange(samples) / samples
    z = eval_circle(p, t)
    scale = max(p.coefficient_scale, 1e-300)
    tol = 1e-7 * scale
    extra = []
    for r in range(2 * q, MAX_EXTRA_ROTATION + 1, q):
        rotated = z * cmath.exp(1j * TWO_PI / r)
        # cheap rejection on a subsample before the full refined check
        sub = rotated[:: max(1, samples // 256)]
        if np.max(distance_to_curve(p, sub, samples, 4)) > 1e3 * tol:
            continue
        if np.max(distance_to_curve(p, rotated, samples)) <= tol:
            extra.append(r)
    return extra


def classify_group(p: LaurentPolynomial, verify_maximal: bool = True) -> SymmetryReport:
    """Assemble rotation order, symmetry type and mirror axes into a group label."""
    _require_terms(p)
    m = exponent_gcd_m(p)
    q = rotation_order(p)
    st = symmetry_type(p)
    mirrors = tuple(mirror_axes(p))
    if mirrors:
        cls = "dihedral"
    elif q >= 2:
        cls = "cyclic"
    else:
        cls = "trivial"
    maximal = None
    extra: tuple[int, ...] = ()
    if verify_maximal:
        extra = tuple(_extra_rotations(p, q))
        maximal = not extra
    return SymmetryReport(q, m, st, mirrors, cls, False, maximal, extra)


def circle_report(p: LaurentPolynomial) -> SymmetryReport:
    """Report for a single-term curve: a circle, symmetric under all of O(2)."""
    _require_terms(p, 1)
    if len(p) != 1:
        raise DomainError("circle_report needs a single-term polynomial")
    return SymmetryReport(0, 0, None, tuple(mirror_axes(p)), "continuous", True, True, ())


def analyze_symmetry(p: LaurentPolynomial, verify_maximal: bool = True) -> SymmetryReport:
    """classify_group for curves with two or more terms, circle_report otherwise."""
    if len(p) == 1:
        return circle_report(p)
    return classify_group(p, verify_maximal)


def _match(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    if len(a) != len(b):
        return False
    if len(a) == 0:
        return True
    used = np.zeros(len(b), dtype=bool)
    for x in a:
        d = np.abs(b - x)
        d[used] = np.inf
        j = int(np.argmin(d))
        if d[j] > tol * max(1.0, abs(x)):
            return False
        used[j] = True
    return True


def zero_pole_orbit_check(p: LaurentPolynomial, report: SymmetryReport, domain_order: int | None = None,
                          tol: float = 1e-8) -> bool:
    """Check that the symmetry generators permute the zeros and the pole at 0.

    A symmetry of type ``(k, m)`` comes from the domain rotation
    ``z -> e^{2 pi i/m} z`` and a mirror ``(beta, sigma)`` from
    ``z -> e^{2 pi i beta} conj(z)``; both must map the zero set of
    ``z^(-a_min) p`` onto itself.  ``domain_order`` overrides the rotation
    (used to test a claimed symmetry).  The pole at 0, when present, is fixed
    by both maps.
    """
    if len(p) < 2:
        raise DomainError("a single-term curve is a reparametrized circle")
    shifted = p * LaurentPolynomial.monomial(-p.min_exponent)
    coeffs = shifted.polynomial_coefficients()[::-1]
    rs = poly_roots(coeffs)
    if rs.max_residual > 1e-8:
        raise NumericError("root finding failed for the zero-orbit check")
    zeros = rs.roots
    order = report.exponent_gcd if domain_order is None else domain_order
    gens = []
    if order and order > 1:
        w = cmath.exp(1j * TWO_PI / order)
        gens.append(lambda z, w=w: w * z)
    for beta, _ in report.mirror_axes:
        e = cmath.exp(1j * TWO_PI * beta)
        gens.append(lambda z, e=e: e * np.conj(z))
    return all(_match(g(zeros), zeros, tol) for g in gens)


# --- exponential sums ---------------------------------------------------------------


def conj_symmetry_check(g: ExponentialSum, samples: int = 256, tol: float = 1e-10) -> bool:
    """Check ``conj(gamma(t)) == gamma(-t)`` on a sample grid.

    The identity holds exactly when every weight is real; complex weights
    generally break it.
    """
    t = np.linspace(-1.0, 1.0, samples)
    lhs = np.conj(g(t))
    rhs = g(-t)
    scale = max(sum(abs(w) for w in g.weights), 1e-300)
    return bool(np.max(np.abs(lhs - rhs)) <= tol * scale)


@dataclass(frozen=True)
class AnnulusEstimate:
    """Annulus ``r_min <= |z| <= r_max`` and how much of it a finite orbit covers."""

    r_min: float
    r_max: float
    coverage_fraction: float | None
    horizon: float
    radial_cells: int = 0
    angular_cells: int = 0
    analytic_r_min: float | None = None
    sample_r_min: float | None = None
    sample_r_max: float | None = None
    r_max_exact: bool = False
    steps: int = 0
    extras: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "r_min": self.r_min,
            "r_max": self.r_max,
            "coverage_fraction": self.coverage_fraction,
            "horizon": self.horizon,
            "grid": [self.radial_cells, self.angular_cells],
            "analytic_r_min": self.analytic_r_min,
            "sample_r_min": self.sample_r_min,
            "sample_r_max": self.sample_r_max,
            "r_max_exact": self.r_max_exact,
            "steps": self.steps,
        }


def _common_phase(weights) -> bool:
    ph = [w / abs(w) for w in weights]
    return all(abs(x - ph[0]) <= 1e-14 for x in ph)


def annulus_bounds(g: ExponentialSum, horizon: float, samples: int = 65536) -> AnnulusEstimate:
    """Radii of the annulus swept by ``gamma`` on ``[0, horizon]``.

    ``r_max`` is ``|sum w_k|`` (attained at t = 0) when all weights share a
    phase, else the sampled maximum.  ``r_min`` is the sampled minimum; a
    two-term sum also reports the analytic bound ``| |v| - |w| |``.
    """
    if not horizon > 0:
        raise DomainError("horizon must be positive")
    if len(g) == 1:
        r = abs(g.weights[0])
        return AnnulusEstimate(r, r, None, horizon, analytic_r_min=r, sample_r_min=r, sample_r_max=r,
                               r_max_exact=True)
    t = np.linspace(0.0, horizon, samples)
    mod = np.abs(g(t))
    smin, smax = float(mod.min()), float(mod.max())
    exact = _common_phase(g.weights)
    r_max = abs(sum(g.weights)) if exact else smax
    analytic = None
    if len(g) == 2:
        v, w = g.weights
        analytic = abs(abs(v) - abs(w))
    return AnnulusEstimate(smin, r_max, None, horizon, analytic_r_min=analytic, sample_r_min=smin,
                           sample_r_max=smax, r_max_exact=exact)


def density_coverage(g: ExponentialSum, horizon: float, radial_cells: int = 30, angular_cells: int = 30,
                     assume_independent: bool = False, chunk: int = 1 << 18) -> AnnulusEstimate:
    """Fraction of polar grid cells of the annulus visited by ``gamma([0, horizon])``.

    The annulus is ``[r_min, r_max]`` with the analytic two-term lower bound
    when available.  The time step keeps consecutive points less than half a
    cell apart, using ``speed_bound`` as a Lipschitz constant.  Requires
    rationally independent exponents (decided exactly for rational and
    square-root exponents; opaque floats need the assertion).
    """
    if radial_cells < 1 or angular_cells < 1:
        raise DomainError("grid dimensions must be positive")
    try:
        independent = rationally_independent(g.exponents)
    except IndeterminateError:
        if not assume_independent:
            raise
        independent = True
    if not independent:
        raise DomainError("exponents are not rationally independent; the orbit is not dense")
    bounds = annulus_bounds(g, horizon)
    r_lo = bounds.analytic_r_min if bounds.analytic_r_min is not None else bounds.r_min
    r_hi = bounds.r_max
    if len(g) == 2:
        r_hi = max(r_hi, sum(abs(w) for w in g.weights))
    dr = (r_hi - r_lo) / radial_cells
    dtheta = TWO_PI / angular_cells
    cell = min(dr, max(r_lo, dr) * dtheta) if dr > 0 else max(r_lo, 1e-300) * dtheta
    speed = g.speed_bound()
    h = 0.5 * cell / speed if speed > 0 else horizon
    n_steps = int(math.ceil(horizon / h)) + 1
    visited = np.zeros(radial_cells * angular_cells, dtype=bool)
    for start in range(0, n_steps, chunk):
        idx = np.arange(start, min(start + chunk, n_steps))
        t = np.minimum(idx * h, horizon)
        z = g(t)
        r = np.abs(z)
        ri = np.floor((r - r_lo) / dr).astype(np.int64) if dr > 0 else np.zeros(len(r), dtype=np.int64)
        ri = np.clip(ri, 0, radial_cells - 1)
        inside = (r >= r_lo - 1e-12) & (r <= r_hi + 1e-12)
        ai = np.floor(np.mod(np.angle(z), TWO_PI) / dtheta).astype(np.int64) % angular_cells
        visited[(ri * angular_cells + ai)[inside]] = True
    frac = float(visited.mean())
    return AnnulusEstimate(r_lo, r_hi, frac, horizon, radial_cells, angular_cells,
                           bounds.analytic_r_min, bounds.sample_r_min, bounds.sample_r_max,
                           bounds.r_max_exact, n_steps)
