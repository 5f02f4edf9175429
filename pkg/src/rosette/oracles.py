"""Brute-force reference computations used to cross-check the algebraic solvers.

These work directly on sampled curves and know nothing about Chebyshev forms
or resultants, so agreement with :mod:`rosette.selfint` is meaningful.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.spatial import cKDTree

from .laurent import LaurentPolynomial, circle_derivative, eval_circle

TWO_PI = 2 * math.pi


def _segment_hits(z: np.ndarray, i: np.ndarray, j: np.ndarray):
    """Proper intersections of segments i and j of the closed polyline z; returns (ti, tj) fractions."""
    n = len(z)
    p0, p1 = z[i], z[(i + 1) % n]
    q0, q1 = z[j], z[(j + 1) % n]
    r = p1 - p0
    s = q1 - q0
    denom = (r.real * s.imag - r.imag * s.real)
    qp = q0 - p0
    with np.errstate(divide="ignore", invalid="ignore"):
        u = (qp.real * s.imag - qp.imag * s.real) / denom
        v = (qp.real * r.imag - qp.imag * r.real) / denom
    ok = (denom != 0) & (u >= 0) & (u < 1) & (v >= 0) & (v < 1)
    return ok, u, v


def _newton_pair(p: LaurentPolynomial, t1: float, t2: float, steps: int = 40):
    for _ in range(steps):
        f = eval_circle(p, t1) - eval_circle(p, t2)
        d1 = circle_derivative(p, t1)
        d2 = -circle_derivative(p, t2)
        jac = np.array([[d1.real, d2.real], [d1.imag, d2.imag]])
        try:
            step = np.linalg.solve(jac, [f.real, f.imag])
        except np.linalg.LinAlgError:
            break
        t1 -= step[0]
        t2 -= step[1]
        if abs(step[0]) + abs(step[1]) < 1e-16:
            break
    return t1 % 1.0, t2 % 1.0, abs(eval_circle(p, t1) - eval_circle(p, t2))


def brute_force_self_intersections(p: LaurentPolynomial, samples: int = 4096, tol: float = 1e-9):
    """Crossings of ``p(S^1)`` found from a sampled polyline.

    Candidate segment pairs come from a KD-tree on segment midpoints; each
    proper crossing is refined by 2-D Newton on ``p(e^{2 pi i t1}) = p(e^{2 pi i t2})``.
    Returns a list of ``(t1, t2, point)`` with ``t1 < t2``, one per parameter pair.
    """
    t = np.arange(samples) / samples
    z = eval_circle(p, t)
    mids = 0.5 * (z + np.roll(z, -1))
    seg = np.abs(np.roll(z, -1) - z)
    tree = cKDTree(np.column_stack([mids.real, mids.imag]))
    pairs = tree.query_pairs(r=float(seg.max()) * 1.0000001, output_type="ndarray")
    if len(pairs) == 0:
        return []
    i, j = pairs[:, 0], pairs[:, 1]
    gap = np.minimum(np.abs(i - j), samples - np.abs(i - j))
    keep = gap > 1
    i, j = i[keep], j[keep]
    ok, u, v = _segment_hits(z, i, j)
    scale = max(p.coefficient_scale, 1e-300)
    out: list[tuple[float, float, complex]] = []
    for a, b, ua, vb in zip(i[ok], j[ok], u[ok], v[ok]):
        t1, t2, res = _newton_pair(p, (a + ua) / samples, (b + vb) / samples)
        if res > tol * scale:
            continue
        if abs(((t1 - t2 + 0.5) % 1.0) - 0.5) < 1e-6:
            continue
        t1, t2 = sorted((t1, t2))
        if any(abs(t1 - s1) < 1e-7 and abs(t2 - s2) < 1e-7 for s1, s2, _ in out):
            continue
        out.append((t1, t2, complex(eval_circle(p, t1))))
    out.sort()
    return out


def hausdorff(a, b) -> float:
    """Hausdorff distance between two finite point sets in the plane."""
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    if len(a) == 0 and len(b) == 0:
        return 0.0
    if len(a) == 0 or len(b) == 0:
        return math.inf
    d = np.abs(a[:, None] - b[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def brute_force_preimages(p: LaurentPolynomial, w0: complex, samples: int = 8192, tol: float = 1e-8) -> list[float]:
    """Parameters ``t`` with ``p(e^{2 pi i t}) = w0``, from local minima of the distance."""
    t = np.arange(samples) / samples
    d = np.abs(eval_circle(p, t) - w0)
    mins = np.nonzero((d <= np.roll(d, 1)) & (d <= np.roll(d, -1)))[0]
    scale = max(p.coefficient_scale, 1e-300)
    out: list[float] = []
    for k in mins:
        tk = float(t[k])
        for _ in range(60):
            f = eval_circle(p, tk) - w0
            df = circle_derivative(p, tk)
            d2 = circle_derivative(p, tk, 2)
            g = (f.conjugate() * df).real
            h = abs(df) ** 2 + (f.conjugate() * d2).real
            if h == 0:
                break
            step = g / h
            tk -= step
            if abs(step) < 1e-16:
                break
        if abs(eval_circle(p, tk) - w0) <= tol * scale:
            tk %= 1.0
            if not any(abs(((tk - s + 0.5) % 1.0) - 0.5) < 1e-7 for s in out):
                out.append(tk)
    return sorted(out)
