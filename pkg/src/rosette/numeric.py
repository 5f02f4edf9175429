"""Numerical kernels: Chebyshev recurrences, sine/cosine ratio functions,
polynomial roots, real root isolation and Sylvester resultants.

Polynomial coefficient arrays are in descending order (numpy convention):
``[a_n, ..., a_1, a_0]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, NumericError

GRID_POINTS = 2048
ROOT_DEDUP = 1e-10


# --- Chebyshev polynomials ---------------------------------------------------------


def cheb_T(d: int, y):
    """Chebyshev polynomial of the first kind by forward recurrence."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    y = np.asarray(y, dtype=float) if not np.iscomplexobj(y) else np.asarray(y)
    prev, cur = np.ones_like(y), y.copy()
    if d == 0:
        return _scalar(prev)
    for _ in range(d - 1):
        prev, cur = cur, 2 * y * cur - prev
    return _scalar(cur)


def cheb_U(k: int, y):
    """Chebyshev polynomial of the second kind; ``U_{-1} = 0``."""
    if k < -1:
        raise ValueError("degree must be at least -1")
    y = np.asarray(y, dtype=float) if not np.iscomplexobj(y) else np.asarray(y)
    if k == -1:
        return _scalar(np.zeros_like(y))
    prev, cur = np.zeros_like(y), np.ones_like(y)
    for _ in range(k):
        prev, cur = cur, 2 * y * cur - prev
    return _scalar(cur)


def cheb_T_coefficients(d: int) -> np.ndarray:
    """Power-basis coefficients of ``T_d`` (descending)."""
    return np.polynomial.chebyshev.cheb2poly([0] * d + [1])[::-1].astype(float)


def _scalar(a):
    return a.item() if isinstance(a, np.ndarray) and a.ndim == 0 else a


# --- ratio functions -------------------------------------------------------------


def _near_integer(x: np.ndarray, tol: float = 1e-12):
    j = np.rint(x)
    return j.astype(np.int64), np.abs(x - j) <= tol * np.maximum(1.0, np.abs(x))


def psi(a: int, b: int, theta):
    """``sin(2 pi a theta) / sin(2 pi b theta)`` extended by continuity.

    At common zeros of numerator and denominator the two-sided limit
    ``a cos(2 pi a theta) / (b cos(2 pi b theta))`` is returned; where only the
    denominator vanishes the result is an infinity carrying the sign of the
    right-hand limit.
    """
    if not (0 < a < b):
        raise DomainError("psi needs 0 < a < b")
    th = np.asarray(theta, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.sin(2 * np.pi * a * th) / np.sin(2 * np.pi * b * th)
    j, hit = _near_integer(2 * b * th)
    for idx in zip(*np.nonzero(np.atleast_1d(hit))):
        jj = int(np.atleast_1d(j)[idx])
        if (jj * a) % b == 0:
            val = (a / b) * (-1) ** ((jj * a // b) % 2) * (-1) ** (jj % 2)
        else:
            num = math.sin(math.pi * jj * a / b)
            val = math.copysign(math.inf, num * (-1) ** (jj % 2))
        if out.ndim == 0:
            out = np.float64(val)
        else:
            out[idx] = val
    return _scalar(np.asarray(out))


def phi(a: int, b: int, c: float, t):
    """``cos(2 pi b c t) / cos(2 pi a c t)`` extended by continuity.

    Common zeros get the two-sided limit ``b sin(2 pi b c t) / (a sin(2 pi a c t))``;
    denominator-only zeros give a signed infinity (right-hand limit sign).
    """
    if not (0 < a < b):
        raise DomainError("phi needs 0 < a < b")
    if not c > 0:
        raise DomainError("speed must be positive")
    tt = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.cos(2 * np.pi * b * c * tt) / np.cos(2 * np.pi * a * c * tt)
    j, hit = _near_integer(4 * a * c * tt)
    hit = hit & (np.abs(j) % 2 == 1)
    for idx in zip(*np.nonzero(np.atleast_1d(hit))):
        jj = int(np.atleast_1d(j)[idx])
        den_sin = (-1) ** (((jj - 1) // 2) % 2)  # sin(pi jj / 2)
        if (jj * b) % a == 0 and (jj * b // a) % 2 == 1:
            q = jj * b // a
            val = (b / a) * (-1) ** (((q - 1) // 2) % 2) * den_sin
        else:
            num = math.cos(math.pi * jj * b / (2 * a))
            val = math.copysign(math.inf, -num * den_sin)
        if out.ndim == 0:
            out = np.float64(val)
        else:
            out[idx] = val
    return _scalar(np.asarray(out))


# --- complex roots -----------------------------------------------------------------


@dataclass(frozen=True)
class RootSet:
    """All roots of a polynomial, repeated according to multiplicity."""

    roots: np.ndarray
    multiplicities: np.ndarray
    max_residual: float
    method: str = "aberth"

    def __len__(self):
        return len(self.roots)

    def distinct(self) -> list[tuple[complex, int]]:
        seen: list[tuple[complex, int]] = []
        for r, m in zip(self.roots, self.multiplicities):
            if not any(abs(r - s) <= ROOT_DEDUP * max(1.0, abs(s)) for s, _ in seen):
                seen.append((complex(r), int(m)))
        return seen


def _strip(coeffs) -> np.ndarray:
    c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    if c.ndim != 1:
        raise ValueError("coefficients must be one-dimensional")
    if not np.all(np.isfinite(c)):
        raise NumericError("non-finite polynomial coefficient")
    nz = np.nonzero(c)[0]
    if len(nz) == 0:
        raise DomainError("zero polynomial")
    return c[nz[0]:]


def _relative_residual(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    val = np.abs(np.polyval(c, z))
    scale = np.polyval(np.abs(c), np.abs(z))
    return val / np.maximum(scale, np.finfo(float).tiny)


def _aberth(c: np.ndarray, max_iter: int) -> tuple[np.ndarray, bool]:
    n = len(c) - 1
    dc = np.polyder(c)
    # start on a circle whose radius is the geometric mean of the root moduli
    radius = abs(c[-1] / c[0]) ** (1.0 / n)
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    z = radius * np.exp(1j * angles)
    done = np.zeros(n, dtype=bool)
    eps = np.finfo(float).eps
    for _ in range(max_iter):
        pv = np.polyval(c, z)
        dv = np.polyval(dc, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = 1.0 / (dv / pv - s)
        w[pv == 0] = 0.0
        w[~np.isfinite(w)] = 0.0
        w[done] = 0.0
        z = z - w
        done |= np.abs(w) <= 4 * eps * np.maximum(np.abs(z), eps)
        if done.all():
            return z, True
    return z, bool(np.all(_relative_residual(c, z) <= 1e-12))


def _cluster(z: np.ndarray, tol: float) -> tuple[np.ndarray, np.ndarray]:
    n = len(z)
    label = -np.ones(n, dtype=int)
    groups: list[list[int]] = []
    for i in range(n):
        if label[i] >= 0:
            continue
        label[i] = len(groups)
        members = [i]
        stack = [i]
        while stack:
            k = stack.pop()
            for j in range(n):
                if label[j] < 0 and abs(z[j] - z[k]) <= tol * max(1.0, abs(z[k])):
                    label[j] = label[i]
                    members.append(j)
                    stack.append(j)
        groups.append(members)
    out = z.copy()
    mult = np.ones(n, dtype=int)
    for members in groups:
        if len(members) > 1:
            out[members] = z[members].mean()
            mult[members] = len(members)
    return out, mult


def _polish_multiple(c: np.ndarray, roots: np.ndarray, mult: np.ndarray) -> np.ndarray:
    """A root of multiplicity m is a simple root of the (m-1)-th derivative."""
    out = roots.copy()
    for r in np.unique(roots[mult > 1]):
        m = int(mult[roots == r][0])
        d = np.polyder(c, m - 1)
        dd = np.polyder(d)
        z = r
        for _ in range(8):
            dv = np.polyval(dd, z)
            if dv == 0:
                break
            step = np.polyval(d, z) / dv
            z = z - step
            if abs(step) <= 4 * np.finfo(float).eps * max(abs(z), 1.0):
                break
        if abs(z - r) <= 1e-4 * max(1.0, abs(r)):
            out[roots == r] = z
    return out


def _validate_clusters(c, raw, merged, mult):
    """Undo merges whose polished centre is not a root to working precision."""
    res = _relative_residual(c, merged)
    bad = (mult > 1) & (res > 1e-12)
    merged = merged.copy()
    mult = mult.copy()
    merged[bad] = raw[bad]
    mult[bad] = 1
    return merged, mult


def poly_roots(coefficients, max_iter: int = 500, cluster_tol: float = 1e-4) -> RootSet:
    """All complex roots of a polynomial given in descending coefficient order.

    Deterministic simultaneous Aberth-Ehrlich iteration from a fixed circle;
    falls back to companion-matrix eigenvalues if it does not converge.
    Clustered approximations of a multiple root are replaced by their mean.
    """
    c = _strip(coefficients)
    if len(c) < 2:
        raise DomainError("polynomial of degree 0 has no roots")
    nz = np.nonzero(c)[0]
    n_zero = len(c) - 1 - nz[-1]
    core = c[: nz[-1] + 1]
    roots = np.zeros(0, dtype=complex)
    method = "aberth"
    if len(core) > 1:
        core = core / core[0]
        z, ok = _aberth(core, max_iter)
        # widely spread root moduli can trap every start near the smallest root
        if not ok or np.max(_relative_residual(core, z)) > 1e-10:
            method = "companion"
            z = np.roots(core).astype(complex)
        roots = z
    roots = np.concatenate([roots, np.zeros(n_zero, dtype=complex)])
    raw = roots
    roots, mult = _cluster(raw, cluster_tol)
    roots = _polish_multiple(c, roots, mult)
    roots, mult = _validate_clusters(c, raw, roots, mult)
    order = np.lexsort((roots.imag, roots.real))
    roots, mult = roots[order], mult[order]
    res = float(np.max(_relative_residual(c, roots))) if len(roots) else 0.0
    return RootSet(roots, mult, res, method)


# --- real roots --------------------------------------------------------------------


def _refine(f, lo, hi):
    return brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)


def real_roots_fn(f, lo: float, hi: float, df=None, scale=None, grid: int = GRID_POINTS,
                  touch_tol: float = 1e-10) -> list[float]:
    """Real roots of a smooth vectorized function on the open interval (lo, hi).

    Sign changes on a uniform grid are refined by Brent's method.  If ``df``
    is given, its sign changes locate critical points; a critical point where
    ``|f| <= touch_tol * scale`` is reported as a touching root, and one where
    ``f`` changes sign relative to the cell ends splits the cell.
    """
    if not lo < hi:
        raise ValueError("need lo < hi")
    xs = np.linspace(lo, hi, grid + 1)
    fx = np.asarray(f(xs), dtype=float)
    sc = (lambda x: 1.0) if scale is None else scale
    found: list[float] = []
    for i in range(grid):
        x0, x1, f0, f1 = xs[i], xs[i + 1], fx[i], fx[i + 1]
        if f0 == 0.0:
            found.append(x0)
        if f0 * f1 < 0:
            found.append(_refine(f, x0, x1))
    if fx[-1] == 0.0:
        found.append(xs[-1])
    if df is not None:
        dx = np.asarray(df(xs), dtype=float)
        for i in range(grid):
            if dx[i] * dx[i + 1] < 0:
                xc = _refine(df, xs[i], xs[i + 1])
                fc = float(f(xc))
                if abs(fc) <= touch_tol * sc(xc):
                    found.append(xc)
                elif fx[i] * fc < 0 and fx[i + 1] * fc < 0:
                    found.append(_refine(f, xs[i], xc))
                    found.append(_refine(f, xc, xs[i + 1]))
    found = sorted(x for x in found if lo < x < hi)
    out: list[float] = []
    for x in found:
        if not out or x - out[-1] > ROOT_DEDUP:
            out.append(x)
    return out


def real_roots(coefficients, lo: float, hi: float) -> list[float]:
    """Real roots in (lo, hi) of a real polynomial (descending coefficients)."""
    c = np.asarray(coefficients, dtype=float)
    nz = np.nonzero(c)[0]
    if len(nz) == 0:
        raise DomainError("zero polynomial")
    c = c[nz[0]:]
    if len(c) == 1:
        return []
    dc = np.polyder(c)
    ac = np.abs(c)

    def f(x):
        return np.polyval(c, x)

    def df(x):
        return np.polyval(dc, x)

    def scale(x):
        return float(np.polyval(ac, abs(x)))

    return real_roots_fn(f, lo, hi, df if len(c) > 2 else None, scale)


# --- resultants ----------------------------------------------------------------------


def sylvester_matrix(p, q) -> np.ndarray:
    """Sylvester matrix of two polynomials in descending coefficient order."""
    p, q = _strip(p), _strip(q)
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    mat = np.zeros((size, size), dtype=complex)
    for i in range(n):
        mat[i, i:i + m + 1] = p
    for i in range(m):
        mat[n + i, i:i + n + 1] = q
    return mat


def sylvester_resultant(p, q) -> complex:
    """Resultant as the Sylvester determinant (LU with partial pivoting)."""
    mat = sylvester_matrix(p, q)
    if mat.size == 0:
        return 1.0 + 0j
    return complex(np.linalg.det(mat))
