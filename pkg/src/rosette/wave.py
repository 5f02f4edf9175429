"""Evolution of a rosette under the 1-D wave equation with zero initial velocity:
``u(x, t) = sum_n c_n cos(2 pi n c t) e^{2 pi i n x}``."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from numbers import Rational

import numpy as np

from .errors import DomainError
from .laurent import LaurentPolynomial, eval_circle
from .winding import crossing_function, solve_on_interval, two_term_winding

COS_SNAP = 1e-12


def _check_speed(c):
    if not (isinstance(c, (int, float, Fraction)) and c > 0 and math.isfinite(float(c))):
        raise DomainError("speed must be a positive finite number")


def _support_gcd(p: LaurentPolynomial) -> int:
    return reduce(math.gcd, (abs(n) for n in p.exponents), 0)


def period(p: LaurentPolynomial, c) -> float:
    """``T = 1 / (c * gcd{|n| : c_n != 0})``."""
    return float(period_exact(p, c))


def period_exact(p: LaurentPolynomial, c):
    """Period as a Fraction when ``c`` is rational (int or Fraction), else a float."""
    _check_speed(c)
    g = _support_gcd(p)
    if g == 0:
        raise DomainError("a constant curve does not evolve")
    if isinstance(c, Rational):
        return Fraction(1) / (Fraction(c) * g)
    return 1.0 / (c * g)


def _cos_factor(n: int, c: float, t: float) -> float:
    x = 4.0 * n * float(c) * t
    j = round(x)
    if j % 2 == 1 and abs(x - j) <= COS_SNAP * max(1.0, abs(x)):
        return 0.0
    return math.cos(2 * math.pi * n * float(c) * t)


def wave_coefficients(p: LaurentPolynomial, c, t: float) -> LaurentPolynomial:
    """Coefficients of ``u(., t)``: ``c_n cos(2 pi n c t)``, dropping exact zeros.

    A factor is treated as zero when ``4 n c t`` is within 1e-12 (relative) of
    an odd integer.  The result may be the zero polynomial.
    """
    _check_speed(c)
    return LaurentPolynomial((n, cn * _cos_factor(n, c, t)) for n, cn in p.terms)


def wave_eval(p: LaurentPolynomial, c, x, t):
    """``u(x, t)``; vectorized over ``x`` and ``t`` (broadcast)."""
    _check_speed(c)
    xx = np.asarray(x, dtype=float)
    tt = np.asarray(t, dtype=float)
    out = np.zeros(np.broadcast(xx, tt).shape, dtype=complex)
    for n, cn in p.terms:
        out = out + cn * np.cos(2 * np.pi * n * float(c) * tt) * np.exp(2j * np.pi * np.mod(n * xx, 1.0))
    return complex(out) if out.ndim == 0 else out


def dalembert(p: LaurentPolynomial, c, x, t):
    """``(gamma(x - c t) + gamma(x + c t)) / 2``."""
    c = float(c)
    return 0.5 * (eval_circle(p, np.asarray(x) - c * np.asarray(t)) + eval_circle(p, np.asarray(x) + c * np.asarray(t)))


@dataclass(frozen=True)
class WaveField:
    """A base curve together with a wave speed."""

    base: LaurentPolynomial
    speed: float

    def __post_init__(self):
        _check_speed(self.speed)
        if _support_gcd(self.base) == 0:
            raise DomainError("a constant curve does not evolve")

    @property
    def period(self) -> float:
        return period(self.base, self.speed)

    def at(self, t: float) -> LaurentPolynomial:
        return wave_coefficients(self.base, self.speed, t)

    def __call__(self, x, t):
        return wave_eval(self.base, self.speed, x, t)


@dataclass(frozen=True)
class TimelineEvent:
    time: float
    kind: str
    payload: dict = field(default_factory=dict)
    exact_time: Fraction | None = None

    def to_dict(self) -> dict:
        d = {"time": self.time, "kind": self.kind, **self.payload}
        if self.exact_time is not None:
            d["exact_time"] = f"{self.exact_time.numerator}/{self.exact_time.denominator}"
        return d


def _zero_times(n: int, c, T):
    """Times in [0, T] where cos(2 pi n c t) = 0, as (float, exact-or-None)."""
    n = abs(n)
    exact = isinstance(c, Rational)
    out = []
    k = 0
    while True:
        if exact:
            te = Fraction(2 * k + 1, 4 * n) / Fraction(c)
            tf = float(te)
        else:
            te = None
            tf = (2 * k + 1) / (4 * n * c)
        if tf > float(T) * (1 + 1e-12):
            break
        out.append((tf, te, k))
        k += 1
    return out


def degenerate_times(p: LaurentPolynomial, c) -> list[TimelineEvent]:
    """Times in ``[0, T]`` at which at most one non-constant term survives.

    The cosine factor of exponent ``n`` vanishes at ``t = (2k+1) / (4|n|c)``;
    another exponent ``n'`` vanishes at the same time exactly when
    ``n'(2k+1)/|n|`` is an odd integer, which is decided in integers.  A single
    non-constant survivor gives a ``degenerate_circle`` event; none gives
    ``degenerate_point``.  For a single-term curve every event is a point
    (the curve is a circle at all other times).
    """
    _check_speed(c)
    T = period_exact(p, c)
    moving = [n for n in p.exponents if n != 0]
    events: dict[float, TimelineEvent] = {}
    for n in moving:
        for tf, te, k in _zero_times(n, c, T):
            odd = 2 * k + 1
            survivors = []
            for m in moving:
                num = abs(m) * odd
                if num % abs(n) == 0 and (num // abs(n)) % 2 == 1:
                    continue
                survivors.append(m)
            if len(survivors) > 1:
                continue
            key = round(tf, 10)
            if key in events:
                continue
            if survivors:
                ev = TimelineEvent(tf, "degenerate_circle", {"surviving_exponent": survivors[0]}, te)
            else:
                ev = TimelineEvent(tf, "degenerate_point", {}, te)
            events[key] = ev
    return sorted(events.values(), key=lambda e: e.time)


def always_degenerate(p: LaurentPolynomial) -> bool:
    """True when the curve has a single non-constant term (a circle at all times)."""
    return sum(1 for n in p.exponents if n != 0) <= 1


def timeline(a: int, b: int, c_a: complex, c_b: complex, c, window: tuple[float, float] | None = None) -> list[TimelineEvent]:
    """Events of the two-term flow on ``[0, T]`` (or ``window``), sorted by time.

    * ``winding_transition``: ``|phi(t)| = |c_a| / |c_b|`` (curve through 0);
      payload gives the winding values just before and after.
    * ``cusp_time``: ``|phi(t)| = (|c_a| / |c_b|) (a / b)``; payload gives the
      threshold value.
    * ``degenerate_circle`` / ``degenerate_point`` from :func:`degenerate_times`.
    """
    if not 1 <= a < b:
        raise DomainError("timeline needs 1 <= a < b")
    _check_speed(c)
    p = LaurentPolynomial({a: c_a, b: c_b})
    T = period(p, c)
    lo, hi = window if window is not None else (0.0, T)
    cf = float(c)
    grid = max(2048, int(64 * (hi - lo) * cf * b))
    events: list[TimelineEvent] = []
    f, df, scale = crossing_function(a, b, c_a, c_b, cf)
    for t in solve_on_interval(f, df, lo, hi, scale, grid):
        eps = 1e-7 * max(1.0, hi - lo)
        before = _safe_winding(a, b, c_a, c_b, cf, t - eps) if t - eps >= lo else None
        after = _safe_winding(a, b, c_a, c_b, cf, t + eps) if t + eps <= hi else None
        events.append(TimelineEvent(t, "winding_transition", {"before": before, "after": after}))
    threshold = abs(c_a) / abs(c_b) * a / b
    f, df, scale = crossing_function(a, b, c_a, c_b, cf, weight_a=a, weight_b=b)
    for t in solve_on_interval(f, df, lo, hi, scale, grid):
        events.append(TimelineEvent(t, "cusp_time", {"threshold": threshold}))
    for ev in degenerate_times(p, c):
        if lo - 1e-12 <= ev.time <= hi + 1e-12:
            events.append(ev)
    events.sort(key=lambda e: (e.time, e.kind))
    out: list[TimelineEvent] = []
    for ev in events:
        if out and out[-1].kind == ev.kind and abs(out[-1].time - ev.time) <= 1e-10:
            continue
        out.append(ev)
    return out


def _safe_winding(a, b, c_a, c_b, c, t):
    try:
        return two_term_winding(a, b, c_a, c_b, c, t)
    except DomainError:
        return None


@dataclass(frozen=True)
class Frame:
    time: float
    t: np.ndarray
    points: np.ndarray
    coefficients: LaurentPolynomial


def snapshots(p: LaurentPolynomial, c, frames: int, samples_per_frame: int = 1024,
              window: tuple[float, float] | None = None) -> list[Frame]:
    """Frames at evenly spaced times over ``[0, T)`` (or the given window)."""
    if frames < 1:
        raise DomainError("need at least one frame")
    if samples_per_frame < 2:
        raise DomainError("need at least two samples per frame")
    T = period(p, c)
    lo, hi = window if window is not None else (0.0, T)
    x = np.arange(samples_per_frame) / samples_per_frame
    out = []
    for j in range(frames):
        t = lo + (hi - lo) * j / frames
        coeffs = wave_coefficients(p, c, t)
        out.append(Frame(t, x, eval_circle(coeffs, x), coeffs))
    return out
