"""Laurent polynomials, exponential sums, and sampling of their image curves.

A Laurent polynomial ``p(z) = sum c_n z^n`` is traced along the unit circle by
``t -> p(exp(2*pi*i*t))``; an exponential sum ``sum w_k exp(2*pi*i*a_k*t)``
generalises this to real exponents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping

import numpy as np

from .errors import DomainError, IndeterminateError
from .exact import ExactReal, rational_ratio

TWO_PI = 2.0 * math.pi


def _to_complex(c) -> complex:
    c = complex(c)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise ValueError(f"non-finite coefficient {c!r}")
    return c


class LaurentPolynomial:
    """Finite sum ``sum c_n z^n`` with integer exponents and complex coefficients.

    Terms with a coefficient exactly equal to zero are dropped on
    construction.  The empty polynomial is the zero polynomial; it is a valid
    value but analysis routines reject it.

    >>> p = LaurentPolynomial({2: 1, 7: 1, 12: 1})
    >>> p.exponents
    (2, 7, 12)
    >>> p(1)
    (3+0j)
    """

    __slots__ = ("_exps", "_coeffs")

    def __init__(self, terms: Mapping[int, complex] | Iterable[tuple[int, complex]] = ()):
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: dict[int, complex] = {}
        for n, c in terms:
            if isinstance(n, bool) or int(n) != n:
                raise TypeError(f"exponent must be an integer, got {n!r}")
            n = int(n)
            acc[n] = acc.get(n, 0j) + _to_complex(c)
        items = sorted((n, c) for n, c in acc.items() if c != 0)
        self._exps = tuple(n for n, _ in items)
        self._coeffs = tuple(c for _, c in items)

    @classmethod
    def monomial(cls, n: int, c: complex = 1) -> LaurentPolynomial:
        return cls({n: c})

    @classmethod
    def from_ascending(cls, coeffs, lowest: int = 0) -> LaurentPolynomial:
        """Build from coefficients of ``z^lowest, z^(lowest+1), ...``."""
        return cls((lowest + k, c) for k, c in enumerate(coeffs))

    # --- accessors -----------------------------------------------------------

    @property
    def exponents(self) -> tuple[int, ...]:
        return self._exps

    @property
    def coefficients(self) -> tuple[complex, ...]:
        return self._coeffs

    @property
    def terms(self) -> tuple[tuple[int, complex], ...]:
        return tuple(zip(self._exps, self._coeffs))

    def coefficient(self, n: int) -> complex:
        try:
            return self._coeffs[self._exps.index(n)]
        except ValueError:
            return 0j

    @property
    def is_zero(self) -> bool:
        return not self._exps

    @property
    def min_exponent(self) -> int:
        self._require_nonzero()
        return self._exps[0]

    @property
    def max_exponent(self) -> int:
        self._require_nonzero()
        return self._exps[-1]

    @property
    def is_polynomial(self) -> bool:
        return not self._exps or self._exps[0] >= 0

    @property
    def coefficient_scale(self) -> float:
        """Sum of coefficient moduli; an upper bound for ``|p|`` on the circle."""
        return float(sum(abs(c) for c in self._coeffs))

    def __len__(self) -> int:
        return len(self._exps)

    def _require_nonzero(self):
        if not self._exps:
            raise DomainError("operation undefined for the zero polynomial")

    def ascending(self, lowest: int | None = None) -> np.ndarray:
        """Dense coefficient vector from ``z^lowest`` up to the top exponent."""
        self._require_nonzero()
        lo = self._exps[0] if lowest is None else lowest
        if lo > self._exps[0]:
            raise ValueError("lowest exponent above the support")
        out = np.zeros(self._exps[-1] - lo + 1, dtype=complex)
        for n, c in zip(self._exps, self._coeffs):
            out[n - lo] = c
        return out

    def polynomial_coefficients(self) -> np.ndarray:
        """Ascending coefficients ``c_0..c_n``; only for polynomials."""
        if not self.is_polynomial:
            raise DomainError("negative exponents present; not a polynomial")
        return self.ascending(0)

    def conjugate(self) -> LaurentPolynomial:
        """Polynomial with conjugated coefficients."""
        return LaurentPolynomial(zip(self._exps, (c.conjugate() for c in self._coeffs)))

    # --- evaluation ----------------------------------------------------------

    def __call__(self, z):
        return evaluate(self, z)

    # --- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, (int, float, complex, np.number)):
            return LaurentPolynomial({0: other})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return LaurentPolynomial(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial((n, -c) for n, c in self.terms)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc: dict[int, complex] = {}
        for n1, c1 in self.terms:
            for n2, c2 in other.terms:
                acc[n1 + n2] = acc.get(n1 + n2, 0j) + c1 * c2
        return LaurentPolynomial(acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LaurentPolynomial):
            if len(other) != 1:
                return NotImplemented
            n, c = other.terms[0]
            return LaurentPolynomial((m - n, d / c) for m, d in self.terms)
        if other == 0:
            raise ZeroDivisionError("division by zero")
        return LaurentPolynomial((n, c / other) for n, c in self.terms)

    def __pow__(self, k: int):
        if int(k) != k:
            raise TypeError("integer power expected")
        k = int(k)
        if k < 0:
            if len(self) != 1:
                raise DomainError("negative powers are defined for monomials only")
            n, c = self.terms[0]
            return LaurentPolynomial({n * k: c**k})
        out = LaurentPolynomial({0: 1})
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._exps == other._exps and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self._exps, self._coeffs))

    def __repr__(self):
        body = ", ".join(f"{n}: {c!r}" for n, c in self.terms)
        return f"LaurentPolynomial({{{body}}})"

    def __str__(self):
        from .parser import format_laurent

        return format_laurent(self)


ZERO = LaurentPolynomial()


@dataclass(frozen=True)
class CurveSample:
    """A parameter ``t`` in [0, 1) and the curve point at that parameter."""

    t: float
    point: complex


def evaluate(p: LaurentPolynomial, z):
    """Evaluate ``sum c_n z^n``, summing in increasing exponent order.

    Accepts scalars or numpy arrays.  Raises :class:`DomainError` when a
    negative exponent meets ``z == 0``.
    """
    scalar = np.ndim(z) == 0
    zz = np.asarray(z, dtype=complex)
    if p.is_zero:
        out = np.zeros_like(zz)
        return complex(out) if scalar else out
    if p.min_exponent < 0 and np.any(zz == 0):
        raise DomainError("negative exponent evaluated at z = 0")
    out = np.zeros_like(zz)
    for n, c in p.terms:
        out = out + c * zz**n
    return complex(out) if scalar else out


def eval_circle(p: LaurentPolynomial, t):
    """Evaluate ``p(exp(2*pi*i*t))``; periodic in ``t`` with period 1.

    The phase ``n*t`` is reduced modulo 1 before exponentiating so that the
    period holds to rounding level for large ``t``.
    """
    scalar = np.ndim(t) == 0
    tt = np.asarray(t, dtype=float)
    out = np.zeros(tt.shape, dtype=complex)
    for n, c in p.terms:
        out = out + c * np.exp(1j * TWO_PI * np.mod(n * tt, 1.0))
    return complex(out) if scalar else out


def circle_derivative(p: LaurentPolynomial, t, order: int = 1):
    """``d^order/dt^order`` of ``p(exp(2*pi*i*t))``."""
    scalar = np.ndim(t) == 0
    tt = np.asarray(t, dtype=float)
    out = np.zeros(tt.shape, dtype=complex)
    for n, c in p.terms:
        out = out + c * (1j * TWO_PI * n) ** order * np.exp(1j * TWO_PI * np.mod(n * tt, 1.0))
    return complex(out) if scalar else out


def derivative(p: LaurentPolynomial) -> LaurentPolynomial:
    """Termwise derivative ``c_n z^n -> n c_n z^(n-1)``; constants vanish."""
    return LaurentPolynomial((n - 1, n * c) for n, c in p.terms if n != 0)


def sample_points(p: LaurentPolynomial, n_samples: int) -> tuple[np.ndarray, np.ndarray]:
    """Parameters ``j/n`` and the curve points there, as arrays."""
    if n_samples < 2:
        raise ValueError("need at least two samples")
    t = np.arange(n_samples) / n_samples
    return t, eval_circle(p, t)


def sample(p: LaurentPolynomial, n_samples: int) -> list[CurveSample]:
    """Uniform samples ``t_j = j/n_samples`` of the image curve."""
    t, z = sample_points(p, n_samples)
    return [CurveSample(float(a), complex(b)) for a, b in zip(t, z)]


def gcd_of_support(p: LaurentPolynomial) -> int:
    """gcd of ``|n|`` over the support (0 for a constant)."""
    return reduce(math.gcd, (abs(n) for n in p.exponents), 0)


# --- exponential sums --------------------------------------------------------


class ExponentialSum:
    """Weighted sum ``gamma(t) = sum w_k exp(2*pi*i*a_k*t)`` with real exponents.

    Exponents are :class:`~rosette.exact.ExactReal`; duplicates are merged and
    zero weights dropped only when explicitly requested (the constructor
    rejects them, since a zero weight usually signals an input mistake).
    """

    __slots__ = ("_exps", "_weights")

    def __init__(self, terms: Iterable[tuple[complex, ExactReal]]):
        acc: dict[ExactReal, complex] = {}
        order: list[ExactReal] = []
        for w, a in terms:
            if not isinstance(a, ExactReal):
                a = ExactReal.rational(a) if isinstance(a, (int, Fraction)) else ExactReal.float_value(a)
            w = _to_complex(w)
            if a not in acc:
                order.append(a)
                acc[a] = 0j
            acc[a] += w
        for a in order:
            if acc[a] == 0:
                raise ValueError(f"zero weight at exponent {a}")
        order.sort(key=float)
        vals = [float(a) for a in order]
        if any(x == y for x, y in zip(vals, vals[1:])):
            raise ValueError("distinct exponents with identical float values")
        self._exps = tuple(order)
        self._weights = tuple(acc[a] for a in order)

    @property
    def exponents(self) -> tuple[ExactReal, ...]:
        return self._exps

    @property
    def weights(self) -> tuple[complex, ...]:
        return self._weights

    @property
    def terms(self) -> tuple[tuple[complex, ExactReal], ...]:
        return tuple(zip(self._weights, self._exps))

    def __len__(self):
        return len(self._exps)

    def __call__(self, t):
        scalar = np.ndim(t) == 0
        tt = np.asarray(t, dtype=float)
        out = np.zeros(tt.shape, dtype=complex)
        for w, a in self.terms:
            if a.is_rational:
                q = a.as_fraction()
                # exact reduction of the phase for rational exponents
                phase = np.mod(q.numerator * np.mod(tt, q.denominator), q.denominator) / q.denominator
            else:
                phase = np.mod(float(a) * tt, 1.0)
            out = out + w * np.exp(1j * TWO_PI * phase)
        return complex(out) if scalar else out

    def speed_bound(self) -> float:
        """Upper bound for ``|gamma'(t)|``."""
        return float(sum(TWO_PI * abs(float(a)) * abs(w) for w, a in self.terms))

    def __eq__(self, other):
        if not isinstance(other, ExponentialSum):
            return NotImplemented
        return self._exps == other._exps and self._weights == other._weights

    def __hash__(self):
        return hash((self._exps, self._weights))

    def __repr__(self):
        body = ", ".join(f"({w!r}, {a.to_expr()!r})" for w, a in self.terms)
        return f"ExponentialSum([{body}])"


def to_exponential_sum(p: LaurentPolynomial) -> ExponentialSum:
    """Read ``t -> p(exp(2*pi*i*t))`` as an exponential sum with integer exponents."""
    return ExponentialSum((c, ExactReal.rational(n)) for n, c in p.terms)


def periodicity_check(g: ExponentialSum) -> ExactReal | None:
    """Fundamental period of ``g``, or None when ``g`` is not periodic.

    The curve is periodic exactly when all nonzero exponents are rational
    multiples of one another.  Returns None for constant sums as well, since
    they have no smallest period.  Raises :class:`IndeterminateError` when
    opaque exponents are present without an independence assertion.
    """
    nonzero = [a for a in g.exponents if not a.is_zero]
    if not nonzero:
        return None
    opaque = [a for a in nonzero if a.is_opaque]
    if opaque:
        if not all(a.independent for a in opaque):
            raise IndeterminateError("opaque exponents without an independence assertion")
        if len(nonzero) > 1:
            return None
        return ExactReal.float_value(1.0 / abs(opaque[0].opaque))
    base = nonzero[0]
    ratios = []
    for a in nonzero:
        r = rational_ratio(a, base)
        if r is None:
            return None
        ratios.append(r)
    # smallest u > 0 with u*r integral for all r, then T = u / base
    lcm_den = reduce(lambda x, y: x * y // math.gcd(x, y), (r.denominator for r in ratios), 1)
    g_num = reduce(math.gcd, (abs(r.numerator) * (lcm_den // r.denominator) for r in ratios), 0)
    u = Fraction(lcm_den, g_num)
    period = ExactReal.rational(u) / base
    return -period if float(period) < 0 else period
