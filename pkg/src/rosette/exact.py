"""Exact real exponents for exponential sums.

An :class:`ExactReal` is either a finite rational combination of square roots
of square-free integers, ``sum q_k * sqrt(k)``, or an opaque float.  Square
roots of distinct square-free integers are linearly independent over Q, so
equality, rational dependence and periods can be decided exactly for the
first kind.  Opaque floats carry a flag by which the caller asserts that the
value is rationally independent from everything else in play.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import IndeterminateError

_MAX_RADICAND = 10**12


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``n == s*s*f`` and ``f`` square-free."""
    if n <= 0:
        raise ValueError("radicand must be positive")
    if n > _MAX_RADICAND:
        raise ValueError("radicand too large")
    s, f = 1, 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        s *= d ** (e // 2)
        if e % 2:
            f *= d
        d += 1
    return s, f * n


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


@dataclass(frozen=True)
class ExactReal:
    """A real number stored as ``sum coeff * sqrt(radicand)`` or as an opaque float.

    ``parts`` is a sorted tuple of ``(radicand, coefficient)`` pairs with
    square-free radicands and nonzero coefficients; radicand 1 is the rational
    part.  When ``opaque`` is not None the value is that float and ``parts``
    is empty.
    """

    parts: tuple = ()
    opaque: float | None = None
    independent: bool = False

    # construction -----------------------------------------------------------

    @classmethod
    def rational(cls, value, denominator=None) -> ExactReal:
        q = _frac(value) if denominator is None else Fraction(value, denominator)
        return cls(((1, q),) if q else ())

    @classmethod
    def sqrt(cls, radicand) -> ExactReal:
        """Exact square root of a nonnegative rational."""
        q = _frac(radicand)
        if q < 0:
            raise ValueError("square root of a negative number")
        if q == 0:
            return cls()
        # sqrt(p/q) = sqrt(p*q)/q
        s, f = squarefree_split(q.numerator * q.denominator)
        return cls(((f, Fraction(s, q.denominator)),))

    @classmethod
    def float_value(cls, value: float, independent: bool = False) -> ExactReal:
        value = float(value)
        if not math.isfinite(value):
            raise ValueError("opaque exponent must be finite")
        return cls((), value, bool(independent))

    @classmethod
    def _from_dict(cls, d: dict) -> ExactReal:
        return cls(tuple(sorted((k, v) for k, v in d.items() if v)))

    # predicates -------------------------------------------------------------

    @property
    def is_opaque(self) -> bool:
        return self.opaque is not None

    @property
    def is_rational(self) -> bool:
        return not self.is_opaque and all(k == 1 for k, _ in self.parts)

    @property
    def is_zero(self) -> bool:
        return not self.is_opaque and not self.parts

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self.parts[0][1] if self.parts else Fraction(0)

    def __float__(self) -> float:
        if self.is_opaque:
            return self.opaque
        return float(sum(float(q) * math.sqrt(k) for k, q in self.parts))

    # arithmetic -------------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, ExactReal):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return ExactReal.rational(other)
        if isinstance(other, float):
            return ExactReal.float_value(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_opaque or other.is_opaque:
            return ExactReal.float_value(float(self) + float(other))
        d = dict(self.parts)
        for k, q in other.parts:
            d[k] = d.get(k, 0) + q
        return ExactReal._from_dict(d)

    __radd__ = __add__

    def __neg__(self):
        if self.is_opaque:
            return ExactReal((), -self.opaque, self.independent)
        return ExactReal(tuple((k, -q) for k, q in self.parts))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_opaque or other.is_opaque:
            if self.is_rational or other.is_rational:
                # rational multiples keep the independence assertion
                r, o = (self, other) if self.is_rational else (other, self)
                q = r.as_fraction()
                if q == 0:
                    return ExactReal()
                return ExactReal((), float(q) * o.opaque, o.independent)
            return ExactReal.float_value(float(self) * float(other))
        d: dict = {}
        for k1, q1 in self.parts:
            for k2, q2 in other.parts:
                s, f = squarefree_split(k1 * k2)
                d[f] = d.get(f, 0) + q1 * q2 * s
        return ExactReal._from_dict(d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_rational:
            q = other.as_fraction()
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return self * ExactReal.rational(1 / q)
        if len(other.parts) == 1 and not other.is_opaque:
            # 1/(q sqrt(k)) = sqrt(k)/(q k)
            k, q = other.parts[0]
            return self * ExactReal(((k, 1 / (q * k)),))
        if other.is_opaque and other.opaque == 0:
            raise ZeroDivisionError("division by zero")
        return ExactReal.float_value(float(self) / float(other))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        if self.is_opaque or other.is_opaque:
            return self.is_opaque and other.is_opaque and self.opaque == other.opaque
        return self.parts == other.parts

    def __hash__(self):
        return hash((self.parts, self.opaque))

    def __lt__(self, other):
        return float(self) < float(other)

    # formatting -------------------------------------------------------------

    def to_expr(self) -> str:
        """Render in the expression grammar understood by the parser."""
        if self.is_opaque:
            return repr(self.opaque)
        if not self.parts:
            return "0"
        out = []
        for k, q in self.parts:
            num = str(q) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
            if k == 1:
                term = num
            elif q == 1:
                term = f"sqrt({k})"
            elif q == -1:
                term = f"-sqrt({k})"
            else:
                term = f"{num}*sqrt({k})"
            if out and term.startswith("-"):
                out.append(" - " + term[1:])
            elif out:
                out.append(" + " + term)
            else:
                out.append(term)
        text = "".join(out)
        return text

    def __str__(self):
        return self.to_expr()

    def __repr__(self):
        if self.is_opaque:
            return f"ExactReal.float_value({self.opaque!r}, independent={self.independent})"
        return f"ExactReal({self.to_expr()!r})"


def _rank(vectors: list[dict]) -> int:
    """Rank over Q of sparse rational vectors, by Gaussian elimination."""
    rows = [dict(v) for v in vectors if v]
    rank = 0
    pivots: list[tuple[object, dict]] = []
    for row in rows:
        for key, prow in pivots:
            if key in row and row[key]:
                f = row[key] / prow[key]
                for k, v in prow.items():
                    row[k] = row.get(k, 0) - f * v
                row = {k: v for k, v in row.items() if v}
        if row:
            key = min(row)
            pivots.append((key, row))
            rank += 1
    return rank


def _vectors(values, include_one: bool) -> list[dict]:
    vecs: list[dict] = []
    for i, v in enumerate(values):
        if v.is_opaque:
            if not v.independent:
                raise IndeterminateError(
                    f"cannot decide rational independence of opaque value {v.opaque!r}; "
                    "assert independence explicitly"
                )
            vecs.append({("opaque", i): Fraction(1)})
        else:
            vecs.append({("sqrt", k): q for k, q in v.parts})
    if include_one:
        vecs.append({("sqrt", 1): Fraction(1)})
    return vecs


def rationally_independent(values, include_one: bool = False) -> bool:
    """Decide whether ``values`` are linearly independent over Q.

    Opaque values must carry the independence assertion; each asserted value
    is treated as a fresh basis direction.  With ``include_one`` the number 1
    is appended to the family.
    """
    values = list(values)
    vecs = _vectors(values, include_one)
    if any(not v for v in vecs):
        return False
    return _rank(vecs) == len(vecs)


def rational_span_dimension(values) -> int:
    """Dimension of the Q-span of ``values`` (opaque values need the assertion)."""
    return _rank(_vectors(list(values), False))


def rational_ratio(x: ExactReal, y: ExactReal) -> Fraction | None:
    """Return ``q`` with ``x == q*y`` when it exists, else None (``y`` nonzero)."""
    if x.is_opaque or y.is_opaque:
        raise IndeterminateError("ratio of opaque values is undecidable")
    if y.is_zero:
        raise ZeroDivisionError("ratio with zero")
    dx, dy = dict(x.parts), dict(y.parts)
    if not dx:
        return Fraction(0)
    if set(dx) != set(dy):
        return None
    k0 = next(iter(dy))
    q = dx[k0] / dy[k0]
    if all(dx[k] == q * dy[k] for k in dy):
        return q
    return None
