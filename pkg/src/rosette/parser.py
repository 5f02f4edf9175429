"""Recursive-descent parser for Laurent polynomials and exponential sums.

Grammar (whitespace is ignored; ``**`` is accepted as a synonym for ``^``)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary | unary)*      -- juxtaposition multiplies
    unary   := ("-" | "+") unary | power
    power   := primary ("^" unary)?                    -- right associative
    primary := NUMBER | NUMBER "i" | "i" | "z" | "pi"
             | "sqrt" "(" expr ")" | "e" "(" expr ")" | "(" expr ")"

``^`` binds tighter than unary minus, so ``-z^2`` is ``-(z^2)``.  Numeric
literals are exact decimals; arithmetic on them stays exact (Gaussian
rationals) until ``pi`` or an irrational ``sqrt`` forces floating point.  In
Laurent mode ``z`` is the variable.  In exponential-sum mode ``e(A)`` denotes
``exp(2*pi*i*A*t)`` and ``A`` is an exact real built from rationals and
square roots.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .exact import ExactReal
from .laurent import ExponentialSum, LaurentPolynomial

MAX_POWER = 4096
MAX_EXPANSION_POWER = 256
MAX_TERMS = 20000
MAX_DEPTH = 200

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>\*\*|[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # num, imag, ident, op, end
    text: str
    pos: int


def _tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise _err(text, pos, f"unexpected character {text[pos]!r}", "a number, 'z', an operator or '('")
        kind = m.lastgroup
        if kind == "num":
            end = m.end()
            # an 'i' glued to a number makes an imaginary literal: 2i, 0.5i
            if end < len(text) and text[end] == "i" and not (
                end + 1 < len(text) and (text[end + 1].isalnum() or text[end + 1] == "_")
            ):
                out.append(Token("imag", m.group(), pos))
                pos = end + 1
                continue
            out.append(Token("num", m.group(), pos))
        elif kind == "ident":
            out.append(Token("ident", m.group(), pos))
        elif kind == "op":
            op = "^" if m.group() == "**" else m.group()
            out.append(Token("op", op, pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


def _err(text, pos, message, expected=None):
    offset = len(text[:pos].encode("utf-8"))
    return ParseError(message, offset, expected, text)


# --- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Node:
    kind: str  # num, imag, var, const, call, neg, add, sub, mul, div, pow
    pos: int
    value: object = None
    args: tuple = ()


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.depth = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message, expected=None, tok=None):
        tok = tok or self.tok
        return _err(self.text, tok.pos, message, expected)

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def accept(self, op) -> Token | None:
        if self.tok.kind == "op" and self.tok.text == op:
            return self.advance()
        return None

    def expect(self, op):
        if not self.accept(op):
            found = self.tok.text or "end of input"
            raise self.error(f"unexpected {found!r}", repr(op))

    def parse(self) -> Node:
        if self.tok.kind == "end":
            raise self.error("empty expression", "an expression")
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}", "an operator or end of input")
        return node

    def _enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self.error("expression nested too deeply")

    def expr(self) -> Node:
        self._enter()
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance()
            rhs = self.term()
            node = Node("add" if op.text == "+" else "sub", op.pos, None, (node, rhs))
        self.depth -= 1
        return node

    def _starts_primary(self) -> bool:
        t = self.tok
        return t.kind in ("num", "imag", "ident") or (t.kind == "op" and t.text == "(")

    def term(self) -> Node:
        node = self.unary()
        while True:
            if self.tok.kind == "op" and self.tok.text in "*/":
                op = self.advance()
                rhs = self.unary()
                node = Node("mul" if op.text == "*" else "div", op.pos, None, (node, rhs))
            elif self._starts_primary():
                pos = self.tok.pos
                rhs = self.power()
                node = Node("mul", pos, None, (node, rhs))
            else:
                return node

    def unary(self) -> Node:
        self._enter()
        if self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance()
            inner = self.unary()
            node = inner if op.text == "+" else Node("neg", op.pos, None, (inner,))
        else:
            node = self.power()
        self.depth -= 1
        return node

    def power(self) -> Node:
        base = self.primary()
        if self.tok.kind == "op" and self.tok.text == "^":
            op = self.advance()
            exponent = self.unary()
            return Node("pow", op.pos, None, (base, exponent))
        return base

    def primary(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Node("num", t.pos, Fraction(t.text))
        if t.kind == "imag":
            self.advance()
            return Node("imag", t.pos, Fraction(t.text))
        if t.kind == "ident":
            self.advance()
            name = t.text
            if name in ("sqrt", "e"):
                if not self.accept("("):
                    raise self.error(f"'{name}' must be called", "'('")
                arg = self.expr()
                self.expect(")")
                return Node("call", t.pos, name, (arg,))
            if name == "i":
                return Node("imag", t.pos, Fraction(1))
            if name == "pi":
                return Node("const", t.pos, "pi")
            if name in ("z", "t"):
                return Node("var", t.pos, name)
            raise self.error(f"unknown name {name!r}", "'z', 'i', 'pi', 'sqrt' or 'e'", t)
        if t.kind == "op" and t.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        found = t.text or "end of input"
        raise self.error(f"unexpected {found!r}", "a number, 'z', 'i' or '('")


# --- scalar arithmetic ----------------------------------------------------------


class GaussQ:
    """Exact Gaussian rational ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, o):
        if isinstance(o, GaussQ):
            return GaussQ(self.re + o.re, self.im + o.im)
        return complex(self) + o

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, GaussQ):
            return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
        return complex(self) * o

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, GaussQ):
            d = o.re * o.re + o.im * o.im
            if d == 0:
                raise ZeroDivisionError("division by zero")
            return self * GaussQ(o.re / d, -o.im / d)
        if o == 0:
            raise ZeroDivisionError("division by zero")
        return complex(self) / o

    def __rtruediv__(self, o):
        return GaussQ(1) / self * o if not isinstance(o, GaussQ) else o / self

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def __eq__(self, o):
        if isinstance(o, GaussQ):
            return self.re == o.re and self.im == o.im
        return complex(self) == o

    def __hash__(self):
        return hash((self.re, self.im))


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, GaussQ) else c == 0


def _scalar_pow(base, k: int):
    if isinstance(base, GaussQ):
        if k < 0:
            if base.is_zero():
                raise ZeroDivisionError("zero to a negative power")
            return GaussQ(1) / _scalar_pow(base, -k)
        out = GaussQ(1)
        b = base
        while k:
            if k & 1:
                out = out * b
            b = b * b
            k >>= 1
        return out
    if base == 0 and k < 0:
        raise ZeroDivisionError("zero to a negative power")
    return complex(base) ** k


def _exact_sqrt(q: Fraction):
    def isqrt_exact(n):
        r = math.isqrt(n)
        return r if r * r == n else None

    num, den = isqrt_exact(abs(q.numerator)), isqrt_exact(q.denominator)
    if num is not None and den is not None:
        root = Fraction(num, den)
        return GaussQ(root) if q >= 0 else GaussQ(0, root)
    return cmath.sqrt(float(q))


# --- polynomial-valued evaluation ------------------------------------------------


class _Evaluator:
    """Evaluate an AST into a dict ``key -> coefficient``.

    Keys are integer exponents (Laurent mode) or ExactReal exponents
    (exponential-sum mode); the key ``zero`` holds constants.
    """

    def __init__(self, text: str, mode: str, assume_independent: bool = False):
        self.text = text
        self.mode = mode
        self.zero = 0 if mode == "laurent" else ExactReal()
        self.assume_independent = assume_independent

    def error(self, node: Node, message, expected=None):
        return _err(self.text, node.pos, message, expected)

    # helpers on dict-polynomials
    def const(self, c):
        return {self.zero: c}

    def _clean(self, d):
        return {k: v for k, v in d.items() if not _is_zero(v)}

    def add(self, a, b):
        out = dict(a)
        for k, v in b.items():
            out[k] = out[k] + v if k in out else v
        return self._clean(out)

    def neg(self, a):
        return {k: -v for k, v in a.items()}

    def mul(self, a, b, node):
        if len(a) * len(b) > MAX_TERMS * 10:
            raise self.error(node, "expansion too large")
        out: dict = {}
        for k1, v1 in a.items():
            for k2, v2 in b.items():
                k = k1 + k2
                out[k] = out[k] + v1 * v2 if k in out else v1 * v2
        out = self._clean(out)
        if len(out) > MAX_TERMS:
            raise self.error(node, "expansion too large")
        return out

    def as_scalar(self, d, node, what):
        if any(k != self.zero for k in d):
            raise self.error(node, f"{what} must not depend on the variable")
        return d.get(self.zero, GaussQ(0))

    def eval(self, node: Node):
        kind = node.kind
        if kind == "num":
            return self._clean(self.const(GaussQ(node.value)))
        if kind == "imag":
            return self._clean(self.const(GaussQ(0, node.value)))
        if kind == "const":
            return self.const(complex(math.pi))
        if kind == "var":
            if self.mode == "laurent" and node.value == "z":
                return {1: GaussQ(1)}
            if self.mode == "laurent":
                raise self.error(node, "the variable 't' is not allowed in a Laurent polynomial", "'z'")
            raise self.error(node, "variables are not allowed in an exponential sum; use e(A)", "e(...)")
        if kind == "call":
            name = node.value
            (arg,) = node.args
            if name == "sqrt":
                inner = self.as_scalar(self.eval(arg), arg, "sqrt argument")
                if isinstance(inner, GaussQ) and inner.im == 0:
                    return self._clean(self.const(_exact_sqrt(inner.re)))
                return self._clean(self.const(cmath.sqrt(complex(inner))))
            if self.mode == "laurent":
                raise self.error(node, "e(...) is only valid in exponential sums", "'z'")
            a = _ExponentEvaluator(self.text, self.assume_independent).eval(arg)
            return {a: GaussQ(1)}
        if kind == "neg":
            return self.neg(self.eval(node.args[0]))
        if kind in ("add", "sub"):
            a, b = self.eval(node.args[0]), self.eval(node.args[1])
            return self.add(a, b if kind == "add" else self.neg(b))
        if kind == "mul":
            return self.mul(self.eval(node.args[0]), self.eval(node.args[1]), node)
        if kind == "div":
            num = self.eval(node.args[0])
            den_node = node.args[1]
            den = self.eval(den_node)
            if any(k != self.zero for k in den):
                what = "z" if self.mode == "laurent" else "e(...)"
                raise self.error(node, f"division by an expression containing {what}", "a constant divisor")
            d = den.get(self.zero)
            if d is None:
                raise self.error(node, "division by zero")
            return self._clean({k: v / d for k, v in num.items()})
        if kind == "pow":
            base_node, exp_node = node.args
            k = self.integer_exponent(exp_node)
            base = self.eval(base_node)
            return self.power(base, k, node)
        raise self.error(node, f"unsupported construct {kind}")

    def integer_exponent(self, exp_node) -> int:
        val = self.as_scalar(self.eval(exp_node), exp_node, "an exponent")
        if isinstance(val, GaussQ):
            if val.im != 0:
                raise self.error(exp_node, "complex exponent", "an integer")
            if val.re.denominator != 1:
                raise self.error(exp_node, "fractional exponent", "an integer")
            k = val.re.numerator
        else:
            c = complex(val)
            if c.imag != 0 or not math.isfinite(c.real) or c.real != int(c.real):
                raise self.error(exp_node, "fractional exponent", "an integer")
            k = int(c.real)
        if abs(k) > MAX_POWER:
            raise self.error(exp_node, "exponent too large")
        return k

    def power(self, base, k, node):
        if not base:
            if k < 0:
                raise self.error(node, "zero to a negative power")
            return {} if k > 0 else self.const(GaussQ(1))
        if len(base) == 1:
            (e, c), = base.items()
            return self._clean({e * k: _scalar_pow(c, k)})
        if k < 0:
            what = "z" if self.mode == "laurent" else "e(...)"
            raise self.error(node, f"negative power of a sum containing {what}", "a monomial base")
        if k > MAX_EXPANSION_POWER:
            raise self.error(node, "power too large to expand")
        out = self.const(GaussQ(1))
        for _ in range(k):
            out = self.mul(out, base, node)
        return out


class _ExponentEvaluator:
    """Evaluate the argument of ``e(...)`` to an :class:`ExactReal`."""

    def __init__(self, text, assume_independent):
        self.text = text
        self.assume_independent = assume_independent

    def error(self, node, message, expected=None):
        return _err(self.text, node.pos, message, expected)

    def eval(self, node: Node) -> ExactReal:
        kind = node.kind
        if kind == "num":
            return ExactReal.rational(node.value)
        if kind == "imag":
            raise self.error(node, "exponents must be real", "a real exponent")
        if kind == "const":
            return ExactReal.float_value(math.pi, self.assume_independent)
        if kind == "var":
            raise self.error(node, "variables are not allowed inside e(...)", "a real constant")
        if kind == "call":
            if node.value == "e":
                raise self.error(node, "nested e(...)")
            arg = self.eval(node.args[0])
            if not arg.is_rational:
                return ExactReal.float_value(math.sqrt(float(arg)), self.assume_independent)
            q = arg.as_fraction()
            if q < 0:
                raise self.error(node, "square root of a negative exponent")
            return ExactReal.sqrt(q)
        if kind == "neg":
            return -self.eval(node.args[0])
        if kind == "add":
            return self.eval(node.args[0]) + self.eval(node.args[1])
        if kind == "sub":
            return self.eval(node.args[0]) - self.eval(node.args[1])
        if kind == "mul":
            return self.eval(node.args[0]) * self.eval(node.args[1])
        if kind == "div":
            d = self.eval(node.args[1])
            if d.is_zero:
                raise self.error(node, "division by zero")
            return self.eval(node.args[0]) / d
        if kind == "pow":
            base = self.eval(node.args[0])
            e = self.eval(node.args[1])
            if not e.is_rational or e.as_fraction().denominator != 1:
                raise self.error(node.args[1], "fractional exponent", "an integer")
            k = e.as_fraction().numerator
            if abs(k) > 64:
                raise self.error(node.args[1], "exponent too large")
            if k < 0:
                if base.is_zero:
                    raise self.error(node, "zero to a negative power")
                return ExactReal.rational(1) / self._pow(base, -k)
            return self._pow(base, k)
        raise self.error(node, f"unsupported construct {kind}")

    @staticmethod
    def _pow(base, k):
        out = ExactReal.rational(1)
        for _ in range(k):
            out = out * base
        return out


def _lower(c, text) -> complex:
    try:
        v = complex(c)
    except OverflowError:
        raise ParseError("coefficient out of floating point range", 0, None, text) from None
    if not (math.isfinite(v.real) and math.isfinite(v.imag)):
        raise ParseError("coefficient out of floating point range", 0, None, text)
    return v


def _run(text: str, fn):
    if not isinstance(text, str):
        raise TypeError("expression must be a string")
    try:
        return fn()
    except ParseError:
        raise
    except RecursionError:
        raise ParseError("expression nested too deeply", 0, None, text) from None
    except (ZeroDivisionError, OverflowError, ValueError, ArithmeticError) as exc:
        raise ParseError(str(exc) or type(exc).__name__, 0, None, text) from None


def parse_laurent(text: str) -> LaurentPolynomial:
    """Parse and fully expand a Laurent polynomial in ``z``.

    >>> parse_laurent("(z^3 - z^(-1))/(2i)").terms
    ((-1, 0.5j), (3, -0.5j))

    Raises :class:`~rosette.errors.ParseError` on any failure, including an
    expression that expands to the zero polynomial.
    """

    def go():
        node = _Parser(text).parse()
        d = _Evaluator(text, "laurent").eval(node)
        terms = {k: _lower(v, text) for k, v in d.items()}
        p = LaurentPolynomial(terms)
        if p.is_zero:
            raise _err(text, 0, "expression is identically zero", "a nonzero polynomial")
        return p

    return _run(text, go)


def parse_complex(text: str) -> complex:
    """Parse a constant such as ``"1+2i"``, ``"-0.5i"`` or ``"sqrt(2)/2"``."""

    def go():
        node = _Parser(text).parse()
        d = _Evaluator(text, "laurent").eval(node)
        if any(k != 0 for k in d):
            raise _err(text, 0, "expected a constant, found a term in z", "a complex constant")
        return _lower(d.get(0, 0), text)

    return _run(text, go)


def parse_expsum(text: str, assume_independent: bool = False) -> ExponentialSum:
    """Parse a sum of terms ``W * e(A)`` into an :class:`ExponentialSum`.

    ``A`` may combine rationals and ``sqrt(k)`` exactly; ``pi`` inside an
    exponent produces an opaque value whose rational independence is taken
    from ``assume_independent``.
    """

    def go():
        node = _Parser(text).parse()
        ev = _Evaluator(text, "expsum", assume_independent)
        raw = _collect_expsum(ev, node)
        merged: dict = {}
        for a, w in raw:
            merged[a] = merged[a] + w if a in merged else w
        for a, w in merged.items():
            if _is_zero(w):
                raise _err(text, 0, f"zero weight at exponent {a.to_expr()}", "nonzero weights")
        if not merged:
            raise _err(text, 0, "expression is identically zero", "a nonzero sum")
        return ExponentialSum((_lower(w, text), a) for a, w in merged.items())

    return _run(text, go)


def _collect_expsum(ev: _Evaluator, node: Node):
    """Top-level summands evaluated separately so zero weights stay visible."""
    if node.kind in ("add", "sub"):
        left = _collect_expsum(ev, node.args[0])
        right = _collect_expsum(ev, node.args[1])
        if node.kind == "sub":
            right = [(a, -w) for a, w in right]
        return left + right
    d = ev.eval(node)
    if not d:
        raise ev.error(node, "zero weight", "nonzero weights")
    return list(d.items())


# --- formatting -------------------------------------------------------------------


def _fmt_real(x: float) -> str:
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(float(x))


def _fmt_imag(y: float) -> str:
    if y == 1:
        return "i"
    if y == -1:
        return "-i"
    return _fmt_real(y) + "i"


def _fmt_coefficient(c: complex) -> tuple[str, bool]:
    """Return (text, is_atomic) for a coefficient."""
    if c.imag == 0:
        return _fmt_real(c.real), True
    if c.real == 0:
        return _fmt_imag(c.imag), False
    im = _fmt_imag(c.imag)
    sep = "" if im.startswith("-") else "+"
    return f"({_fmt_real(c.real)}{sep}{im})", False


def _fmt_var(n: int) -> str:
    if n == 1:
        return "z"
    if n < 0:
        return f"z^({n})"
    return f"z^{n}"


def _join(parts: list[str]) -> str:
    out = parts[0]
    for part in parts[1:]:
        if part.startswith("-"):
            out += " - " + part[1:]
        else:
            out += " + " + part
    return out


def format_laurent(p: LaurentPolynomial) -> str:
    """Render ``p`` so that :func:`parse_laurent` reproduces it exactly.

    >>> format_laurent(LaurentPolynomial({2: 1, 5: 2}))
    'z^2 + 2*z^5'
    """
    if p.is_zero:
        return "0"
    parts = []
    for n, c in p.terms:
        ctext, atomic = _fmt_coefficient(c)
        if n == 0:
            parts.append(ctext)
            continue
        var = _fmt_var(n)
        if c == 1:
            parts.append(var)
        elif c == -1:
            parts.append("-" + var)
        elif c == 1j:
            parts.append("i*" + var)
        elif c == -1j:
            parts.append("-i*" + var)
        elif atomic:
            parts.append(f"{ctext}*{var}")
        else:
            parts.append(f"({ctext})*{var}" if not ctext.startswith("(") else f"{ctext}*{var}")
    return _join(parts)


def format_expsum(g: ExponentialSum) -> str:
    """Render an exponential sum in the ``W*e(A)`` grammar."""
    parts = []
    for w, a in g.terms:
        ctext, atomic = _fmt_coefficient(w)
        ex = f"e({a.to_expr()})"
        if w == 1:
            parts.append(ex)
        elif w == -1:
            parts.append("-" + ex)
        elif atomic:
            parts.append(f"{ctext}*{ex}")
        else:
            parts.append(f"({ctext})*{ex}" if not ctext.startswith("(") else f"{ctext}*{ex}")
    return _join(parts)
