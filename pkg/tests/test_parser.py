import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rosette.errors import ParseError
from rosette.exact import ExactReal
from rosette.laurent import LaurentPolynomial
from rosette.parser import format_expsum, format_laurent, parse_complex, parse_expsum, parse_laurent

P = parse_laurent


class TestParseLaurent:
    def test_flower(self):
        assert P("z^2 + z^7 + z^12") == LaurentPolynomial({2: 1, 7: 1, 12: 1})

    def test_rhodonea(self):
        assert P("(z^3 - z^(-1))/(2i)") == LaurentPolynomial({-1: 0.5j, 3: -0.5j})

    def test_trivial_group_cubic(self):
        assert P("z*(z - 1/2)*(z - i)") == LaurentPolynomial({1: 0.5j, 2: -0.5 - 1j, 3: 1})

    @pytest.mark.parametrize("text,expected", [
        ("2z", {1: 2}),
        ("2i*z", {1: 2j}),
        ("z**3", {3: 1}),
        ("-z^2", {2: -1}),
        ("(z+1)^2", {0: 1, 1: 2, 2: 1}),
        ("z^-2", {-2: 1}),
        ("3(z)(z)", {2: 3}),
        ("sqrt(4)*z", {1: 2}),
        ("z/2 + z/2", {1: 1}),
        ("2^3 z", {1: 8}),
        ("i^2", {0: -1}),
        ("(1+i)(1-i) z", {1: 2}),
        ("z^2 - z^2 + z", {1: 1}),
        ("  z  ", {1: 1}),
    ])
    def test_grammar(self, text, expected):
        assert P(text) == LaurentPolynomial(expected)

    def test_pi_constant(self):
        assert abs(P("pi*z").coefficient(1) - np.pi) < 1e-15

    def test_power_is_right_associative(self):
        assert P("2^3^2") == LaurentPolynomial({0: 2 ** 9})

    def test_unary_minus_binds_looser_than_power(self):
        assert P("-2^2") == LaurentPolynomial({0: -4})

    def test_exact_cancellation(self):
        p = P("(z + 1/3)*(z - 1/3) - z^2")
        assert p.terms == ((0, complex(-1 / 9)),)


class TestParseErrors:
    @pytest.mark.parametrize("text,offset", [
        ("z^(1/2)", 4),
        ("1/z", 1),
        ("z +", 3),
        ("z + * 2", 4),
        ("(z + 1", 6),
        ("q", 0),
        ("z^z", 2),
        ("z - z", 0),
        ("", 0),
        ("1 @ 2", 2),
    ])
    def test_offsets(self, text, offset):
        with pytest.raises(ParseError) as info:
            P(text)
        assert info.value.offset == offset
        assert 0 <= info.value.offset <= len(text.encode())

    def test_negative_power_of_sum(self):
        with pytest.raises(ParseError):
            P("(z+1)^(-1)")

    def test_expected_hint(self):
        with pytest.raises(ParseError) as info:
            P("z +")
        assert info.value.expected

    def test_byte_offsets_after_unicode(self):
        with pytest.raises(ParseError) as info:
            P("z + é")
        assert info.value.offset == 4

    def test_deep_nesting(self):
        with pytest.raises(ParseError):
            P("(" * 5000 + "z" + ")" * 5000)

    def test_huge_power(self):
        with pytest.raises(ParseError):
            P("(z+1)^100000")


class TestParseExpsum:
    def test_sqrt_two(self):
        g = parse_expsum("2*e(1) + e(sqrt(2))")
        assert g.weights == (2, 1)
        assert g.exponents == (ExactReal.rational(1), ExactReal.sqrt(2))

    def test_rational_exponents(self):
        g = parse_expsum("e(1/2) - e(3/4)")
        assert g.weights == (1, -1)
        assert g.exponents == (ExactReal.rational(1, 2), ExactReal.rational(3, 4))

    def test_zero_weight(self):
        with pytest.raises(ParseError) as info:
            parse_expsum("0*e(1)")
        assert "zero weight" in info.value.message

    def test_duplicates_merge(self):
        g = parse_expsum("e(1) + 2*e(2/2)")
        assert g.weights == (3,) and len(g) == 1

    def test_cancelling_duplicates(self):
        with pytest.raises(ParseError):
            parse_expsum("e(1) - e(1)")

    def test_variable_inside_exponent(self):
        with pytest.raises(ParseError):
            parse_expsum("e(t)")

    def test_pi_is_opaque(self):
        g = parse_expsum("e(pi) + e(1)")
        assert any(a.is_opaque for a in g.exponents)

    def test_format_round_trip(self):
        g = parse_expsum("2*e(1) + e(sqrt(2)) - 3i*e(-1/2)")
        assert parse_expsum(format_expsum(g)) == g


class TestFormat:
    def test_two_terms(self):
        assert format_laurent(LaurentPolynomial({2: 1, 5: 2})) == "z^2 + 2*z^5"

    def test_imaginary_negative_power(self):
        assert format_laurent(LaurentPolynomial({-1: 0.5j})) == "(0.5i)*z^(-1)"

    def test_constant(self):
        assert format_laurent(LaurentPolynomial({0: -1})) == "-1"


def test_parse_complex():
    assert parse_complex("1+2i") == 1 + 2j
    assert parse_complex("0") == 0
    with pytest.raises(ParseError):
        parse_complex("z")


def test_round_trip_1000_dyadic_polynomials():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        k = int(rng.integers(1, 7))
        exps = rng.choice(np.arange(-10, 16), size=k, replace=False)
        terms = {}
        for n in exps:
            re = int(rng.integers(-64, 65)) / 2.0 ** int(rng.integers(0, 6))
            im = int(rng.integers(-64, 65)) / 2.0 ** int(rng.integers(0, 6))
            if re == 0 and im == 0:
                re = 1.0
            terms[int(n)] = complex(re, im)
        p = LaurentPolynomial(terms)
        assert parse_laurent(format_laurent(p)) == p


@settings(max_examples=400)
@given(st.text(alphabet="z0123456789i+-*/^()., eptsqr\t", max_size=40))
def test_parser_total_on_fuzz(text):
    for fn in (parse_laurent, parse_expsum):
        try:
            fn(text)
        except ParseError as exc:
            assert 0 <= exc.offset <= len(text.encode())


@settings(max_examples=200)
@given(st.text(max_size=30))
def test_parser_total_on_arbitrary_text(text):
    try:
        parse_laurent(text)
    except ParseError:
        pass
