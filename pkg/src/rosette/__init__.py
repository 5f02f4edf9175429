"""Rosette curves: images of the unit circle under Laurent polynomials and
exponential sums, their symmetries, winding numbers, self-intersections and
evolution under the wave equation."""

from .__about__ import __version__
from .errors import DomainError, IndeterminateError, NumericError, ParseError, RosetteError
from .exact import ExactReal, rationally_independent
from .laurent import ExponentialSum, LaurentPolynomial, eval_circle, periodicity_check, sample_points
from .parser import format_expsum, format_laurent, parse_complex, parse_expsum, parse_laurent
from .selfint import cusps, point_multiplicity, self_intersections, self_intersections_general, self_intersections_two_term
from .symmetry import analyze_symmetry, annulus_bounds, classify_group, density_coverage
from .variety import variety_eval
from .wave import WaveField, period, timeline
from .winding import two_term_winding, winding_argument_principle, winding_numeric, winding_profile

__all__ = [
    "__version__",
    "DomainError",
    "ExactReal",
    "ExponentialSum",
    "IndeterminateError",
    "LaurentPolynomial",
    "NumericError",
    "ParseError",
    "RosetteError",
    "WaveField",
    "analyze_symmetry",
    "annulus_bounds",
    "classify_group",
    "cusps",
    "density_coverage",
    "eval_circle",
    "format_expsum",
    "format_laurent",
    "parse_complex",
    "parse_expsum",
    "parse_laurent",
    "period",
    "periodicity_check",
    "point_multiplicity",
    "rationally_independent",
    "sample_points",
    "self_intersections",
    "self_intersections_general",
    "self_intersections_two_term",
    "timeline",
    "two_term_winding",
    "variety_eval",
    "winding_argument_principle",
    "winding_numeric",
    "winding_profile",
]
