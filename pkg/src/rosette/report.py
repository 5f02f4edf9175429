"""JSON report assembly (schema version 1)."""

from __future__ import annotations

import json
import time
from fractions import Fraction

import numpy as np

from .__about__ import __version__
from .errors import DomainError, NumericError, RosetteError
from .laurent import ExponentialSum, LaurentPolynomial
from .oracles import brute_force_preimages, brute_force_self_intersections
from .parser import format_expsum, format_laurent
from .selfint import cusps, point_multiplicity, self_intersections
from .symmetry import analyze_symmetry, annulus_bounds, conj_symmetry_check, density_coverage
from .wave import period as wave_period
from .wave import timeline
from .winding import winding_argument_principle, winding_of_curve, winding_profile

SCHEMA_VERSION = 1


class ReportError(NumericError):
    """A report holds a value that cannot be written as strict JSON."""


def jsonable(obj):
    """Convert report values into plain JSON types; complex numbers become ``[re, im]``."""
    if hasattr(obj, "to_dict"):
        return jsonable(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj) + 0.0
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real) + 0.0, float(obj.imag) + 0.0]
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def report_json(report: dict) -> str:
    """Strict JSON (no NaN or infinity) with shortest round-trip floats."""
    try:
        return json.dumps(jsonable(report), allow_nan=False, indent=2, sort_keys=False) + "\n"
    except ValueError as exc:
        raise ReportError(f"report contains a non-finite number: {exc}") from None


def envelope(command: str, expression: str, body: dict, started: float | None) -> dict:
    out = {"schema_version": SCHEMA_VERSION, "tool": "rosette", "version": __version__,
           "command": command, "input": expression}
    out.update(body)
    if started is not None:
        out["timing_seconds"] = time.perf_counter() - started
    return out


def guarded(fn, *args, **kw):
    """Run an analysis step; failures are reported in place instead of aborting."""
    try:
        return fn(*args, **kw)
    except RosetteError as exc:
        return {"error": str(exc), "kind": type(exc).__name__}


def winding_entry(p: LaurentPolynomial, w0: complex) -> dict:
    entry: dict = {"point": w0}
    try:
        entry["argument_principle"] = winding_argument_principle(p, w0)
    except DomainError as exc:
        return {"point": w0, "error": str(exc)}
    except NumericError:
        entry["argument_principle"] = None
        entry["on_curve"] = True
        return entry
    entry["numeric"] = winding_of_curve(p, w0)
    entry["agree"] = entry["numeric"] == entry["argument_principle"]
    return entry


def multiplicity_entry(p: LaurentPolynomial, w0: complex) -> dict:
    m = point_multiplicity(p, w0)
    oracle = brute_force_preimages(p, w0)
    return {
        "point": w0,
        "count": m.count,
        "parameters": list(m.parameters),
        "ordinary": m.ordinary,
        "oracle_count": len(oracle),
        "agree": len(oracle) == m.count,
        "note": "count of unit-circle roots of p(z) - w, confirmed by a sampled preimage search",
    }


def selfint_entry(p: LaurentPolynomial) -> dict:
    if p.min_exponent < 0:
        pairs = brute_force_self_intersections(p)
        return {
            "method": "sampled",
            "count": 2 * len(pairs),
            "distinct_points": len({(round(z.real, 9), round(z.imag, 9)) for _, _, z in pairs}),
            "cover_degree": 1,
            "intersections": [{"point": z, "t1": a, "t2": b} for a, b, z in pairs],
        }
    return self_intersections(p).to_dict()


def two_term_data(p: LaurentPolynomial):
    """``(a, b, c_a, c_b)`` for a two-term curve with ``1 <= a < b``, else None."""
    if len(p) != 2:
        return None
    (a, ca), (b, cb) = p.terms
    if a < 1:
        return None
    return a, b, ca, cb


def analyze_laurent(expression: str, p: LaurentPolynomial, speed=None, points=(), started=None) -> dict:
    body: dict = {"kind": "laurent", "normalized": format_laurent(p),
                  "terms": [{"exponent": n, "coefficient": c} for n, c in p.terms]}
    body["symmetry"] = guarded(lambda: analyze_symmetry(p).to_dict())
    body["winding"] = [winding_entry(p, w) for w in (0j, *points)]
    body["cusps"] = guarded(lambda: [c.to_dict() for c in cusps(p)])
    body["self_intersections"] = guarded(selfint_entry, p)
    body["multiplicity"] = [guarded(multiplicity_entry, p, w) for w in (0j, *points)]
    tt = two_term_data(p)
    if speed is not None:
        body["wave"] = {"speed": speed, "period": guarded(wave_period, p, speed)}
        if tt is not None:
            a, b, ca, cb = tt
            body["wave"]["winding_profile"] = guarded(lambda: winding_profile(a, b, ca, cb, speed).to_dict())
            body["wave"]["timeline"] = guarded(lambda: [e.to_dict() for e in timeline(a, b, ca, cb, speed)])
    return envelope("analyze", expression, body, started)


def analyze_expsum(expression: str, g: ExponentialSum, horizon: float, started=None,
                   assume_independent: bool = False) -> dict:
    body: dict = {"kind": "exponential_sum", "normalized": format_expsum(g),
                  "terms": [{"weight": w, "exponent": a.to_expr(), "exponent_value": float(a)} for w, a in g.terms]}
    body["conjugate_symmetric"] = conj_symmetry_check(g)
    body["annulus"] = guarded(annulus_bounds, g, horizon)
    body["density"] = guarded(density_coverage, g, horizon, assume_independent=assume_independent)
    return envelope("analyze", expression, body, started)
