"""Command-line interface.

Exit codes: 0 success, 1 expression could not be parsed, 2 numerical or
domain failure (including reports that would contain non-finite numbers).
"""

from __future__ import annotations

import argparse
import math
import os
import re
import sys
import time
from fractions import Fraction

import numpy as np

from .__about__ import __version__
from .errors import ParseError, RosetteError
from .laurent import LaurentPolynomial, eval_circle, to_exponential_sum
from .parser import format_laurent, parse_complex, parse_expsum, parse_laurent
from .render import Annotations, RenderOptions, export_csv, export_grid_csv, render_frames, render_svg
from .report import analyze_expsum, analyze_laurent, envelope, guarded, report_json, two_term_data, winding_entry
from .selfint import cusps, self_intersections
from .symmetry import analyze_symmetry, annulus_bounds, density_coverage
from .variety import mirror_invariance_check, rotation_invariance_check, variety_eval_detailed, variety_grid
from .wave import period as wave_period
from .wave import snapshots, timeline, wave_coefficients
from .winding import winding_argument_principle, winding_profile

_EXPSUM = re.compile(r"(?<![A-Za-z_])e\s*\(")


def is_expsum(text: str) -> bool:
    return bool(_EXPSUM.search(text))


def _diagnostic(err: ParseError, text: str) -> str:
    raw = text.encode("utf-8")[: err.offset]
    col = len(raw.decode("utf-8", errors="ignore"))
    red = sys.stderr.isatty() and "NO_COLOR" not in os.environ
    head = "\x1b[31merror\x1b[0m" if red else "error"
    return f"{head}: {err.render()}\n  {text}\n  {' ' * col}^"


def _window(text: str | None):
    if text is None:
        return None
    try:
        lo, hi = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("window must look like LO,HI") from None
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise argparse.ArgumentTypeError("window needs finite LO < HI")
    return lo, hi


def _positive(kind):
    def conv(s):
        v = kind(s)
        if not v > 0 or (kind is float and not math.isfinite(v)):
            raise argparse.ArgumentTypeError(f"expected a positive value, got {s}")
        return v

    return conv


def _speed(s: str):
    """Speeds given as ``p/q`` or integers stay exact."""
    try:
        if "/" in s or s.strip().lstrip("+").isdigit():
            v = Fraction(s.strip())
            if v <= 0:
                raise ValueError
            return v if v.denominator != 1 else int(v)
        v = float(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid speed {s!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError("speed must be positive and finite")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rosette", description="Rosette curves: symmetry, winding, self-intersections and wave flow.")
    ap.add_argument("--version", action="version", version=f"rosette {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, formats, default):
        p.add_argument("expression", help="Laurent polynomial in z, or a sum of w*e(a) terms")
        p.add_argument("--samples", type=_positive(int), default=4096, help="curve samples (default 4096)")
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("-o", "--output", help="write to FILE instead of standard output")
        p.add_argument("--timing", action="store_true", help="include wall-clock timing in JSON output")

    p = sub.add_parser("analyze", help="full JSON analysis")
    common(p, ["json"], "json")
    p.add_argument("--speed", type=_speed, help="wave speed for the wave-flow section")
    p.add_argument("--point", action="append", default=[], help="extra point for winding and multiplicity")
    p.add_argument("--horizon", type=_positive(float), default=200.0, help="time horizon for exponential sums")
    p.add_argument("--assume-independent", action="store_true", help="treat opaque exponents as independent")

    p = sub.add_parser("render", help="draw the curve")
    common(p, ["svg", "csv"], "svg")
    p.add_argument("--horizon", type=_positive(float), default=50.0, help="time horizon for exponential sums")
    p.add_argument("--width", type=_positive(int), default=800)
    p.add_argument("--height", type=_positive(int), default=800)
    p.add_argument("--no-markers", action="store_true", help="path only")

    p = sub.add_parser("evolve", help="frames of the wave flow")
    common(p, ["svg", "json", "csv"], "svg")
    p.add_argument("--speed", type=_speed, required=True)
    p.add_argument("--frames", type=_positive(int), default=12)
    p.add_argument("--window", type=_window, help="time window LO,HI (default one period)")
    p.add_argument("--width", type=_positive(int), default=800)
    p.add_argument("--height", type=_positive(int), default=800)

    p = sub.add_parser("selfint", help="self-intersections, optionally along the wave flow")
    common(p, ["json"], "json")
    p.add_argument("--speed", type=_speed)
    p.add_argument("--times", type=_positive(int), default=64, help="evenly spaced times in [0, T]")

    p = sub.add_parser("winding", help="winding number about a point or along the wave flow")
    common(p, ["json"], "json")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--point", help="complex point, e.g. 1+2i")
    g.add_argument("--speed", type=_speed)
    p.add_argument("--window", type=_window, help="time window LO,HI (default one period)")
    p.add_argument("--times", type=_positive(int), default=64, help="sampled times for curves with more than two terms")

    p = sub.add_parser("annulus", help="annulus bounds and density coverage of an exponential sum")
    common(p, ["json"], "json")
    p.add_argument("--horizon", type=_positive(float), required=True)
    p.add_argument("--grid", type=_positive(int), default=30, help="radial and angular cells (default 30)")
    p.add_argument("--assume-independent", action="store_true")

    p = sub.add_parser("variety", help="|h| on a grid around the curve")
    common(p, ["csv", "json"], "csv")
    p.add_argument("--grid", type=_positive(int), default=100, help="grid points per side")
    return ap


def _require_laurent(text: str) -> LaurentPolynomial:
    if is_expsum(text):
        raise RosetteError("this command needs a Laurent polynomial in z")
    return parse_laurent(text)


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            # reader went away (e.g. piped into head); not an error for us
            devnull = os.open(os.devnull, os.O_WRONLY)
            os.dup2(devnull, sys.stdout.fileno())


def cmd_analyze(args) -> str:
    started = time.perf_counter() if args.timing else None
    if is_expsum(args.expression):
        g = parse_expsum(args.expression, assume_independent=args.assume_independent)
        rep = analyze_expsum(args.expression, g, args.horizon, started, args.assume_independent)
    else:
        p = parse_laurent(args.expression)
        points = [parse_complex(s) for s in args.point]
        rep = analyze_laurent(args.expression, p, args.speed, points, started)
    return report_json(rep)


def _annotations(p: LaurentPolynomial) -> Annotations:
    ann = Annotations()
    if p.min_exponent >= 0 and p.max_exponent >= 1:
        si = guarded(self_intersections, p)
        if not isinstance(si, dict):
            ann.selfint = [s.point for s in si]
    cu = guarded(cusps, p)
    if not isinstance(cu, dict):
        ann.cusps = [c.point for c in cu]
    rep = guarded(analyze_symmetry, p)
    if not isinstance(rep, dict):
        ann.axes = [math.pi * s for _, s in rep.mirror_axes]
    return ann


def cmd_render(args) -> str:
    n = args.samples
    if is_expsum(args.expression):
        g = parse_expsum(args.expression)
        t = np.linspace(0.0, args.horizon, n)
        z = g(t)
        closed = False
        ann = None
    else:
        p = parse_laurent(args.expression)
        t = np.arange(n) / n
        z = eval_circle(p, t)
        closed = True
        ann = None if args.no_markers else _annotations(p)
    if args.format == "csv":
        return export_csv(t, z)
    opts = RenderOptions(samples=max(n, 16), width=args.width, height=args.height)
    return render_svg([z], ann, opts, closed=closed)


def cmd_evolve(args) -> str:
    p = _require_laurent(args.expression)
    frames = snapshots(p, args.speed, args.frames, min(args.samples, 2048), args.window)
    if args.format == "csv":
        lines = ["time,t,re,im"]
        for fr in frames:
            body = export_csv(fr.t, fr.points).split("\r\n")[1:-1]
            lines.extend(f"{'%.17g' % (fr.time + 0.0)},{row}" for row in body)
        return "\r\n".join(lines) + "\r\n"
    if args.format == "json":
        body = {
            "speed": args.speed,
            "period": wave_period(p, args.speed),
            "frames": [{"time": fr.time, "terms": [{"exponent": n, "coefficient": c} for n, c in fr.coefficients.terms]}
                       for fr in frames],
        }
        tt = two_term_data(p)
        if tt is not None:
            body["timeline"] = guarded(lambda: [e.to_dict() for e in timeline(*tt, args.speed, args.window)])
        return report_json(envelope("evolve", args.expression, body, None))
    labels = [Annotations(label=f"t = {fr.time:.4g}") for fr in frames]
    opts = RenderOptions(width=args.width, height=args.height)
    return render_frames([fr.points for fr in frames], labels, opts)


def _wave_selfint_entry(p: LaurentPolynomial, c, time_: float) -> dict:
    q = wave_coefficients(p, c, time_)
    moving = [n for n in q.exponents if n != 0]
    if len(moving) < 2:
        return {"time": time_, "degenerate": True, "count": None, "intersections": []}
    d = self_intersections(q).to_dict()
    return {"time": time_, "degenerate": False, **d}


def cmd_selfint(args) -> str:
    p = _require_laurent(args.expression)
    if args.speed is None:
        body = {"self_intersections": self_intersections(p).to_dict()}
        return report_json(envelope("selfint", args.expression, body, None))
    T = wave_period(p, args.speed)
    times = np.linspace(0.0, T, args.times) if args.times > 1 else np.zeros(1)
    body = {
        "speed": args.speed,
        "period": T,
        "times": [_wave_selfint_entry(p, args.speed, float(t)) for t in times],
    }
    return report_json(envelope("selfint", args.expression, body, None))


def cmd_winding(args) -> str:
    p = _require_laurent(args.expression)
    if args.speed is None:
        w0 = parse_complex(args.point) if args.point else 0j
        return report_json(envelope("winding", args.expression, {"winding": winding_entry(p, w0)}, None))
    tt = two_term_data(p)
    if tt is not None and tt[0] < tt[1]:
        prof = winding_profile(*tt, float(args.speed), args.window)
        return report_json(envelope("winding", args.expression, {"profile": prof.to_dict()}, None))
    T = wave_period(p, args.speed)
    lo, hi = args.window or (0.0, T)
    values = []
    for t in np.linspace(lo, hi, args.times):
        q = wave_coefficients(p, args.speed, float(t))
        try:
            values.append({"time": float(t), "winding": winding_argument_principle(q, 0j)})
        except RosetteError as exc:
            values.append({"time": float(t), "winding": None, "reason": str(exc)})
    return report_json(envelope("winding", args.expression, {"speed": args.speed, "period": T, "samples": values}, None))


def cmd_annulus(args) -> str:
    g = parse_expsum(args.expression, assume_independent=args.assume_independent) if is_expsum(args.expression) \
        else to_exponential_sum(parse_laurent(args.expression))
    body = {"annulus": annulus_bounds(g, args.horizon).to_dict(),
            "density": guarded(lambda: density_coverage(g, args.horizon, args.grid, args.grid,
                                                      assume_independent=args.assume_independent).to_dict())}
    return report_json(envelope("annulus", args.expression, body, None))


def cmd_variety(args) -> str:
    p = _require_laurent(args.expression)
    t = np.arange(args.samples) / args.samples
    z = eval_circle(p, t)
    pad = 0.1 * max(np.ptp(z.real), np.ptp(z.imag), 1e-9)
    re_rng = (float(z.real.min() - pad), float(z.real.max() + pad))
    im_rng = (float(z.imag.min() - pad), float(z.imag.max() + pad))
    if args.format == "csv":
        return export_grid_csv(*variety_grid(p, re_rng, im_rng, max(args.grid, 2)))
    probe = z[:: max(1, len(z) // 128)][:128]
    worst = 0.0
    for w in probe:
        v = variety_eval_detailed(p, complex(w))
        worst = max(worst, abs(v.value) / max(v.scale, 1e-300))
    body: dict = {"degree": p.max_exponent, "normalized": format_laurent(p),
                  "on_curve_max_relative": worst, "range": {"re": list(re_rng), "im": list(im_rng)}}
    rep = guarded(analyze_symmetry, p)
    checks = []
    if not isinstance(rep, dict):
        w = complex(0.3 * (re_rng[1] - re_rng[0]) + re_rng[0], 0.2 * (im_rng[1] - im_rng[0]) + im_rng[0])
        if rep.symmetry_type:
            k, m = rep.symmetry_type
            checks.append({"kind": "rotation", "k": k, "m": m,
                           "residual": guarded(rotation_invariance_check, p, w, m, k)})
        for _, s in rep.mirror_axes:
            checks.append({"kind": "mirror", "sigma": s, "residual": guarded(mirror_invariance_check, p, w, s)})
    body["invariance"] = checks
    return report_json(envelope("variety", args.expression, body, None))


COMMANDS = {
    "analyze": cmd_analyze,
    "render": cmd_render,
    "evolve": cmd_evolve,
    "selfint": cmd_selfint,
    "winding": cmd_winding,
    "annulus": cmd_annulus,
    "variety": cmd_variety,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        # overflow surfaces as non-finite values, which are rejected below
        with np.errstate(over="ignore", invalid="ignore"):
            out = COMMANDS[args.command](args)
    except ParseError as exc:
        text = exc.text if exc.text is not None else getattr(args, "expression", "")
        print(_diagnostic(exc, text), file=sys.stderr)
        return 1
    except RosetteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return 2
    _emit(out, args.output)
    return 0

