"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` (the summary lines appear at the
end of the session) or ``python -m tests.test_acceptance``.
"""

import cmath
import contextlib
import io
import json
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from rosette import parse_expsum, parse_laurent
from rosette.cli import main
from rosette.errors import DomainError
from rosette.laurent import LaurentPolynomial, eval_circle
from rosette.numeric import cheb_T, phi, psi
from rosette.oracles import brute_force_preimages, brute_force_self_intersections, hausdorff
from rosette.report import analyze_laurent
from rosette.selfint import (
    cusps,
    direction_base_angle,
    point_multiplicity,
    self_intersections_general,
    self_intersections_two_term,
    self_intersections_wave,
)
from rosette.symmetry import analyze_symmetry, density_coverage
from rosette.variety import mirror_invariance_check, rotation_invariance_check, variety_eval, variety_scale
from rosette.wave import dalembert, period, wave_coefficients, wave_eval
from rosette.winding import winding_argument_principle, winding_of_curve, winding_profile

RESULTS: dict[int, tuple[str, bool, str]] = {}


def record(number: int, title: str):
    """Decorator: store PASS/FAIL for the criterion and print its line."""

    def wrap(fn):
        def run(*args, **kwargs):
            try:
                detail = fn(*args, **kwargs) or ""
            except BaseException as exc:
                RESULTS[number] = (title, False, f"{type(exc).__name__}: {exc}"[:160])
                print(f"FAIL criterion {number:2d}: {title}")
                raise
            RESULTS[number] = (title, True, detail)
            print(f"PASS criterion {number:2d}: {title} {detail}".rstrip())

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


T1024 = np.arange(1024) / 1024

SYMMETRY_CASES = [
    ("z^2+z^7+z^12", "dihedral(5)"),
    ("2z^2-2i z^7+i z^12", "cyclic(5)"),
    ("z(z-1/2)(z-i)", "trivial"),
]


@record(1, "symmetry classification")
def test_01_symmetry_classification():
    for expr, label in SYMMETRY_CASES:
        assert analyze_symmetry(parse_laurent(expr)).label == label, expr
    rep = analyze_symmetry(parse_laurent("(z^3-z^-1)/(2i)"))
    assert rep.symmetry_type == (3, 4)
    assert analyze_symmetry(parse_laurent("z^5+z^10+z^15")).rotation_order == 1


@record(2, "functional symmetry identities to 1e-10")
def test_02_functional_identities():
    exprs = [e for e, _ in SYMMETRY_CASES] + ["(z^3-z^-1)/(2i)", "z^5+z^10+z^15"]
    worst = 0.0
    for expr in exprs:
        p = parse_laurent(expr)
        rep = analyze_symmetry(p)
        scale = p.coefficient_scale
        base = eval_circle(p, T1024)
        m = rep.exponent_gcd
        rot = eval_circle(p, T1024 + 1 / m) - cmath.exp(2j * math.pi * p.min_exponent / m) * base
        worst = max(worst, np.max(np.abs(rot)) / scale)
        if rep.symmetry_type:
            k, m = rep.symmetry_type
            rot = eval_circle(p, T1024 + 1 / m) - cmath.exp(2j * math.pi * k / m) * base
            worst = max(worst, np.max(np.abs(rot)) / scale)
        for beta, sigma in rep.mirror_axes:
            mir = eval_circle(p, beta - T1024) - cmath.exp(2j * math.pi * sigma) * np.conj(base)
            worst = max(worst, np.max(np.abs(mir)) / scale)
    assert worst <= 1e-10
    return f"(max residual {worst:.1e})"


@record(3, "winding profile of z^2+2z^5, c=1/10, window [0,1]")
def test_03_winding_profile():
    prof = winding_profile(2, 5, 1, 2, 0.1, window=(0.0, 1.0))
    assert len(prof.breakpoints) == 2
    assert abs(prof.breakpoints[0] - 0.35) <= 0.01
    assert abs(prof.breakpoints[1] - 0.62) <= 0.01
    assert prof.values == (5, 2, 5)
    p = parse_laurent("z^2+2z^5")
    for t in np.linspace(0.05, 0.95, 10):
        assert prof.value_at(t) == winding_of_curve(wave_coefficients(p, 0.1, float(t))), t
    return f"(transitions {prof.breakpoints[0]:.4f}, {prof.breakpoints[1]:.4f})"


@record(4, "argument principle equals numeric winding on 100 instances")
def test_04_winding_oracle():
    rng = np.random.default_rng(4)
    done = 0
    while done < 100:
        deg = int(rng.integers(1, 9))
        low = int(rng.integers(-deg, deg))
        coeffs = rng.normal(size=deg - low + 1) + 1j * rng.normal(size=deg - low + 1)
        p = LaurentPolynomial({low + k: c for k, c in enumerate(coeffs)})
        if len(p) < 2:
            continue
        z = eval_circle(p, np.arange(4096) / 4096)
        r = float(np.max(np.abs(z)))
        w = complex(*rng.uniform(-1.2 * r, 1.2 * r, 2))
        if np.min(np.abs(z - w)) <= 1e-3 * max(r, 1.0):
            continue
        assert winding_argument_principle(p, w) == winding_of_curve(p, w), (p, w)
        done += 1
    return "(0 mismatches)"


@record(5, "cusps of z^n + nz at the (n-1)-th roots of -1")
def test_05_cusps():
    for n in range(3, 9):
        p = LaurentPolynomial({1: n, n: 1})
        cs = cusps(p)
        assert len(cs) == n - 1, n
        targets = [cmath.exp(1j * math.pi * (2 * k + 1) / (n - 1)) for k in range(n - 1)]
        for cu in cs:
            assert min(abs(cmath.exp(2j * math.pi * cu.t) - e) for e in targets) <= 1e-8


@record(6, "self-intersection sharpness for z^5+0.1z")
def test_06_sharpness():
    p = parse_laurent("z^5+0.1z")
    two = self_intersections_two_term(0.1, 1.0, 1, 5)
    gen = self_intersections_general(p)
    oracle = [z for *_, z in brute_force_self_intersections(p)]
    assert len(two) == len(gen) == 32 == 2 * (5 - 1) ** 2
    d1 = hausdorff(two.points(), gen.points())
    d2 = hausdorff(two.points(), oracle)
    assert d1 <= 1e-6 and d2 <= 1e-6
    return f"(32 records, Hausdorff {max(d1, d2):.1e})"


@record(7, "two-term crossings lie on the predicted lines")
def test_07_directions():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(20):
        a = int(rng.integers(1, 5))
        b = a + int(rng.integers(1, 6))
        v, w = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
        res = self_intersections_two_term(v, w, a, b)
        g = math.gcd(a, b)
        step = math.pi / ((b - a) // g)
        base = direction_base_angle(v, w, a // g, b // g)
        for si in res:
            if si.modulus < 1e-12:
                continue
            off = (cmath.phase(si.point) - base) % step
            worst = max(worst, min(off, step - off))
    assert worst <= 1e-8
    return f"(max angular offset {worst:.1e})"


@record(8, "wave flow self-intersections")
def test_08_wave_flow():
    T = period(parse_laurent("26z^2+z^10"), Fraction(1, 10))
    for t in np.linspace(0, T, 64):
        assert len(self_intersections_wave(2, 10, 26, 1, 0.1, float(t))) == 0, t
    assert len(self_intersections_wave(1, 6, 6, 1, 1 / 6, 0.0)) == 0
    assert len(cusps(parse_laurent("6z+z^6"))) == 5
    hits = []
    for t in np.linspace(0.05, 1.0, 20):
        try:
            if len(self_intersections_wave(1, 6, 6, 1, 1 / 6, float(t))):
                hits.append(float(t))
        except DomainError:
            continue
    assert hits
    return f"(6z+z^6 crosses itself at {len(hits)} of the sampled times)"


@record(9, "wave correctness")
def test_09_wave_correctness():
    p = parse_laurent("z^2+2z^5")
    c = 0.1
    x = np.linspace(0, 1, 64)[:, None]
    t = np.linspace(0, 20, 64)[None, :]
    dal = np.max(np.abs(wave_eval(p, c, x, t) - dalembert(p, c, x, t)))
    assert dal <= 1e-10
    n = 256
    T = period(p, c)
    hx, ht = 1.0 / n, T / n
    xx = np.arange(n + 2)[:, None] * hx
    tt = np.arange(n + 2)[None, :] * ht
    u = wave_eval(p, c, xx, tt)
    utt = (u[1:-1, 2:] - 2 * u[1:-1, 1:-1] + u[1:-1, :-2]) / ht ** 2
    uxx = (u[2:, 1:-1] - 2 * u[1:-1, 1:-1] + u[:-2, 1:-1]) / hx ** 2
    scale = c * c * sum(abs(cn) * (2 * math.pi * k) ** 2 for k, cn in p.terms)
    pde = np.max(np.abs(utt - c * c * uxx)) / scale
    assert pde <= 1e-4
    xs = np.linspace(0, 1, 257)
    per = max(np.max(np.abs(wave_eval(p, c, xs, s + T) - wave_eval(p, c, xs, s))) for s in (0.0, 0.37, 3.1, 7.9))
    assert per <= 1e-10
    return f"(d'Alembert {dal:.1e}, PDE {pde:.1e}, period {per:.1e})"


@record(10, "Chebyshev inequality and ratio range endpoints")
def test_10_chebyshev_lemmas():
    y = np.linspace(-1, 1, 10001)
    for d in (1, 3, 5, 7, 9):
        assert np.all(np.abs(cheb_T(d, y)) <= d * np.abs(y) + 1e-12), d
    delta = 1e-7
    for a, b in ((1, 2), (2, 6), (3, 12)):
        for k in range(2 * a):
            th = k / (2 * a)
            for probe in (th, th + delta, th - delta):
                assert abs(abs(psi(a, b, probe)) - a / b) <= 1e-6, (a, b, probe)
        grid = np.linspace(0, 1, 20001)
        assert np.nanmin(np.abs(psi(a, b, grid))) >= a / b - 1e-9
    for a, b, c in ((1, 3, 1.0), (2, 6, 0.25), (1, 5, 0.2)):
        for k in range(3):
            tk = 1 / (4 * a * c) + k / (2 * a * c)
            for probe in (tk, tk + delta, tk - delta):
                assert abs(abs(phi(a, b, c, probe)) - b / a) <= 1e-6, (a, b, probe)
        grid = np.linspace(0, 1 / (a * c), 20001)
        assert np.nanmax(np.abs(phi(a, b, c, grid))) <= b / a + 1e-9


@record(11, "variety vanishes on the curve and obeys the symmetry laws")
def test_11_variety():
    rng = np.random.default_rng(11)
    t = np.arange(128) / 128
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(1, 7))
        c = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
        p = LaurentPolynomial({k: c[k] for k in range(n + 1)})
        for w in eval_circle(p, t):
            worst = max(worst, abs(variety_eval(p, w)) / variety_scale(p, w))
    assert worst <= 1e-8
    p = parse_laurent("z^2+z^7+z^12")
    probes = (0.3 + 0.2j, 1.7 - 0.4j, -0.8 + 1.1j)
    good = max(rotation_invariance_check(p, w, 5, k) for w in probes for k in range(1, 5))
    good = max(good, *(mirror_invariance_check(p, w, s) for w in probes for _, s in analyze_symmetry(p).mirror_axes))
    assert good <= 1e-6
    bad = min(rotation_invariance_check(p, w, 7, 1) for w in probes)
    q = parse_laurent("2z^2-2i z^7+i z^12")
    bad = min(bad, *(mirror_invariance_check(q, w, 0.0) for w in (1.7 - 0.4j, 0.8 + 0.9j, -1.3 - 0.2j)))
    assert bad >= 1e-2
    return f"(on-curve {worst:.1e}, laws {good:.1e}, controls >= {bad:.2f})"


@record(12, "annulus bounds and density coverage")
def test_12_density():
    g = parse_expsum("2*e(1)+e(sqrt(2))")
    start = time.perf_counter()
    est = density_coverage(g, 5000.0, 30, 30)
    elapsed = time.perf_counter() - start
    assert est.analytic_r_min == pytest.approx(1.0, abs=1e-12)
    assert est.r_max == pytest.approx(3.0, abs=1e-12)
    assert est.coverage_fraction >= 0.99
    assert elapsed <= 10.0
    return f"(coverage {est.coverage_fraction:.4f} in {elapsed:.2f} s)"


@record(13, "multiplicity of 1+z+...+z^5")
def test_13_multiplicity():
    p = parse_laurent("1+z+z^2+z^3+z^4+z^5")
    m = point_multiplicity(p, 0)
    assert m.count == 5 and m.ordinary
    rep = analyze_laurent("1+z+z^2+z^3+z^4+z^5", p, points=[1 + 0j])
    entry = rep["multiplicity"][1]
    oracle = len(brute_force_preimages(p, 1))
    assert entry["oracle_count"] == oracle == entry["count"] == 4
    assert entry["note"]
    return "(origin 5 ordinary, value 1 reached 4 times)"


DETERMINISM_COMMANDS = [
    ["analyze", "z^2+2z^5", "--speed", "1/10"],
    ["analyze", "2*e(1)+e(sqrt(2))", "--horizon", "100"],
    ["render", "z^2+z^7+z^12", "--samples", "1024"],
    ["render", "z^5+0.1z", "--format", "csv", "--samples", "256"],
    ["evolve", "6z+z^6", "--speed", "1/6", "--frames", "8"],
    ["evolve", "z^2+2z^5", "--speed", "1/10", "--format", "json", "--frames", "4"],
    ["evolve", "z^2+2z^5", "--speed", "1/10", "--format", "csv", "--frames", "2", "--samples", "64"],
    ["selfint", "z^5+0.1z"],
    ["selfint", "26z^2+z^10", "--speed", "1/10", "--times", "16"],
    ["winding", "z^2+2z^5", "--speed", "1/10", "--window", "0,1"],
    ["winding", "z^-1+4z^2", "--point", "0.5i"],
    ["annulus", "2*e(1)+e(sqrt(2))", "--horizon", "300"],
    ["variety", "z^3+0.4z", "--grid", "12"],
    ["variety", "z^3+0.4z", "--format", "json", "--samples", "128"],
]


def _is_json(argv) -> bool:
    if "--format" in argv:
        return argv[argv.index("--format") + 1] == "json"
    return argv[0] in ("analyze", "selfint", "winding", "annulus")


def _capture(argv) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


@record(14, "byte-identical CLI output")
def test_14_determinism():
    for argv in DETERMINISM_COMMANDS:
        c1, first = _capture(argv)
        c2, second = _capture(argv)
        assert c1 == c2 == 0, argv
        assert first and first == second, argv
        if _is_json(argv):
            json.loads(first)
    return f"({len(DETERMINISM_COMMANDS)} invocations)"


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    failed = 0
    for fn in tests:
        try:
            fn()
        except BaseException:
            failed += 1
    raise SystemExit(1 if failed else 0)
