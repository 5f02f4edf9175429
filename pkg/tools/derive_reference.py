"""Recompute the frozen reference values in tests/reference_values.py.

Uses mpmath at 50 digits and closed forms only; nothing from the rosette
package is imported, so the numbers are independent of the implementation.

    python tools/derive_reference.py
"""

from fractions import Fraction
from math import gcd

import mpmath as mp

mp.mp.dps = 50


def show(name, value):
    if isinstance(value, mp.mpf):
        value = float(value)
    print(f"{name} = {value!r}")


def roots_in(f, lo, hi, grid=20000):
    """Sign changes of f on a fine grid, refined by bisection-safe findroot."""
    xs = [lo + (hi - lo) * mp.mpf(k) / grid for k in range(grid + 1)]
    out = []
    for a, b in zip(xs, xs[1:]):
        fa, fb = f(a), f(b)
        if fa == 0:
            out.append(a)
        elif fa * fb < 0:
            out.append(mp.findroot(f, (a, b), solver="anderson"))
    return out


def main():
    e = lambda t: mp.expj(2 * mp.pi * t)  # noqa: E731
    show("EVAL_Z5_5Z_HALF", mp.re(e(0.5) ** 5 + 5 * e(0.5)))
    show("CHEB_T3_HALF", 4 * mp.mpf(0.5) ** 3 - 3 * mp.mpf(0.5))
    show("CHEB_U2_HALF", 4 * mp.mpf(0.5) ** 2 - 1)
    show("PSI_1_2_EIGHTH", mp.sin(2 * mp.pi / 8) / mp.sin(4 * mp.pi / 8))
    show("PHI_2_5_TENTH_035", mp.cos(2 * mp.pi * 5 * mp.mpf("0.1") * mp.mpf("0.35")) / mp.cos(2 * mp.pi * 2 * mp.mpf("0.1") * mp.mpf("0.35")))
    # limit of cos(6 pi t)/cos(2 pi t) at t = 1/4 by l'Hopital
    show("PHI_1_3_1_QUARTER", mp.limit(lambda t: mp.cos(6 * mp.pi * t) / mp.cos(2 * mp.pi * t), mp.mpf(1) / 4))

    # z^2 + 2 z^5 with c = 1/10: |2 cos(pi t)| = |cos(0.4 pi t)|
    cross = lambda t: 4 * mp.cos(mp.pi * t) ** 2 - mp.cos(mp.mpf("0.4") * mp.pi * t) ** 2  # noqa: E731
    show("TRANSITIONS_2_5_WINDOW", [float(r) for r in roots_in(cross, mp.mpf(0), mp.mpf(1))])
    show("TRANSITIONS_2_5_PERIOD_COUNT", len(roots_in(cross, mp.mpf(0), mp.mpf(10))))
    cusp = lambda t: 100 * mp.cos(mp.pi * t) ** 2 - 4 * mp.cos(mp.mpf("0.4") * mp.pi * t) ** 2  # noqa: E731
    show("CUSP_TIMES_2_5_WINDOW", [float(r) for r in roots_in(cusp, mp.mpf(0), mp.mpf(1))])
    show("WAVE_VALUE_2_5_HALF", mp.cos(mp.mpf("0.2") * mp.pi))

    # e(t/2) - e(3t/4): smallest T > 0 with T/2 and 3T/4 both integers
    show("EXPSUM_PERIOD_HALF_THREEQUARTER", Fraction(next(T for T in range(1, 100) if T % 2 == 0 and (3 * T) % 4 == 0)))
    # z + z^3 at speed 1/4: T = 1 / (c gcd(1, 3))
    show("PERIOD_Z_Z3_QUARTER", 1 / (Fraction(1, 4) * gcd(1, 3)))
    # Res(z - w, 1 - conj(w) z) at w = 2 is the 2x2 determinant
    show("RESULTANT_Z_W2", mp.det(mp.matrix([[1, -2], [-2, 1]])))
    # z^2 + 0.5 z^5 = z^2 (1 + 0.5 z^3): a double zero at 0 plus three outside
    show("WINDING_Z2_HALF_Z5", 2 + sum(1 for r in mp.polyroots([0.5, 0, 0, 1]) if abs(r) < 1))
    show("WINDING_ZINV_4Z2", sum(1 for r in mp.polyroots([4, 0, 0, 1]) if abs(r) < 1) - 1)
    # unit-circle roots of z + z^2 + ... + z^5 = 0
    show("PREIMAGES_ONE", sum(1 for r in mp.polyroots([1, 1, 1, 1, 1, 0]) if abs(abs(r) - 1) < 1e-20))
    show("PREIMAGES_ZERO", sum(1 for r in mp.polyroots([1, 1, 1, 1, 1, 1]) if abs(abs(r) - 1) < 1e-20))


if __name__ == "__main__":
    main()
