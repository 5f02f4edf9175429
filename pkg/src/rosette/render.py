"""Deterministic SVG and CSV output for sampled curves."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class RenderOptions:
    samples: int = 4096
    width: int = 800
    height: int = 800
    stroke_width: float = 1.5
    margin: float = 0.06
    show_selfint: bool = True
    show_cusps: bool = True
    show_axes: bool = True
    show_origin: bool = False
    columns: int | None = None

    def __post_init__(self):
        if self.samples < 16:
            raise DomainError("samples must be at least 16")
        if self.width <= 0 or self.height <= 0:
            raise DomainError("width and height must be positive")
        if not 0 <= self.margin < 0.5:
            raise DomainError("margin must lie in [0, 0.5)")


@dataclass
class Annotations:
    """Markers drawn on top of a curve; axes are angles in radians."""

    selfint: list[complex] = field(default_factory=list)
    cusps: list[complex] = field(default_factory=list)
    axes: list[float] = field(default_factory=list)
    label: str | None = None


def _f(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _bounds(curves, annotations) -> tuple[float, float, float, float]:
    pts = [np.asarray(c, dtype=complex).ravel() for c in curves if len(c)]
    for a in annotations:
        if a is not None:
            pts.append(np.asarray(a.selfint + a.cusps, dtype=complex))
    allp = np.concatenate(pts) if pts else np.zeros(1, dtype=complex)
    allp = allp[np.isfinite(allp)]
    if allp.size == 0:
        allp = np.zeros(1, dtype=complex)
    lo_x, hi_x = float(allp.real.min()), float(allp.real.max())
    lo_y, hi_y = float(allp.imag.min()), float(allp.imag.max())
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    cx, cy = 0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y)
    return cx - span / 2, cx + span / 2, cy - span / 2, cy + span / 2


class _Viewport:
    """Isotropic map from the plane into a pixel box, y flipped."""

    def __init__(self, box, bounds, margin):
        x0, y0, w, h = box
        lo_x, hi_x, lo_y, hi_y = bounds
        inner = min(w, h) * (1 - 2 * margin)
        self.k = inner / max(hi_x - lo_x, hi_y - lo_y)
        self.cx, self.cy = 0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y)
        self.ox, self.oy = x0 + w / 2, y0 + h / 2
        self.box = box

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return self.ox + self.k * (z.real - self.cx), self.oy - self.k * (z.imag - self.cy)


def _path(vp: _Viewport, z, sw: float, closed: bool = True) -> str:
    x, y = vp(z)
    cmds = " ".join(f"{_f(a)},{_f(b)}" for a, b in zip(x, y))
    end = " Z" if closed else ""
    return f'<path d="M {cmds}{end}" fill="none" stroke="#1f3b73" stroke-width="{_f(sw)}" stroke-linejoin="round"/>'


def _panel(vp: _Viewport, curves, ann: Annotations | None, opts: RenderOptions, closed: bool = True) -> list[str]:
    out = []
    x0, y0, w, h = vp.box
    if ann is not None and opts.show_axes and ann.axes:
        reach = 0.5 * math.hypot(w, h)
        for ang in ann.axes:
            dx, dy = reach * math.cos(ang), -reach * math.sin(ang)
            ox, oy = vp(0j)
            ox, oy = float(ox), float(oy)
            out.append(f'<line x1="{_f(ox - dx)}" y1="{_f(oy - dy)}" x2="{_f(ox + dx)}" y2="{_f(oy + dy)}" '
                       'stroke="#999999" stroke-width="0.8" stroke-dasharray="6 4"/>')
    if opts.show_origin:
        ox, oy = vp(0j)
        out.append(f'<circle cx="{_f(float(ox))}" cy="{_f(float(oy))}" r="2" fill="#444444"/>')
    for c in curves:
        out.append(_path(vp, c, opts.stroke_width, closed))
    if ann is not None:
        if opts.show_selfint:
            for p in ann.selfint:
                x, y = vp(p)
                out.append(f'<circle cx="{_f(float(x))}" cy="{_f(float(y))}" r="3.5" fill="none" stroke="#c0392b" stroke-width="1.2"/>')
        if opts.show_cusps:
            for p in ann.cusps:
                x, y = (float(v) for v in vp(p))
                out.append(f'<path d="M {_f(x - 4)},{_f(y - 4)} L {_f(x + 4)},{_f(y + 4)} M {_f(x - 4)},{_f(y + 4)} '
                           f'L {_f(x + 4)},{_f(y - 4)}" stroke="#27ae60" stroke-width="1.4"/>')
        if ann.label:
            out.append(f'<text x="{_f(x0 + 6)}" y="{_f(y0 + 16)}" font-family="monospace" font-size="12">{_escape(ann.label)}</text>')
    return out


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _document(width: int, height: int, body: list[str]) -> str:
    head = (f'<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">\n<rect width="100%" height="100%" fill="white"/>\n')
    return head + "\n".join(body) + "\n</svg>\n"


def render_svg(curves, annotations: Annotations | None = None, options: RenderOptions | None = None,
               closed: bool = True) -> str:
    """One panel with every curve in ``curves`` (arrays of complex samples).

    Closed curves get a closing segment; pass ``closed=False`` for finite
    pieces of non-periodic orbits.
    """
    opts = options or RenderOptions()
    if not curves or any(len(c) == 0 for c in curves):
        raise DomainError("need non-empty sample lists")
    vp = _Viewport((0, 0, opts.width, opts.height), _bounds(curves, [annotations]), opts.margin)
    return _document(opts.width, opts.height, _panel(vp, curves, annotations, opts, closed))


def render_frames(frames, annotations=None, options: RenderOptions | None = None) -> str:
    """Grid of panels, one per frame, sharing a single viewport scale."""
    opts = options or RenderOptions()
    if not frames:
        raise DomainError("need at least one frame")
    annotations = list(annotations) if annotations is not None else [None] * len(frames)
    cols = opts.columns or math.ceil(math.sqrt(len(frames)))
    rows = math.ceil(len(frames) / cols)
    cell_w, cell_h = opts.width / cols, opts.height / rows
    bounds = _bounds(frames, annotations)
    body = []
    for idx, (z, ann) in enumerate(zip(frames, annotations)):
        r, c = divmod(idx, cols)
        box = (c * cell_w, r * cell_h, cell_w, cell_h)
        vp = _Viewport(box, bounds, opts.margin)
        body.append(f'<rect x="{_f(box[0])}" y="{_f(box[1])}" width="{_f(cell_w)}" height="{_f(cell_h)}" '
                    'fill="none" stroke="#dddddd"/>')
        body.extend(_panel(vp, [z], ann, opts))
    return _document(opts.width, opts.height, body)


def _g17(x: float) -> str:
    return "%.17g" % (float(x) + 0.0)


def export_csv(t, z) -> str:
    """CSV with header ``t,re,im`` and 17 significant digits per value."""
    t = np.asarray(t, dtype=float).ravel()
    z = np.asarray(z, dtype=complex).ravel()
    if len(t) != len(z):
        raise DomainError("t and z must have the same length")
    lines = ["t,re,im"]
    lines.extend(f"{_g17(a)},{_g17(b.real)},{_g17(b.imag)}" for a, b in zip(t, z))
    return "\r\n".join(lines) + "\r\n"


def export_grid_csv(re, im, values, header=("re", "im", "abs_h")) -> str:
    lines = [",".join(header)]
    lines.extend(f"{_g17(a)},{_g17(b)},{_g17(c)}" for a, b, c in zip(re, im, values))
    return "\r\n".join(lines) + "\r\n"
