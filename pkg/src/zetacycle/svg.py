"""Minimal deterministic SVG line plots."""

import io
from xml.sax.saxutils import escape

WIDTH = 900
HEIGHT = 520
PAD_LEFT, PAD_RIGHT, PAD_TOP, PAD_BOTTOM = 90, 30, 50, 60
TICKS = 5


def _num(v):
    return format(v, ".6g")


def _expand(lo, hi):
    if hi == lo:
        d = abs(lo) * 0.05 or 1.0
        return lo - d, hi + d
    m = 0.05 * (hi - lo)
    return lo - m, hi + m


def emit_svg(xs, ys, title, stream):
    """Write a standalone SVG with one polyline, linear axes with 5% margins,
    five tick labels per axis and a title."""
    xs = [float(x) for x in xs]
    ys = [float(y) for y in ys]
    if not xs or len(xs) != len(ys):
        raise ValueError("xs and ys must be non-empty and equally long")
    x0, x1 = _expand(min(xs), max(xs))
    y0, y1 = _expand(min(ys), max(ys))
    pw = WIDTH - PAD_LEFT - PAD_RIGHT
    ph = HEIGHT - PAD_TOP - PAD_BOTTOM

    def px(x):
        return PAD_LEFT + (x - x0) / (x1 - x0) * pw

    def py(y):
        return PAD_TOP + (y1 - y) / (y1 - y0) * ph

    out = io.StringIO()
    out.write('<?xml version="1.0" encoding="UTF-8"?>\n')
    out.write(f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
              f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">\n')
    out.write(f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>\n')
    out.write(f'<text x="{WIDTH / 2:.1f}" y="28" text-anchor="middle" font-size="16">{escape(title)}</text>\n')
    out.write(f'<rect x="{PAD_LEFT}" y="{PAD_TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>\n')
    for i in range(TICKS):
        fx = x0 + (x1 - x0) * i / (TICKS - 1)
        fy = y0 + (y1 - y0) * i / (TICKS - 1)
        tx, ty = px(fx), py(fy)
        out.write(f'<line x1="{tx:.2f}" y1="{PAD_TOP + ph}" x2="{tx:.2f}" y2="{PAD_TOP + ph + 5}" stroke="black"/>\n')
        out.write(f'<text x="{tx:.2f}" y="{PAD_TOP + ph + 20}" text-anchor="middle">{_num(fx)}</text>\n')
        out.write(f'<line x1="{PAD_LEFT - 5}" y1="{ty:.2f}" x2="{PAD_LEFT}" y2="{ty:.2f}" stroke="black"/>\n')
        out.write(f'<text x="{PAD_LEFT - 8}" y="{ty + 4:.2f}" text-anchor="end">{_num(fy)}</text>\n')
    points = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
    out.write(f'<polyline fill="none" stroke="#1f5fa8" stroke-width="0.8" points="{points}"/>\n')
    out.write("</svg>\n")
    payload = out.getvalue()
    if isinstance(stream, io.TextIOBase):
        stream.write(payload)
    else:
        stream.write(payload.encode("utf-8"))
