"""Minimal self-contained SVG emitter in mathematical orientation."""

from __future__ import annotations

from xml.sax.saxutils import escape, quoteattr

import numpy as np


class Canvas:
    """Maps the data box ``(x0, x1, y0, y1)`` onto a pixel frame with the
    y axis pointing up."""

    def __init__(self, box, width: int = 640, height: int | None = None, margin: int = 24):
        x0, x1, y0, y1 = (float(v) for v in box)
        if not (x1 > x0 and y1 > y0):
            raise ValueError("box must have positive area")
        self.box = (x0, x1, y0, y1)
        self.margin = margin
        self.width = width
        if height is None:
            height = int(round(width * (y1 - y0) / (x1 - x0)))
        self.height = max(height, 16)
        self._items: list[str] = []

    # coordinate transforms
    def px(self, x):
        x0, x1, _, _ = self.box
        return self.margin + (np.asarray(x, dtype=float) - x0) / (x1 - x0) * self.width

    def py(self, y):
        _, _, y0, y1 = self.box
        return self.margin + (y1 - np.asarray(y, dtype=float)) / (y1 - y0) * self.height

    @staticmethod
    def _attrs(kw) -> str:
        return "".join(f" {k.replace('_', '-')}={quoteattr(str(v))}" for k, v in kw.items())

    def polyline(self, pts, stroke="#1f4e9c", width=1.2, **kw):
        pts = np.asarray(pts, dtype=float)
        if len(pts) < 2:
            return
        xs, ys = self.px(pts[:, 0]), self.py(pts[:, 1])
        path = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(xs, ys))
        self._items.append(f'<polyline points="{path}" fill="none"'
                           f'{self._attrs(dict(stroke=stroke, stroke_width=width, **kw))}/>')

    def segments(self, segs, stroke="#444", width=1.0, **kw):
        """Draw ``(k, 2, 2)`` line segments as one path."""
        segs = np.asarray(segs, dtype=float).reshape(-1, 2, 2)
        if not len(segs):
            return
        ax, ay = self.px(segs[:, 0, 0]), self.py(segs[:, 0, 1])
        bx, by = self.px(segs[:, 1, 0]), self.py(segs[:, 1, 1])
        d = " ".join(f"M{a:.2f} {b:.2f}L{c:.2f} {e:.2f}" for a, b, c, e in zip(ax, ay, bx, by))
        self._items.append(f'<path d="{d}" fill="none"'
                           f'{self._attrs(dict(stroke=stroke, stroke_width=width, **kw))}/>')

    def line(self, p, q, stroke="#888", width=0.8, **kw):
        self.segments([[p, q]], stroke=stroke, width=width, **kw)

    def circle(self, x, y, r=3.0, fill="#c0392b", **kw):
        self._items.append(f'<circle cx="{float(self.px(x)):.2f}" cy="{float(self.py(y)):.2f}" '
                           f'r="{r}"{self._attrs(dict(fill=fill, **kw))}/>')

    def rect(self, x0, y0, x1, y1, fill="#ddd", **kw):
        """Data-space rectangle with corners ``(x0, y0)`` and ``(x1, y1)``."""
        a, b = float(self.px(x0)), float(self.px(x1))
        c, d = float(self.py(y1)), float(self.py(y0))
        self._items.append(f'<rect x="{a:.2f}" y="{c:.2f}" width="{b - a:.2f}" '
                           f'height="{d - c:.2f}"{self._attrs(dict(fill=fill, **kw))}/>')

    def text(self, x, y, s: str, size=11, **kw):
        self._items.append(f'<text x="{float(self.px(x)):.2f}" y="{float(self.py(y)):.2f}" '
                           f'font-size="{size}" font-family="sans-serif"'
                           f'{self._attrs(kw)}>{escape(s)}</text>')

    def frame_text(self, px: float, py: float, s: str, size=11):
        """Text at pixel coordinates, for legends."""
        self._items.append(f'<text x="{px:.1f}" y="{py:.1f}" font-size="{size}" '
                           f'font-family="sans-serif">{escape(s)}</text>')

    def axes(self):
        x0, x1, y0, y1 = self.box
        if y0 <= 0 <= y1:
            self.line((x0, 0), (x1, 0), stroke="#999")
        if x0 <= 0 <= x1:
            self.line((0, y0), (0, y1), stroke="#ccc")

    def to_string(self, title: str | None = None) -> str:
        w = self.width + 2 * self.margin
        h = self.height + 2 * self.margin
        head = (f'<?xml version="1.0" encoding="UTF-8"?>\n'
                f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
                f'viewBox="0 0 {w} {h}">\n')
        body = []
        if title:
            body.append(f"<title>{escape(title)}</title>")
        body.append(f'<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>')
        body += self._items
        return head + "\n".join(body) + "\n</svg>\n"


def contour_segments(F: np.ndarray, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Unassembled zero-level segments of ``F[row=y, col=x]`` for drawing."""
    pos = F > 0
    out = []
    ny, nx = F.shape
    for r in range(ny - 1):
        for c in range(nx - 1):
            corners = ((r, c), (r, c + 1), (r + 1, c + 1), (r + 1, c))
            pts = []
            for k in range(4):
                (r0, c0), (r1, c1) = corners[k], corners[(k + 1) % 4]
                if pos[r0, c0] != pos[r1, c1]:
                    f0, f1 = F[r0, c0], F[r1, c1]
                    t = f0 / (f0 - f1)
                    pts.append((xs[c0] + t * (xs[c1] - xs[c0]), ys[r0] + t * (ys[r1] - ys[r0])))
            if len(pts) == 2:
                out.append(pts)
            elif len(pts) == 4:
                out += [pts[:2], pts[2:]]
    return np.asarray(out, dtype=float).reshape(-1, 2, 2)
