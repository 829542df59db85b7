"""The net ``b^{-1}(R)`` off the real axis, as the zero set of ``S(x, y)``.

``Im b(x + iy) = y S(x, y)`` with

    S = 1 + a x^2 - 2 b x^3 + 3 g x^4 + a y^2 - 2 b x y^2 + 2 g x^2 y^2 - g y^4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .polycore import RealPoly
from .recurrence import SymbolParams

ZERO_NODE_SHIFT = -1e-12
ZERO_NODE_RTOL = 1e-13


class ZeroArgument(ValueError):
    """``b`` has a pole at the origin."""


class DegenerateGrid(ValueError):
    """A grid node lies exactly on ``S = 0``."""


class Inconclusive(RuntimeError):
    """Only boundary-touching components could enclose the origin."""


@dataclass(frozen=True)
class BivariateS:
    """Coefficients of ``S`` keyed by the monomial exponents ``(i, j)`` of
    ``x^i y^j``."""

    terms: tuple[tuple[int, int, object], ...]

    @classmethod
    def from_params(cls, params: SymbolParams) -> "BivariateS":
        a, b, g = params.as_tuple()
        one = 1 if params.exact else 1.0
        return cls(((0, 0, one), (2, 0, a), (3, 0, -2 * b), (4, 0, 3 * g),
                    (0, 2, a), (1, 2, -2 * b), (2, 2, 2 * g), (0, 4, -g)))

    def __call__(self, x, y):
        return sum(c * x**i * y**j for i, j, c in self.terms)

    def restrict_real_axis(self) -> RealPoly:
        """``S(x, 0)`` as a polynomial in ``x``."""
        coeffs = [0] * 5
        for i, j, c in self.terms:
            if j == 0:
                coeffs[i] = coeffs[i] + c
        return RealPoly(coeffs)


def s_eval(params: SymbolParams, x, y):
    a, b, g = params.as_floats()
    x2 = x * x
    y2 = y * y
    return (1 + a * x2 - 2 * b * x2 * x + 3 * g * x2 * x2 + a * y2
            - 2 * b * x * y2 + 2 * g * x2 * y2 - g * y2 * y2)


def _s_magnitude(params: SymbolParams, x, y):
    """Sum of the moduli of the eight terms, the scale of rounding in S."""
    a, b, g = (abs(v) for v in params.as_floats())
    ax, ay = np.abs(x), np.abs(y)
    x2, y2 = ax * ax, ay * ay
    return (1 + a * x2 + 2 * b * x2 * ax + 3 * g * x2 * x2 + a * y2
            + 2 * b * ax * y2 + 2 * g * x2 * y2 + g * y2 * y2)


def im_b(params: SymbolParams, z) -> float:
    """``Im b(z)`` evaluated directly from the symbol."""
    z = complex(z)
    if z == 0:
        raise ZeroArgument("b is singular at z = 0")
    a, b, g = params.as_floats()
    return (-1 / z + a * z - b * z * z + g * z**3).imag


def default_box(params: SymbolParams) -> tuple[float, float, float, float]:
    """Square centred at the origin, 1.5 times the largest real critical
    point or singular point of the net in half-width.

    Falls back to ``1.5 (1 + max(|a|, |b|, |g|, 1/|g|))`` when ``G`` has no
    real zeros.
    """
    from .classifier import singular_points

    a, b, g = params.as_floats()
    roots = np.roots([3 * g, -2 * b, a, 0.0, 1.0])
    real = roots[np.abs(roots.imag) <= 1e-9 * np.maximum(1, np.abs(roots))].real
    if len(real):
        r = float(np.max(np.abs(real)))
        for x, y in singular_points(params).coords():
            r = max(r, abs(x), abs(y))
        h = 1.5 * r
    else:
        h = 1.5 * (1 + max(abs(a), abs(b), abs(g), 1 / abs(g)))
    return (-h, h, -h, h)


# --------------------------------------------------------------------------
# curve containers


@dataclass(frozen=True)
class CurveComponent:
    points: np.ndarray
    closed: bool
    touches_boundary: bool
    winding: int | None
    sweep: float
    self_intersections: int

    @property
    def encloses_origin(self) -> bool:
        return self.closed and self.winding is not None and abs(self.winding) >= 1


@dataclass(frozen=True)
class CurveSet:
    components: tuple[CurveComponent, ...]
    box: tuple[float, float, float, float]
    resolution: int

    @property
    def step(self) -> tuple[float, float]:
        x0, x1, y0, y1 = self.box
        return (x1 - x0) / self.resolution, (y1 - y0) / self.resolution

    @property
    def cell_diameter(self) -> float:
        return math.hypot(*self.step)

    @property
    def polylines(self) -> list[np.ndarray]:
        return [c.points for c in self.components]

    def distance_to(self, x: float, y: float) -> float:
        if not self.components:
            return math.inf
        pts = np.concatenate(self.polylines)
        return float(np.min(np.hypot(pts[:, 0] - x, pts[:, 1] - y)))

    def __len__(self):
        return len(self.components)


# --------------------------------------------------------------------------
# marching squares


def _grid(box, resolution):
    x0, x1, y0, y1 = (float(v) for v in box)
    if not (x1 > x0 and y1 > y0):
        raise ValueError("box must have positive area")
    m = (resolution + 1) // 2
    ymax = max(abs(y0), abs(y1))
    half = ymax * np.arange(m + 1) / m
    ys = np.concatenate([-half[:0:-1], half])
    xs = np.linspace(x0, x1, 2 * m + 1)
    return xs, ys, (x0, x1, -ymax, ymax), 2 * m


def extract_curve(params: SymbolParams, box=None, resolution: int = 512,
                  on_zero: str = "perturb") -> CurveSet:
    """Polylines of ``S = 0`` over ``box``.

    The y-range is widened to be symmetric about the real axis and an odd
    resolution is rounded up, so the grid mirrors exactly; ``S`` is even in
    ``y`` so the output is symmetric under conjugation.  Nodes where ``S``
    is exactly zero are shifted by a tiny negative amount (``on_zero =
    "perturb"``) or rejected (``"raise"``).
    """
    if resolution < 16:
        raise ValueError("resolution must be >= 16")
    if box is None:
        box = default_box(params)
    xs, ys, box, res = _grid(box, resolution)
    X, Y = np.meshgrid(xs, np.abs(ys))
    F = s_eval(params, X, Y)
    # values within rounding of zero carry no sign information
    zero = np.abs(F) <= ZERO_NODE_RTOL * _s_magnitude(params, X, Y)
    if zero.any():
        if on_zero == "raise":
            raise DegenerateGrid(f"{int(zero.sum())} grid node(s) on S = 0")
        F = np.where(zero, ZERO_NODE_SHIFT, F)
    pos = F > 0
    ny, nx = F.shape

    # crossing points on horizontal edges (r, c)-(r, c+1)
    hmask = pos[:, :-1] != pos[:, 1:]
    vmask = pos[:-1, :] != pos[1:, :]
    hid = np.full(hmask.shape, -1, dtype=np.int64)
    vid = np.full(vmask.shape, -1, dtype=np.int64)
    nh = int(hmask.sum())
    hid[hmask] = np.arange(nh)
    vid[vmask] = nh + np.arange(int(vmask.sum()))

    hr, hc = np.nonzero(hmask)
    f0, f1 = F[hr, hc], F[hr, hc + 1]
    t = f0 / (f0 - f1)
    hpts = np.column_stack([xs[hc] + t * (xs[hc + 1] - xs[hc]), ys[hr]])
    vr, vc = np.nonzero(vmask)
    f0, f1 = F[vr, vc], F[vr + 1, vc]
    t = f0 / (f0 - f1)
    vpts = np.column_stack([xs[vc], ys[vr] + t * (ys[vr + 1] - ys[vr])])
    pts = np.concatenate([hpts, vpts]) if nh + len(vpts) else np.zeros((0, 2))

    # per-cell edges: bottom, right, top, left
    e = np.stack([hid[:-1, :], vid[:, 1:], hid[1:, :], vid[:, :-1]], axis=-1)
    cnt = (e >= 0).sum(axis=-1)
    segs = []
    two = np.nonzero(cnt == 2)
    if len(two[0]):
        ee = e[two]
        order = np.argsort(ee < 0, axis=1, kind="stable")
        pair = np.take_along_axis(ee, order, axis=1)[:, :2]
        segs.append(pair)
    four_r, four_c = np.nonzero(cnt == 4)
    if len(four_r):
        cx = 0.5 * (xs[four_c] + xs[four_c + 1])
        cy = np.abs(0.5 * (ys[four_r] + ys[four_r + 1]))
        center_pos = s_eval(params, cx, cy) > 0
        # a zeroed corner is a pinch point of the net; keep its cells
        # separating the positive corners, as the shifted node does
        pinch = (zero[four_r, four_c] | zero[four_r, four_c + 1]
                 | zero[four_r + 1, four_c] | zero[four_r + 1, four_c + 1])
        center_pos &= ~pinch
        same = center_pos == pos[four_r, four_c]
        ee = e[four_r, four_c]
        # bl and tr joined through the centre: cut off tl and br corners
        p1 = np.where(same[:, None], ee[:, [3, 2]], ee[:, [3, 0]])
        p2 = np.where(same[:, None], ee[:, [0, 1]], ee[:, [2, 1]])
        segs += [p1, p2]
    segs = np.concatenate(segs) if segs else np.zeros((0, 2), dtype=np.int64)

    comps = _assemble(pts, segs)
    step = math.hypot((box[1] - box[0]) / res, (box[3] - box[2]) / res)
    out = []
    for chain, closed in comps:
        p = pts[chain]
        if closed:
            p = np.vstack([p, p[:1]])
        sweep = _angle_sweep(p)
        winding = int(round(sweep / (2 * math.pi))) if closed else None
        out.append(CurveComponent(p, closed, not closed, winding, sweep,
                                  _self_contacts(p, step, closed)))
    return CurveSet(tuple(out), box, res)


def _assemble(pts: np.ndarray, segs: np.ndarray) -> list[tuple[list[int], bool]]:
    n = len(pts)
    nbr = np.full((n, 2), -1, dtype=np.int64)
    deg = np.zeros(n, dtype=np.int64)
    for a, b in segs.tolist():
        nbr[a, deg[a]] = b
        deg[a] += 1
        nbr[b, deg[b]] = a
        deg[b] += 1
    nbr_l = nbr.tolist()
    seen = np.zeros(n, dtype=bool)
    comps = []

    def walk(start):
        chain = [start]
        seen[start] = True
        prev, cur = -1, start
        while True:
            a, b = nbr_l[cur]
            nxt = a if a != prev and a >= 0 and not seen[a] else (
                b if b >= 0 and not seen[b] else -1)
            if nxt < 0:
                return chain
            chain.append(nxt)
            seen[nxt] = True
            prev, cur = cur, nxt

    # open chains start at degree-one nodes (on the box boundary)
    for s in np.nonzero(deg == 1)[0].tolist():
        if not seen[s]:
            comps.append((walk(s), False))
    for s in range(n):
        if not seen[s] and deg[s] == 2:
            comps.append((walk(s), True))
    return comps


def _angle_sweep(p: np.ndarray) -> float:
    ang = np.arctan2(p[:, 1], p[:, 0])
    d = np.diff(ang)
    d = (d + np.pi) % (2 * np.pi) - np.pi
    return float(d.sum())


def _self_contacts(p: np.ndarray, cell: float, closed: bool) -> int:
    """Number of places where the polyline comes back within one cell of
    itself (away from its own neighbourhood)."""
    n = len(p)
    if n < 8:
        return 0
    keys = np.floor(p / cell).astype(np.int64)
    buckets: dict[tuple[int, int], list[int]] = {}
    for i, (kx, ky) in enumerate(keys.tolist()):
        buckets.setdefault((kx, ky), []).append(i)
    # arc length along the chain
    arc = np.concatenate([[0.0], np.cumsum(np.hypot(*np.diff(p, axis=0).T))])
    total = arc[-1]
    hits = np.zeros(n, dtype=bool)
    for i, (kx, ky) in enumerate(keys.tolist()):
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for j in buckets.get((kx + dx, ky + dy), ()):
                    if j <= i:
                        continue
                    gap = arc[j] - arc[i]
                    if closed:
                        gap = min(gap, total - gap)
                    if gap > 4 * cell and np.hypot(*(p[i] - p[j])) < cell:
                        hits[i] = hits[j] = True
    if not hits.any():
        return 0
    runs = int(np.sum(hits[1:] & ~hits[:-1]) + hits[0])
    if closed and hits[0] and hits[-1]:
        runs -= 1
    # each contact is seen from both passes
    return max(1, runs // 2)


# --------------------------------------------------------------------------
# enclosure


def has_enclosing_closed_curve(c: CurveSet) -> tuple[bool, int | None]:
    """Whether a closed component winds around the origin.

    Raises Inconclusive when nothing closed encloses the origin but an open
    component cut by the box boundary sweeps at least half a turn about it.
    """
    for i, comp in enumerate(c.components):
        if comp.encloses_origin:
            return True, i
    for comp in c.components:
        if not comp.closed and abs(comp.sweep) >= math.pi:
            raise Inconclusive("a boundary-touching component may enclose the origin")
    return False, None


@dataclass(frozen=True)
class EnclosureResult:
    encloses: bool
    inconclusive: bool
    simple: bool | None
    component: int | None
    box: tuple[float, float, float, float]
    curve: CurveSet


def detect_enclosure(params: SymbolParams, box=None, resolution: int = 512,
                     enlarge: int = 3) -> EnclosureResult:
    """Run :func:`has_enclosing_closed_curve`, doubling the box up to
    ``enlarge`` times while the answer is inconclusive.

    The grid is nudged so that singular points of the net sit on grid
    nodes; there the curve's branches cross, and a node value of zero
    (shifted slightly negative) keeps the crossing from being split the
    wrong way.
    """
    from .classifier import singular_points

    if box is None:
        box = default_box(params)
    sides = critical_sides(params)
    sing = singular_points(params).coords()
    for attempt in range(enlarge + 1):
        box = snap_box(box, resolution, sing)
        curve = extract_curve(params, box, resolution)
        try:
            found, idx = has_enclosing_closed_curve(curve)
        except Inconclusive:
            if not all(sides):
                # S > 0 along a whole half-axis: the origin's region is unbounded
                return EnclosureResult(False, False, None, None, curve.box, curve)
            if attempt == enlarge:
                return EnclosureResult(False, True, None, None, curve.box, curve)
            box = tuple(2 * v for v in curve.box)
            continue
        simple = None
        if found:
            simple = curve.components[idx].self_intersections == 0 and \
                not _touches_other(curve, idx)
        return EnclosureResult(found, False, simple, idx, curve.box, curve)
    raise AssertionError("unreachable")


def critical_sides(params: SymbolParams) -> tuple[bool, bool]:
    """Whether ``G`` has a real zero on the negative and on the positive
    half-axis.  A closed curve of the net around the origin meets the real
    axis only at such zeros, one on each side."""
    from .classifier import critical_points

    roots = critical_points(params).roots
    scale = max(1.0, float(np.max(np.abs(roots))))
    real = roots[np.abs(roots.imag) <= 1e-8 * scale].real
    return bool((real < 0).any()), bool((real > 0).any())


def snap_box(box, resolution: int, points) -> tuple[float, float, float, float]:
    """Smallest adjustment of ``box`` (never shrinking it by more than a
    cell) putting up to two distinct x-values and one |y|-value of
    ``points`` on the grid built by :func:`extract_curve`."""
    x0, x1, y0, y1 = (float(v) for v in box)
    res = 2 * ((resolution + 1) // 2)
    m = res // 2
    xv = sorted({round(p[0], 12) for p in points})
    yv = sorted({round(abs(p[1]), 12) for p in points} - {0.0})
    if len(xv) > 2 or len(yv) > 1:
        return (x0, x1, y0, y1)
    if xv:
        step = (x1 - x0) / res
        if len(xv) == 2:
            step = (xv[1] - xv[0]) / max(1, round((xv[1] - xv[0]) / step))
        k = math.ceil((xv[0] - x0) / step)
        x0 = xv[0] - k * step
        x1 = x0 + res * step
    if yv:
        ymax = max(abs(y0), abs(y1))
        j = max(1, math.floor(yv[0] * m / ymax))
        ymax = yv[0] * m / j
        y0, y1 = -ymax, ymax
    return (x0, x1, y0, y1)


def _touches_other(c: CurveSet, idx: int) -> bool:
    mine = c.components[idx].points
    cell = c.cell_diameter
    for j, comp in enumerate(c.components):
        if j == idx:
            continue
        q = comp.points
        # coarse reject by bounding boxes
        if (q[:, 0].min() > mine[:, 0].max() + cell or q[:, 0].max() < mine[:, 0].min() - cell
                or q[:, 1].min() > mine[:, 1].max() + cell or q[:, 1].max() < mine[:, 1].min() - cell):
            continue
        for k in range(0, len(q), 512):
            d = np.hypot(mine[:, None, 0] - q[None, k:k + 512, 0],
                         mine[:, None, 1] - q[None, k:k + 512, 1])
            if (d < cell).any():
                return True
    return False
