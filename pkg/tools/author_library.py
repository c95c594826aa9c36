"""Author the starter shape library from parametric families.

Shapes are described by target points (and arcs between points); a pen turns
them into turtle strokes.  Each stroke is quantized to three decimals while
steering from the *actual* quantized position, so rounding errors do not
accumulate around a closed outline.

    python3 tools/author_library.py                # write the bundled file
    python3 tools/author_library.py --report       # attribute coverage
"""

from __future__ import annotations

import argparse
import json
import math
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parents[1] / "src" / "bongard_forge" / "data" / "starter_library.json"


def _wrap(deg):
    deg = (deg + 180.0) % 360.0 - 180.0
    return 180.0 if deg == -180.0 else deg


class Pen:
    def __init__(self, unit=1.0, quantize=True):
        self.unit = unit
        self.q = quantize
        self.x = self.y = 0.0
        self.h = 0.0
        self.strokes = []
        self.max_len = 0.0

    def _r(self, v):
        return round(v, 3) if self.q else v

    def _turn(self, heading):
        a = self._r(0.5 + _wrap(heading - self.h) / 360.0)
        self.h = (self.h + (a - 0.5) * 360.0) % 360.0
        return a

    def to(self, x, y):
        dx, dy = x - self.x, y - self.y
        a = self._turn(math.degrees(math.atan2(dy, dx)))
        L = self._r(math.hypot(dx, dy) / self.unit)
        self.max_len = max(self.max_len, math.hypot(dx, dy))
        self.x += L * self.unit * math.cos(math.radians(self.h))
        self.y += L * self.unit * math.sin(math.radians(self.h))
        self.strokes.append(("line", L, a))

    def arc_to(self, x, y, sweep):
        """Circular arc to (x, y) turning by ``sweep`` degrees (|sweep| <= 180)."""
        dx, dy = x - self.x, y - self.y
        chord = math.hypot(dx, dy)
        start = math.degrees(math.atan2(dy, dx)) - sweep / 2.0
        a = self._turn(start)
        if a != 0.5:
            self.strokes.append(("line", 0.0, a))
        radius = chord / (2.0 * math.sin(math.radians(abs(sweep)) / 2.0))
        length = radius * math.radians(abs(sweep))
        self.max_len = max(self.max_len, length)
        L = self._r(length / self.unit)
        sa = self._r(0.5 + sweep / 360.0)
        phi = math.radians((sa - 0.5) * 360.0)
        R = L * self.unit / abs(phi)
        h = math.radians(self.h)
        sg = math.copysign(1.0, phi)
        cx, cy = self.x - sg * R * math.sin(h), self.y + sg * R * math.cos(h)
        ang = h - sg * math.pi / 2 + phi
        self.x, self.y = cx + R * math.cos(ang), cy + R * math.sin(ang)
        self.h = (self.h + (sa - 0.5) * 360.0) % 360.0
        self.strokes.append(("arc", L, sa))

    def arc_through(self, x, y, sweep):
        """Like arc_to but splits sweeps beyond 180 degrees into equal arcs."""
        n = max(1, math.ceil(abs(sweep) / 180.0 - 1e-9))
        if n == 1:
            return self.arc_to(x, y, sweep)
        # intermediate points on the same circle
        dx, dy = x - self.x, y - self.y
        chord = math.hypot(dx, dy)
        R = chord / (2.0 * math.sin(math.radians(abs(sweep)) / 2.0))
        mid = math.atan2(dy, dx)
        sg = math.copysign(1.0, sweep)
        ox, oy = self.x, self.y
        start_h = mid - math.radians(sweep) / 2.0
        cx, cy = ox - sg * R * math.sin(start_h), oy + sg * R * math.cos(start_h)
        a0 = math.atan2(oy - cy, ox - cx)
        for k in range(1, n + 1):
            ang = a0 + math.radians(sweep) * k / n
            self.arc_to(cx + R * math.cos(ang), cy + R * math.sin(ang), sweep / n)


def build(program):
    """Run ``program(pen)`` twice: once to find the longest stroke, then
    quantized with that length as the unit."""
    probe = Pen(1.0, quantize=False)
    program(probe)
    pen = Pen(probe.max_len / 0.98, quantize=True)
    program(pen)
    return [f"{k}(_,{L:.3f},{a:.3f})" for k, L, a in pen.strokes]


# ---------------------------------------------------------------------------
# point-list helpers


def closed(pts):
    def prog(p):
        p.x, p.y = pts[0]
        for q in pts[1:]:
            p.to(*q)
        p.to(*pts[0])

    return prog


def opened(pts):
    def prog(p):
        p.x, p.y = pts[0]
        for q in pts[1:]:
            p.to(*q)

    return prog


def path(start, *steps):
    """Mixed path: steps are (x, y) for lines or (x, y, sweep) for arcs."""

    def prog(p):
        p.x, p.y = start
        for s in steps:
            if len(s) == 2:
                p.to(*s)
            else:
                p.arc_through(*s)

    return prog


def regular(n, r=1.0, rot=90.0):
    return [(r * math.cos(math.radians(rot + 360.0 * k / n)), r * math.sin(math.radians(rot + 360.0 * k / n)))
            for k in range(n)]


def star(n, ro, ri, rot=90.0):
    pts = []
    for k in range(2 * n):
        r = ro if k % 2 == 0 else ri
        a = math.radians(rot + 180.0 * k / n)
        pts.append((r * math.cos(a), r * math.sin(a)))
    return pts


def rounded(pts, r=None, skip=()):
    """Closed polygon with corners (except indices in ``skip``) replaced by
    tangent arcs of radius ``r``; every edge stays a straight run."""
    n = len(pts)
    P = [np.asarray(q, float) for q in pts]
    if r is None:
        # largest radius whose cuts use at most 30% of every edge
        lim = []
        for i in range(n):
            a, b, c = P[i - 1], P[i], P[(i + 1) % n]
            u, v = b - a, c - b
            t = abs(math.atan2(u[0] * v[1] - u[1] * v[0], float(u @ v)))
            lim.append(0.3 * min(np.linalg.norm(u), np.linalg.norm(v)) / max(math.tan(t / 2), 1e-9))
        r = min(lim)
    cuts = []
    for i in range(n):
        a, b, c = P[i - 1], P[i], P[(i + 1) % n]
        din = (b - a) / np.linalg.norm(b - a)
        dout = (c - b) / np.linalg.norm(c - b)
        t = math.degrees(math.atan2(din[0] * dout[1] - din[1] * dout[0], float(din @ dout)))
        if i in skip or abs(t) < 1.0:
            cuts.append((tuple(b), None, 0.0))
            continue
        d = r * math.tan(math.radians(abs(t)) / 2)
        cuts.append((tuple(b - din * d), tuple(b + dout * d), t))
    start = cuts[0][1] or cuts[0][0]
    steps = []
    for i in list(range(1, n)) + [0]:
        pin, pout, t = cuts[i]
        steps.append(pin)
        if pout is not None:
            steps.append((*pout, t))
    return path(start, *steps)


def chamfer(w, h, c, c2=None):
    c2 = c if c2 is None else c2
    return [(c, 0), (w - c2, 0), (w, c2), (w, h - c), (w - c, h), (c2, h), (0, h - c2), (0, c)]


def tee_path(top, base=8.0, height=2.0, depth=1.0, land=None):
    """Open path: base, riser, ``top`` zigzag segments heading back, then a
    drop that lands on the interior of the base."""
    pts = [(0.0, 0.0), (base, 0.0), (base, height)]
    step = (base - 1.0) / (top + 1)
    for k in range(1, top + 1):
        pts.append((base - step * k, height - depth * (k % 2)))
    x = pts[-1][0] if land is None else land
    if land is not None:
        pts.append((x, pts[-1][1]))
    pts.append((x, 0.0))
    return opened(pts)


def random_polygon(rng, n, rmin=0.6, sx=1.0, sy=1.0):
    """Star-shaped polygon with sorted random angles; convex when rmin == 1."""
    while True:
        ang = np.sort(rng.uniform(0, 2 * np.pi, n))
        gaps = np.diff(np.append(ang, ang[0] + 2 * np.pi))
        if gaps.min() > 0.5 * np.pi / n and gaps.max() < np.pi * 0.9:
            break
    rad = rng.uniform(rmin, 1.0, n)
    return [(float(sx * r * math.cos(a)), float(sy * r * math.sin(a))) for r, a in zip(rad, ang)]


def point_symmetric_path(rng, n):
    """Open path of ``n`` segments mapped onto itself by a half turn."""
    half = n // 2
    while True:
        pts = [tuple(map(float, rng.uniform(-2, 2, 2))) for _ in range(half + (n % 2))]
        if n % 2 == 0:
            pts.append((0.0, 0.0))
        full = pts + [(-x, -y) for x, y in reversed(pts[: len(pts) - (n % 2 == 0)])]
        seg = np.diff(np.array(full), axis=0)
        if np.hypot(seg[:, 0], seg[:, 1]).min() > 0.6:
            return full


def triangle_apex(apex_deg, base=1.0):
    h = base / 2 / math.tan(math.radians(apex_deg) / 2)
    return [(0, 0), (base, 0), (base / 2, h)]


# ---------------------------------------------------------------------------
# families


def families():
    E = []

    def add(name, cats, prog):
        E.append((name, cats, prog))

    # triangles
    add("equilateral_triangle", ["triangle"], closed(regular(3)))
    for apex in (20, 40, 70, 100, 130):
        add(f"isosceles_triangle_{apex}", ["triangle"], closed(triangle_apex(apex)))
    add("right_triangle", ["triangle"], closed([(0, 0), (4, 0), (0, 3)]))
    add("right_triangle_tall", ["triangle"], closed([(0, 0), (1.5, 0), (0, 4)]))
    add("scalene_triangle", ["triangle"], closed([(0, 0), (3, 0), (2.2, 1.6)]))
    add("obtuse_triangle", ["triangle"], closed([(0, 0), (4, 0), (-1, 1.4)]))
    add("needle_triangle", ["triangle", "needle"], closed([(0, 0), (5, 0.3), (0, 0.6)]))

    # quadrilaterals
    add("square", ["square", "quadrilateral"], closed([(0, 0), (1, 0), (1, 1), (0, 1)]))
    add("diamond", ["rhombus", "quadrilateral"], closed([(0, -1.3), (0.8, 0), (0, 1.3), (-0.8, 0)]))
    for r in (1.5, 2.0, 3.0):
        add(f"rectangle_{r:g}", ["rectangle", "quadrilateral"], closed([(0, 0), (r, 0), (r, 1), (0, 1)]))
    for r in (7, 12):
        add(f"bar_{r}", ["rectangle", "bar", "quadrilateral"], closed([(0, 0), (r, 0), (r, 1), (0, 1)]))
    for top in (0.3, 0.5, 0.7):
        off = (1 - top) / 2 * 2
        add(f"trapezoid_{top:g}", ["trapezoid", "quadrilateral"], closed([(0, 0), (2, 0), (2 - off, 1), (off, 1)]))
    add("right_trapezoid", ["trapezoid", "quadrilateral"], closed([(0, 0), (2, 0), (1.2, 1), (0, 1)]))
    add("scalene_trapezoid", ["trapezoid", "quadrilateral"], closed([(0, 0), (3, 0), (2.2, 1.2), (0.4, 1.2)]))
    add("flat_trapezoid", ["trapezoid", "quadrilateral"], closed([(0, 0), (6, 0), (5.6, 0.5), (0.4, 0.5)]))
    for sk in (30, 50, 65):
        dx = math.tan(math.radians(sk))
        add(f"parallelogram_{sk}", ["parallelogram", "quadrilateral"], closed([(0, 0), (2, 0), (2 + dx, 1), (dx, 1)]))
    add("thin_parallelogram", ["parallelogram", "quadrilateral"], closed([(0, 0), (5, 0), (5.6, 0.4), (0.6, 0.4)]))
    for ang in (40, 70):
        a = math.radians(ang / 2)
        add(f"rhombus_{ang}", ["rhombus", "quadrilateral"],
            closed([(0, 0), (math.cos(a), math.sin(a)), (2 * math.cos(a), 0), (math.cos(a), -math.sin(a))]))
    add("kite", ["kite", "quadrilateral"], closed([(0, 0), (1, 0.6), (3, 0), (1, -0.6)]))
    add("dart", ["kite", "quadrilateral"], closed([(0, 0), (2, 1), (0.8, 0), (2, -1)]))
    add("irregular_quad", ["quadrilateral"], closed([(0, 0), (2.5, 0.3), (2.0, 1.8), (0.4, 1.2)]))

    # polygons
    for n, nm in ((5, "pentagon"), (6, "hexagon"), (7, "heptagon"), (8, "octagon"), (9, "nonagon")):
        add(f"regular_{nm}", ["polygon", nm], closed(regular(n)))
    add("irregular_pentagon", ["polygon", "pentagon"], closed([(0, 0), (2, 0), (2.6, 1.2), (1.0, 2.1), (-0.4, 1.0)]))
    add("irregular_hexagon", ["polygon", "hexagon"], closed([(0, 0), (2, -0.2), (3, 1), (2.2, 2.2), (0.5, 2), (-0.5, 1)]))
    add("flat_hexagon", ["polygon", "hexagon"], closed([(0, 0), (3, 0), (3.4, 0.4), (3, 0.8), (0, 0.8), (-0.4, 0.4)]))
    add("stretched_octagon", ["polygon", "octagon"], closed(
        [(1, 0), (3, 0), (4, 1), (4, 2), (3, 3), (1, 3), (0, 2), (0, 1)]))
    add("irregular_heptagon", ["polygon", "heptagon"], closed(
        [(0, 0), (2, -0.3), (3.2, 0.6), (3.0, 2.0), (1.8, 2.8), (0.3, 2.4), (-0.5, 1.2)]))
    add("house", ["house", "pentagon"], closed([(0, 0), (2, 0), (2, 1.5), (1, 2.5), (0, 1.5)]))
    add("tall_house", ["house", "pentagon"], closed([(0, 0), (1.2, 0), (1.2, 2.5), (0.6, 3.2), (0, 2.5)]))
    add("barn", ["house", "heptagon"], closed([(0, 0), (3, 0), (3, 1.5), (2.6, 2.3), (1.5, 2.8), (0.4, 2.3), (0, 1.5)]))
    add("arrow", ["arrow"], closed([(0, -0.3), (2, -0.3), (2, -0.8), (3, 0), (2, 0.8), (2, 0.3), (0, 0.3)]))
    add("fat_arrow", ["arrow"], closed([(0, -0.5), (1.2, -0.5), (1.2, -1), (2.4, 0), (1.2, 1), (1.2, 0.5), (0, 0.5)]))
    add("chevron", ["chevron"], closed([(0, 0), (1, 0), (2, 1), (1, 2), (0, 2), (1, 1)]))
    add("wide_chevron", ["chevron"], closed([(0, 0), (0.8, 0), (2.5, 1), (0.8, 2), (0, 2), (1.7, 1)]))
    add("tag", ["arrow", "pentagon"], closed([(0, 0), (2, 0), (2.7, 0.6), (2, 1.2), (0, 1.2)]))

    # stars
    add("star_three", ["star"], closed(star(3, 1.0, 0.3)))
    add("star_four", ["star"], closed(star(4, 1.0, 0.35)))
    add("star_four_fat", ["star"], closed(star(4, 1.0, 0.6)))
    add("star_four_slim", ["star"], closed(star(4, 1.0, 0.2, rot=45)))
    add("star_five", ["star"], closed(star(5, 1.0, 0.4)))
    add("star_six", ["star"], closed(star(6, 1.0, 0.55)))
    add("pentagram", ["star", "crossing"], closed([regular(5)[(2 * k) % 5] for k in range(5)]))

    # rectilinear outlines
    add("cross", ["cross"], closed([(1, 0), (2, 0), (2, 1), (3, 1), (3, 2), (2, 2), (2, 3), (1, 3), (1, 2), (0, 2), (0, 1), (1, 1)]))
    add("tee", ["tee"], closed([(0, 2), (3, 2), (3, 3), (0, 3)][::-1] and [(1, 0), (2, 0), (2, 2), (3, 2), (3, 3), (0, 3), (0, 2), (1, 2)]))
    add("ell", ["ell"], closed([(0, 0), (2, 0), (2, 0.8), (0.8, 0.8), (0.8, 3), (0, 3)]))
    add("thin_ell", ["ell"], closed([(0, 0), (3, 0), (3, 0.3), (0.3, 0.3), (0.3, 3), (0, 3)]))
    add("cup_outline", ["cup"], closed([(0, 0), (3, 0), (3, 3), (2.3, 3), (2.3, 0.7), (0.7, 0.7), (0.7, 3), (0, 3)]))
    add("step_block", ["stairs"], closed([(0, 0), (3, 0), (3, 3), (2, 3), (2, 2), (1, 2), (1, 1), (0, 1)]))
    add("notched_square", ["notch"], closed([(0, 0), (3, 0), (3, 3), (2, 3), (1.5, 2), (1, 3), (0, 3)]))
    add("zigzag_band", ["notch"], closed([(0, 0), (4, 0), (4, 1), (3, 1.6), (2, 1), (1, 1.6), (0, 1)]))
    add("crown", ["crown"], closed([(0, 0), (3, 0), (3, 2), (2.25, 1), (1.5, 2), (0.75, 1), (0, 2)]))
    add("sawtooth_block", ["crown"], closed([(0, 0), (4, 0), (4, 2), (3, 1), (3, 2), (2, 1), (2, 2), (1, 1)]))
    add("sawtooth_wall", ["crown"], closed([(0, 0), (4, 0), (4, 2), (3, 1), (3, 2), (2, 1), (2, 2), (1, 1), (1, 2)]))
    add("house_chimney", ["house"], closed(
        [(0, 0), (2, 0), (2, 1.5), (1, 2.5), (0.6, 2.1), (0.6, 2.6), (0.3, 2.6), (0.3, 1.8), (0, 1.5)]))
    add("irregular_nonagon", ["polygon", "nonagon"], closed(
        [(0, 0), (1.5, -0.4), (2.8, 0.2), (3.4, 1.3), (3.1, 2.5), (2.0, 3.1), (0.8, 2.9), (-0.1, 2.1), (-0.4, 0.9)]))
    add("irregular_octagon", ["polygon", "octagon"], closed(
        [(0, 0), (1.6, -0.3), (2.9, 0.4), (3.3, 1.6), (2.7, 2.8), (1.3, 3.1), (0.1, 2.5), (-0.4, 1.2)]))
    add("long_octagon", ["polygon", "octagon"], closed(
        [(0.5, 0), (4.5, 0), (5, 0.4), (5, 0.8), (4.5, 1.2), (0.5, 1.2), (0, 0.8), (0, 0.4)]))
    add("rocket", ["rocket"], closed(
        [(0, 0), (0.4, 0.4), (0.4, 2.4), (0.7, 3.2), (1.0, 2.4), (1.0, 0.4), (1.4, 0), (0.7, 0.3)]))
    add("gem", ["gem"], closed([(0.5, 0), (1.5, 0), (2, 0.6), (1, 2), (0, 0.6)]))
    add("plus_arrow", ["arrow"], closed(
        [(0, 0.3), (2, 0.3), (2, 0.8), (3, 0), (2, -0.8), (2, -0.3), (0, -0.3), (0.5, 0)]))

    # pinched and necked outlines
    for w in (0.04, 0.1, 0.16):
        add(f"hourglass_{w:g}", ["hourglass", "necked_shape"], closed(
            [(-1, -1), (1, -1), (w, 0), (1, 1), (-1, 1), (-w, 0)]))
    add("hourglass_wide", ["hourglass"], closed([(-1, -1), (1, -1), (0.6, 0), (1, 1), (-1, 1), (-0.6, 0)]))
    for w in (0.1, 0.2):
        add(f"dumbbell_{w:g}", ["dumbbell", "necked_shape"], closed(
            [(0, w), (1, w), (1, 1), (2, 1), (2, -1), (1, -1), (1, -w), (0, -w), (0, -1), (-1, -1), (-1, 1), (0, 1)]))
    add("dumbbell_wide", ["dumbbell"], closed(
        [(0, 0.7), (1, 0.7), (1, 1), (2, 1), (2, -1), (1, -1), (1, -0.7), (0, -0.7), (0, -1), (-1, -1), (-1, 1), (0, 1)]))
    add("diamond_pair", ["dumbbell", "necked_shape"], closed(
        [(-2, 0), (-1, 1), (-0.1, 0.08), (1, 1), (2, 0), (1, -1), (-0.1, -0.08), (-1, -1)]))
    add("bottle", ["bottle", "necked_shape"], closed(
        [(0, 0), (2, 0), (2, 2), (1.1, 2.4), (1.1, 3.2), (0.9, 3.2), (0.9, 2.4), (0, 2)]))
    add("hourglass_0.07", ["hourglass", "necked_shape"], closed(
        [(-1, -1.4), (1, -1.4), (0.07, 0), (1, 1.4), (-1, 1.4), (-0.07, 0)]))
    add("wide_pinch", ["hourglass", "necked_shape"], closed([(-2, -1), (2, -1), (0.1, 0), (2, 1), (-2, 1), (-0.1, 0)]))
    add("dumbbell_long", ["dumbbell", "necked_shape"], closed(
        [(0, 0.1), (1.5, 0.1), (1.5, 0.8), (3, 0.8), (3, -0.8), (1.5, -0.8), (1.5, -0.1), (0, -0.1),
         (0, -0.8), (-1.5, -0.8), (-1.5, 0.8), (0, 0.8)]))
    add("hexagon_pair", ["dumbbell", "necked_shape"], closed(
        [(-0.1, 0.05), (0.5, 0.9), (1.5, 0.9), (2, 0), (1.5, -0.9), (0.5, -0.9), (-0.1, -0.05),
         (-0.5, -0.9), (-1.5, -0.9), (-2, 0), (-1.5, 0.9), (-0.5, 0.9)]))
    for w, tag in ((0.15, "thin"), (0.3, "thick")):
        x = 1.5 - math.sqrt(1 - w * w)
        sw = -(360 - 2 * math.degrees(math.asin(w)))
        add(f"round_dumbbell_{tag}", ["dumbbell", "necked_shape"],
            path((-x, w), (x, w), (x, -w, sw), (-x, -w), (-x, w, sw)))
    add("waist_octagon", ["necked_shape"], closed(
        [(0, 0), (3, 0), (3, 1), (1.6, 1.4), (3, 1.8), (3, 2.8), (0, 2.8), (0, 1.8), (1.4, 1.4), (0, 1)][:8]))

    # self-touching and self-crossing loops
    add("bowtie", ["bowtie", "crossing"], closed([(-1, -0.6), (1, 0.6), (1, -0.6), (-1, 0.6)]))
    add("tall_bowtie", ["bowtie", "crossing"], closed([(-0.6, -1), (0.6, 1), (-0.6, 1), (0.6, -1)]))
    add("wide_bowtie", ["bowtie", "crossing"], closed([(-2, -0.5), (2, 0.5), (2, -0.5), (-2, 0.5)]))
    add("lopsided_bowtie", ["bowtie", "crossing"], closed([(-2, -1.0), (1, 0.5), (1, -0.5), (-2, 1.0)]))
    add("kissing_triangles", ["double_triangle"], closed([(0, 0), (1, 0.7), (1, -0.7), (0, 0), (-1, 0.7), (-1, -0.7)]))
    add("big_small_triangles", ["double_triangle"], closed([(0, 0), (2, 1.2), (2, -1.2), (0, 0), (-0.8, 0.5), (-0.8, -0.5)]))
    add("butterfly", ["butterfly"], closed([(0, 0), (1.2, 1), (2, 0.6), (1.6, -0.8), (0, 0), (-1.6, -0.8), (-2, 0.6), (-1.2, 1)]))
    add("kissing_squares", ["double_square"], closed([(0, 0), (1, 0), (1, 1), (0, 1), (0, 0), (-1, 0), (-1, -1), (0, -1)]))
    add("fish", ["fish", "crossing"], closed([(0, 0.5), (2, -0.6), (3.2, 0), (2, 0.6), (0, -0.5)]))
    add("fish_long", ["fish", "crossing"], closed([(0, 0.4), (3, -0.5), (4, 0), (3, 0.5), (0, -0.4)]))
    add("ribbon", ["crossing"], closed([(0, 0), (2, 1), (3, 0), (2, -1), (0.5, 1), (-0.5, 0)]))

    # open polylines
    for n in range(2, 10):
        pts = [(k, 0.6 * (k % 2)) for k in range(n + 1)]
        add(f"zigzag_{n}", ["zigzag"], opened(pts))
    for n in range(2, 10):
        pts = [(0.0, 0.0)]
        x = y = 0.0
        dirs = [(1, 0), (0, 1), (-1, 0), (0, -1)]
        for k in range(n):
            L = 1 + 0.5 * k
            x, y = x + L * dirs[k % 4][0], y + L * dirs[k % 4][1]
            pts.append((x, y))
        add(f"square_spiral_{n}", ["spiral"], opened(pts))
    add("meander", ["meander"], opened([(0, 0), (0, 1), (1, 1), (1, 0), (2, 0), (2, 1), (3, 1), (3, 0), (4, 0), (4, 1)]))
    add("meander_short", ["meander"], opened([(0, 0), (0, 1), (1, 1), (1, 0), (2, 0), (2, 1), (3, 1), (3, 0), (4, 0)]))
    add("tall_zigzag_9", ["zigzag"], opened([(0.5 * k, 1.5 * (k % 2)) for k in range(10)]))
    add("comb", ["comb"], opened([(0, 1), (0, 0), (3, 0), (3, 1), (2.5, 1), (2.5, 0.3), (1.5, 0.3), (1.5, 1), (0.8, 1), (0.8, 0.3)]))
    for n in (3, 4, 5, 6, 7, 8, 9):
        pts = [(0.0, 0.0)]
        for k in range(n):
            x, y = pts[-1]
            pts.append((x + 1, y) if k % 2 == 0 else (x, y + 1))
        add(f"staircase_{n}", ["stairs"], opened(pts))
    add("vee", ["letter"], opened([(0, 1.5), (0.6, 0), (1.2, 1.5)]))
    add("caret", ["letter", "mountains"], opened([(0, 0), (1, 1), (2, 0)]))
    add("ell_letter", ["letter"], opened([(0, 2), (0, 0), (1.2, 0)]))
    add("en", ["letter"], opened([(0, 0), (0, 2), (1.3, 0), (1.3, 2)]))
    add("zed", ["letter"], opened([(0, 2), (1.4, 2), (0, 0), (1.4, 0)]))
    add("square_cee", ["letter"], opened([(1.4, 2), (0, 2), (0, 0), (1.4, 0)]))
    add("em", ["letter", "mountains"], opened([(0, 0), (0, 2), (0.8, 0.8), (1.6, 2), (1.6, 0)]))
    add("double_u", ["letter", "mountains"], opened([(0, 2), (0.5, 0), (1, 1.4), (1.5, 0), (2, 2)]))
    add("square_ess", ["letter"], opened([(1.2, 2), (0, 2), (0, 1), (1.2, 1), (1.2, 0), (0, 0)]))
    add("mountain_range", ["mountains"], opened([(0, 0), (1, 1.5), (1.6, 0.6), (2.4, 2), (3.4, 0.3), (4, 1), (4.6, 0)]))
    add("twin_peaks", ["mountains"], opened([(0, 0), (1, 1.6), (1.8, 0.4), (2.8, 1.6), (3.8, 0)]))
    add("tent", ["mountains"], opened([(0, 0), (1, 1.8), (2, 0), (0, 0), (0.1, 0)][:4]))
    add("hook_open", ["hook"], opened([(0, 0), (0, 2), (1, 2), (1, 1.4)]))
    add("bracket", ["hook"], opened([(1, 0), (0, 0), (0, 2), (1, 2)]))
    add("lightning", ["lightning"], opened([(0.6, 2.6), (0, 1.3), (0.9, 1.4), (0.2, 0), (1.1, 1.3), (0.4, 1.1)][:5]))
    add("check_mark", ["letter"], opened([(0, 0.6), (0.5, 0), (1.8, 1.6)]))

    # open self-crossing polylines
    add("crossed_triangle", ["crossing"], opened([(0, 0), (2, 0), (1, 1.5), (1, -0.6)]))
    add("alpha_open", ["crossing"], opened([(0, 1), (2, -0.6), (2.6, 0.2), (2, 1), (0, -0.6)]))
    add("hash_open", ["crossing", "hash"], opened([(0, 1), (3, 1), (3, 2), (2, 2), (2, 0), (1, 0), (1, 3)]))
    add("window_open", ["crossing", "hash"], opened([(0, 1), (2, 1), (2, 2), (1, 2), (1, 0), (0, 0), (0, 2), (0.5, 2)]))
    add("zigzag_crossing", ["crossing"], opened([(0, 0), (2, 1), (0, 1), (2, 0), (2.6, 0.8)]))
    add("envelope", ["crossing", "envelope"], opened([(0, 0), (2, 0), (2, 1.3), (0, 1.3), (0, 0), (2, 1.3), (1, 2), (0, 1.3), (2, 0)]))
    rng = np.random.default_rng(20240601)
    made = 0
    while made < 14:
        n = 3 + made % 7
        pts = [tuple(map(float, p)) for p in rng.integers(0, 6, size=(n + 1, 2))]
        if any(pts[i] == pts[i + 1] for i in range(n)):
            continue
        add(f"scribble_{made}", ["scribble"], opened(pts))
        made += 1

    # curves
    add("circle", ["circle"], path((0, 0), (2, 0, 180), (0, 0, 180)))
    add("semicircle", ["semicircle"], path((0, 0), (2, 0), (0, 0, 180)))
    for sw in (70, 120, 240, 300):
        add(f"circle_segment_{sw}", ["segment"], path((0, 0), (2, 0), (0, 0, sw)))
    for sw in (20, 30, 45, 60, 75, 90, 105, 120, 150):
        a = math.radians(sw)
        add(f"fan_{sw}", ["fan"], path((0, 0), (1, 0), (math.cos(a), math.sin(a), sw), (0, 0)))
    for sw in (240, 270, 300):
        a = math.radians(sw)
        add(f"pacman_{sw}", ["fan", "pacman"], path((0, 0), (1, 0), (math.cos(a), math.sin(a), sw), (0, 0)))
    for sw in (40, 80, 120):
        add(f"lens_{sw}", ["lens"], path((0, 0), (2, 0, sw), (0, 0, sw)))
    add("crescent", ["moon"], path((0, -1), (0, 1, 240), (0, -1, -120)))
    add("thin_crescent", ["moon"], path((0, -1), (0, 1, 200), (0, -1, -150)))
    add("heart", ["heart"], path((0, 0), (1, 1), (0, 1, 180), (-1, 1, 180), (0, 0)))
    add("drop", ["drop"], path((0, 0), (0.7, 1.2), (-0.7, 1.2, 240), (0, 0)))
    add("ice_cream", ["cone"], path((0, 0), (0.6, 1.6), (-0.6, 1.6, 180), (0, 0)))
    add("door", ["arch"], path((0, 0), (1, 0), (1, 1.2), (-0, 1.2, 180), (0, 0)))
    add("tunnel", ["arch"], path((0, 0), (0.6, 0), (0.6, 0.8), (1.4, 0.8, -180), (1.4, 0), (2, 0), (2, 1), (0, 1, 180), (0, 0)))
    add("stadium", ["stadium"], path((0, 0), (2, 0), (2, 1, 180), (0, 1), (0, 0, 180)))
    add("capsule", ["stadium"], path((0, 0), (5, 0), (5, 0.6, 180), (0, 0.6), (0, 0, 180)))
    add("bullet", ["bullet"], path((0, 0), (2, 0), (2, 1, 180), (0, 1), (0, 0)))
    add("shield", ["shield"], path((0, 2), (2, 2), (1, 0, -70), (0, 2, -70)))
    add("mushroom", ["mushroom"], path((0.7, 0), (1.3, 0), (1.3, 1), (2, 1), (0, 1, 180), (0.7, 1), (0.7, 0)))
    add("umbrella", ["umbrella"], path((1, -1), (1, 1), (2, 1), (0, 1, 180), (1, 1)))
    add("keyhole", ["keyhole", "necked_shape"], path((-0.15, 0.9), (-0.6, -1), (0.6, -1), (0.15, 0.9), (-0.15, 0.9, 330)))
    add("rounded_square", ["rounded"], path((0.3, 0), (1.7, 0), (2, 0.3, 90), (2, 1.7), (1.7, 2, 90), (0.3, 2),
                                            (0, 1.7, 90), (0, 0.3), (0.3, 0, 90)))
    add("ellipse_like", ["oval"], path((0, 0), (3, 0, 60), (3, 1.2, 120), (0, 1.2, 60), (0, 0, 120)))
    add("egg", ["oval"], path((0, 0), (2, 0, 90), (0, 0, 270)))
    add("figure_eight", ["figure_eight"], path((0, 0), (0, 1, 180), (0, 0, 180), (0, -1, -180), (0, 0, -180)))
    add("snowman", ["snowman"], path((0, 0), (0, 0.8, 180), (0, 0, 180), (0, -1.6, -180), (0, 0, -180)))
    add("infinity", ["figure_eight", "crossing"], path((-1, -0.5), (1, 0.5), (1, -0.5, -180), (-1, 0.5), (-1, -0.5, 180)))
    add("propeller", ["petals"], path((0, 0), (2, 0, 60), (0, 0, 60), (-2, 0, -60), (0, 0, -60)))
    add("clover", ["petals"], path((0, 0), (1.5, 0, 70), (0, 0, 70), (0, 1.5, 70), (0, 0, 70), (-1.5, 0, 70), (0, 0, 70)))
    add("four_petals", ["petals"], path((0, 0), (1.5, 0, 70), (0, 0, 70), (0, 1.5, 70), (0, 0, 70), (-1.5, 0, 70), (0, 0, 70),
                                       (0, -1.5, 70), (0, 0, 70)))
    for n in (2, 3, 4, 5):
        steps = [(2.0 * (k + 1), 0, 150 if k % 2 == 0 else -150) for k in range(n)]
        add(f"wave_{n}", ["wave"], path((0, 0), *steps))
    add("wave_with_tail", ["wave"], path((0, 0), (2, 0, 120), (4, 0, -120), (5.5, 0)))
    add("arc_open", ["bowl"], path((0, 0), (2, 0, 120)))
    add("bowl", ["bowl"], path((0, 1), (2, 1, 180)))
    add("hook_arc", ["hook"], path((0, 2), (0, 0.4), (1, 0.4, 180), (1, 0.8)))
    add("candy_cane", ["hook"], path((0, 0), (0, 2), (1, 2, -180), (1, 1.6)))
    add("arc_spiral", ["spiral"], path((0, 0), (2, 0, 180), (0.4, 0, 180), (1.6, 0, 180), (0.7, 0, 180)))
    add("question", ["hook"], path((0, 1.4), (1.2, 1.4, -180), (0.6, 0.8), (0.6, 0.3)))
    add("glasses", ["glasses"], path((0, 0), (1, 0, 180), (0, 0, 180), (-0.6, 0), (-1.6, 0, -180), (-0.6, 0, -180)))
    add("bell", ["bell"], path((0, 0), (2, 0), (1.6, 0.3), (0.4, 0.3, 180), (0, 0)))
    add("sail", ["sail"], path((0, 0), (2, 0), (0, 2.5, 60), (0, 0)))
    add("leaf", ["leaf"], path((0, 0), (2, 1, 90), (0, 0, 90), (-0.5, -0.5)))
    add("quarter_ring", ["ring_sector"], path((1, 0), (2, 0), (0, 2, 90), (0, 1), (1, 0, -90)))
    add("half_ring", ["ring_sector"], path((1, 0), (2, 0), (-2, 0, 180), (-1, 0), (1, 0, -180)))
    add("cone_fan", ["fan", "cone"], path((0, 0), (math.cos(math.radians(-20)) * 2, math.sin(math.radians(-20)) * 2),
                                           (math.cos(math.radians(20)) * 2, math.sin(math.radians(20)) * 2, 40), (0, 0)))
    # compound outlines: rounded corners, chamfers, pinches, T-touches
    for n, nm in ((3, "triangle"), (4, "square"), (5, "pentagon"), (6, "hexagon"), (7, "heptagon"), (8, "octagon"),
                  (9, "nonagon")):
        add(f"rounded_{nm}" if n != 4 else "rounded_diamond", ["rounded"], rounded(regular(n), 0.25))
    add("rounded_long_octagon", ["rounded"], rounded(chamfer(4, 1.6, 0.4), 0.15))
    add("rounded_chamfer_rect", ["rounded"], rounded(chamfer(2.4, 1.6, 0.5), 0.2))
    add("rounded_tee", ["rounded", "tee"], rounded([(0, 2), (0, 2.8), (3, 2.8), (3, 2), (1.9, 2), (1.9, 0), (1.1, 0), (1.1, 2)], 0.15))
    add("rounded_ell", ["rounded", "ell"], rounded([(0, 0), (2, 0), (2, 0.7), (0.7, 0.7), (0.7, 2.4), (0, 2.4)], 0.15))
    add("rounded_star_four", ["rounded", "star"], rounded(star(4, 1.0, 0.45), 0.06))
    add("rounded_arrow", ["rounded", "arrow"], rounded(
        [(0, 0.3), (2, 0.3), (2, 0.8), (3, 0), (2, -0.8), (2, -0.3), (0, -0.3), (0.5, 0)], 0.08))
    add("half_rounded_octagon", ["rounded"], rounded(regular(8), 0.3, skip=(0, 2, 4, 6)))
    add("rounded_thin_bar", ["rounded", "bar"], rounded([(0, 0), (6, 0), (6, 0.35), (0, 0.35)], 0.1))
    add("rounded_thin_octagon", ["rounded", "bar"], rounded(chamfer(6, 0.5, 0.15), 0.05))
    add("rounded_thin_tee", ["rounded", "tee"], rounded(
        [(0, 3), (0, 3.3), (3, 3.3), (3, 3), (1.65, 3), (1.65, 0), (1.35, 0), (1.35, 3)], 0.06))
    add("rounded_kite", ["rounded", "kite"], rounded([(0, 0), (1, 1.2), (0, 3), (-1, 1.2)], 0.2))
    add("rounded_trapezoid", ["rounded", "trapezoid"], rounded([(0, 0), (3, 0), (2.2, 1.4), (0.8, 1.4)], 0.2))
    add("rounded_necked_pair", ["rounded", "necked_shape"], rounded(
        [(-2, 1), (-0.1, 0.1), (0.1, 0.1), (2, 1), (2, -1), (0.1, -0.1), (-0.1, -0.1), (-2, -1)], 0.08, skip=(1, 2, 5, 6)))
    for k, (w, h, c) in enumerate(((2.0, 2.0, 0.6), (3.0, 1.5, 0.4), (2.5, 2.0, 0.3), (3.5, 1.0, 0.3))):
        add(f"chamfered_rect_{k}", ["polygon", "octagon"], closed(chamfer(w, h, c)))
    add("chamfered_uneven", ["polygon", "octagon"], closed(chamfer(2.6, 1.8, 0.7, 0.25)))
    add("thin_octagon", ["polygon", "octagon", "bar"], closed(chamfer(6, 0.5, 0.15)))
    add("thin_octagon_long", ["polygon", "octagon", "bar"], closed(chamfer(8, 0.6, 0.25, 0.1)))
    add("thin_tee", ["tee"], closed([(0, 3), (0, 3.3), (3, 3.3), (3, 3), (1.65, 3), (1.65, 0), (1.35, 0), (1.35, 3)]))
    add("thin_you", ["you"], closed([(0, 0), (2.4, 0), (2.4, 2.5), (2.15, 2.5), (2.15, 0.25), (0.25, 0.25), (0.25, 2.5), (0, 2.5)]))
    add("thin_zed", ["zed"], closed([(0, 0), (3, 0), (3, 0.3), (0.45, 0.3), (3, 2.7), (3, 3), (0, 3), (0, 2.7),
                                     (2.55, 2.7), (0, 0.3)]))
    add("thin_chevron", ["chevron"], closed([(0, 0), (2, 1.5), (4, 0), (4, 0.35), (2, 1.85), (0, 0.35)]))
    add("thin_stairs", ["stairs"], closed([(0, 0), (3, 0), (3, 0.3), (2, 0.3), (2, 1.3), (1, 1.3), (1, 0.3), (0, 0.3)]))
    for k, (w, h, hw) in enumerate(((0.08, 1.0, 2.0), (0.15, 1.0, 2.0), (0.1, 1.4, 1.5), (0.12, 0.8, 2.5))):
        add(f"necked_bowtie_{k}", ["hourglass", "necked_shape"], closed(
            [(-hw, h), (-w, w), (w, w), (hw, h), (hw, -h), (w, -w), (-w, -w), (-hw, -h)]))
    add("necked_bowtie_lopsided", ["hourglass", "necked_shape"], closed(
        [(-2.5, 1.2), (-0.1, 0.1), (0.1, 0.1), (1.5, 0.7), (1.5, -0.7), (0.1, -0.1), (-0.1, -0.1), (-2.5, -1.2)]))
    add("necked_bowtie_tall", ["hourglass", "necked_shape"], closed(
        [(-1, 2), (-0.1, 0.1), (-0.1, -0.1), (-1, -2), (1, -2), (0.1, -0.1), (0.1, 0.1), (1, 2)]))
    add("necked_triangles", ["dumbbell", "necked_shape"], closed(
        [(-2, 0), (-0.6, 1), (-0.1, 0.1), (0.1, 0.1), (0.6, 1), (2, 0), (0.6, -1), (0.1, -0.1), (-0.1, -0.1), (-0.6, -1)]))
    for k, (a, b) in enumerate((((1.3, 0), (1.3, 0.7)), ((1.6, 0), (1.6, 0.8)), ((1, -0.4), (1.2, 1)), ((0.7, 0.5), (0, 1.5)))):
        pa = [(0, 0), a, b, (b[0] - a[0], b[1] - a[1])]
        pb = [(-x, -y) for x, y in pa]
        add(f"kissing_quads_{k}", ["double_square"], closed(pa + pb))
    add("kissing_diamonds", ["double_square"], closed([(0, 0), (1, 0.6), (2, 0), (1, -0.6), (0, 0), (-1, 0.6), (-2, 0), (-1, -0.6)]))
    add("kissing_kites", ["double_square"], closed([(0, 0), (1, 0.5), (2.2, 0), (1, -0.5), (0, 0), (-1, -0.5), (-2.2, 0), (-1, 0.5)]))
    add("kissing_trapezoids", ["double_square"], closed([(0, 0), (1.5, 0.3), (1.5, 1.5), (0, 1), (0, 0), (-1.5, -0.3), (-1.5, -1.5), (0, -1)]))
    add("kissing_big_small", ["double_square"], closed([(0, 0), (2, 0), (2, 2), (0, 2), (0, 0), (-0.7, 0), (-0.7, -0.7), (0, -0.7)]))
    add("kissing_square_kite", ["double_square"], closed([(0, 0), (1, 0), (1, 1), (0, 1), (0, 0), (-0.8, -0.3), (-2.4, -1.6), (-0.3, -0.8)]))
    add("kissing_tri_square", ["double_square"], closed([(0, 0), (1.2, 0), (1.2, 1.2), (0, 1.2), (0, 0), (-1.4, -0.3), (-0.3, -1.4)]))
    add("kissing_rounded", ["double_square", "rounded"], path(
        (0, 0), (0.8, 0), (1.2, 0.4, 90), (1.2, 1.2), (0.4, 1.2), (0, 0.8, 90), (0, 0),
        (-0.8, 0), (-1.2, -0.4, 90), (-1.2, -1.2), (-0.4, -1.2), (0, -0.8, 90), (0, 0)))
    for top in range(1, 7):
        add(f"tee_path_{top + 3}", ["tee_path"], tee_path(top))
        add(f"tee_path_{top + 3}_tall", ["tee_path"], tee_path(top, base=6.0, height=3.0, depth=1.6))
    for top in range(1, 6):
        add(f"tee_path_{top + 3}_short", ["tee_path"], tee_path(top, base=5.0, height=1.2, depth=0.5))
        add(f"tee_path_{top + 3}_deep", ["tee_path"], tee_path(top, base=9.0, height=4.0, depth=3.0))
        add(f"tee_path_{top + 3}_wide", ["tee_path"], tee_path(top, base=10.0, height=2.5, depth=1.2))
        add(f"tee_path_{top + 4}_landed", ["tee_path"], tee_path(top, base=6.0, height=2.2, depth=1.0, land=0.8))
    for top in (1, 2, 3, 4, 5):
        add(f"tee_path_{top + 4}_flat", ["tee_path"], tee_path(top, base=7.0, height=1.5, depth=0.8, land=1.5))
    add("tee_hooked", ["tee_path", "hook"], path((0, 0), (6, 0), (6, 2), (3, 2), (2, 1, 90), (2, 0)))
    add("tee_arched", ["tee_path", "arch"], path((0, 0), (6, 0), (6, 2), (4, 2), (2, 2, 120), (1, 1.2), (1.5, 0)))
    # generated variety: rounded, convex, thin, point-symmetric, lassos
    rng = np.random.default_rng(20240602)
    for n in range(3, 10):
        for k in range(3 if n < 5 else 8):
            add(f"rounded_poly_{n}_{k}", ["rounded"], rounded(random_polygon(rng, n, rmin=0.55)))
    for n in (3, 4, 5, 6, 7, 9):
        for k in range(3):
            add(f"convex_poly_{n}_{k}", ["polygon"], closed(random_polygon(rng, n, rmin=1.0, sy=rng.uniform(0.6, 1.0))))
    for n in (3, 4, 5, 6, 7, 8, 9):
        for k in range(6 if n < 7 else 9):
            add(f"sliver_{n}_{k}", ["bar"], closed(random_polygon(rng, n, rmin=0.85, sy=0.1)))
    for n in (3, 5, 7, 9):
        for k in range(4 if n < 5 else 9):
            add(f"pinwheel_path_{n}_{k}", ["scribble"], opened(point_symmetric_path(rng, n)))
    for n in (4, 6):
        for k in range(2):
            half = random_polygon(rng, n // 2 + 1, rmin=0.7)[: n // 2]
            half = sorted(half, key=lambda q: math.atan2(q[1], q[0]))
            add(f"central_poly_{n}_{k}", ["polygon"], closed(half + [(-x, -y) for x, y in half]))
    for k, tail in enumerate(([(-1, 0)], [(-1, 0.5), (-2, -0.2)], [(-1, 0.6), (-1.8, -0.4), (-2.8, 0.3)],
                              [(-0.8, 0.7), (-1.6, -0.3), (-2.4, 0.8), (-3.2, -0.1)],
                              [(-0.7, -0.9)], [(-0.9, -0.2), (-1.1, 0.9)], [(0.3, -0.9), (-0.9, -1.3), (-1.6, -0.2)],
                              [(-0.6, -0.8), (-1.7, -0.6), (-1.9, 0.5), (-2.8, 0.9)],
                              [(-0.8, 0.7), (-1.6, -0.3), (-2.4, 0.8), (-3.2, -0.1), (-4, 0.8)],
                              [(-0.4, -1.0), (-1.4, -0.8), (-1.0, 0.4), (-2.1, 1.0), (-2.6, -0.3)],
                              [(-0.9, 0.3), (-1.5, -0.6), (-2.5, -0.2), (-3.1, 0.8), (-4.0, 0.2)])):
        loop = [(1.2, 0), (1.2, 1.1), (0, 1.1), (0, 0)]
        add(f"lasso_{k}", ["lasso"], opened([(0, 0)] + loop + tail))
        add(f"lasso_kite_{k}", ["lasso"], opened([(0, 0), (1.4, -0.5), (2.2, 0.6), (0.7, 1.0), (0, 0)] + tail))
    add("kissing_square_circle", ["double_square", "rounded"], path((0, 0), (1.2, 0), (1.2, 1.2), (0, 1.2), (0, 0),
                                                                     (-1.2, -1.2, 180), (0, 0, 180)))
    add("kissing_triangle_circle", ["double_triangle", "rounded"], path((0, 0), (1.4, 0.6), (1.4, -0.6), (0, 0),
                                                                         (-1.6, 0, 180), (0, 0, 180)))
    add("kissing_pentagon_circle", ["double_square", "rounded"], path(
        (0, 0), (1.2, -0.4), (2, 0.4), (1.4, 1.4), (0.3, 1.1), (0, 0), (-1.2, -0.8, 180), (0, 0, 180)))
    add("kissing_triangles_tall", ["double_triangle"], closed([(0, 0), (0.6, 1.5), (-0.6, 1.5), (0, 0), (0.6, -1.5), (-0.6, -1.5)]))
    add("kissing_triangles_skew", ["double_triangle"], closed([(0, 0), (1.5, 0.3), (0.9, 1.2), (0, 0), (-1.5, -0.3), (-0.9, -1.2)]))
    add("lumpy_dumbbell", ["dumbbell", "necked_shape"], closed(
        [(0, 0.1), (1, 0.3), (1.6, 1.1), (2.4, 0.7), (2.2, -0.9), (1.1, -0.6), (0, -0.1), (-0.9, -0.5), (-1.3, 0.5), (-0.7, 0.8)]))
    add("pear_necked", ["bottle", "necked_shape"], closed(
        [(0, 0), (2.2, 0), (2.6, 1.2), (1.4, 1.9), (1.3, 2.1), (2, 2.8), (1.1, 3.4), (0.3, 2.9), (0.9, 2.1), (0.8, 1.9), (-0.4, 1.1)]))
    add("thin_inverted_tee", ["tee"], closed([(0, 0), (3, 0), (3, 0.25), (1.75, 0.25), (1.75, 1.5), (1.25, 1.5), (1.25, 0.25), (0, 0.25)]))
    add("thin_arrow", ["arrow", "bar"], closed([(0, 0.1), (4, 0.1), (4, 0.3), (4.6, 0), (4, -0.3), (4, -0.1), (0, -0.1), (0.2, 0)]))
    for k, (sw, lean) in enumerate(((50, 0), (70, 0), (40, 15), (60, -10), (90, 5), (35, -20))):
        a0, a1 = math.radians(lean - sw / 2), math.radians(lean + sw / 2)
        b0, b1 = a0 + math.pi, a1 + math.pi
        add(f"kissing_fans_{k}", ["fan", "bowtie"], path(
            (0, 0), (math.cos(a0), math.sin(a0)), (math.cos(a1), math.sin(a1), sw), (0, 0),
            (math.cos(b0), math.sin(b0)), (math.cos(b1), math.sin(b1), sw), (0, 0)))
    for k, (w, top, bot) in enumerate(((0.1, 1.0, 1.0), (0.08, 1.4, 0.9), (0.12, 0.8, 1.3))):
        add(f"rounded_hourglass_{k}", ["hourglass", "necked_shape", "rounded"], rounded(
            [(-top, 1), (-w, 0), (-bot, -1.2), (bot, -1.2), (w, 0), (top, 1)], 0.15, skip=(1, 4)))
    add("hourglass_lopsided", ["hourglass", "necked_shape"], closed([(-1.4, -1), (1, -1), (0.1, 0), (0.7, 1.3), (-0.6, 1.3), (-0.05, 0)]))
    add("hourglass_leaning", ["hourglass", "necked_shape"], closed([(-1, -1), (0.8, -1.2), (0.15, 0.1), (1.4, 1), (-0.6, 1.2), (0.0, 0.05)]))
    add("kissing_triangles_wide", ["double_triangle"], closed([(0, 0), (1.8, 0.5), (1.6, -0.7), (0, 0), (-1.8, -0.5), (-1.6, 0.7)]))
    add("kissing_triangles_flat", ["double_triangle"], closed([(0, 0), (1.6, 0.9), (2.0, -0.2), (0, 0), (-1.7, 0.8), (-1.9, -0.4)]))
    add("kissing_wedges", ["double_square"], closed([(0, 0), (1.2, -0.5), (1.4, 1.3), (0.2, 0.9), (0, 0), (-1.2, 0.5), (-1.4, -1.3), (-0.2, -0.9)]))
    add("kissing_wedges_slim", ["double_square"], closed([(0, 0), (1.5, -0.3), (1.7, 0.9), (0.3, 1.0), (0, 0), (-1.5, 0.3), (-1.7, -0.9), (-0.3, -1.0)]))
    add("tri_tee_tall", ["tee_path"], opened([(0, 0), (2.5, 0), (0.9, 2.2), (0.9, 0)]))
    add("box_tee", ["tee_path"], opened([(0, 0), (4, 0), (4, 1.5), (2.4, 1.5), (2.4, 0)]))
    add("tri_tee", ["tee_path"], opened([(0, 0), (3, 0), (1.5, 1.5), (1.5, 0)]))
    add("tri_tee_wide", ["tee_path"], opened([(0, 0), (4, 0), (1.2, 1.2), (1.2, 0)]))
    add("thin_kite", ["kite", "bar"], closed([(0, 0), (3, 0.25), (4, 0), (3, -0.25)]))
    return E


def author():
    entries = []
    seen = set()
    for name, cats, prog in families():
        if name in seen:
            raise SystemExit(f"duplicate {name}")
        seen.add(name)
        entries.append({"name": name, "categories": sorted(set(cats)), "strokes": build(prog)})
    return entries


def report(entries):
    import tempfile

    from bongard_forge.attributes import ATTRIBUTES
    from bongard_forge.library import load_library

    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        json.dump(entries, fh)
    lib = load_library(fh.name)
    n = len(lib)
    print(f"{n} entries, {len(lib.categories)} categories")
    for a in ATTRIBUTES:
        t = len(lib.attribute_index[a])
        flag = "" if 8 <= t <= n - 8 else "   <-- short"
        print(f"  {a:36s} {t:4d} / {n - t:4d}{flag}")
    return lib


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=OUT)
    ap.add_argument("--report", action="store_true", help="print attribute coverage instead of writing")
    args = ap.parse_args(argv)
    entries = author()
    if args.report:
        report(entries)
        return
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(entries, indent=1) + "\n")
    print(f"wrote {len(entries)} entries to {args.out}")


if __name__ == "__main__":
    main()
