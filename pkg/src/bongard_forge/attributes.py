"""Abstract attribute predicates on base geometry.

Every predicate is evaluated per component in a canonical frame: start point
at the origin, initial direction along +x, lengths in unit lengths.  This makes
results independent of the pose a shape was drawn with.  Moving types never
enter; predicates only see :class:`~bongard_forge.turtle.BasePath` geometry.

Tolerances (all in unit lengths unless noted):

* closure / contact: 0.01
* collinearity: 1 degree
* symmetry and point symmetry: 0.02 x diameter
* arc flattening sagitta: 0.002
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import shapely
from shapely.geometry import LinearRing, Polygon

from . import kernels
from .errors import UnknownAttribute
from .turtle import BasePath, CircularArc, Component, Segment, sample_component

CLOSE_TOL = 0.01
CONTACT_TOL = 0.01
COLLINEAR_DEG = 1.0
SYMMETRY_TOL = 0.02
FLATTEN_TOL = 0.002
ACUTE_DEG = 85.0
PINCH_RADIUS = 0.02
PINCH_WINDOW = 0.1
N_AXES = 720
SNAP = 9

NUMBER_WORDS = {2: "two", 3: "three", 4: "four", 5: "five", 6: "six", 7: "seven", 8: "eight", 9: "nine"}

NAMED_ATTRIBUTES = (
    "convex",
    "symmetric",
    "self_transposed",
    "necked",
    "have_two_parts",
    "have_acute_angle",
    "have_curve",
    "closed_shape",
    "balanced_two",
    "thin_shape",
    "exist_quadrangle",
    "exist_sector",
)
LINE_ATTRIBUTES = tuple(f"have_{w}_straight_lines" for w in NUMBER_WORDS.values())
SPLIT_LINE_ATTRIBUTES = tuple(f"have_{w}_split_straight_lines" for w in NUMBER_WORDS.values())
ATTRIBUTES = NAMED_ATTRIBUTES + LINE_ATTRIBUTES + SPLIT_LINE_ATTRIBUTES
ATTRIBUTE_SET_VERSION = 1


def line_attribute(n: int, split: bool = False) -> str:
    return f"have_{NUMBER_WORDS[n]}_{'split_' if split else ''}straight_lines"


# ---------------------------------------------------------------------------
# canonical frame and polygonization


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _turn_deg(d0, d1) -> float:
    """Signed turn from direction d0 to d1, in (-180, 180]."""
    t = math.degrees(math.atan2(_cross(d0, d1), d0[0] * d1[0] + d0[1] * d1[1]))
    return 180.0 if t == -180.0 else t


def _end_tangent(prim):
    return prim.tangents(np.array([prim.length]))[0]


def _start_tangent(prim):
    return prim.tangents(np.array([0.0]))[0]


def canonical_frame(comp: Component) -> tuple[float, float, float, float] | None:
    """``(ox, oy, theta, inv)``: origin, initial direction and inverse unit
    length of the canonical frame, or None for an empty component."""
    prims = [p for p in comp.primitives if p.length > 1e-12 * comp.unit_length]
    if not prims:
        return None
    ox, oy = prims[0].start
    d = _start_tangent(prims[0])
    return float(ox), float(oy), math.atan2(d[1], d[0]), 1.0 / comp.unit_length


def canonical_component(comp: Component) -> Component:
    """Rigidly move and scale ``comp`` into the canonical frame (unit length 1)."""
    frame = canonical_frame(comp)
    if frame is None:
        return Component((), 1.0)
    prims = [p for p in comp.primitives if p.length > 1e-12 * comp.unit_length]
    ox, oy, theta, inv = frame
    c, s = math.cos(theta), math.sin(theta)

    def tf(p):
        # snapping removes pose-dependent float noise before any threshold test
        x, y = p[0] - ox, p[1] - oy
        return (round((c * x + s * y) * inv, SNAP), round((-s * x + c * y) * inv, SNAP))

    out = []
    for p in prims:
        if isinstance(p, Segment):
            out.append(Segment(tf(p.p0), tf(p.p1)))
        else:
            out.append(CircularArc(tf(p.center), round(p.radius * inv, SNAP), round(p.start_angle - theta, SNAP),
                                   round(p.sweep, SNAP)))
    return Component(tuple(out), 1.0)


@dataclass
class Polyline:
    """Flattened component: vertices (closed rings repeat the first vertex) and
    a flag per edge telling whether it came from a straight primitive."""

    vertices: np.ndarray
    straight: np.ndarray
    closed: bool

    @property
    def edges(self) -> np.ndarray:
        return np.hstack([self.vertices[:-1], self.vertices[1:]])


def _flatten(comp: Component, tol: float, close_tol: float = CLOSE_TOL) -> Polyline:
    unit = comp.unit_length
    prims = [p for p in comp.primitives if p.length > 1e-12 * unit]
    if not prims:
        return Polyline(np.zeros((1, 2)), np.zeros(0, dtype=bool), False)
    verts = [np.asarray(prims[0].start, dtype=float)]
    straight: list[bool] = []
    for p in prims:
        if isinstance(p, Segment):
            verts.append(np.asarray(p.p1, dtype=float))
            straight.append(True)
        else:
            sag = tol * unit
            step = math.pi / 2 if sag >= p.radius else min(math.pi / 2, 2 * math.acos(1 - sag / p.radius))
            n = max(1, int(math.ceil(abs(p.sweep) / step - 1e-9)))
            pts = p.points(np.arange(1, n + 1) * (p.length / n))
            verts.extend(pts)
            straight.extend([False] * n)
    V = np.array(verts)
    closed = bool(np.linalg.norm(V[-1] - V[0]) <= close_tol * unit) and len(V) > 2
    if closed:
        V[-1] = V[0]
    return _merge_collinear(V, np.array(straight, dtype=bool), closed)


def _merge_collinear(V: np.ndarray, straight: np.ndarray, closed: bool) -> Polyline:
    verts = list(V[:-1] if closed else V)
    flags = list(straight)

    def direction(i):
        a, b = verts[i], verts[(i + 1) % len(verts)]
        return b - a

    changed = True
    while changed and len(verts) > (3 if closed else 2):
        changed = False
        n = len(verts)
        candidates = range(n) if closed else range(1, n - 1)
        for i in candidates:
            prev = (i - 1) % n
            if not (flags[prev] and flags[i]):
                continue
            if abs(_turn_deg(direction(prev), direction(i))) < COLLINEAR_DEG:
                del verts[i]
                del flags[i]
                changed = True
                break
    if closed:
        verts.append(verts[0])
    return Polyline(np.array(verts), np.array(flags, dtype=bool), closed)


def canonical_polygonization(bp: BasePath, tol: float = FLATTEN_TOL) -> list[Polyline]:
    """Arcs flattened to chords with sagitta <= ``tol * unit``; consecutive
    straight edges turning by less than 1 degree merged.  Coordinates stay in
    the frame of ``bp``."""
    return [_flatten(c, tol) for c in bp.components]


# ---------------------------------------------------------------------------
# per-component analysis


def _polygon_area(pts: np.ndarray) -> float:
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _resample(vertices: np.ndarray, pitch: float) -> np.ndarray:
    out = [vertices[:1]]
    for a, b in zip(vertices[:-1], vertices[1:]):
        L = float(np.linalg.norm(b - a))
        n = max(1, int(math.ceil(L / pitch)))
        t = (np.arange(1, n + 1) / n)[:, None]
        out.append(a + t * (b - a))
    return np.concatenate(out)


def _seg_seg_closest(a, b, c, d):
    """Closest points between segments ab and cd: (distance, t on ab, u on cd)."""
    r, s, w = b - a, d - c, a - c
    rr, ss, rs = r @ r, s @ s, r @ s
    rw, sw = r @ w, s @ w
    den = rr * ss - rs * rs
    cands = []
    if den > 1e-14 * rr * ss:
        t = (rs * sw - ss * rw) / den
        u = (rr * sw - rs * rw) / den
        if 0 <= t <= 1 and 0 <= u <= 1:
            cands.append((t, u))
    for t in (0.0, 1.0):
        u = 0.0 if ss == 0 else min(1.0, max(0.0, ((a + t * r - c) @ s) / ss))
        cands.append((t, u))
    for u in (0.0, 1.0):
        t = 0.0 if rr == 0 else min(1.0, max(0.0, ((c + u * s - a) @ r) / rr))
        cands.append((t, u))
    best = min(cands, key=lambda tu: float(np.linalg.norm(a + tu[0] * r - c - tu[1] * s)))
    t, u = best
    return float(np.linalg.norm(a + t * r - c - u * s)), t, u


@dataclass
class _Contact:
    point: np.ndarray
    positions: list[float] = field(default_factory=list)


class ComponentAnalysis:
    """Lazily computed geometry of one component in its canonical frame."""

    def __init__(self, comp: Component):
        self.source = comp
        self.frame = canonical_frame(comp)
        self.comp = canonical_component(comp)
        self.poly = _flatten(self.comp, FLATTEN_TOL)

    def to_local(self, pts: np.ndarray) -> np.ndarray:
        """Map points from the drawing frame into this component's canonical frame."""
        ox, oy, theta, inv = self.frame
        c, s = math.cos(theta), math.sin(theta)
        x, y = pts[:, 0] - ox, pts[:, 1] - oy
        return np.column_stack([(c * x + s * y) * inv, (-s * x + c * y) * inv])

    def foreign(self, other: "ComponentAnalysis") -> tuple[np.ndarray, list[CircularArc]]:
        """Straight runs and arcs of ``other`` expressed in this canonical frame."""
        poly = _flatten(other.source, FLATTEN_TOL)
        e = poly.edges[poly.straight] if len(poly.straight) else np.empty((0, 4))
        runs = np.hstack([self.to_local(e[:, :2]), self.to_local(e[:, 2:])]) if len(e) else e
        _, _, theta, inv = self.frame
        arcs = []
        for p in other.source.primitives:
            if isinstance(p, CircularArc) and p.length > 0:
                cx, cy = self.to_local(np.array([p.center]))[0]
                arcs.append(CircularArc((cx, cy), p.radius * inv, p.start_angle - theta, p.sweep))
        return runs, arcs

    # basic geometry -------------------------------------------------------
    @property
    def empty(self) -> bool:
        return not self.comp.primitives

    @property
    def closed(self) -> bool:
        return self.poly.closed

    @cached_property
    def edges(self) -> np.ndarray:
        return self.poly.edges

    @cached_property
    def edge_lengths(self) -> np.ndarray:
        e = self.edges
        return np.hypot(e[:, 2] - e[:, 0], e[:, 3] - e[:, 1])

    @cached_property
    def cumulative(self) -> np.ndarray:
        return np.concatenate([[0.0], np.cumsum(self.edge_lengths)])

    @property
    def perimeter(self) -> float:
        return float(self.cumulative[-1])

    @cached_property
    def diameter(self) -> float:
        V = self.poly.vertices
        if len(V) < 2:
            return 0.0
        best = 0.0
        for start in range(0, len(V), 256):
            blk = V[start:start + 256]
            best = max(best, float(np.max(np.sum((blk[:, None, :] - V[None, :, :]) ** 2, axis=2))))
        return math.sqrt(best)

    @cached_property
    def centroid(self) -> np.ndarray:
        e = self.edges
        mids = 0.5 * (e[:, :2] + e[:, 2:])
        L = self.edge_lengths
        if L.sum() <= 0:
            return self.poly.vertices[0].copy()
        return (mids * L[:, None]).sum(axis=0) / L.sum()

    @cached_property
    def samples(self) -> np.ndarray:
        return _resample(self.poly.vertices, max(self.diameter, 1e-9) / 200.0)

    @cached_property
    def ring(self) -> np.ndarray:
        return self.poly.vertices[:-1]

    @cached_property
    def area(self) -> float:
        return abs(_polygon_area(self.ring)) if self.closed else 0.0

    @cached_property
    def is_simple(self) -> bool:
        if not self.closed or len(self.ring) < 3:
            return False
        return bool(LinearRing(self.ring).is_simple)

    @cached_property
    def region(self):
        """Enclosed region of a closed component as a valid shapely geometry."""
        if not self.closed or len(self.ring) < 3:
            return None
        poly = Polygon(self.ring)
        if not poly.is_valid:
            poly = shapely.make_valid(poly)
            parts = [g for g in getattr(poly, "geoms", [poly]) if g.geom_type in ("Polygon", "MultiPolygon")]
            if not parts:
                return None
            poly = shapely.union_all(parts)
        return poly if poly.area > 1e-9 else None

    @cached_property
    def inscribed_radius(self) -> float:
        region = self.region
        if region is None:
            return 0.0
        line = shapely.maximum_inscribed_circle(region, tolerance=max(self.diameter, 1e-9) * 1e-3)
        return float(line.length)

    # turning ----------------------------------------------------------------
    @cached_property
    def vertex_turns(self) -> np.ndarray:
        """Signed turns (degrees) at polyline vertices; cyclic when closed."""
        e = self.edges
        d = e[:, 2:] - e[:, :2]
        pairs = list(zip(d[:-1], d[1:]))
        if self.closed:
            pairs.append((d[-1], d[0]))
        return np.array([_turn_deg(a, b) for a, b in pairs])

    @cached_property
    def junction_turns(self) -> list[float]:
        """Unsigned tangent turns (degrees) where consecutive primitives meet."""
        return [abs(t) for t in self.signed_junction_turns]

    @cached_property
    def signed_junction_turns(self) -> list[float]:
        prims = self.comp.primitives
        pairs = list(zip(prims[:-1], prims[1:]))
        if self.closed and len(prims) > 1:
            pairs.append((prims[-1], prims[0]))
        elif self.closed and len(prims) == 1 and isinstance(prims[0], CircularArc):
            pairs.append((prims[0], prims[0]))
        return [_turn_deg(_end_tangent(a), _start_tangent(b)) for a, b in pairs]

    # straight lines -----------------------------------------------------------
    @cached_property
    def runs(self) -> np.ndarray:
        return self.edges[self.poly.straight] if len(self.poly.straight) else np.empty((0, 4))

    @cached_property
    def arcs(self) -> list[CircularArc]:
        return [p for p in self.comp.primitives if isinstance(p, CircularArc)]

    def split_count(self, extra_runs: np.ndarray | None = None, extra_arcs=()) -> int:
        """Runs after cutting at every hit by another run or arc, of this
        component or from ``extra_runs`` / ``extra_arcs`` (same frame)."""
        runs = self.runs
        others = runs if extra_runs is None or not len(extra_runs) else np.vstack([runs, extra_runs])
        arcs = list(self.arcs) + list(extra_arcs)
        total = 0
        for i, run in enumerate(runs):
            a, b = run[:2], run[2:]
            r = b - a
            L = float(np.hypot(*r))
            if L <= 0:
                continue
            ts = []
            for j, other in enumerate(others):
                if j != i:
                    ts.extend(_segment_hits(a, r, L, other[:2], other[2:]))
            for arc in arcs:
                ts.extend(_arc_hits(a, r, L, arc))
            ts.sort()
            distinct = 0
            last = -1.0
            for t in ts:
                if distinct == 0 or (t - last) * L > CONTACT_TOL:
                    distinct += 1
                    last = t
            total += 1 + distinct
        return total

    # contacts -------------------------------------------------------------------
    def _path_gap(self, s1: float, s2: float) -> float:
        gap = abs(s1 - s2)
        if self.closed:
            gap = min(gap, self.perimeter - gap)
        return gap

    @cached_property
    def contacts(self) -> list[_Contact]:
        """Places where the curve touches or crosses itself, each with the
        distinct arc-length positions passing through it."""
        if self.empty:
            return []
        e = self.edges
        cum = self.cumulative
        n = len(e)
        raw = []
        lo, hi = e[:, :2].min(axis=0), e[:, :2].max(axis=0)
        bb_lo = np.minimum(e[:, :2], e[:, 2:]) - CONTACT_TOL
        bb_hi = np.maximum(e[:, :2], e[:, 2:]) + CONTACT_TOL
        for i in range(n):
            overlap = np.all(bb_lo[i + 1:] <= bb_hi[i], axis=1) & np.all(bb_hi[i + 1:] >= bb_lo[i], axis=1)
            for j in np.nonzero(overlap)[0] + i + 1:
                dist, t, u = _seg_seg_closest(e[i, :2], e[i, 2:], e[j, :2], e[j, 2:])
                if dist > CONTACT_TOL:
                    continue
                s1 = cum[i] + t * (cum[i + 1] - cum[i])
                s2 = cum[j] + u * (cum[j + 1] - cum[j])
                if self._path_gap(s1, s2) <= 4 * CONTACT_TOL:
                    continue
                p = 0.5 * (e[i, :2] + t * (e[i, 2:] - e[i, :2]) + e[j, :2] + u * (e[j, 2:] - e[j, :2]))
                raw.append((p, s1, s2))
        del lo, hi
        contacts: list[_Contact] = []
        for p, s1, s2 in raw:
            for c in contacts:
                if np.linalg.norm(c.point - p) <= 2 * CONTACT_TOL:
                    break
            else:
                c = _Contact(p)
                contacts.append(c)
            for s in (s1, s2):
                if all(self._path_gap(s, q) > 4 * CONTACT_TOL for q in c.positions):
                    c.positions.append(s)
        for c in contacts:
            c.positions.sort()
        return contacts

    def subpath(self, s0: float, s1: float) -> tuple[np.ndarray, bool]:
        """Vertices from arc-length s0 to s1 (wrapping on closed curves) and
        whether every edge covered is straight."""
        V, cum, flags = self.poly.vertices, self.cumulative, self.poly.straight
        P = self.perimeter
        if s1 < s0:
            if not self.closed:
                s0, s1 = s1, s0
            else:
                s1 += P

        def point_at(s):
            s = s % P if self.closed and s > P else s
            k = int(np.clip(np.searchsorted(cum, s, side="right") - 1, 0, len(flags) - 1))
            L = cum[k + 1] - cum[k]
            t = 0.0 if L <= 0 else (s - cum[k]) / L
            return V[k] + t * (V[k + 1] - V[k]), k

        pts = []
        all_straight = True
        p, k = point_at(s0)
        pts.append(p)
        s = s0
        while True:
            kk = k
            edge_end = cum[kk + 1] + (P if s >= P and self.closed else 0.0)
            if s >= P and self.closed:
                edge_end = cum[kk + 1] + P * math.floor(s / P)
            all_straight &= bool(flags[kk])
            if edge_end >= s1 - 1e-12:
                pts.append(point_at(s1)[0])
                break
            pts.append(V[kk + 1])
            s = edge_end
            k = (kk + 1) % len(flags)
        return np.array(pts), all_straight

    def lobes(self, contact: _Contact):
        """The loops between consecutive passes through a contact point."""
        pos = contact.positions
        out = []
        if self.closed:
            for a, b in zip(pos, pos[1:] + [pos[0]]):
                out.append((a, b))
        else:
            for a, b in zip(pos, pos[1:]):
                out.append((a, b))
        return out

    def _lobe_length(self, a, b):
        return (b - a) % self.perimeter if self.closed else b - a

    def _in_lobe(self, s, a, b):
        if not self.closed:
            return a < s < b
        return 0 < (s - a) % self.perimeter < self._lobe_length(a, b)

    @cached_property
    def two_parts(self) -> tuple[float, float] | None:
        """Areas of the two loops if one pinch point separates the curve in two."""
        if not self.closed:
            return None
        for c in self.contacts:
            if len(c.positions) != 2:
                continue
            (a, b), (b2, a2) = self.lobes(c)
            if min(self._lobe_length(a, b), self._lobe_length(b2, a2)) <= 4 * PINCH_RADIUS:
                continue
            linked = False
            for other in self.contacts:
                if other is c or np.linalg.norm(other.point - c.point) <= PINCH_RADIUS:
                    continue
                # tangent contacts smear one pinch over nearby positions
                if all(min(self._path_gap(s, q) for q in c.positions) <= PINCH_WINDOW for s in other.positions):
                    continue
                inside = [self._in_lobe(s, a, b) for s in other.positions]
                if any(inside) and not all(inside):
                    linked = True
                    break
            if linked:
                continue
            areas = []
            for lo, hi in ((a, b), (b2, a2)):
                pts, _ = self.subpath(lo, hi)
                areas.append(abs(_polygon_area(pts)))
            return areas[0], areas[1]
        return None

    def loops(self):
        """Closed sub-paths: the whole component when closed, and every loop
        between two passes through a contact point."""
        if self.closed:
            yield self.ring.copy(), bool(np.all(self.poly.straight))
        for c in self.contacts:
            for a, b in self.lobes(c):
                pts, straight = self.subpath(a, b)
                yield pts, straight


def _segment_hits(a, r, L, c, d):
    s = d - c
    den = _cross(r, s)
    Ls = float(np.hypot(*s))
    if Ls <= 0 or abs(den) <= 1e-12 * L * Ls:
        return []
    w = c - a
    t = _cross(w, s) / den
    u = _cross(w, r) / den
    # the other run may stop within CONTACT_TOL of this one (a T-touch)
    if -CONTACT_TOL / Ls <= u <= 1 + CONTACT_TOL / Ls and CONTACT_TOL / L < t < 1 - CONTACT_TOL / L:
        return [t]
    return []


def _arc_hits(a, r, L, arc: CircularArc):
    c = np.asarray(arc.center)
    w = a - c
    A = r @ r
    B = 2 * (w @ r)
    C = w @ w - arc.radius**2
    disc = B * B - 4 * A * C
    if disc <= 1e-12 * A * arc.radius**2:
        return []
    sq = math.sqrt(disc)
    out = []
    for t in ((-B - sq) / (2 * A), (-B + sq) / (2 * A)):
        if not CONTACT_TOL / L < t < 1 - CONTACT_TOL / L:
            continue
        q = a + t * r - c
        off = (math.atan2(q[1], q[0]) - arc.start_angle) * math.copysign(1.0, arc.sweep)
        off = off % (2 * math.pi)
        slack = CONTACT_TOL / arc.radius
        if off <= abs(arc.sweep) + slack or off >= 2 * math.pi - slack:
            out.append(t)
    return out


# ---------------------------------------------------------------------------
# predicates


def _analyses(bp: BasePath) -> list[ComponentAnalysis]:
    cache = bp.__dict__.get("_analyses")
    if cache is None:
        cache = [ComponentAnalysis(c) for c in bp.components]
        object.__setattr__(bp, "_analyses", cache)
    return cache


def _single(bp: BasePath) -> ComponentAnalysis | None:
    an = _analyses(bp)
    return an[0] if len(an) == 1 and not an[0].empty else None


def _convex(an: ComponentAnalysis) -> bool:
    if not an.closed or an.area <= 1e-9:
        return False
    turns = an.vertex_turns
    if np.any(np.abs(turns) > 179.0):
        return False
    big = turns[np.abs(turns) >= COLLINEAR_DEG]
    if big.size and not (np.all(big > 0) or np.all(big < 0)):
        return False
    if abs(float(turns.sum())) >= 540.0:
        return False
    # flattening can hide a small reflex turn where a line meets an arc, so
    # the exact tangent turns and arc directions must agree as well
    sign = math.copysign(1.0, float(turns.sum()))
    exact = [t for t in an.signed_junction_turns if abs(t) >= COLLINEAR_DEG]
    exact += [math.degrees(a.sweep) for a in an.arcs if abs(math.degrees(a.sweep)) >= COLLINEAR_DEG]
    return all(t * sign > 0 for t in exact)


def is_convex(bp: BasePath) -> bool:
    an = _single(bp)
    return an is not None and _convex(an)


def _axis_table(n_axes: int) -> np.ndarray:
    ang = np.arange(n_axes) * (math.pi / n_axes)
    return np.column_stack([np.cos(2 * ang), np.sin(2 * ang)])


_AXES = {}


def _symmetric(an: ComponentAnalysis, tol: float, n_axes: int) -> bool:
    if an.diameter <= 0:
        return False
    if n_axes not in _AXES:
        _AXES[n_axes] = _axis_table(n_axes)
    return kernels.reflection_scan(an.samples, an.edges, an.centroid, _AXES[n_axes], tol * an.diameter) >= 0


def is_symmetric(bp: BasePath, tol: float = SYMMETRY_TOL, n_axes: int = N_AXES) -> bool:
    """Some mirror axis through the centroid maps the curve onto itself within
    ``tol * diameter`` (Hausdorff)."""
    an = _single(bp)
    return an is not None and _symmetric(an, tol, n_axes)


def _self_transposed(an: ComponentAnalysis, tol: float) -> bool:
    if an.diameter <= 0:
        return False
    mirrored = 2.0 * an.centroid - an.samples
    return kernels.points_near_segments(mirrored, an.edges, tol * an.diameter)


def is_self_transposed(bp: BasePath, tol: float = SYMMETRY_TOL) -> bool:
    """Point reflection through the centroid maps the curve onto itself."""
    an = _single(bp)
    return an is not None and _self_transposed(an, tol)


def count_straight_lines(bp: BasePath, semantics: str = "continuous") -> int:
    """``continuous`` counts maximal straight runs; ``split`` also cuts every
    run wherever another stroke (of any shape) crosses or touches its
    interior.  Hits within the contact tolerance of a run's ends are
    junctions, not splits."""
    if semantics not in ("continuous", "split"):
        raise ValueError(f"unknown semantics {semantics!r}")
    an = [a for a in _analyses(bp) if not a.empty]
    if semantics == "continuous":
        return sum(len(a.runs) for a in an)
    total = 0
    for a in an:
        runs, arcs = [], []
        for b in an:
            if b is not a:
                r, c = a.foreign(b)
                runs.append(r)
                arcs.extend(c)
        total += a.split_count(np.vstack(runs) if runs else None, arcs)
    return total


def _waist(an: ComponentAnalysis) -> float | None:
    """Shortest interior chord cutting off at least 20% of the area on each side."""
    ring = an.ring
    if an.area <= 1e-9:
        return None
    pts = _resample(np.vstack([ring, ring[:1]]), an.perimeter / 150.0)[:-1]
    n = len(pts)
    x, y = pts[:, 0], pts[:, 1]
    cross = x * np.roll(y, -1) - np.roll(x, -1) * y
    prefix = np.concatenate([[0.0], np.cumsum(cross)])
    total = prefix[-1]
    i, j = np.triu_indices(n, k=2)
    keep = ~((i == 0) & (j == n - 1))
    i, j = i[keep], j[keep]
    part = 0.5 * (prefix[j] - prefix[i] + (x[j] * y[i] - x[i] * y[j]))
    part = part * math.copysign(1.0, total)
    A = abs(total) / 2
    ok = (part >= 0.2 * A) & (A - part >= 0.2 * A)
    i, j = i[ok], j[ok]
    if not i.size:
        return None
    length = np.hypot(x[j] - x[i], y[j] - y[i])
    order = np.argsort(length, kind="stable")
    poly = Polygon(ring)
    shapely.prepare(poly)
    for start in range(0, order.size, 64):
        idx = order[start:start + 64]
        lines = shapely.linestrings(np.stack([pts[i[idx]], pts[j[idx]]], axis=1))
        inside = shapely.covers(poly, lines)
        if inside.any():
            return float(length[idx[np.argmax(inside)]])
    return None


def _necked(an: ComponentAnalysis) -> bool:
    if not an.is_simple:
        return False
    waist = _waist(an)
    return waist is not None and waist <= 0.25 * (2.0 * an.inscribed_radius)


def _thin(an: ComponentAnalysis) -> bool:
    region = an.region
    if region is None:
        return False
    hull = region.convex_hull.area
    if hull > 0 and region.area / hull <= 0.25:
        return True
    return an.inscribed_radius <= 0.08 * an.diameter


def _quadrangle(an: ComponentAnalysis) -> bool:
    for pts, straight in an.loops():
        if not straight or len(pts) < 4:
            continue
        ring = pts[:-1] if np.linalg.norm(pts[-1] - pts[0]) <= 1e-12 else pts
        if abs(_polygon_area(ring)) <= 1e-3 or not LinearRing(ring).is_simple:
            continue
        d = np.roll(ring, -1, axis=0) - ring
        d = d[np.hypot(d[:, 0], d[:, 1]) > 1e-9]
        turns = [_turn_deg(a, b) for a, b in zip(d, np.roll(d, -1, axis=0))]
        if sum(abs(t) >= COLLINEAR_DEG for t in turns) == 4:
            return True
    return False


def _sector(an: ComponentAnalysis) -> bool:
    if not an.closed:
        return False
    items = []  # ("line", start, end) or ("arc", arc)
    for p in an.comp.primitives:
        if isinstance(p, Segment):
            items.append(["line", np.asarray(p.p0), np.asarray(p.p1)])
        else:
            items.append(["arc", p])

    def mergeable(x, y):
        if x[0] == "line" and y[0] == "line":
            return abs(_turn_deg(x[2] - x[1], y[2] - y[1])) < COLLINEAR_DEG
        if x[0] == "arc" and y[0] == "arc":
            a, b = x[1], y[1]
            return (
                np.hypot(a.center[0] - b.center[0], a.center[1] - b.center[1]) <= 1e-3
                and abs(a.radius - b.radius) <= 1e-3
                and a.sweep * b.sweep > 0
            )
        return False

    def merge(x, y):
        if x[0] == "line":
            return ["line", x[1], y[2]]
        a, b = x[1], y[1]
        return ["arc", CircularArc(a.center, a.radius, a.start_angle, a.sweep + b.sweep)]

    merged = []
    for it in items:
        if merged and mergeable(merged[-1], it):
            merged[-1] = merge(merged[-1], it)
        else:
            merged.append(it)
    if len(merged) > 1 and mergeable(merged[-1], merged[0]):
        merged[0] = merge(merged.pop(), merged[0])
    kinds = [m[0] for m in merged]
    if len(merged) != 3 or kinds.count("arc") != 1:
        return False
    k = kinds.index("arc")
    arc = merged[k][1]
    first, second = merged[(k + 1) % 3], merged[(k + 2) % 3]
    apex = 0.5 * (first[2] + second[1])
    if np.linalg.norm(first[2] - second[1]) > CLOSE_TOL:
        return False
    if np.linalg.norm(apex - np.asarray(arc.center)) > 2 * CLOSE_TOL:
        return False
    return all(abs(np.linalg.norm(m[2] - m[1]) - arc.radius) <= 2 * CLOSE_TOL for m in (first, second))


def _two_parts(an: ComponentAnalysis) -> bool:
    return an.two_parts is not None


def _balanced(an: ComponentAnalysis) -> bool:
    parts = an.two_parts
    if parts is None:
        return False
    big = max(parts)
    return big > 0 and abs(parts[0] - parts[1]) / big <= 0.25


def _acute(an: ComponentAnalysis) -> bool:
    return any(180.0 - t < ACUTE_DEG for t in an.junction_turns)


def _single_pred(fn):
    def pred(bp: BasePath) -> bool:
        an = _single(bp)
        return an is not None and fn(an)

    return pred


def _any_pred(fn):
    def pred(bp: BasePath) -> bool:
        return any(fn(a) for a in _analyses(bp) if not a.empty)

    return pred


def _closed_shape(bp: BasePath) -> bool:
    an = _analyses(bp)
    return bool(an) and all(a.closed for a in an)


def _have_curve(bp: BasePath) -> bool:
    return any(isinstance(p, CircularArc) and p.length > 0 for p in bp.primitives)


_PREDICATES = {
    "convex": is_convex,
    "symmetric": is_symmetric,
    "self_transposed": is_self_transposed,
    "necked": _single_pred(_necked),
    "have_two_parts": _single_pred(_two_parts),
    "have_acute_angle": _any_pred(_acute),
    "have_curve": _have_curve,
    "closed_shape": _closed_shape,
    "balanced_two": _single_pred(_balanced),
    "thin_shape": _single_pred(_thin),
    "exist_quadrangle": _any_pred(_quadrangle),
    "exist_sector": _any_pred(_sector),
}
for _n in NUMBER_WORDS:
    _PREDICATES[line_attribute(_n)] = lambda bp, n=_n: count_straight_lines(bp, "continuous") == n
    _PREDICATES[line_attribute(_n, True)] = lambda bp, n=_n: count_straight_lines(bp, "split") == n


def evaluate_attribute(attribute: str, bp: BasePath) -> bool:
    try:
        pred = _PREDICATES[attribute]
    except KeyError:
        raise UnknownAttribute(f"unknown attribute {attribute!r}") from None
    return bool(pred(bp))


def check_attribute(attribute: str) -> str:
    if attribute not in _PREDICATES:
        raise UnknownAttribute(f"unknown attribute {attribute!r}")
    return attribute


@dataclass(frozen=True)
class AttributeVector:
    values: dict
    lines_continuous: int
    lines_split: int

    def __getitem__(self, attribute: str) -> bool:
        return self.values[attribute]

    def true_set(self) -> frozenset:
        return frozenset(k for k, v in self.values.items() if v)


def attribute_vector(bp: BasePath) -> AttributeVector:
    cont = count_straight_lines(bp, "continuous")
    split = count_straight_lines(bp, "split")
    values = {}
    for name in ATTRIBUTES:
        if name in LINE_ATTRIBUTES:
            values[name] = cont == int(LINE_ATTRIBUTES.index(name) + 2)
        elif name in SPLIT_LINE_ATTRIBUTES:
            values[name] = split == int(SPLIT_LINE_ATTRIBUTES.index(name) + 2)
        else:
            values[name] = evaluate_attribute(name, bp)
    return AttributeVector(values, cont, split)


def concept_holds(attributes, bp: BasePath) -> bool:
    """Conjunction of attribute predicates."""
    return all(evaluate_attribute(a, bp) for a in attributes)


# ---------------------------------------------------------------------------
# alignment


def centered_samples(comp: Component, pitch_frac: float = 0.01) -> tuple[np.ndarray, float]:
    """Canonical-frame samples with their mean at the origin, and the diameter."""
    canon = canonical_component(comp)
    if not canon.primitives:
        return np.zeros((1, 2)), 0.0
    diam = _flatten(canon, FLATTEN_TOL)
    V = diam.vertices
    d = math.sqrt(float(np.max(np.sum((V[:, None, :] - V[None, :, :]) ** 2, axis=2)))) if len(V) > 1 else 0.0
    pts = sample_component(canon, max(d, 1e-9) * pitch_frac)
    return pts - pts.mean(axis=0), d


_ROTATIONS = {}


def aligned_hausdorff(a: Component, b: Component, n_rot: int = 180, stop_below: float | None = None,
                      pitch_frac: float = 0.01) -> float:
    """Hausdorff distance between two components after aligning position and
    scale (canonical frame, centered) and rotation (best of ``n_rot`` equal
    steps).  Returns early once a rotation gets below ``stop_below``."""
    pa, _ = centered_samples(a, pitch_frac)
    pb, _ = centered_samples(b, pitch_frac)
    if n_rot not in _ROTATIONS:
        ang = np.arange(n_rot) * (2 * math.pi / n_rot)
        _ROTATIONS[n_rot] = np.column_stack([np.cos(ang), np.sin(ang)])
    best = math.inf
    for c, s in _ROTATIONS[n_rot]:
        rb = np.column_stack([c * pb[:, 0] - s * pb[:, 1], s * pb[:, 0] + c * pb[:, 1]])
        h = kernels.hausdorff(pa, rb)
        if h < best:
            best = h
            if stop_below is not None and best <= stop_below:
                break
    return best


def component_diameter(comp: Component) -> float:
    """Diameter in unit lengths."""
    return centered_samples(comp)[1]
