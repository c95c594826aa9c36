"""Turtle execution of action programs into base geometry.

Angle arguments map to signed degrees as ``(angle - 0.5) * 360``.  A ``line``
turns by that amount and then advances ``length * unit_length``; an ``arc``
sweeps that amount along a circle whose arc length is ``length * unit_length``.
Positive angles turn counter-clockwise in canvas coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .dsl import ActionProgram, BaseAction, Kind, Stroke, degrees
from .errors import CannotFit, DegenerateArc


@dataclass(frozen=True)
class Pose:
    origin: tuple[float, float] = (0.0, 0.0)
    heading: float = 0.0  # degrees
    unit_length: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "origin", (float(self.origin[0]), float(self.origin[1])))
        object.__setattr__(self, "heading", float(self.heading) % 360.0)
        if not self.unit_length > 0:
            raise ValueError(f"unit_length must be positive, got {self.unit_length}")
        object.__setattr__(self, "unit_length", float(self.unit_length))

    def to_dict(self) -> dict:
        return {"origin": list(self.origin), "heading": self.heading, "unit_length": self.unit_length}

    @classmethod
    def from_dict(cls, d: dict) -> "Pose":
        return cls(tuple(d["origin"]), d["heading"], d["unit_length"])


UNIT_POSE = Pose()


@dataclass(frozen=True)
class Segment:
    p0: tuple[float, float]
    p1: tuple[float, float]

    @property
    def length(self) -> float:
        return math.hypot(self.p1[0] - self.p0[0], self.p1[1] - self.p0[1])

    @property
    def start(self):
        return self.p0

    @property
    def end(self):
        return self.p1

    def points(self, s: np.ndarray) -> np.ndarray:
        """Points at arc-length positions ``s``."""
        L = self.length
        t = np.asarray(s, dtype=float) / L if L > 0 else np.zeros_like(np.asarray(s, dtype=float))
        p0 = np.asarray(self.p0)
        return p0 + t[:, None] * (np.asarray(self.p1) - p0)

    def tangents(self, s: np.ndarray) -> np.ndarray:
        L = self.length
        d = (np.asarray(self.p1) - np.asarray(self.p0)) / (L if L > 0 else 1.0)
        return np.tile(d, (len(np.atleast_1d(s)), 1))


@dataclass(frozen=True)
class CircularArc:
    center: tuple[float, float]
    radius: float
    start_angle: float  # radians, direction from center to the start point
    sweep: float  # radians, signed; positive is counter-clockwise

    @property
    def length(self) -> float:
        return self.radius * abs(self.sweep)

    def _at(self, phi):
        return (
            self.center[0] + self.radius * math.cos(phi),
            self.center[1] + self.radius * math.sin(phi),
        )

    @property
    def start(self):
        return self._at(self.start_angle)

    @property
    def end(self):
        return self._at(self.start_angle + self.sweep)

    def points(self, s: np.ndarray) -> np.ndarray:
        phi = self.start_angle + np.sign(self.sweep) * np.asarray(s, dtype=float) / self.radius
        return np.column_stack(
            [self.center[0] + self.radius * np.cos(phi), self.center[1] + self.radius * np.sin(phi)]
        )

    def tangents(self, s: np.ndarray) -> np.ndarray:
        sg = math.copysign(1.0, self.sweep)
        phi = self.start_angle + sg * np.asarray(s, dtype=float) / self.radius
        return np.column_stack([-sg * np.sin(phi), sg * np.cos(phi)])


Primitive = Union[Segment, CircularArc]


@dataclass(frozen=True)
class Component:
    """One connected pen-down trajectory (one shape of the program)."""

    primitives: tuple[Primitive, ...]
    unit_length: float
    pen_down: tuple[bool, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "primitives", tuple(self.primitives))
        if not self.pen_down:
            object.__setattr__(self, "pen_down", (True,) * max(0, len(self.primitives) - 1))

    @property
    def start(self):
        return self.primitives[0].start

    @property
    def end(self):
        return self.primitives[-1].end

    @property
    def length(self) -> float:
        return sum(p.length for p in self.primitives)


@dataclass(frozen=True)
class BasePath:
    components: tuple[Component, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def primitives(self):
        return [p for c in self.components for p in c.primitives]

    @property
    def unit_length(self) -> float:
        return self.components[0].unit_length if self.components else 1.0


def execute_shape(actions: Sequence[BaseAction | Stroke], pose: Pose) -> Component:
    x, y = pose.origin
    heading = pose.heading
    unit = pose.unit_length
    prims: list[Primitive] = []
    for a in actions:
        L = a.length * unit
        phi = degrees(a.angle)
        if a.kind is Kind.LINE:
            heading = (heading + phi) % 360.0
            h = math.radians(heading)
            nx, ny = x + L * math.cos(h), y + L * math.sin(h)
            prims.append(Segment((x, y), (nx, ny)))
            x, y = nx, ny
        else:
            if a.is_degenerate_arc:
                raise DegenerateArc(f"arc with angle {a.angle} and length {a.length} has no curvature")
            sweep = math.radians(phi)
            radius = L / abs(sweep)
            h = math.radians(heading)
            sg = math.copysign(1.0, sweep)
            center = (x - sg * radius * math.sin(h), y + sg * radius * math.cos(h))
            start_angle = h - sg * math.pi / 2
            arc = CircularArc(center, radius, start_angle, sweep)
            prims.append(arc)
            x, y = arc.end
            heading = (heading + phi) % 360.0
    return Component(tuple(prims), unit)


def execute_program(p: ActionProgram, pose: Pose | Sequence[Pose]) -> BasePath:
    """Execute every shape of ``p``; each shape starts from its own pose."""
    poses = [pose] if isinstance(pose, Pose) else list(pose)
    if len(poses) != len(p.shapes):
        raise ValueError(f"{len(p.shapes)} shape(s) need {len(p.shapes)} pose(s), got {len(poses)}")
    return BasePath(tuple(execute_shape(s, ps) for s, ps in zip(p.shapes, poses)))


# ---------------------------------------------------------------------------
# sampling helpers shared by several modules


def sample_primitive(prim: Primitive, pitch: float, midpoints: bool = False) -> np.ndarray:
    L = prim.length
    if L <= 0:
        return np.array([prim.start], dtype=float)
    n = max(1, int(math.ceil(L / pitch)))
    if midpoints:
        s = (np.arange(n) + 0.5) * (L / n)
    else:
        s = np.arange(n + 1) * (L / n)
    return prim.points(s)


def sample_component(comp: Component, pitch: float) -> np.ndarray:
    """Arc-length samples along a component including every primitive endpoint."""
    parts = [sample_primitive(p, pitch)[:-1] if p.length > 0 else np.empty((0, 2)) for p in comp.primitives]
    parts.append(np.array([comp.end], dtype=float))
    return np.concatenate(parts)


def path_points(bp: BasePath, pitch_units: float = 0.01) -> np.ndarray:
    return np.concatenate([sample_component(c, pitch_units * c.unit_length) for c in bp.components])


# ---------------------------------------------------------------------------
# overlap


def _dist_to_primitive(pts: np.ndarray, prim: Primitive) -> np.ndarray:
    if isinstance(prim, Segment):
        a = np.asarray(prim.p0)
        d = np.asarray(prim.p1) - a
        l2 = float(d @ d)
        t = np.zeros(len(pts)) if l2 == 0 else np.clip(((pts - a) @ d) / l2, 0.0, 1.0)
        return np.linalg.norm(a + t[:, None] * d - pts, axis=1)
    c = np.asarray(prim.center)
    rel = pts - c
    ang = np.arctan2(rel[:, 1], rel[:, 0])
    # offset along the sweep direction, in [0, 2pi)
    off = np.mod((ang - prim.start_angle) * math.copysign(1.0, prim.sweep), 2 * math.pi)
    on_arc = off <= abs(prim.sweep)
    radial = np.abs(np.linalg.norm(rel, axis=1) - prim.radius)
    ends = np.minimum(
        np.linalg.norm(pts - np.asarray(prim.start), axis=1), np.linalg.norm(pts - np.asarray(prim.end), axis=1)
    )
    return np.where(on_arc, np.minimum(radial, ends), ends)


_SHARP = math.sin(math.radians(15.0))


def overlap_score(bp: BasePath) -> float:
    """Fraction of path samples lying on top of another stroke.

    Samples are taken every ``unit/50`` of arc length; a sample overlaps when it
    is within ``unit/20`` of another primitive.  Near a point where the two
    primitives meet, the sample must additionally be closer to the other
    primitive than ``sin(15 deg)`` times its distance to the meeting point, so
    ordinary corners do not count but retraced or hairpin strokes do.
    """
    prims, owners, units = [], [], []
    for ci, comp in enumerate(bp.components):
        for p in comp.primitives:
            prims.append(p)
            owners.append(ci)
            units.append(comp.unit_length)
    if len(prims) < 2:
        return 0.0
    samples, src = [], []
    for i, (p, u) in enumerate(zip(prims, units)):
        if p.length <= 0:
            continue
        pts = sample_primitive(p, u / 50.0, midpoints=True)
        samples.append(pts)
        src.append(np.full(len(pts), i))
    if not samples:
        return 0.0
    pts = np.concatenate(samples)
    src = np.concatenate(src)
    radius = np.asarray(units)[src] / 20.0
    hit = np.zeros(len(pts), dtype=bool)
    ends = [(np.asarray(p.start), np.asarray(p.end)) for p in prims]
    for j, pj in enumerate(prims):
        d = _dist_to_primitive(pts, pj)
        cand = (d < radius) & (src != j)
        if not cand.any():
            continue
        # meeting points between primitive j and each sample's own primitive
        junction = np.full(len(pts), np.inf)
        for i in np.unique(src[cand]):
            eps = 1e-9 * units[i]
            meets = [e for e in ends[i] if min(np.linalg.norm(e - ends[j][0]), np.linalg.norm(e - ends[j][1])) <= eps]
            if meets:
                sel = src == i
                junction[sel] = np.min([np.linalg.norm(pts[sel] - m, axis=1) for m in meets], axis=0)
        hit |= cand & ((junction == np.inf) | (d <= junction * _SHARP))
    return float(hit.mean())


# ---------------------------------------------------------------------------
# pose sampling


def _rotate(points: np.ndarray, heading_deg: float) -> np.ndarray:
    h = math.radians(heading_deg)
    c, s = math.cos(h), math.sin(h)
    return np.column_stack([c * points[:, 0] - s * points[:, 1], s * points[:, 0] + c * points[:, 1]])


def sample_pose(
    unit_points: np.ndarray,
    canvas: tuple[int, int],
    rng: np.random.Generator,
    *,
    region: tuple[float, float, float, float] | None = None,
    scale_range: tuple[float, float] = (0.4, 0.8),
    margin_px: float = 8.0,
    pad_units: float = 0.05,
    pad_px: float = 2.5,
    tries: int = 100,
    shrink_rounds: int = 3,
) -> Pose:
    """Random heading, size and position keeping the whole shape on canvas.

    ``unit_points`` samples the shape executed at the unit pose (origin 0,
    heading 0, unit length 1) -- a bounding box's corners also work.  The
    shape's larger extent becomes a uniform fraction of ``scale_range`` of the
    region's smaller side.  ``pad_units`` (decoration amplitude, in units) and
    ``pad_px`` (half stroke width plus anti-aliasing) extend the margin.
    """
    pts = np.asarray(unit_points, dtype=float).reshape(-1, 2)
    x0, y0, x1, y1 = region if region is not None else (0.0, 0.0, float(canvas[0]), float(canvas[1]))
    lo, hi = scale_range
    for _ in range(shrink_rounds + 1):
        for _ in range(tries):
            heading = float(rng.uniform(0.0, 360.0))
            frac = float(rng.uniform(lo, hi))
            rot = _rotate(pts, heading)
            mn, mx = rot.min(axis=0), rot.max(axis=0)
            extent = float(max(mx - mn))
            if extent <= 0:
                extent = 1.0
            unit = frac * min(x1 - x0, y1 - y0) / extent
            margin = margin_px + pad_px + pad_units * unit
            ox_lo, ox_hi = x0 + margin - mn[0] * unit, x1 - margin - mx[0] * unit
            oy_lo, oy_hi = y0 + margin - mn[1] * unit, y1 - margin - mx[1] * unit
            if ox_lo <= ox_hi and oy_lo <= oy_hi:
                ox = float(rng.uniform(ox_lo, ox_hi))
                oy = float(rng.uniform(oy_lo, oy_hi))
                return Pose((ox, oy), heading, unit)
        lo, hi = lo * 0.8, hi * 0.8
    raise CannotFit("shape does not fit on the canvas even after shrinking")


def split_regions(canvas: tuple[int, int], rng: np.random.Generator, gap: float = 8.0):
    """Two disjoint regions for two-shape images, split along a random axis."""
    w, h = float(canvas[0]), float(canvas[1])
    if rng.integers(2):
        mid = w / 2
        return [(0.0, 0.0, mid - gap / 2, h), (mid + gap / 2, 0.0, w, h)]
    mid = h / 2
    return [(0.0, 0.0, w, mid - gap / 2), (0.0, mid + gap / 2, w, h)]


def unit_points(shape: Sequence[BaseAction | Stroke]) -> np.ndarray:
    return sample_component(execute_shape(shape, UNIT_POSE), 0.01)
