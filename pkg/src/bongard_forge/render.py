"""Stroke decoration by moving type and anti-aliased rasterization."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np
from PIL import Image

from . import kernels
from .config import RenderConfig
from .dsl import ActionProgram, MovingType
from .turtle import BasePath, CircularArc, Pose, Primitive, execute_program

_GLYPH_SIDES = {MovingType.TRIANGLE: 3, MovingType.SQUARE: 4, MovingType.CIRCLE: 16}


@dataclass
class DecoratedPolyline:
    """Polylines to ink, each tagged with (component, primitive, moving type)."""

    strokes: list[np.ndarray] = field(default_factory=list)
    provenance: list[tuple[int, int, MovingType]] = field(default_factory=list)

    def segments(self) -> np.ndarray:
        segs = []
        for s in self.strokes:
            if len(s) == 1:
                segs.append(np.hstack([s, s]))
            elif len(s) > 1:
                segs.append(np.hstack([s[:-1], s[1:]]))
        return np.concatenate(segs) if segs else np.empty((0, 4))


def _arc_step(radius: float, sagitta: float) -> float:
    if sagitta >= radius:
        return math.pi / 2
    return min(math.pi / 2, 2.0 * math.acos(1.0 - sagitta / radius))


def _normals(prim: Primitive, s: np.ndarray) -> np.ndarray:
    t = prim.tangents(s)
    return np.column_stack([-t[:, 1], t[:, 0]])


def _zigzag(prim: Primitive, amplitude: float, pitch: float) -> np.ndarray:
    L = prim.length
    m = max(2, int(math.ceil(L / (pitch / 2))))
    s = np.arange(m + 1) * (L / m)
    offset = np.where(np.arange(m + 1) % 2 == 1, amplitude, -amplitude)
    offset[0] = offset[-1] = 0.0
    return prim.points(s) + offset[:, None] * _normals(prim, s)


def glyph_centers(prim: Primitive, pitch: float) -> np.ndarray:
    L = prim.length
    n = max(1, int(math.ceil(L / pitch)))
    return prim.points((np.arange(n) + 0.5) * (L / n))


def _glyphs(prim: Primitive, sides: int, radius: float, pitch: float) -> list[np.ndarray]:
    L = prim.length
    n = max(1, int(math.ceil(L / pitch)))
    s = (np.arange(n) + 0.5) * (L / n)
    centers = prim.points(s)
    tangents = prim.tangents(s)
    base = np.arctan2(tangents[:, 1], tangents[:, 0])
    if sides == 4:
        base = base + math.pi / 4
    k = np.arange(sides + 1) * (2 * math.pi / sides)
    out = []
    for c, b in zip(centers, base):
        ang = b + k
        out.append(np.column_stack([c[0] + radius * np.cos(ang), c[1] + radius * np.sin(ang)]))
    return out


def decorate_path(
    bp: BasePath, actions: ActionProgram, cfg: RenderConfig | None = None, sagitta_px: float = 0.25
) -> DecoratedPolyline:
    """Expand each primitive according to its action's moving type.

    ``normal`` keeps the geometry (arcs densified), ``zigzag`` alternates
    transverse offsets of ``zigzag_amplitude`` units every half glyph pitch,
    and triangle/circle/square draw ``ceil(L / pitch)`` glyphs of circumradius
    ``zigzag_amplitude`` centered on the primitive.
    """
    cfg = cfg or RenderConfig()
    out = DecoratedPolyline()
    for ci, (comp, shape) in enumerate(zip(bp.components, actions.shapes)):
        if len(comp.primitives) != len(shape):
            raise ValueError("base path does not match the program")
        unit = comp.unit_length
        amp = cfg.zigzag_amplitude * unit
        pitch = cfg.glyph_pitch * unit
        for pi, (prim, action) in enumerate(zip(comp.primitives, shape)):
            mt = action.moving_type
            if mt is MovingType.NORMAL or prim.length <= 0:
                if isinstance(prim, CircularArc):
                    n = max(2, int(math.ceil(abs(prim.sweep) / _arc_step(prim.radius, sagitta_px))))
                    pts = prim.points(np.linspace(0.0, prim.length, n + 1))
                else:
                    pts = np.array([prim.p0, prim.p1], dtype=float)
                strokes = [pts]
            elif mt is MovingType.ZIGZAG:
                strokes = [_zigzag(prim, amp, pitch)]
            else:
                strokes = _glyphs(prim, _GLYPH_SIDES[mt], amp, pitch)
            for s in strokes:
                out.strokes.append(s)
                out.provenance.append((ci, pi, mt))
    return out


def rasterize(dp: DecoratedPolyline, canvas: tuple[int, int] = (512, 512), stroke_width: float = 3.0,
              supersample: int = 4) -> np.ndarray:
    """White background, black anti-aliased strokes, uint8 array of shape (H, W).

    Coverage is the fraction of ``supersample**2`` sub-pixel centers within
    half the stroke width of any segment, rounded with integer arithmetic.
    """
    segs = dp.segments()
    if segs.size and not np.all(np.isfinite(segs)):
        raise ValueError("non-finite coordinates")
    width, height = canvas
    return kernels.raster_capsules(segs, int(width), int(height), int(supersample), stroke_width / 2.0)


def render_program(p: ActionProgram, poses: Pose | Sequence[Pose], cfg: RenderConfig | None = None) -> np.ndarray:
    cfg = cfg or RenderConfig()
    bp = execute_program(p, poses)
    return rasterize(decorate_path(bp, p, cfg), cfg.canvas, cfg.stroke_width, cfg.supersample)


def png_bytes(img: np.ndarray, compress_level: int = 6) -> bytes:
    buf = io.BytesIO()
    Image.fromarray(np.ascontiguousarray(img, dtype=np.uint8), mode="L").save(
        buf, format="PNG", compress_level=compress_level
    )
    return buf.getvalue()


def save_png(img: np.ndarray, path: str | Path, compress_level: int = 6) -> None:
    Path(path).write_bytes(png_bytes(img, compress_level))


def load_png(path: str | Path) -> np.ndarray:
    with Image.open(path) as im:
        return np.asarray(im.convert("L"), dtype=np.uint8)
