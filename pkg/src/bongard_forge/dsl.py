"""The LOGO-style action language.

A shape is drawn by a turtle following base actions written as
``kind(moving_type,length,angle)``, e.g. ``line(zigzag,0.500,0.750)``.  Both
numeric arguments are normalized to [0, 1].  An :class:`ActionProgram` holds
one action sequence per shape (one or two shapes per image).
"""

from __future__ import annotations

import enum
import json
import math
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ExhaustedAlternatives,
    MalformedSyntax,
    UnknownKind,
    UnknownMovingType,
    ValueOutOfRange,
)

#: Returned by :func:`program_edit_distance` for structurally different programs.
INCOMPARABLE = sys.maxsize

FREEFORM_STROKES = (2, 9)
PLACEHOLDER = "_"


class Kind(str, enum.Enum):
    LINE = "line"
    ARC = "arc"


class MovingType(str, enum.Enum):
    NORMAL = "normal"
    ZIGZAG = "zigzag"
    TRIANGLE = "triangle"
    CIRCLE = "circle"
    SQUARE = "square"


def _q(x: float) -> int:
    """Quantize a normalized argument to thousandths."""
    return int(round(x * 1000))


def _check_unit(name: str, value: float) -> float:
    value = float(value)
    if not (0.0 <= value <= 1.0):  # also rejects NaN
        raise ValueOutOfRange(f"{name}={value!r} outside [0, 1]")
    return value


@dataclass(frozen=True)
class Stroke:
    """An action without a moving type (library shapes store these)."""

    kind: Kind
    length: float
    angle: float

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "length", _check_unit("length", self.length))
        object.__setattr__(self, "angle", _check_unit("angle", self.angle))

    def with_style(self, moving_type: MovingType | str) -> "BaseAction":
        return BaseAction(self.kind, MovingType(moving_type), self.length, self.angle)

    @property
    def is_degenerate_arc(self) -> bool:
        return self.kind is Kind.ARC and (_q(self.angle) == 500 or self.length == 0.0)


@dataclass(frozen=True)
class BaseAction:
    kind: Kind
    moving_type: MovingType
    length: float
    angle: float

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "moving_type", MovingType(self.moving_type))
        object.__setattr__(self, "length", _check_unit("length", self.length))
        object.__setattr__(self, "angle", _check_unit("angle", self.angle))

    @property
    def stroke(self) -> Stroke:
        return Stroke(self.kind, self.length, self.angle)

    @property
    def is_degenerate_arc(self) -> bool:
        return self.stroke.is_degenerate_arc

    def replace(self, **changes) -> "BaseAction":
        values = dict(kind=self.kind, moving_type=self.moving_type, length=self.length, angle=self.angle)
        values.update(changes)
        return BaseAction(**values)


@dataclass(frozen=True)
class ActionProgram:
    """One action sequence per shape.

    Construction does not enforce the one-or-two-shape rule; that is reported
    by :func:`validate_program` so that malformed inputs can be inspected.
    """

    shapes: tuple[tuple[BaseAction, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "shapes", tuple(tuple(s) for s in self.shapes))

    @classmethod
    def single(cls, actions: Iterable[BaseAction]) -> "ActionProgram":
        return cls((tuple(actions),))

    def __len__(self):
        return len(self.shapes)

    @property
    def stroke_counts(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.shapes)

    @property
    def max_length(self) -> int:
        return max(self.stroke_counts, default=0)

    def positions(self):
        """Yield ``(shape_index, action_index, action)`` for every action."""
        for si, shape in enumerate(self.shapes):
            for ai, action in enumerate(shape):
                yield si, ai, action

    def replace_action(self, shape_index: int, action_index: int, action: BaseAction) -> "ActionProgram":
        shapes = [list(s) for s in self.shapes]
        shapes[shape_index][action_index] = action
        return ActionProgram(tuple(tuple(s) for s in shapes))

    def to_dict(self) -> dict:
        return {"shapes": [[serialize_action(a) for a in shape] for shape in self.shapes]}

    @classmethod
    def from_dict(cls, data: dict) -> "ActionProgram":
        if not isinstance(data, dict) or not isinstance(data.get("shapes"), list):
            raise MalformedSyntax('program must be an object with a "shapes" list')
        shapes = []
        for shape in data["shapes"]:
            if not isinstance(shape, list):
                raise MalformedSyntax("each shape must be a list of action strings")
            shapes.append(tuple(parse_action(text) for text in shape))
        return cls(tuple(shapes))

    def __str__(self):
        return " | ".join(" ".join(serialize_action(a) for a in s) for s in self.shapes)


@dataclass(frozen=True)
class ValueGrid:
    """Discrete argument values for free-form sampling and perturbation."""

    lengths: tuple[float, ...] = (0.25, 0.5, 0.75, 1.0)
    angles: tuple[float, ...] = (0.0, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875)
    min_separation: float = 0.1

    def __post_init__(self):
        for name in ("lengths", "angles"):
            values = tuple(_check_unit(name, v) for v in getattr(self, name))
            if not values:
                raise ValueOutOfRange(f"grid {name} is empty")
            gaps = np.diff(values)
            if np.any(gaps <= 0):
                raise ValueOutOfRange(f"grid {name} must be strictly increasing: {values}")
            if gaps.size and gaps.min() < self.min_separation - 1e-12:
                raise ValueOutOfRange(
                    f"grid {name} has a gap of {gaps.min():.3f} < separation {self.min_separation}"
                )
            object.__setattr__(self, name, values)

    def has_length(self, v: float) -> bool:
        return any(_q(v) == _q(g) for g in self.lengths)

    def has_angle(self, v: float) -> bool:
        return any(_q(v) == _q(g) for g in self.angles)

    def to_dict(self) -> dict:
        return {"lengths": list(self.lengths), "angles": list(self.angles), "min_separation": self.min_separation}

    @classmethod
    def from_dict(cls, data: dict) -> "ValueGrid":
        return cls(tuple(data["lengths"]), tuple(data["angles"]), data.get("min_separation", 0.1))

    @classmethod
    def parse(cls, text: str) -> "ValueGrid":
        """Parse ``"0.25,0.5,0.75,1;0,0.125,0.25"`` (lengths ; angles)."""
        try:
            lengths, angles = text.split(";")
            return cls(
                tuple(float(v) for v in lengths.split(",") if v.strip()),
                tuple(float(v) for v in angles.split(",") if v.strip()),
            )
        except ValueError as exc:
            if isinstance(exc, ValueOutOfRange):
                raise
            raise MalformedSyntax(f"cannot parse grid {text!r}: expected 'lengths;angles'") from exc


DEFAULT_GRID = ValueGrid()

_NUM = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)"
_ACTION_RE = re.compile(
    rf"^\s*([A-Za-z_]\w*)\s*\(\s*([A-Za-z_]\w*)\s*,\s*({_NUM})\s*,\s*({_NUM})\s*\)\s*$"
)


def _parse_parts(text: str):
    if not isinstance(text, str):
        raise MalformedSyntax(f"action must be a string, got {type(text).__name__}")
    m = _ACTION_RE.match(text)
    if m is None:
        raise MalformedSyntax(f"cannot parse action {text!r}")
    kind_s, mt_s, length_s, angle_s = m.groups()
    try:
        kind = Kind(kind_s)
    except ValueError:
        raise UnknownKind(f"unknown action kind {kind_s!r} in {text!r}") from None
    return kind, mt_s, _check_unit("length", float(length_s)), _check_unit("angle", float(angle_s))


def parse_action(text: str) -> BaseAction:
    kind, mt_s, length, angle = _parse_parts(text)
    try:
        moving_type = MovingType(mt_s)
    except ValueError:
        raise UnknownMovingType(f"unknown moving type {mt_s!r} in {text!r}") from None
    return BaseAction(kind, moving_type, length, angle)


def parse_stroke(text: str) -> Stroke:
    """Parse a library stroke, whose moving-type slot is the placeholder ``_``."""
    kind, mt_s, length, angle = _parse_parts(text)
    if mt_s != PLACEHOLDER:
        raise MalformedSyntax(f"library stroke {text!r} must use '_' as moving type")
    return Stroke(kind, length, angle)


def serialize_action(a: BaseAction) -> str:
    return f"{a.kind.value}({a.moving_type.value},{a.length:.3f},{a.angle:.3f})"


def serialize_stroke(s: Stroke) -> str:
    return f"{s.kind.value}({PLACEHOLDER},{s.length:.3f},{s.angle:.3f})"


def quantize_action(a: BaseAction) -> BaseAction:
    return parse_action(serialize_action(a))


# ---------------------------------------------------------------------------
# validation


@dataclass
class Violation:
    code: str
    message: str
    shape: int | None = None
    action: int | None = None


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> list[str]:
        return [v.code for v in self.violations]

    def __bool__(self):
        return self.ok


def validate_program(
    p: ActionProgram,
    grid: ValueGrid | None = None,
    *,
    freeform: bool = False,
    stroke_range: tuple[int, int] = FREEFORM_STROKES,
) -> ValidationReport:
    report = ValidationReport()
    add = report.violations.append
    if not 1 <= len(p.shapes) <= 2:
        add(Violation("shape_count", f"{len(p.shapes)} shapes; expected 1 or 2"))
    lo, hi = stroke_range
    for si, shape in enumerate(p.shapes):
        if not shape:
            add(Violation("empty_shape", "shape has no actions", si))
        elif freeform and not lo <= len(shape) <= hi:
            add(Violation("stroke_count", f"{len(shape)} strokes; free-form range is [{lo}, {hi}]", si))
        for ai, a in enumerate(shape):
            for name in ("length", "angle"):
                v = getattr(a, name)
                if not 0.0 <= v <= 1.0:
                    add(Violation("value_range", f"{name}={v} outside [0, 1]", si, ai))
            if a.is_degenerate_arc:
                add(Violation("degenerate_arc", f"{serialize_action(a)} has zero sweep or length", si, ai))
            if grid is not None:
                if not grid.has_length(a.length):
                    add(Violation("grid_length", f"length {a.length} not in grid", si, ai))
                if not grid.has_angle(a.angle):
                    add(Violation("grid_angle", f"angle {a.angle} not in grid", si, ai))
    return report


# ---------------------------------------------------------------------------
# perturbation and edit distance

FIELDS = ("kind", "moving_type", "length", "angle")


def field_alternatives(a: BaseAction, grid: ValueGrid) -> dict[str, list]:
    """Values each field of ``a`` may be changed to; fields with none are omitted.

    Alternatives that would produce a degenerate arc are excluded.
    """
    out: dict[str, list] = {}
    kinds = [k for k in Kind if k is not a.kind and not a.replace(kind=k).is_degenerate_arc]
    if kinds:
        out["kind"] = kinds
    out["moving_type"] = [m for m in MovingType if m is not a.moving_type]
    lengths = [v for v in grid.lengths if _q(v) != _q(a.length) and not a.replace(length=v).is_degenerate_arc]
    if lengths:
        out["length"] = lengths
    angles = [v for v in grid.angles if _q(v) != _q(a.angle) and not a.replace(angle=v).is_degenerate_arc]
    if angles:
        out["angle"] = angles
    return out


def perturb_program(p: ActionProgram, grid: ValueGrid, rng: np.random.Generator) -> ActionProgram:
    """Change exactly one field of exactly one action.

    Selection rule: an action is drawn uniformly among all actions, then a field
    uniformly among that action's fields that have an alternative, then a new
    value uniformly among the alternatives.
    """
    if len(grid.lengths) < 2 or len(grid.angles) < 2:
        raise ExhaustedAlternatives("perturbation needs at least two grid values per argument")
    positions = list(p.positions())
    if not positions:
        raise ExhaustedAlternatives("program has no actions to perturb")
    si, ai, action = positions[int(rng.integers(len(positions)))]
    alternatives = field_alternatives(action, grid)
    names = [f for f in FIELDS if f in alternatives]
    name = names[int(rng.integers(len(names)))]
    choices = alternatives[name]
    value = choices[int(rng.integers(len(choices)))]
    return p.replace_action(si, ai, action.replace(**{name: value}))


def _field_key(a: BaseAction, name: str):
    v = getattr(a, name)
    return _q(v) if name in ("length", "angle") else v


def program_edit_distance(p: ActionProgram, q: ActionProgram) -> int:
    """Number of (action, field) positions where ``p`` and ``q`` differ."""
    if p.stroke_counts != q.stroke_counts:
        return INCOMPARABLE
    return sum(
        _field_key(a, f) != _field_key(b, f)
        for sp, sq in zip(p.shapes, q.shapes)
        for a, b in zip(sp, sq)
        for f in FIELDS
    )


def sample_action(rng: np.random.Generator, grid: ValueGrid) -> BaseAction:
    """Draw kind, moving type, length and angle independently (arcs never degenerate)."""
    while True:
        a = BaseAction(
            list(Kind)[int(rng.integers(2))],
            list(MovingType)[int(rng.integers(5))],
            grid.lengths[int(rng.integers(len(grid.lengths)))],
            grid.angles[int(rng.integers(len(grid.angles)))],
        )
        if not a.is_degenerate_arc:
            return a


# ---------------------------------------------------------------------------
# program files


def load_program(path: str | Path) -> ActionProgram:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MalformedSyntax(f"{path}: invalid JSON ({exc})") from exc
    return ActionProgram.from_dict(data)


def save_program(p: ActionProgram, path: str | Path) -> None:
    Path(path).write_text(json.dumps(p.to_dict(), indent=1) + "\n")


def same_program(p: ActionProgram, q: ActionProgram) -> bool:
    return program_edit_distance(p, q) == 0


def styles_of(p: ActionProgram) -> set[MovingType]:
    return {a.moving_type for _, _, a in p.positions()}


def program_from_strings(shapes: Sequence[Sequence[str]]) -> ActionProgram:
    return ActionProgram(tuple(tuple(parse_action(t) for t in s) for s in shapes))


def degrees(angle: float) -> float:
    """Signed degrees for a normalized angle argument."""
    return (angle - 0.5) * 360.0


def radians(angle: float) -> float:
    return math.radians(degrees(angle))
