"""Human-designed shapes: named stroke sequences without moving types.

Library file format (JSON list)::

    [{"name": "square", "categories": ["square", "quadrilateral"],
      "strokes": ["line(_,0.500,0.500)", "line(_,0.500,0.750)", ...]}, ...]

Attribute labels are never stored; they are computed at load time by
executing each entry at the unit pose.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .attributes import ATTRIBUTES, AttributeVector, attribute_vector, check_attribute
from .dsl import ActionProgram, BaseAction, MovingType, Stroke, parse_stroke, serialize_stroke
from .errors import ArityMismatch, DegenerateArc, DSLError, DuplicateName, EmptyFilter, InvalidStroke, ParseError
from .turtle import UNIT_POSE, BasePath, execute_shape

STARTER_LIBRARY = "starter_library.json"


@dataclass(frozen=True)
class ShapeEntry:
    name: str
    strokes: tuple[Stroke, ...]
    categories: frozenset[str]

    def base_path(self) -> BasePath:
        return BasePath((execute_shape(self.strokes, UNIT_POSE),))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "categories": sorted(self.categories),
            "strokes": [serialize_stroke(s) for s in self.strokes],
        }


class Library:
    """Entries plus category and attribute indices (read-only after build)."""

    def __init__(self, entries: Sequence[ShapeEntry] = ()):
        self.entries: tuple[ShapeEntry, ...] = tuple(entries)
        self._by_name: dict[str, ShapeEntry] = {}
        for e in self.entries:
            if e.name in self._by_name:
                raise DuplicateName(f"duplicate shape name {e.name!r}")
            self._by_name[e.name] = e
        self.vectors: dict[str, AttributeVector] = {e.name: attribute_vector(e.base_path()) for e in self.entries}
        attr_index = {a: set() for a in ATTRIBUTES}
        cat_index: dict[str, set] = {}
        for e in self.entries:
            for a in self.vectors[e.name].true_set():
                attr_index[a].add(e.name)
            for c in e.categories:
                cat_index.setdefault(c, set()).add(e.name)
        self.attribute_index = {k: frozenset(v) for k, v in attr_index.items()}
        self.category_index = {k: frozenset(v) for k, v in sorted(cat_index.items())}

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, name: str) -> ShapeEntry:
        return self._by_name[name]

    def __contains__(self, name) -> bool:
        return name in self._by_name

    @property
    def categories(self) -> list[str]:
        return list(self.category_index)

    @property
    def version(self) -> str:
        blob = json.dumps([e.to_dict() for e in self.entries], sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def satisfies(self, name: str, attributes: Iterable[str]) -> bool:
        return all(name in self.attribute_index[a] for a in attributes)

    def select(
        self,
        category: Iterable[str] | None = None,
        require: Iterable[str] = (),
        forbid: Iterable[str] = (),
        exclude_category: Iterable[str] = (),
    ) -> list[ShapeEntry]:
        """Entries in every listed category, having all ``require`` attributes
        and none of ``forbid``, in library order."""
        require = [check_attribute(a) for a in require]
        forbid = [check_attribute(a) for a in forbid]
        names = set(self._by_name)
        for c in category or ():
            names &= self.category_index.get(c, frozenset())
        for c in exclude_category:
            names -= self.category_index.get(c, frozenset())
        for a in require:
            names &= self.attribute_index[a]
        for a in forbid:
            names -= self.attribute_index[a]
        return [e for e in self.entries if e.name in names]


def _parse_entries(data) -> list[ShapeEntry]:
    if not isinstance(data, list):
        raise ParseError("library file must hold a JSON list")
    out = []
    for i, item in enumerate(data):
        if not isinstance(item, Mapping):
            raise ParseError(f"entry {i} is not an object")
        try:
            name = item["name"]
            cats = item.get("categories", [])
            strokes_raw = item["strokes"]
        except KeyError as exc:
            raise ParseError(f"entry {i} lacks field {exc.args[0]!r}") from None
        if not isinstance(name, str) or not name:
            raise ParseError(f"entry {i} has an invalid name")
        if not isinstance(strokes_raw, list) or not strokes_raw:
            raise ParseError(f"entry {name!r} has no strokes")
        if not isinstance(cats, list) or not all(isinstance(c, str) and c for c in cats):
            raise ParseError(f"entry {name!r} has invalid categories")
        try:
            strokes = tuple(parse_stroke(s) for s in strokes_raw)
        except (DSLError, TypeError) as exc:
            raise ParseError(f"entry {name!r}: {exc}") from None
        for s in strokes:
            if s.is_degenerate_arc:
                raise InvalidStroke(f"entry {name!r}: degenerate arc {serialize_stroke(s)}")
        entry = ShapeEntry(name, strokes, frozenset(cats))
        try:
            entry.base_path()
        except DegenerateArc as exc:
            raise InvalidStroke(f"entry {name!r}: {exc}") from None
        out.append(entry)
    return out


def load_library(source: str | Path | None = None) -> Library:
    """Load a library file; ``None`` loads the bundled starter library.
    An empty file yields an empty library."""
    if source is None:
        text = resources.files("bongard_forge.data").joinpath(STARTER_LIBRARY).read_text()
    else:
        text = Path(source).read_text()
    if not text.strip():
        return Library()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return Library(_parse_entries(data))


@lru_cache(maxsize=8)
def _cached(key: str | None) -> Library:
    return load_library(key)


def cached_library(source: str | Path | None = None) -> Library:
    """Process-wide memoized :func:`load_library`."""
    return _cached(None if source is None else str(Path(source).resolve()))


def instantiate_shape(
    entry: ShapeEntry, styles: Sequence[MovingType | str] | str = "random", rng: np.random.Generator | None = None
) -> ActionProgram:
    """Attach moving types to an entry's strokes."""
    if isinstance(styles, str) and styles == "random":
        if rng is None:
            raise ValueError("random styles need an rng")
        types = list(MovingType)
        styles = [types[int(i)] for i in rng.integers(0, len(types), size=len(entry.strokes))]
    styles = list(styles)
    if len(styles) != len(entry.strokes):
        raise ArityMismatch(f"{len(styles)} styles for {len(entry.strokes)} strokes")
    actions = tuple(
        BaseAction(s.kind, MovingType(m), s.length, s.angle) for s, m in zip(entry.strokes, styles)
    )
    return ActionProgram((actions,))


def sample_shape(lib: Library, filter: Mapping | None, rng: np.random.Generator) -> ShapeEntry:
    """Uniform draw over entries matching ``filter``: keys ``category`` (set,
    all required), ``require`` and ``forbid`` (attribute sets)."""
    filter = dict(filter or {})
    unknown = set(filter) - {"category", "require", "forbid", "exclude_category"}
    if unknown:
        raise ValueError(f"unknown filter key(s): {sorted(unknown)}")
    cats = filter.get("category")
    if isinstance(cats, str):
        cats = [cats]
    pool = lib.select(cats, filter.get("require", ()), filter.get("forbid", ()), filter.get("exclude_category", ()))
    if not pool:
        raise EmptyFilter(f"no library entry matches {filter}")
    return pool[int(rng.integers(0, len(pool)))]
