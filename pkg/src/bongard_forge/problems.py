"""Problem generation for the three problem types, plus an independent verifier.

A problem holds 7 positive and 7 negative image records; index 6 on each side
is the test image.  Every record carries the program that was drawn and the
poses it was drawn with, so the verifier can re-execute it and re-check the
concept from geometry alone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .attributes import (
    aligned_hausdorff,
    canonical_component,
    check_attribute,
    component_diameter,
    concept_holds,
)
from .config import Config
from .dsl import (
    DEFAULT_GRID,
    FREEFORM_STROKES,
    ActionProgram,
    ValueGrid,
    perturb_program,
    program_edit_distance,
    same_program,
    sample_action,
    styles_of,
    validate_program,
)
from .errors import (
    CannotFit,
    EmptyFilter,
    GenerationBudgetExceeded,
    InsufficientLibraryCoverage,
)
from .library import Library, ShapeEntry, instantiate_shape
from .render import png_bytes, render_program
from .turtle import (
    UNIT_POSE,
    BasePath,
    Component,
    Pose,
    execute_program,
    execute_shape,
    overlap_score,
    sample_pose,
    split_regions,
    unit_points,
)

N_SIDE = 7
N_CONTEXT = 6
IMAGE_NAMES = tuple([f"pos_{i}" for i in range(N_CONTEXT)] + ["pos_test"]
                    + [f"neg_{i}" for i in range(N_CONTEXT)] + ["neg_test"])
PROBLEM_TYPES = ("freeform", "basic", "abstract")
NEGATIVE_DRAWS = 50  # perturbation draws per negative per round
MATCH_TOL = 1e-3  # library match, fraction of the extent
PROFILE_POINTS = 256


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class Concept:
    type: str
    program: ActionProgram | None = None
    categories: tuple[str, ...] = ()
    attributes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.type not in PROBLEM_TYPES:
            raise ValueError(f"unknown problem type {self.type!r}")

    @classmethod
    def freeform(cls, program: ActionProgram) -> "Concept":
        return cls("freeform", program=program)

    @classmethod
    def basic(cls, categories: Sequence[str]) -> "Concept":
        return cls("basic", categories=tuple(categories))

    @classmethod
    def abstract(cls, attributes: Sequence[str]) -> "Concept":
        return cls("abstract", attributes=tuple(check_attribute(a) for a in attributes))

    @property
    def arity(self) -> int:
        if self.type == "freeform":
            return len(self.program.shapes)
        return len(self.categories) if self.type == "basic" else len(self.attributes)

    @property
    def key(self) -> str:
        """Canonical string identifying the concept (used for split disjointness)."""
        if self.type == "freeform":
            return "ff:" + str(self.program)
        if self.type == "basic":
            return "ba:" + "+".join(sorted(self.categories))
        return "ab:" + "+".join(sorted(self.attributes))

    def to_dict(self) -> dict:
        d = {"type": self.type}
        if self.type == "freeform":
            d["program"] = self.program.to_dict()
        elif self.type == "basic":
            d["categories"] = list(self.categories)
        else:
            d["attributes"] = list(self.attributes)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Concept":
        t = d["type"]
        if t == "freeform":
            return cls.freeform(ActionProgram.from_dict(d["program"]))
        if t == "basic":
            return cls.basic(d["categories"])
        return cls.abstract(d["attributes"])


@dataclass(frozen=True)
class ImageRecord:
    program: ActionProgram
    poses: tuple[Pose, ...]
    pose_seed: int
    entries: tuple[str, ...] = ()

    def base_path(self) -> BasePath:
        return execute_program(self.program, self.poses)

    def to_dict(self) -> dict:
        d = {"program": self.program.to_dict(), "poses": [p.to_dict() for p in self.poses], "pose_seed": self.pose_seed}
        if self.entries:
            d["entries"] = list(self.entries)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ImageRecord":
        return cls(ActionProgram.from_dict(d["program"]), tuple(Pose.from_dict(p) for p in d["poses"]),
                   int(d["pose_seed"]), tuple(d.get("entries", ())))


@dataclass(frozen=True)
class Problem:
    id: str
    concept: Concept
    positives: tuple[ImageRecord, ...]
    negatives: tuple[ImageRecord, ...]

    def __post_init__(self):
        if len(self.positives) != N_SIDE or len(self.negatives) != N_SIDE:
            raise ValueError("a problem needs 7 positives and 7 negatives")

    @property
    def type(self) -> str:
        return self.concept.type

    def images(self):
        """(file stem, record, is_positive) for all 14 images."""
        recs = list(self.positives) + list(self.negatives)
        return [(n, r, i < N_SIDE) for i, (n, r) in enumerate(zip(IMAGE_NAMES, recs))]

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "concept": self.concept.to_dict(),
            "positives": [r.to_dict() for r in self.positives],
            "negatives": [r.to_dict() for r in self.negatives],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Problem":
        return cls(d["id"], Concept.from_dict(d["concept"]),
                   tuple(ImageRecord.from_dict(r) for r in d["positives"]),
                   tuple(ImageRecord.from_dict(r) for r in d["negatives"]))


# ---------------------------------------------------------------------------
# placement


def place_program(program: ActionProgram, pose_seed: int, cfg: Config) -> tuple[Pose, ...]:
    """Deterministic poses for every shape of ``program`` from ``pose_seed``.
    Two-shape images put each shape in its own half of the canvas."""
    r = cfg.render
    rng = np.random.default_rng(pose_seed)
    n = len(program.shapes)
    regions = [None] if n == 1 else split_regions(r.canvas, rng)
    if n > 2:
        raise ValueError("at most two shapes per image")
    return tuple(
        sample_pose(unit_points(shape), r.canvas, rng, region=reg, scale_range=(r.scale_min, r.scale_max),
                    margin_px=r.margin_px, pad_units=r.zigzag_amplitude, pad_px=r.stroke_width / 2 + 1.0)
        for shape, reg in zip(program.shapes, regions)
    )


class _Seeds:
    """Distinct pose seeds for one problem."""

    def __init__(self, rng: np.random.Generator):
        self.rng = rng
        self.used: set[int] = set()

    def __call__(self) -> int:
        while True:
            s = int(self.rng.integers(0, 2**63 - 1))
            if s not in self.used:
                self.used.add(s)
                return s


def _record(program: ActionProgram, seeds: _Seeds, cfg: Config, entries=()) -> ImageRecord:
    for _ in range(20):
        seed = seeds()
        try:
            return ImageRecord(program, place_program(program, seed, cfg), seed, tuple(entries))
        except CannotFit:
            continue
    raise GenerationBudgetExceeded("could not place shape on canvas")


# ---------------------------------------------------------------------------
# free-form


def shape_overlap(program: ActionProgram) -> float:
    """Worst self-overlap over the shapes of ``program`` (each drawn alone)."""
    return max(overlap_score(BasePath((execute_shape(s, UNIT_POSE),))) for s in program.shapes)


def sample_freeform_program(
    rng: np.random.Generator,
    grid: ValueGrid = DEFAULT_GRID,
    n_shapes: int = 1,
    stroke_range: tuple[int, int] = FREEFORM_STROKES,
    lengths: Sequence[int] | None = None,
    overlap_threshold: float = 0.15,
    max_tries: int = 1000,
) -> ActionProgram:
    """Independently sampled actions; rejects programs whose strokes overlap."""
    lo, hi = stroke_range
    for _ in range(max_tries):
        counts = list(lengths) if lengths is not None else [int(rng.integers(lo, hi + 1)) for _ in range(n_shapes)]
        p = ActionProgram(tuple(tuple(sample_action(rng, grid) for _ in range(n)) for n in counts))
        if shape_overlap(p) <= overlap_threshold:
            return p
    raise GenerationBudgetExceeded(f"no program under overlap {overlap_threshold} after {max_tries} draws")


def _changed_shape(p: ActionProgram, q: ActionProgram) -> int:
    for i, (a, b) in enumerate(zip(p.shapes, q.shapes)):
        if a != b:
            return i
    return 0


def freeform_distance(positive: ActionProgram, negative: ActionProgram, stop_below: float | None = None):
    """(aligned Hausdorff, diameter) of the shape that differs, in unit lengths."""
    i = _changed_shape(positive, negative)
    a = execute_shape(positive.shapes[i], UNIT_POSE)
    b = execute_shape(negative.shapes[i], UNIT_POSE)
    d = component_diameter(a)
    return aligned_hausdorff(a, b, stop_below=stop_below), d


def is_distinct(positive: ActionProgram, negative: ActionProgram, threshold: float) -> bool:
    """Aligned Hausdorff distance of the changed shape exceeds threshold x diameter."""
    i = _changed_shape(positive, negative)
    a = execute_shape(positive.shapes[i], UNIT_POSE)
    d = component_diameter(a)
    b = execute_shape(negative.shapes[i], UNIT_POSE)
    return aligned_hausdorff(a, b, stop_below=threshold * d) > threshold * d


def gen_freeform_problem(
    cfg: Config,
    rng: np.random.Generator,
    *,
    program: ActionProgram | None = None,
    n_shapes: int = 1,
    stroke_range: tuple[int, int] = FREEFORM_STROKES,
    grid: ValueGrid = DEFAULT_GRID,
    problem_id: str = "",
) -> Problem:
    """One ground-truth program; positives re-render it, negatives each change
    one field of one action and must look different."""
    g = cfg.generate
    guard = 1.1 * g.distinct_threshold
    seeds = _Seeds(rng)
    fixed = program is not None
    for _ in range(g.max_resamples):
        if not fixed:
            program = sample_freeform_program(rng, grid, n_shapes, stroke_range,
                                              overlap_threshold=g.overlap_threshold)
        negatives: list[ActionProgram] = []
        seen = {str(program)}
        for _ in range(N_SIDE):
            for _ in range(NEGATIVE_DRAWS):
                q = perturb_program(program, grid, rng)
                if str(q) in seen or shape_overlap(q) > g.overlap_threshold:
                    continue
                if not is_distinct(program, q, guard):
                    continue
                negatives.append(q)
                seen.add(str(q))
                break
            else:
                break
        if len(negatives) == N_SIDE:
            break
    else:
        raise GenerationBudgetExceeded(f"no valid negative set after {g.max_resamples} rounds")
    pos = tuple(_record(program, seeds, cfg) for _ in range(N_SIDE))
    neg = tuple(_record(q, seeds, cfg) for q in negatives)
    return Problem(problem_id, Concept.freeform(program), pos, neg)


# ---------------------------------------------------------------------------
# library-based problems


def _styled(entries: Sequence[ShapeEntry], rng) -> ActionProgram:
    progs = [instantiate_shape(e, "random", rng) for e in entries]
    return ActionProgram(tuple(p.shapes[0] for p in progs))


def _side(groups: list[list[ShapeEntry]], rng, seeds: _Seeds, cfg: Config) -> tuple[ImageRecord, ...]:
    """Render-ready records for one side; re-draws styles until the side shows
    at least two moving types."""
    while True:
        programs = [_styled(g, rng) for g in groups]
        if len(set().union(*(styles_of(p) for p in programs))) >= 2:
            break
    return tuple(_record(p, seeds, cfg, [e.name for e in g]) for p, g in zip(programs, groups))


def _draw(pool: Sequence[ShapeEntry], k: int, rng) -> list[ShapeEntry]:
    """k entries, without replacement when the pool is large enough."""
    if not pool:
        raise EmptyFilter("empty pool")
    idx = rng.choice(len(pool), size=k, replace=len(pool) < k)
    return [pool[int(i)] for i in idx]


def basic_feasible(lib: Library, categories: Sequence[str]) -> bool:
    cats = list(categories)
    if any(not lib.select([c]) for c in cats):
        return False
    others = lib.select(exclude_category=cats)
    if len({c for e in others for c in e.categories}) < 6:
        return False
    if len(cats) == 2:
        a, b = cats
        return bool(lib.select([a], exclude_category=[b])) and bool(lib.select([b], exclude_category=[a]))
    return True


def gen_basic_problem(
    lib: Library,
    cfg: Config,
    rng: np.random.Generator,
    *,
    categories: Sequence[str] | None = None,
    arity: int = 1,
    problem_id: str = "",
) -> Problem:
    """Positives show the concept categories; negatives never do.  For a pair
    of categories 4 of the 7 negatives share exactly one of them."""
    if categories is None:
        for _ in range(1000):
            categories = [lib.categories[int(i)] for i in rng.choice(len(lib.categories), size=arity, replace=False)]
            if basic_feasible(lib, categories):
                break
        else:
            raise InsufficientLibraryCoverage("no feasible category concept")
    cats = list(categories)
    if not basic_feasible(lib, cats):
        raise InsufficientLibraryCoverage(f"library cannot support basic concept {cats}")
    seeds = _Seeds(rng)
    outside = lib.select(exclude_category=cats)
    if len(cats) == 1:
        pos_groups = [[e] for e in _draw(lib.select(cats), N_SIDE, rng)]
        neg_groups = [[e] for e in _draw(outside, N_SIDE, rng)]
    else:
        a, b = cats
        pa, pb = lib.select([a]), lib.select([b])
        pos_groups = []
        for _ in range(N_SIDE):
            x = _draw(pa, 1, rng)[0]
            y = _draw([e for e in pb if e is not x] or pb, 1, rng)[0]
            pos_groups.append([x, y])
        only = [lib.select([a], exclude_category=[b]), lib.select([b], exclude_category=[a])]
        hard = cfg.generate.hard_negative_count
        neg_groups = []
        for k in range(N_SIDE):
            if k < hard:
                x = _draw(only[k % 2], 1, rng)[0]
                y = _draw(outside, 1, rng)[0]
                neg_groups.append([x, y])
            else:
                neg_groups.append(_draw(outside, 2, rng))
        order = rng.permutation(N_SIDE)
        neg_groups = [neg_groups[int(i)] for i in order]
        for g in pos_groups + neg_groups:
            if rng.integers(2):
                g.reverse()
    pos = _side(pos_groups, rng, seeds, cfg)
    neg = _side(neg_groups, rng, seeds, cfg)
    return Problem(problem_id, Concept.basic(cats), pos, neg)


def abstract_pools(lib: Library, attributes: Sequence[str]):
    """(positives, violators, only-first, only-second) entry pools."""
    attrs = list(attributes)
    pos = lib.select(require=attrs)
    names = {e.name for e in pos}
    viol = [e for e in lib.entries if e.name not in names]
    if len(attrs) == 2:
        a, b = attrs
        return pos, viol, lib.select(require=[a], forbid=[b]), lib.select(require=[b], forbid=[a])
    return pos, viol, [], []


def abstract_feasible(lib: Library, attributes: Sequence[str]) -> bool:
    pos, viol, oa, ob = abstract_pools(lib, attributes)
    if len(pos) < N_SIDE or len(viol) < N_SIDE:
        return False
    return len(attributes) == 1 or (len(oa) >= 2 and len(ob) >= 2)


def gen_abstract_problem(
    attributes: Sequence[str], lib: Library, cfg: Config, rng: np.random.Generator, *, problem_id: str = ""
) -> Problem:
    """Positives satisfy every attribute; negatives violate at least one.  For
    pairs, at least 2 negatives satisfy only the first and 2 only the second."""
    concept = Concept.abstract(attributes)
    if not abstract_feasible(lib, concept.attributes):
        raise InsufficientLibraryCoverage(f"library cannot support abstract concept {list(attributes)}")
    pos_pool, viol, oa, ob = abstract_pools(lib, concept.attributes)
    seeds = _Seeds(rng)
    pos_groups = [[e] for e in _draw(pos_pool, N_SIDE, rng)]
    if concept.arity == 1:
        neg = _draw(viol, N_SIDE, rng)
    else:
        first = _draw(oa, 2, rng) + _draw(ob, 2, rng)
        taken = {e.name for e in first}
        rest = [e for e in viol if e.name not in taken]
        neg = first + _draw(rest or viol, N_SIDE - 4, rng)
        neg = [neg[int(i)] for i in rng.permutation(N_SIDE)]
    pos = _side(pos_groups, rng, seeds, cfg)
    negs = _side([[e] for e in neg], rng, seeds, cfg)
    return Problem(problem_id, concept, pos, negs)


# ---------------------------------------------------------------------------
# verification


@dataclass
class VerificationReport:
    problem_id: str
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def arc_length_profile(comp: Component, n: int = PROFILE_POINTS) -> np.ndarray:
    """``n`` points at equal arc-length steps along ``comp`` in its canonical
    frame (start at origin, first direction +x, unit length 1)."""
    prims = canonical_component(comp).primitives
    if not prims:
        return np.zeros((n, 2))
    lengths = np.array([q.length for q in prims])
    cum = np.concatenate([[0.0], np.cumsum(lengths)])
    s = np.linspace(0.0, cum[-1], n)
    idx = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, len(prims) - 1)
    out = np.empty((n, 2))
    for k in np.unique(idx):
        sel = idx == k
        out[sel] = prims[k].points(s[sel] - cum[k])
    return out


class LibraryMatcher:
    """Recovers library entries from drawn geometry (any pose, any style).

    Drawing a shape never mirrors it and always starts at its first stroke, so
    a drawn entry and the library original coincide in the canonical frame;
    matching compares their arc-length profiles point by point."""

    def __init__(self, lib: Library):
        self.lib = lib
        self._by_length: dict[int, list] = {}
        for e in lib.entries:
            comp = execute_shape(e.strokes, UNIT_POSE)
            prof = arc_length_profile(comp)
            diam = float(np.max(np.ptp(prof, axis=0))) if len(prof) else 0.0
            self._by_length.setdefault(self._bucket(comp.length), []).append((comp.length, e, prof, diam))

    @staticmethod
    def _bucket(length: float) -> int:
        return int(round(length * 1e4))

    def match(self, comp: Component) -> list[ShapeEntry]:
        length = comp.length / comp.unit_length
        b = self._bucket(length)
        cands = [c for k in (b - 1, b, b + 1) for c in self._by_length.get(k, ())
                 if abs(c[0] - length) <= 1e-6 * max(1.0, c[0])]
        if not cands:
            return []
        prof = arc_length_profile(comp)
        out = []
        for _, e, ref, diam in cands:
            gap = float(np.max(np.hypot(*(prof - ref).T)))
            if gap <= MATCH_TOL * max(diam, 1e-9):
                out.append(e)
        return out

    def categories(self, comp: Component) -> set[str]:
        return set().union(*(e.categories for e in self.match(comp))) if comp.primitives else set()


def _basic_holds(cats: Sequence[str], bp: BasePath, matcher: LibraryMatcher) -> bool:
    found = [matcher.categories(c) for c in bp.components]
    if len(cats) == 1:
        return len(found) == 1 and cats[0] in found[0]
    if len(found) != 2:
        return False
    a, b = cats
    return (a in found[0] and b in found[1]) or (b in found[0] and a in found[1])


def verify_problem(p: Problem, lib: Library | None = None, cfg: Config | None = None,
                   matcher: LibraryMatcher | None = None) -> VerificationReport:
    """Re-check a problem from its drawn programs and poses alone."""
    cfg = cfg or Config()
    rep = VerificationReport(p.id)
    seeds = [r.pose_seed for r in p.positives + p.negatives]
    if len(set(seeds)) != len(seeds):
        rep.violations.append("pose seeds repeat across images")
    for name, rec, _ in p.images():
        if len(rec.poses) != len(rec.program.shapes):
            rep.violations.append(f"{name}: pose count does not match shape count")
    if rep.violations:
        return rep
    c = p.concept
    if c.type == "freeform":
        for name, rec, positive in p.images():
            if positive:
                if not same_program(rec.program, c.program):
                    rep.violations.append(f"{name}: program differs from the concept")
                continue
            dist = program_edit_distance(rec.program, c.program)
            if dist != 1:
                rep.violations.append(f"{name}: edit distance {dist} != 1")
            elif not is_distinct(c.program, rec.program, cfg.generate.distinct_threshold):
                rep.violations.append(f"{name}: not visibly different from the concept")
        report = validate_program(c.program, freeform=True)
        if not report.ok:
            rep.violations.append(f"concept program invalid: {','.join(report.codes())}")
        return rep
    for side, records in (("positives", p.positives), ("negatives", p.negatives)):
        if len(set().union(*(styles_of(r.program) for r in records))) < 2:
            rep.violations.append(f"{side}: fewer than two moving types")
    if c.type == "basic":
        if matcher is None:
            if lib is None:
                raise ValueError("basic problems need the library to verify")
            matcher = LibraryMatcher(lib)
        check = lambda bp: _basic_holds(c.categories, bp, matcher)  # noqa: E731
    else:
        check = lambda bp: concept_holds(c.attributes, bp)  # noqa: E731
    for name, rec, positive in p.images():
        holds = check(rec.base_path())
        if holds != positive:
            rep.violations.append(f"{name}: concept {'fails' if positive else 'holds'}")
    return rep


# ---------------------------------------------------------------------------
# output


def render_problem(p: Problem, cfg: Config | None = None) -> dict[str, np.ndarray]:
    cfg = cfg or Config()
    return {name: render_program(rec.program, rec.poses, cfg.render) for name, rec, _ in p.images()}


def write_problem(p: Problem, directory: str | Path, cfg: Config | None = None) -> list[str]:
    """Write the 14 PNGs and ``problem.json``; returns the relative file names."""
    cfg = cfg or Config()
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    files = []
    for name, img in render_problem(p, cfg).items():
        (d / f"{name}.png").write_bytes(png_bytes(img, cfg.render.png_compress_level))
        files.append(f"{name}.png")
    (d / "problem.json").write_text(json.dumps(p.to_dict(), indent=1, sort_keys=True) + "\n")
    files.append("problem.json")
    return files


def load_problem(path: str | Path) -> Problem:
    path = Path(path)
    if path.is_dir():
        path = path / "problem.json"
    return Problem.from_dict(json.loads(path.read_text()))
