"""Full-benchmark construction: split planning, parallel writing, manifest, audit.

Directory layout::

    <root>/manifest.json
    <root>/<problem id>/{pos_0..pos_5,pos_test,neg_0..neg_5,neg_test}.png
    <root>/<problem id>/problem.json

``manifest.json`` (schema version 1)::

    {"schema_version": 1, "generator_version": "0.1.0",
     "library_version": "<16 hex>", "attribute_set_version": 1,
     "spec": {...}, "config": {"render": {...}, "generate": {...}},
     "problems": [{"id": "test-cm-00003", "type": "abstract", "split": "test",
                   "subsplit": "cm", "concept": {...}, "seed": 123,
                   "files": ["test-cm-00003/pos_0.png", ...]}, ...]}

Problems are sorted by id.  Every problem is generated from its own seed,
derived from the build seed and the id, so any subset can be rebuilt alone.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Mapping, Sequence

import numpy as np

from . import __version__
from .attributes import ATTRIBUTE_SET_VERSION, ATTRIBUTES
from .config import Config, config_from_dict, config_to_dict
from .dsl import DEFAULT_GRID, ActionProgram, ValueGrid
from .errors import (
    InsufficientLibraryCoverage,
    IoError,
    LibraryVersionMismatch,
    MissingFile,
    SchemaVersionMismatch,
    SpecInfeasible,
    VerificationFailed,
)
from .library import Library, cached_library
from .problems import (
    IMAGE_NAMES,
    Concept,
    LibraryMatcher,
    Problem,
    VerificationReport,
    abstract_feasible,
    basic_feasible,
    gen_abstract_problem,
    gen_basic_problem,
    gen_freeform_problem,
    load_problem,
    sample_freeform_program,
    verify_problem,
    write_problem,
)

SCHEMA_VERSION = 1
GENERATOR_VERSION = __version__
MANIFEST_NAME = "manifest.json"

FULL_TYPES = {"freeform": 3600, "basic": 4000, "abstract": 4400}
FULL_SPLITS = {"train": 9300, "val": 900, "test": 1800}
FULL_TEST = {"ff": 600, "ba": 480, "cm": 400, "nv": 320}
TEST_TYPE = {"ff": "freeform", "ba": "basic", "cm": "abstract", "nv": "abstract"}
TYPE_TAG = {"freeform": "ff", "basic": "ba", "abstract": "ab"}
SPLITS = ("train", "val", "test")
SUBSPLITS = tuple(FULL_TEST)
HELD_OUT = "have_eight_straight_lines"
PER_CONCEPT = 20  # abstract problems per concept at scale 1
CM_COMBOS = 20
TRAIN_MAX = 8


def largest_remainder(total: int, weights: Mapping[str, float | Fraction]) -> dict[str, int]:
    """Integer allocation of ``total`` proportional to ``weights``; leftover
    units go to the largest remainders (ties: first key)."""
    keys = list(weights)
    wsum = sum(Fraction(weights[k]) for k in keys)
    if total < 0 or wsum <= 0:
        raise ValueError("need a non-negative total and positive weights")
    exact = {k: Fraction(total) * Fraction(weights[k]) / wsum for k in keys}
    out = {k: math.floor(v) for k, v in exact.items()}
    left = total - sum(out.values())
    order = sorted(keys, key=lambda k: (-(exact[k] - out[k]), keys.index(k)))
    for k in order[:left]:
        out[k] += 1
    return out


def _round(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def program_length(p: ActionProgram) -> int:
    """Strokes in the longest shape."""
    return max(len(s) for s in p.shapes)


@dataclass(frozen=True)
class BenchmarkSpec:
    scale: Fraction = Fraction(1)
    seed: int = 0
    grid: ValueGrid = DEFAULT_GRID
    library: str | None = None
    held_out_attribute: str = HELD_OUT
    train_max: int = TRAIN_MAX

    def __post_init__(self):
        object.__setattr__(self, "scale", Fraction(self.scale).limit_denominator(10**6))
        if self.scale <= 0:
            raise SpecInfeasible(f"scale must be positive, got {self.scale}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.held_out_attribute not in ATTRIBUTES:
            raise InsufficientLibraryCoverage(f"unknown held-out attribute {self.held_out_attribute!r}")
        if not 2 <= self.train_max < 9:
            raise SpecInfeasible("train_max must leave room for one longer test length within 2..9")

    @property
    def per_concept(self) -> int:
        return max(1, _round(PER_CONCEPT * self.scale))

    @property
    def total(self) -> int:
        return _round(sum(FULL_TYPES.values()) * self.scale)

    def counts(self) -> dict:
        """{"types", "splits", "test", "train", "val"}: problem counts at scale.
        ``train``/``val`` map problem type to count."""
        total = self.total
        types = largest_remainder(total, FULL_TYPES)
        splits = largest_remainder(total, FULL_SPLITS)
        test = largest_remainder(splits["test"], FULL_TEST)
        rest = dict(types)
        for sub, n in test.items():
            rest[TEST_TYPE[sub]] -= n
        if any(v <= 0 for v in rest.values()) or any(v <= 0 for v in test.values()):
            raise SpecInfeasible(f"scale {self.scale} leaves an empty type or test sub-split")
        val = largest_remainder(splits["val"], rest)
        train = {t: rest[t] - val[t] for t in rest}
        if any(v <= 0 for v in train.values()):
            raise SpecInfeasible(f"scale {self.scale} leaves an empty train type")
        return {"types": types, "splits": splits, "test": test, "train": train, "val": val}

    def to_dict(self) -> dict:
        return {
            "scale": str(self.scale),
            "seed": int(self.seed),
            "grid": self.grid.to_dict(),
            "library": self.library,
            "held_out_attribute": self.held_out_attribute,
            "train_max": self.train_max,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BenchmarkSpec":
        return cls(Fraction(d["scale"]), int(d["seed"]), ValueGrid.from_dict(d["grid"]), d.get("library"),
                   d.get("held_out_attribute", HELD_OUT), int(d.get("train_max", TRAIN_MAX)))


@dataclass(frozen=True)
class ProblemRecord:
    id: str
    type: str
    split: str
    subsplit: str | None
    concept: Concept
    seed: int
    files: tuple[str, ...]

    def to_dict(self) -> dict:
        return {"id": self.id, "type": self.type, "split": self.split, "subsplit": self.subsplit,
                "concept": self.concept.to_dict(), "seed": self.seed, "files": list(self.files)}

    @classmethod
    def from_dict(cls, d: dict) -> "ProblemRecord":
        return cls(d["id"], d["type"], d["split"], d.get("subsplit"), Concept.from_dict(d["concept"]),
                   int(d["seed"]), tuple(d["files"]))


@dataclass(frozen=True)
class Manifest:
    spec: BenchmarkSpec
    config: Config
    records: tuple[ProblemRecord, ...]
    library_version: str
    generator_version: str = GENERATOR_VERSION
    attribute_set_version: int = ATTRIBUTE_SET_VERSION
    schema_version: int = SCHEMA_VERSION

    def __len__(self):
        return len(self.records)

    def select(self, split: str | None = None, subsplit: str | None = None, type: str | None = None):
        return [r for r in self.records
                if (split is None or r.split == split)
                and (subsplit is None or r.subsplit == subsplit)
                and (type is None or r.type == type)]

    def by_id(self) -> dict[str, ProblemRecord]:
        return {r.id: r for r in self.records}

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "generator_version": self.generator_version,
            "library_version": self.library_version,
            "attribute_set_version": self.attribute_set_version,
            "spec": self.spec.to_dict(),
            "config": config_to_dict(self.config),
            "problems": [r.to_dict() for r in self.records],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "Manifest":
        found = d.get("schema_version")
        if found != SCHEMA_VERSION:
            raise SchemaVersionMismatch(found, SCHEMA_VERSION)
        return cls(BenchmarkSpec.from_dict(d["spec"]), config_from_dict(d["config"]),
                   tuple(ProblemRecord.from_dict(r) for r in d["problems"]), d["library_version"],
                   d["generator_version"], int(d["attribute_set_version"]), found)


# ---------------------------------------------------------------------------
# planning


def problem_seed(seed: int, problem_id: str) -> int:
    """64-bit seed for one problem, from the build seed and the id."""
    words = np.frombuffer(hashlib.sha256(problem_id.encode()).digest()[:16], dtype="<u4")
    ss = np.random.SeedSequence([int(seed) & 0xFFFFFFFF, int(seed) >> 32, *map(int, words)])
    return int(ss.generate_state(1, np.uint64)[0])


def _blocks(concepts: Sequence, n: int, per: int) -> list:
    """Assign ``n`` problems to concepts in consecutive blocks of ``per``,
    cycling when there are more blocks than concepts."""
    if n and not concepts:
        raise InsufficientLibraryCoverage("no concept available")
    return [concepts[(k // per) % len(concepts)] for k in range(n)]


def abstract_concepts(lib: Library) -> list[tuple[str, ...]]:
    """Every single attribute and attribute pair the library can support."""
    out = [(a,) for a in ATTRIBUTES if abstract_feasible(lib, [a])]
    out += [p for p in itertools.combinations(ATTRIBUTES, 2) if abstract_feasible(lib, p)]
    return out


def basic_concepts(lib: Library) -> list[tuple[str, ...]]:
    cats = lib.categories
    out = [(c,) for c in cats if basic_feasible(lib, [c])]
    out += [p for p in itertools.combinations(cats, 2) if basic_feasible(lib, p)]
    return out


def _plan_abstract(spec: BenchmarkSpec, counts: dict, lib: Library, rng) -> dict[str, list]:
    per = spec.per_concept
    h = spec.held_out_attribute
    feasible = abstract_concepts(lib)
    nv_pool = [c for c in feasible if h in c]
    singles = [c for c in feasible if len(c) == 1 and h not in c]
    single_set = {c[0] for c in singles}
    pairs = [c for c in feasible if len(c) == 2 and h not in c]
    pairs = [pairs[int(i)] for i in rng.permutation(len(pairs))]
    n_cm = min(CM_COMBOS, math.ceil(counts["test"]["cm"] / per))
    cm = [p for p in pairs if p[0] in single_set and p[1] in single_set][:n_cm]
    if len(cm) < n_cm:
        raise InsufficientLibraryCoverage(f"only {len(cm)} combination concepts, need {n_cm}")
    rest = [p for p in pairs if p not in cm]
    n_val = math.ceil(counts["val"]["abstract"] / per)
    if len(rest) < n_val:
        raise InsufficientLibraryCoverage(f"only {len(rest)} pair concepts left for val, need {n_val}")
    val, train_pairs = rest[:n_val], rest[n_val:]
    if not nv_pool:
        raise InsufficientLibraryCoverage(f"no feasible concept involves {h}")
    nv_pool = [nv_pool[int(i)] for i in rng.permutation(len(nv_pool))]
    # CM members first so they land in train even when train is small
    members = sorted({a for p in cm for a in p})
    train = [(a,) for a in members]
    others = [c for c in singles if c[0] not in members]
    train += [others[int(i)] for i in rng.permutation(len(others))] + train_pairs
    return {
        "train": _blocks(train, counts["train"]["abstract"], per),
        "val": _blocks(val, counts["val"]["abstract"], per),
        "cm": _blocks(cm, counts["test"]["cm"], per),
        "nv": _blocks(nv_pool, counts["test"]["nv"], per),
    }


def _plan_basic(counts: dict, lib: Library, rng) -> dict[str, list]:
    feasible = basic_concepts(lib)
    singles = [c for c in feasible if len(c) == 1]
    pairs = [c for c in feasible if len(c) == 2]
    pairs = [pairs[int(i)] for i in rng.permutation(len(pairs))]
    n_test, n_val = counts["test"]["ba"], counts["val"]["basic"]
    if len(pairs) < n_test + n_val + 1:
        raise InsufficientLibraryCoverage(f"{len(pairs)} category pairs cannot cover test and val")
    test, val, train_pairs = pairs[:n_test], pairs[n_test:n_test + n_val], pairs[n_test + n_val:]
    # test pairs are novel compositions: their members come first in train
    members = sorted({c for p in test for c in p})
    train = [(c,) for c in members]
    others = [c for c in singles if c[0] not in members]
    pool = [others[int(i)] for i in rng.permutation(len(others))] + train_pairs
    train += [pool[int(i)] for i in rng.permutation(len(pool))]
    if counts["train"]["basic"] < len(members):
        raise SpecInfeasible("too few basic train problems to show every test category")
    return {"train": _blocks(train, counts["train"]["basic"], 1), "val": _blocks(val, n_val, 1), "ba": test}


def _plan_freeform(spec: BenchmarkSpec, counts: dict, cfg: Config, rng) -> dict[str, list]:
    g = cfg.generate
    seen: set[str] = set()

    def draw(n: int, lengths) -> list[ActionProgram]:
        out = []
        while len(out) < n:
            shapes = 2 if rng.random() < g.two_shape_probability else 1
            ls = [lengths() for _ in range(shapes)]
            p = sample_freeform_program(rng, spec.grid, lengths=ls, overlap_threshold=g.overlap_threshold)
            if str(p) not in seen:
                seen.add(str(p))
                out.append(p)
        return out

    short = lambda: int(rng.integers(2, spec.train_max + 1))  # noqa: E731
    longer = lambda: spec.train_max + 1  # noqa: E731
    return {
        "train": draw(counts["train"]["freeform"], short),
        "val": draw(counts["val"]["freeform"], short),
        "ff": draw(counts["test"]["ff"], longer),
    }


def build_benchmark(spec: BenchmarkSpec, cfg: Config | None = None, lib: Library | None = None) -> Manifest:
    """Plan every problem (concept, id, seed, files) without generating images."""
    cfg = cfg or Config()
    lib = lib if lib is not None else cached_library(spec.library)
    counts = spec.counts()
    plan_rng = np.random.default_rng([int(spec.seed) & 0xFFFFFFFF, int(spec.seed) >> 32, 0])
    ff = _plan_freeform(spec, counts, cfg, plan_rng)
    ba = _plan_basic(counts, lib, plan_rng)
    ab = _plan_abstract(spec, counts, lib, plan_rng)
    plan = [
        ("train", None, "freeform", [Concept.freeform(p) for p in ff["train"]]),
        ("train", None, "basic", [Concept.basic(c) for c in ba["train"]]),
        ("train", None, "abstract", [Concept.abstract(c) for c in ab["train"]]),
        ("val", None, "freeform", [Concept.freeform(p) for p in ff["val"]]),
        ("val", None, "basic", [Concept.basic(c) for c in ba["val"]]),
        ("val", None, "abstract", [Concept.abstract(c) for c in ab["val"]]),
        ("test", "ff", "freeform", [Concept.freeform(p) for p in ff["ff"]]),
        ("test", "ba", "basic", [Concept.basic(c) for c in ba["ba"]]),
        ("test", "cm", "abstract", [Concept.abstract(c) for c in ab["cm"]]),
        ("test", "nv", "abstract", [Concept.abstract(c) for c in ab["nv"]]),
    ]
    records = []
    for split, sub, ptype, concepts in plan:
        tag = sub or TYPE_TAG[ptype]
        for k, concept in enumerate(concepts):
            pid = f"{split}-{tag}-{k:05d}"
            files = tuple(f"{pid}/{n}.png" for n in IMAGE_NAMES) + (f"{pid}/problem.json",)
            records.append(ProblemRecord(pid, ptype, split, sub, concept, problem_seed(spec.seed, pid), files))
    records.sort(key=lambda r: r.id)
    return Manifest(spec, cfg, tuple(records), lib.version)


# ---------------------------------------------------------------------------
# generation and writing


def generate_problem(rec: ProblemRecord, lib: Library, cfg: Config, grid: ValueGrid = DEFAULT_GRID) -> Problem:
    """Generate one planned problem from its own seed."""
    rng = np.random.default_rng(rec.seed)
    c = rec.concept
    if c.type == "freeform":
        return gen_freeform_problem(cfg, rng, program=c.program, grid=grid, problem_id=rec.id)
    if c.type == "basic":
        return gen_basic_problem(lib, cfg, rng, categories=c.categories, problem_id=rec.id)
    return gen_abstract_problem(c.attributes, lib, cfg, rng, problem_id=rec.id)


_WORKER: dict = {}


def _init_worker(library: str | None, cfg_dict: dict, grid_dict: dict):
    lib = cached_library(library)
    _WORKER.update(lib=lib, cfg=config_from_dict(cfg_dict), grid=ValueGrid.from_dict(grid_dict),
                   matcher=LibraryMatcher(lib))


def _write_one(rec_dict: dict, root: str) -> tuple[str, list[str]]:
    rec = ProblemRecord.from_dict(rec_dict)
    lib, cfg, grid, matcher = _WORKER["lib"], _WORKER["cfg"], _WORKER["grid"], _WORKER["matcher"]
    problem = generate_problem(rec, lib, cfg, grid)
    report = verify_problem(problem, lib, cfg, matcher)
    if not report.ok:
        return rec.id, report.violations
    write_problem(problem, Path(root) / rec.id, cfg)
    return rec.id, []


def _verify_one(rec_dict: dict, root: str) -> tuple[str, list[str]]:
    rec = ProblemRecord.from_dict(rec_dict)
    problem = load_problem(Path(root) / rec.id)
    violations = []
    if problem.concept.key != rec.concept.key:
        violations.append("problem.json concept differs from the manifest")
    report = verify_problem(problem, _WORKER["lib"], _WORKER["cfg"], _WORKER["matcher"])
    return rec.id, violations + report.violations


def _run(fn, m: Manifest, root: Path, jobs: int | None, progress: Callable | None) -> dict[str, list[str]]:
    jobs = jobs or os.cpu_count() or 1
    args = (m.spec.library, config_to_dict(m.config), m.spec.grid.to_dict())
    items = [r.to_dict() for r in m.records]
    out: dict[str, list[str]] = {}
    if jobs == 1:
        _init_worker(*args)
        results = (fn(d, str(root)) for d in items)
        for i, (pid, v) in enumerate(results):
            out[pid] = v
            if progress:
                progress(i + 1, len(items))
        return out
    with ProcessPoolExecutor(jobs, initializer=_init_worker, initargs=args) as ex:
        for i, (pid, v) in enumerate(ex.map(fn, items, itertools.repeat(str(root)), chunksize=4)):
            out[pid] = v
            if progress:
                progress(i + 1, len(items))
    return out


def write_dataset(m: Manifest, directory: str | Path, jobs: int | None = None,
                  progress: Callable[[int, int], None] | None = None) -> Path:
    """Generate, verify and write every problem, then ``manifest.json``.
    Raises :class:`VerificationFailed` if any problem fails verification."""
    root = Path(directory)
    try:
        root.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoError(f"cannot create {root}: {exc}") from None
    lib = cached_library(m.spec.library)
    if lib.version != m.library_version:
        raise LibraryVersionMismatch(f"manifest was planned with library {m.library_version}, found {lib.version}")
    failures = {k: v for k, v in _run(_write_one, m, root, jobs, progress).items() if v}
    if failures:
        pid = sorted(failures)[0]
        raise VerificationFailed(f"{len(failures)} problem(s) failed verification; {pid}: {failures[pid][0]}")
    (root / MANIFEST_NAME).write_text(m.dumps())
    return root / MANIFEST_NAME


def load_manifest(directory: str | Path, check_files: bool = True) -> Manifest:
    """Read ``manifest.json``; with ``check_files`` every listed file must exist."""
    root = Path(directory)
    path = root / MANIFEST_NAME if root.is_dir() or not root.suffix else root
    if not path.exists():
        raise MissingFile(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise IoError(f"{path}: invalid JSON: {exc}") from None
    m = Manifest.from_dict(data)
    if check_files:
        base = path.parent
        for r in m.records:
            for f in r.files:
                if not (base / f).exists():
                    raise MissingFile(base / f)
    return m


def verify_dataset(directory: str | Path, jobs: int | None = None,
                   progress: Callable[[int, int], None] | None = None) -> dict[str, list[str]]:
    """Re-verify every written problem; maps problem id to its violations."""
    root = Path(directory)
    m = load_manifest(root)
    lib = cached_library(m.spec.library)
    if lib.version != m.library_version:
        raise LibraryVersionMismatch(f"dataset was built with library {m.library_version}, found {lib.version}")
    return _run(_verify_one, m, root, jobs, progress)


# ---------------------------------------------------------------------------
# audit


@dataclass
class Finding:
    kind: str  # leakage | length | count | identity
    message: str


@dataclass
class AuditReport:
    findings: list[Finding] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.findings

    def of_kind(self, kind: str) -> list[Finding]:
        return [f for f in self.findings if f.kind == kind]

    def add(self, kind: str, message: str):
        self.findings.append(Finding(kind, message))


def audit_splits(m: Manifest) -> AuditReport:
    """Check split rules: held-out attribute and combination leakage, free-form
    lengths, novel basic compositions, val/train disjointness and counts."""
    rep = AuditReport()
    spec = m.spec
    h = spec.held_out_attribute
    ids = Counter(r.id for r in m.records)
    for pid, n in sorted(ids.items()):
        if n > 1:
            rep.add("identity", f"id {pid} appears {n} times")
    trainval = [r for r in m.records if r.split in ("train", "val")]
    train = [r for r in m.records if r.split == "train"]
    train_keys = {r.concept.key for r in train}

    # held-out attribute
    for r in trainval:
        if r.type == "abstract" and h in r.concept.attributes:
            rep.add("leakage", f"{r.id} uses held-out attribute {h}")
    for r in m.select("test", "nv"):
        if r.type != "abstract" or h not in r.concept.attributes:
            rep.add("leakage", f"{r.id} is in the novel-attribute split without {h}")

    # combinations
    train_singles = {r.concept.attributes[0] for r in train if r.type == "abstract" and r.concept.arity == 1}
    trainval_keys = {r.concept.key for r in trainval}
    cm = m.select("test", "cm")
    for key in sorted({r.concept.key for r in cm}):
        if key in trainval_keys:
            rep.add("leakage", f"combination {key} appears in train/val")
    for r in cm:
        if r.type != "abstract" or r.concept.arity != 2:
            rep.add("leakage", f"{r.id} is not a pairwise combination")
        elif not set(r.concept.attributes) <= train_singles:
            rep.add("leakage", f"{r.id}: members of {r.concept.key} are not all trained individually")

    # free-form lengths
    for r in m.select("test", "ff"):
        if r.type != "freeform" or program_length(r.concept.program) != spec.train_max + 1:
            rep.add("length", f"{r.id} does not use programs of length {spec.train_max + 1}")
    for r in trainval:
        if r.type == "freeform" and program_length(r.concept.program) > spec.train_max:
            rep.add("length", f"{r.id} exceeds the train length bound {spec.train_max}")

    # basic test: novel compositions
    train_cats = {c for r in train if r.type == "basic" for c in r.concept.categories}
    for r in m.select("test", "ba"):
        if r.concept.key in train_keys:
            rep.add("leakage", f"{r.id}: basic concept {r.concept.key} also in train")
        elif not set(r.concept.categories) <= train_cats:
            rep.add("leakage", f"{r.id}: category of {r.concept.key} never seen in train")

    # free-form test concepts never trained
    for r in m.select("test"):
        if r.type == "freeform" and r.concept.key in trainval_keys:
            rep.add("leakage", f"{r.id}: free-form program also in train/val")

    # val disjoint from train
    for r in m.select("val"):
        if r.concept.key in train_keys:
            rep.add("leakage", f"{r.id}: val concept {r.concept.key} also in train")

    # counts
    try:
        counts = spec.counts()
    except SpecInfeasible as exc:
        rep.add("count", str(exc))
        return rep
    got = Counter((r.split, r.subsplit, r.type) for r in m.records)
    want = Counter()
    for split in ("train", "val"):
        for t, n in counts[split].items():
            want[(split, None, t)] = n
    for sub, n in counts["test"].items():
        want[("test", sub, TEST_TYPE[sub])] = n
    for key in sorted(set(got) | set(want), key=str):
        if got[key] != want[key]:
            rep.add("count", f"{key}: {got[key]} problems, expected {want[key]}")
    return rep


def summarize(m: Manifest) -> dict:
    """Counts per type, split and test sub-split."""
    return {
        "total": len(m.records),
        "types": dict(Counter(r.type for r in m.records)),
        "splits": dict(Counter(r.split for r in m.records)),
        "test": dict(Counter(r.subsplit for r in m.records if r.split == "test")),
        "cm_combos": len({r.concept.key for r in m.select("test", "cm")}),
        "nv_concepts": len({r.concept.key for r in m.select("test", "nv")}),
    }
