"""Two-way six-shot episodes, file-based solver protocol and scoring.

``episodes.json`` (given to solvers)::

    {"schema_version": 1, "split": "ff",
     "episodes": [{"id": "test-ff-00000",
                   "support": {"positive": [6 paths], "negative": [6 paths]},
                   "queries": [path, path]}, ...]}

``predictions.json`` (returned by solvers)::

    {"schema_version": 1, "predictions": {"test-ff-00000": ["positive", "negative"], ...}}

Labels are per query, in the order the queries were listed.  The answer key
is never written next to the episodes; it is re-derived from the export seed
when scoring.  Paths are relative to the dataset root.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np
from PIL import Image

from .dataset import Manifest, ProblemRecord, SUBSPLITS, SPLITS
from .errors import ImageReadError, MissingPrediction, UnknownId, UnknownSplit
from .problems import N_CONTEXT

EPISODES_SCHEMA = 1
LABELS = ("positive", "negative")
HARNESS_SPLITS = SPLITS + SUBSPLITS
Z95 = 1.959963984540054
PROTOTYPE_SIZE = 64


@dataclass(frozen=True)
class Episode:
    id: str
    support_positive: tuple[str, ...]
    support_negative: tuple[str, ...]
    queries: tuple[str, str]

    def to_dict(self) -> dict:
        return {"id": self.id,
                "support": {"positive": list(self.support_positive), "negative": list(self.support_negative)},
                "queries": list(self.queries)}

    @classmethod
    def from_dict(cls, d: dict) -> "Episode":
        return cls(d["id"], tuple(d["support"]["positive"]), tuple(d["support"]["negative"]), tuple(d["queries"]))


def split_records(m: Manifest, split: str) -> list[ProblemRecord]:
    if split in SPLITS:
        return m.select(split)
    if split in SUBSPLITS:
        return m.select("test", split)
    raise UnknownSplit(f"unknown split {split!r}; choose from {', '.join(HARNESS_SPLITS)}")


def _swap(seed: int, problem_id: str) -> bool:
    """Whether the negative test image is listed first."""
    words = np.frombuffer(hashlib.sha256(problem_id.encode()).digest()[:8], dtype="<u4")
    rng = np.random.default_rng([int(seed) & 0xFFFFFFFF, int(seed) >> 32, *map(int, words)])
    return bool(rng.integers(2))


def _episode(rec: ProblemRecord, seed: int) -> tuple[Episode, tuple[str, str]]:
    pid = rec.id
    pos = tuple(f"{pid}/pos_{i}.png" for i in range(N_CONTEXT))
    neg = tuple(f"{pid}/neg_{i}.png" for i in range(N_CONTEXT))
    q = (f"{pid}/pos_test.png", f"{pid}/neg_test.png")
    labels = ("positive", "negative")
    if _swap(seed, pid):
        q, labels = q[::-1], labels[::-1]
    return Episode(pid, pos, neg, q), labels


def export_episodes(m: Manifest, split: str, seed: int) -> tuple[list[Episode], dict[str, tuple[str, str]]]:
    """One episode per problem of ``split`` (sorted by id) and the answer key."""
    eps, key = [], {}
    for rec in sorted(split_records(m, split), key=lambda r: r.id):
        ep, labels = _episode(rec, seed)
        eps.append(ep)
        key[rec.id] = labels
    return eps, key


def answer_key(m: Manifest, split: str, seed: int) -> dict[str, tuple[str, str]]:
    return export_episodes(m, split, seed)[1]


def episodes_document(split: str, episodes: Sequence[Episode]) -> dict:
    return {"schema_version": EPISODES_SCHEMA, "split": split, "episodes": [e.to_dict() for e in episodes]}


def write_episodes(path: str | Path, split: str, episodes: Sequence[Episode]) -> None:
    Path(path).write_text(json.dumps(episodes_document(split, episodes), indent=1, sort_keys=True) + "\n")


def read_episodes(path: str | Path) -> list[Episode]:
    doc = json.loads(Path(path).read_text())
    return [Episode.from_dict(d) for d in doc["episodes"]]


def read_predictions(path: str | Path) -> dict[str, list[str]]:
    doc = json.loads(Path(path).read_text())
    if isinstance(doc, dict) and "predictions" in doc:
        doc = doc["predictions"]
    if not isinstance(doc, dict) or not all(isinstance(v, list) for v in doc.values()):
        raise ValueError(f"{path} is not a predictions file (expected a map of id to two labels)")
    return doc


def write_predictions(path: str | Path, preds: Mapping[str, Sequence[str]]) -> None:
    doc = {"schema_version": EPISODES_SCHEMA, "predictions": {k: list(v) for k, v in sorted(preds.items())}}
    Path(path).write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")


def wilson_interval(correct: int, n: int, z: float = Z95) -> tuple[float, float]:
    if n == 0:
        return 0.0, 1.0
    p = correct / n
    den = 1 + z * z / n
    mid = (p + z * z / (2 * n)) / den
    half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / den
    return max(0.0, mid - half), min(1.0, mid + half)


def score_predictions(m: Manifest, split: str, preds: Mapping[str, Sequence[str]], seed: int) -> dict:
    """Per-query accuracy of ``preds`` against the key regenerated from ``seed``."""
    key = answer_key(m, split, seed)
    unknown = sorted(set(preds) - set(key))
    if unknown:
        raise UnknownId(f"{len(unknown)} prediction id(s) not in split {split!r}: {', '.join(unknown[:10])}")
    missing = set(key) - set(preds)
    if missing:
        raise MissingPrediction(missing)
    correct = 0
    detail = {}
    for pid in sorted(key):
        got = list(preds[pid])
        if len(got) != 2 or any(g not in LABELS for g in got):
            raise ValueError(f"{pid}: expected two labels from {LABELS}, got {got!r}")
        hits = [g == k for g, k in zip(got, key[pid])]
        detail[pid] = hits
        correct += sum(hits)
    n = 2 * len(key)
    lo, hi = wilson_interval(correct, n)
    return {"split": split, "queries": n, "correct": correct, "accuracy": correct / n if n else 0.0,
            "ci95": [lo, hi], "per_problem": detail}


# ---------------------------------------------------------------------------
# baselines


def _load(root: Path, rel: str) -> np.ndarray:
    try:
        with Image.open(root / rel) as im:
            return np.asarray(im.convert("L"), dtype=np.float64)
    except (OSError, ValueError) as exc:
        raise ImageReadError(f"{root / rel}: {exc}") from None


def downsample(img: np.ndarray, size: int = PROTOTYPE_SIZE) -> np.ndarray:
    """Box-filter ``img`` to ``size`` x ``size`` (block means when it divides)."""
    im = Image.fromarray(np.asarray(img, dtype=np.float32), mode="F")
    return np.asarray(im.resize((size, size), Image.BOX), dtype=np.float64)


def baseline_predict(kind: str, episode: Episode, rng: np.random.Generator, root: str | Path = ".") -> list[str]:
    """``random``: uniform labels.  ``pixel_prototype``: nearer class mean in
    64x64 block-mean pixel space (L2); ties go to positive."""
    if kind == "random":
        return [LABELS[int(i)] for i in rng.integers(0, 2, size=2)]
    if kind != "pixel_prototype":
        raise ValueError(f"unknown baseline {kind!r}")
    root = Path(root)
    pos = np.mean([downsample(_load(root, p)) for p in episode.support_positive], axis=0)
    neg = np.mean([downsample(_load(root, p)) for p in episode.support_negative], axis=0)
    out = []
    for q in episode.queries:
        x = downsample(_load(root, q))
        out.append("positive" if np.sum((x - pos) ** 2) <= np.sum((x - neg) ** 2) else "negative")
    return out


def run_baseline(m: Manifest, split: str, kind: str, seed: int, root: str | Path = ".") -> dict:
    """Export, predict with a built-in baseline, and score."""
    episodes, _ = export_episodes(m, split, seed)
    rng = np.random.default_rng(seed)
    preds = {e.id: baseline_predict(kind, e, rng, root) for e in episodes}
    return score_predictions(m, split, preds, seed)
