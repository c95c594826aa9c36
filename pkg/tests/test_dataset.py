import dataclasses
import json
import shutil
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bongard_forge.dataset import (
    MANIFEST_NAME,
    BenchmarkSpec,
    Manifest,
    audit_splits,
    build_benchmark,
    largest_remainder,
    load_manifest,
    problem_seed,
    program_length,
    summarize,
    verify_dataset,
    write_dataset,
)
from bongard_forge.errors import InsufficientLibraryCoverage, MissingFile, SchemaVersionMismatch, SpecInfeasible
from bongard_forge.problems import Concept

from conftest import MINI, MINI_SEED


def test_largest_remainder_examples():
    assert largest_remainder(10, {"a": 1, "b": 1, "c": 1}) == {"a": 4, "b": 3, "c": 3}
    assert largest_remainder(120, {"ff": 3600, "ba": 4000, "ab": 4400}) == {"ff": 36, "ba": 40, "ab": 44}
    assert largest_remainder(7, {"x": 0.5, "y": 0.3, "z": 0.2}) == {"x": 4, "y": 2, "z": 1}
    with pytest.raises(ValueError):
        largest_remainder(5, {"a": 0})


@given(st.integers(0, 5000), st.lists(st.integers(1, 100), min_size=1, max_size=6))
def test_largest_remainder_properties(total, ws):
    weights = {str(i): w for i, w in enumerate(ws)}
    out = largest_remainder(total, weights)
    assert sum(out.values()) == total
    for k, w in weights.items():
        exact = Fraction(total * w, sum(ws))
        assert exact - 1 < out[k] < exact + 1


def test_full_scale_counts(full_plan):
    m, _ = full_plan
    s = summarize(m)
    assert s["total"] == 12000
    assert s["types"] == {"freeform": 3600, "basic": 4000, "abstract": 4400}
    assert s["splits"] == {"train": 9300, "val": 900, "test": 1800}
    assert s["test"] == {"ff": 600, "ba": 480, "cm": 400, "nv": 320}
    assert s["cm_combos"] == 20
    assert audit_splits(m).ok


def test_spec_validation():
    with pytest.raises(SpecInfeasible):
        BenchmarkSpec(Fraction(0))
    with pytest.raises(SpecInfeasible):
        BenchmarkSpec(Fraction(1, 10000)).counts()
    with pytest.raises(SpecInfeasible):
        BenchmarkSpec(train_max=9)
    with pytest.raises(ValueError):
        BenchmarkSpec(seed=-1)
    with pytest.raises(InsufficientLibraryCoverage):
        BenchmarkSpec(held_out_attribute="pointy")
    spec = BenchmarkSpec(MINI, 2**64 - 1)
    assert BenchmarkSpec.from_dict(json.loads(json.dumps(spec.to_dict()))) == spec


def test_problem_seed_is_stable():
    assert problem_seed(7, "a") == problem_seed(7, "a")
    assert len({problem_seed(7, "a"), problem_seed(7, "b"), problem_seed(8, "a")}) == 3
    assert 0 <= problem_seed(2**64 - 1, "x") < 2**64


def test_plan_is_deterministic(lib, cfg):
    a = build_benchmark(BenchmarkSpec(MINI, MINI_SEED), cfg, lib)
    b = build_benchmark(BenchmarkSpec(MINI, MINI_SEED), cfg, lib)
    c = build_benchmark(BenchmarkSpec(MINI, MINI_SEED + 1), cfg, lib)
    assert a.dumps() == b.dumps()
    assert a.dumps() != c.dumps()


def test_mini_build(mini):
    root, m, _ = mini
    assert len(m) == 120
    assert audit_splits(m).ok
    assert load_manifest(root).dumps() == m.dumps()
    for r in m.records:
        assert all((root / f).exists() for f in r.files)
    assert not any(verify_dataset(root, jobs=1).values())


def test_worker_count_does_not_change_output(mini, tmp_path):
    root, m, _ = mini
    part = dataclasses.replace(m, records=m.records[::20])
    write_dataset(part, tmp_path, jobs=2)
    for r in part.records:
        for f in r.files:
            assert (tmp_path / f).read_bytes() == (root / f).read_bytes()


def test_mini_lengths(mini):
    _, m, _ = mini
    assert {program_length(r.concept.program) for r in m.select("test", "ff")} == {9}
    assert max(program_length(r.concept.program) for r in m.select(type="freeform") if r.split != "test") <= 8


def test_missing_file_is_named(mini, tmp_path):
    root = tmp_path / "copy"
    shutil.copytree(mini[0], root)
    victim = root / mini[1].records[3].files[5]
    victim.unlink()
    with pytest.raises(MissingFile) as info:
        load_manifest(root)
    assert str(victim) in str(info.value)
    assert load_manifest(root, check_files=False).dumps() == mini[1].dumps()
    with pytest.raises(MissingFile):
        load_manifest(tmp_path / "nowhere")


def test_schema_mismatch(mini, tmp_path):
    d = json.loads((mini[0] / MANIFEST_NAME).read_text())
    d["schema_version"] = 99
    (tmp_path / MANIFEST_NAME).write_text(json.dumps(d))
    with pytest.raises(SchemaVersionMismatch):
        load_manifest(tmp_path, check_files=False)


def with_record(m, index, **changes):
    recs = list(m.records)
    recs[index] = dataclasses.replace(recs[index], **changes)
    return dataclasses.replace(m, records=tuple(recs))


def test_audit_catches_held_out_leak(full_plan):
    m, _ = full_plan
    i = next(i for i, r in enumerate(m.records) if r.split == "train" and r.type == "abstract")
    held = m.spec.held_out_attribute
    bad = with_record(m, i, concept=Concept.abstract((m.records[i].concept.attributes[0], held)))
    found = audit_splits(bad).findings
    assert len(found) == 1 and found[0].kind == "leakage"


def test_audit_catches_long_train_program(full_plan):
    m, _ = full_plan
    i = next(i for i, r in enumerate(m.records) if r.split == "train" and r.type == "freeform")
    long = m.select("test", "ff")[0].concept
    kinds = [f.kind for f in audit_splits(with_record(m, i, concept=long)).findings]
    assert "length" in kinds and "leakage" in kinds


def test_audit_catches_counts_and_ids(full_plan):
    m, _ = full_plan
    bad = dataclasses.replace(m, records=m.records[:-1] + (m.records[0],))
    kinds = {f.kind for f in audit_splits(bad).findings}
    assert kinds == {"identity", "count"}


def test_manifest_roundtrip(full_plan):
    m, _ = full_plan
    assert Manifest.from_dict(json.loads(m.dumps())) == m
