import json

import numpy as np
import pytest
from PIL import Image

from bongard_forge.errors import ImageReadError, MissingPrediction, UnknownId, UnknownSplit
from bongard_forge.harness import (
    Episode,
    answer_key,
    baseline_predict,
    downsample,
    export_episodes,
    read_episodes,
    read_predictions,
    run_baseline,
    score_predictions,
    wilson_interval,
    write_episodes,
    write_predictions,
)

SEED = 99


def flipped(labels):
    return ["negative" if x == "positive" else "positive" for x in labels]


def test_episodes_hide_labels(mini, tmp_path):
    _, m, _ = mini
    eps, key = export_episodes(m, "test", SEED)
    assert len(eps) == len(m.select("test")) == len(key)
    write_episodes(tmp_path / "episodes.json", "test", eps)
    doc = json.loads((tmp_path / "episodes.json").read_text())
    assert set(doc) == {"schema_version", "split", "episodes"}
    assert all(set(e) == {"id", "support", "queries"} for e in doc["episodes"])
    assert "negative\"]" not in json.dumps(doc) and "concept" not in json.dumps(doc)
    assert read_episodes(tmp_path / "episodes.json") == eps
    for e in eps:
        assert len(e.support_positive) == len(e.support_negative) == 6
        assert sorted(q.rsplit("/", 1)[1] for q in e.queries) == ["neg_test.png", "pos_test.png"]


def test_query_order_depends_on_seed(full_plan):
    m, _ = full_plan
    a, b = answer_key(m, "test", 1), answer_key(m, "test", 2)
    assert a != b
    assert answer_key(m, "test", 1) == a
    first_pos = sum(v[0] == "positive" for v in a.values())
    assert 0.4 < first_pos / len(a) < 0.6


def test_perfect_and_inverted(full_plan):
    m, _ = full_plan
    key = answer_key(m, "nv", SEED)
    assert score_predictions(m, "nv", key, SEED)["accuracy"] == 1.0
    inv = {k: flipped(v) for k, v in key.items()}
    assert score_predictions(m, "nv", inv, SEED)["accuracy"] == 0.0
    half = {k: (v[0], flipped(v)[1]) for k, v in key.items()}
    s = score_predictions(m, "nv", half, SEED)
    assert s["accuracy"] == 0.5 and s["queries"] == 640


def test_random_baseline_is_calibrated(full_plan):
    m, _ = full_plan
    s = run_baseline(m, "test", "random", SEED)
    assert s["queries"] == 3600
    assert abs(s["accuracy"] - 0.5) <= 0.03


def test_wilson_interval():
    # reference value for 50/100 at 95%
    lo, hi = wilson_interval(50, 100)
    assert lo == pytest.approx(0.403831, abs=1e-6) and hi == pytest.approx(0.596169, abs=1e-6)
    assert wilson_interval(0, 0) == (0.0, 1.0)
    # all correct: the lower bound is n / (n + z^2)
    lo, hi = wilson_interval(10, 10)
    assert lo == pytest.approx(10 / (10 + 1.959964 ** 2), abs=1e-6) and hi == pytest.approx(1.0)


def test_scoring_errors(full_plan):
    m, _ = full_plan
    key = answer_key(m, "cm", SEED)
    with pytest.raises(UnknownSplit):
        score_predictions(m, "holdout", key, SEED)
    partial = dict(list(key.items())[1:])
    with pytest.raises(MissingPrediction) as info:
        score_predictions(m, "cm", partial, SEED)
    assert next(iter(key)) in str(info.value)
    with pytest.raises(UnknownId):
        score_predictions(m, "cm", {**key, "test-cm-99999": ["positive", "negative"]}, SEED)
    bad = dict(key)
    bad[next(iter(key))] = ["positive"]
    with pytest.raises(ValueError):
        score_predictions(m, "cm", bad, SEED)
    bad[next(iter(key))] = ["yes", "no"]
    with pytest.raises(ValueError):
        score_predictions(m, "cm", bad, SEED)
    with pytest.raises(ValueError):
        baseline_predict("oracle", export_episodes(m, "cm", SEED)[0][0], np.random.default_rng(0))


def test_prediction_files(tmp_path):
    preds = {"b": ["negative", "positive"], "a": ["positive", "negative"]}
    write_predictions(tmp_path / "p.json", preds)
    assert read_predictions(tmp_path / "p.json") == preds
    (tmp_path / "bare.json").write_text(json.dumps(preds))
    assert read_predictions(tmp_path / "bare.json") == preds
    (tmp_path / "bad.json").write_text("[1, 2]")
    with pytest.raises(ValueError):
        read_predictions(tmp_path / "bad.json")


def test_downsample_matches_block_means(rng):
    img = rng.integers(0, 256, size=(512, 512)).astype(float)
    oracle = img.reshape(64, 8, 64, 8).mean(axis=(1, 3))
    assert np.allclose(downsample(img), oracle, atol=1e-3)


def _save(path, value, rng):
    img = np.clip(value + rng.normal(0, 10, (512, 512)), 0, 255).astype(np.uint8)
    Image.fromarray(img).save(path)


def test_pixel_prototype_picks_nearer_class(tmp_path, rng):
    for i in range(6):
        _save(tmp_path / f"p{i}.png", 40, rng)
        _save(tmp_path / f"n{i}.png", 220, rng)
    _save(tmp_path / "qa.png", 200, rng)
    _save(tmp_path / "qb.png", 60, rng)
    ep = Episode("x", tuple(f"p{i}.png" for i in range(6)), tuple(f"n{i}.png" for i in range(6)),
                 ("qa.png", "qb.png"))
    assert baseline_predict("pixel_prototype", ep, rng, tmp_path) == ["negative", "positive"]
    with pytest.raises(ImageReadError):
        baseline_predict("pixel_prototype", Episode("y", ep.support_positive, ep.support_negative,
                                                    ("missing.png", "qa.png")), rng, tmp_path)


def test_pixel_prototype_on_mini(mini):
    root, m, _ = mini
    s = run_baseline(m, "ff", "pixel_prototype", SEED, root)
    assert s["queries"] == 2 * len(m.select("test", "ff"))
    assert 0.0 <= s["accuracy"] <= 1.0
