import json
import subprocess
import sys

import numpy as np
import pytest

from bongard_forge.cli import main
from bongard_forge.config import Config
from bongard_forge.dataset import audit_splits, load_manifest
from bongard_forge.dsl import program_from_strings, save_program
from bongard_forge.harness import answer_key, export_episodes, read_episodes, score_predictions
from bongard_forge.problems import place_program
from bongard_forge.render import load_png, render_program

from conftest import MINI_SEED


def test_missing_seed_is_usage_error(tmp_path, capsys):
    with pytest.raises(SystemExit) as info:
        main(["generate", "--out", str(tmp_path)])
    assert info.value.code == 2
    assert "--seed" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["generate", "--seed", "-3", "--out", "x"],
    ["generate", "--seed", "1", "--scale", "0", "--out", "x"],
    ["generate", "--seed", "1", "--jobs", "0", "--out", "x"],
    ["verify", "/no/such/dir"],
    ["episodes", ".", "--split", "holdout", "--seed", "1", "--out", "x"],
])
def test_bad_arguments_exit_2(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_domain_error_exits_1(tmp_path, capsys):
    assert main(["generate", "--seed", "1", "--scale", "1/100000", "--out", str(tmp_path), "--dry-run"]) == 1
    assert "SpecInfeasible" in capsys.readouterr().err
    (tmp_path / "bad.json").write_text('{"shapes": [["line(normal,2,0.5)"]]}')
    assert main(["render", str(tmp_path / "bad.json"), "--out", str(tmp_path / "x.png")]) == 1


def test_dry_run_writes_plan_only(tmp_path, capsys):
    out = tmp_path / "plan"
    assert main(["generate", "--seed", "7", "--scale", "1/100", "--out", str(out), "--dry-run"]) == 0
    m = load_manifest(out, check_files=False)
    assert len(m) == 120 and audit_splits(m).ok
    assert [p.name for p in out.iterdir()] == ["manifest.json"]
    assert '"total": 120' in capsys.readouterr().out


def test_render_matches_api(tmp_path):
    p = program_from_strings([["line(normal,0.5,0.5)", "arc(zigzag,0.5,0.75)", "line(square,0.5,0.625)"]])
    save_program(p, tmp_path / "p.json")
    assert main(["render", str(tmp_path / "p.json"), "--out", str(tmp_path / "p.png"), "--seed", "5"]) == 0
    cfg = Config()
    expect = render_program(p, place_program(p, 5, cfg), cfg.render)
    assert np.array_equal(load_png(tmp_path / "p.png"), expect)


def test_verify_and_inspect(mini, capsys):
    root, m, _ = mini
    assert main(["verify", str(root), "--jobs", "1"]) == 0
    assert "0 violations in 120 problems; audit clean" in capsys.readouterr().out
    pid = m.select("test", "cm")[0].id
    assert main(["inspect", str(root), pid]) == 0
    out = capsys.readouterr().out
    assert f"id: {pid}" in out and out.count("\n") == 3 + 14


def test_episodes_and_score_match_api(mini, tmp_path, capsys):
    root, m, _ = mini
    eps_path = tmp_path / "eps.json"
    assert main(["episodes", str(root), "--split", "test", "--seed", "3", "--out", str(eps_path)]) == 0
    assert read_episodes(eps_path) == export_episodes(m, "test", 3)[0]
    key = answer_key(m, "test", 3)
    preds = {k: list(v) for k, v in key.items()}
    first = sorted(preds)[0]
    preds[first] = preds[first][::-1]
    (tmp_path / "preds.json").write_text(json.dumps({"predictions": preds}))
    out = tmp_path / "scores.json"
    assert main(["score", str(root), str(tmp_path / "preds.json"), "--split", "test", "--seed", "3",
                 "--out", str(out)]) == 0
    got = json.loads(out.read_text())
    expect = score_predictions(m, "test", preds, 3)
    assert got["accuracy"] == expect["accuracy"] == 1 - 2 / expect["queries"]
    assert "per_problem" not in got
    del preds[first]
    (tmp_path / "preds.json").write_text(json.dumps(preds))
    assert main(["score", str(root), str(tmp_path / "preds.json"), "--split", "test", "--seed", "3"]) == 1
    assert "MissingPrediction" in capsys.readouterr().err


def test_baseline_command(mini, tmp_path):
    root, _, _ = mini
    out = tmp_path / "b.json"
    assert main(["baseline", str(root), "--split", "ff", "--kind", "random", "--seed", "1", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["queries"] == 2 * 6


def test_console_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "bongard_forge", "generate", "--seed", str(MINI_SEED),
                          "--scale", "1/100", "--out", str(tmp_path), "--dry-run"], capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    res = subprocess.run([sys.executable, "-m", "bongard_forge", "--help"], capture_output=True, text=True)
    assert res.returncode == 0 and "generate" in res.stdout
