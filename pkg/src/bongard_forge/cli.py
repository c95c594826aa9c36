"""bongard-forge command line.

    bongard-forge generate --scale 1/100 --seed 7 --out mini/
    bongard-forge verify mini/
    bongard-forge render prog.json --out s.png
    bongard-forge episodes mini/ --split test --seed 1 --out episodes.json
    bongard-forge score mini/ predictions.json --split test --seed 1
    bongard-forge baseline mini/ --kind pixel_prototype --split ff --seed 1
    bongard-forge inspect mini/ test-ff-00000

Exit status: 0 success, 1 domain error (printed as ``ErrorName: message``),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .config import load_config
from .dataset import (
    BenchmarkSpec,
    audit_splits,
    build_benchmark,
    load_manifest,
    summarize,
    verify_dataset,
    write_dataset,
)
from .dsl import DEFAULT_GRID, ValueGrid, load_program
from .errors import BongardForgeError
from .harness import (
    HARNESS_SPLITS,
    export_episodes,
    read_predictions,
    run_baseline,
    score_predictions,
    write_episodes,
)
from .problems import load_problem, place_program
from .render import render_program, save_png


def _scale(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid scale {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("scale must be positive")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _jobs(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("--jobs must be at least 1")
    return value


def _existing(text: str) -> Path:
    p = Path(text)
    if not p.exists():
        raise argparse.ArgumentTypeError(f"no such file or directory: {text}")
    return p


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bongard-forge", description="Generate, verify and evaluate Bongard-style problems.")
    ap.add_argument("--config", type=_existing, help="TOML config (default: $BONGARD_FORGE_CONFIG)")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="plan, generate, verify and write a benchmark")
    g.add_argument("--seed", type=_seed, required=True)
    g.add_argument("--scale", type=_scale, default=Fraction(1))
    g.add_argument("--out", type=Path, required=True)
    g.add_argument("--jobs", type=_jobs, default=None, help="worker processes (default: logical cores)")
    g.add_argument("--library", type=_existing, help="library JSON (default: bundled starter library)")
    g.add_argument("--grid", type=_existing, help="value grid JSON for free-form sampling")
    g.add_argument("--dry-run", action="store_true", help="plan and audit only; write manifest.json without images")

    v = sub.add_parser("verify", help="re-verify every problem of a dataset and audit its splits")
    v.add_argument("dataset", type=_existing)
    v.add_argument("--jobs", type=_jobs, default=None)

    r = sub.add_parser("render", help="render one program file to PNG")
    r.add_argument("program", type=_existing)
    r.add_argument("--out", type=Path, required=True)
    r.add_argument("--seed", type=_seed, default=0, help="pose seed")

    e = sub.add_parser("episodes", help="export solver-facing episodes for a split")
    e.add_argument("dataset", type=_existing)
    e.add_argument("--split", choices=HARNESS_SPLITS, required=True)
    e.add_argument("--seed", type=_seed, required=True, help="query-order seed; needed again for scoring")
    e.add_argument("--out", type=Path, required=True)

    s = sub.add_parser("score", help="score a predictions file")
    s.add_argument("dataset", type=_existing)
    s.add_argument("predictions", type=_existing)
    s.add_argument("--split", choices=HARNESS_SPLITS, required=True)
    s.add_argument("--seed", type=_seed, required=True)
    s.add_argument("--out", type=Path, help="write scores.json here")
    s.add_argument("--detail", action="store_true", help="include per-problem results")

    b = sub.add_parser("baseline", help="run a built-in baseline end to end")
    b.add_argument("dataset", type=_existing)
    b.add_argument("--kind", choices=("random", "pixel_prototype"), default="random")
    b.add_argument("--split", choices=HARNESS_SPLITS, required=True)
    b.add_argument("--seed", type=_seed, default=0)
    b.add_argument("--out", type=Path)

    i = sub.add_parser("inspect", help="print a problem's concept and programs")
    i.add_argument("path", type=_existing, help="dataset root or problem directory")
    i.add_argument("id", nargs="?", help="problem id when PATH is a dataset root")
    return ap


def _grid(path: Path | None) -> ValueGrid:
    if path is None:
        return DEFAULT_GRID
    return ValueGrid.from_dict(json.loads(path.read_text()))


def _progress(verbose: bool):
    if not verbose:
        return None

    def show(done, total):
        if done == total or done % 50 == 0:
            print(f"  {done}/{total}", file=sys.stderr)

    return show


def cmd_generate(args, cfg) -> int:
    spec = BenchmarkSpec(args.scale, args.seed, _grid(args.grid), str(args.library) if args.library else None)
    m = build_benchmark(spec, cfg)
    audit = audit_splits(m)
    for f in audit.findings:
        print(f"audit {f.kind}: {f.message}")
    if not audit.ok:
        return 1
    if args.dry_run:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / "manifest.json").write_text(m.dumps())
    else:
        write_dataset(m, args.out, args.jobs, _progress(args.verbose))
    print(json.dumps(summarize(m), sort_keys=True))
    print(f"wrote {len(m)} problems to {args.out}" + (" (dry run)" if args.dry_run else ""))
    return 0


def cmd_verify(args, cfg) -> int:
    results = verify_dataset(args.dataset, args.jobs, _progress(args.verbose))
    n = 0
    for pid, violations in sorted(results.items()):
        for v in violations:
            print(f"{pid}: {v}")
            n += 1
    audit = audit_splits(load_manifest(args.dataset, check_files=False))
    for f in audit.findings:
        print(f"audit {f.kind}: {f.message}")
    print(f"{n} violations in {len(results)} problems; audit {'clean' if audit.ok else f'{len(audit.findings)} findings'}")
    return 0 if n == 0 and audit.ok else 1


def cmd_render(args, cfg) -> int:
    program = load_program(args.program)
    poses = place_program(program, args.seed, cfg)
    save_png(render_program(program, poses, cfg.render), args.out, cfg.render.png_compress_level)
    return 0


def cmd_episodes(args, cfg) -> int:
    m = load_manifest(args.dataset, check_files=False)
    episodes, _ = export_episodes(m, args.split, args.seed)
    write_episodes(args.out, args.split, episodes)
    print(f"{len(episodes)} episodes written to {args.out}")
    return 0


def _report(scores: dict, out: Path | None, detail: bool) -> None:
    if not detail:
        scores = {k: v for k, v in scores.items() if k != "per_problem"}
    if out is not None:
        out.write_text(json.dumps(scores, indent=1, sort_keys=True) + "\n")
    lo, hi = scores["ci95"]
    print(f"{scores['split']}: accuracy {scores['accuracy']:.4f} over {scores['queries']} queries "
          f"(95% CI {lo:.4f}-{hi:.4f})")


def cmd_score(args, cfg) -> int:
    m = load_manifest(args.dataset, check_files=False)
    scores = score_predictions(m, args.split, read_predictions(args.predictions), args.seed)
    _report(scores, args.out, args.detail)
    return 0


def cmd_baseline(args, cfg) -> int:
    m = load_manifest(args.dataset)
    scores = run_baseline(m, args.split, args.kind, args.seed, args.dataset)
    _report(scores, args.out, False)
    return 0


def cmd_inspect(args, cfg) -> int:
    path = args.path
    if args.id is not None:
        path = path / args.id
    p = load_problem(path)
    c = p.concept
    print(f"id: {p.id}")
    print(f"type: {c.type}")
    if c.type == "freeform":
        print(f"concept program: {c.program}")
    else:
        print(f"concept: {' + '.join(c.categories or c.attributes)}")
    for name, rec, positive in p.images():
        extra = f"  [{', '.join(rec.entries)}]" if rec.entries else ""
        print(f"{name:9s} {'+' if positive else '-'} {rec.program}{extra}")
    return 0


COMMANDS = {
    "generate": cmd_generate,
    "verify": cmd_verify,
    "render": cmd_render,
    "episodes": cmd_episodes,
    "score": cmd_score,
    "baseline": cmd_baseline,
    "inspect": cmd_inspect,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        return COMMANDS[args.command](args, cfg)
    except BongardForgeError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
