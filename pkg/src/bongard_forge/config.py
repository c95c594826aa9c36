"""Renderer and generator constants, overridable from a TOML file.

Example file (every key optional)::

    [render]
    canvas_width = 512
    canvas_height = 512
    stroke_width = 3.0        # px
    supersample = 4           # per axis; coverage uses supersample**2 samples
    zigzag_amplitude = 0.05   # fraction of unit length
    glyph_pitch = 0.12        # fraction of unit length
    margin_px = 8
    scale_min = 0.4           # shape extent / canvas min-dimension
    scale_max = 0.8
    png_compress_level = 6

    [generate]
    overlap_threshold = 0.15
    max_resamples = 20
    distinct_threshold = 0.05
    two_shape_probability = 0.25
    hard_negative_count = 4

The path can also come from ``BONGARD_FORGE_CONFIG``.
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

ENV_VAR = "BONGARD_FORGE_CONFIG"


@dataclass(frozen=True)
class RenderConfig:
    canvas_width: int = 512
    canvas_height: int = 512
    stroke_width: float = 3.0
    supersample: int = 4
    zigzag_amplitude: float = 0.05
    glyph_pitch: float = 0.12
    margin_px: float = 8.0
    scale_min: float = 0.4
    scale_max: float = 0.8
    png_compress_level: int = 6

    @property
    def canvas(self) -> tuple[int, int]:
        return (self.canvas_width, self.canvas_height)


@dataclass(frozen=True)
class GenerateConfig:
    overlap_threshold: float = 0.15
    max_resamples: int = 20
    distinct_threshold: float = 0.05
    two_shape_probability: float = 0.25
    hard_negative_count: int = 4


@dataclass(frozen=True)
class Config:
    render: RenderConfig = field(default_factory=RenderConfig)
    generate: GenerateConfig = field(default_factory=GenerateConfig)


def _apply(obj, table: dict, section: str):
    known = {f.name: f.type for f in fields(obj)}
    unknown = set(table) - set(known)
    if unknown:
        raise ValueError(f"unknown key(s) in [{section}]: {', '.join(sorted(unknown))}")
    cast = {}
    for key, value in table.items():
        current = getattr(obj, key)
        cast[key] = type(current)(value)
    return replace(obj, **cast)


def load_config(path: str | os.PathLike | None = None) -> Config:
    """Defaults, overridden by ``path`` (or the env var when path is None)."""
    if path is None:
        path = os.environ.get(ENV_VAR) or None
    cfg = Config()
    if path is None:
        return cfg
    data = tomllib.loads(Path(path).read_text())
    unknown = set(data) - {"render", "generate"}
    if unknown:
        raise ValueError(f"unknown section(s): {', '.join(sorted(unknown))}")
    return Config(
        render=_apply(cfg.render, data.get("render", {}), "render"),
        generate=_apply(cfg.generate, data.get("generate", {}), "generate"),
    )


def config_to_dict(cfg: Config) -> dict:
    return {"render": asdict(cfg.render), "generate": asdict(cfg.generate)}


def config_from_dict(d: dict) -> Config:
    cfg = Config()
    return Config(
        render=_apply(cfg.render, d.get("render", {}), "render"),
        generate=_apply(cfg.generate, d.get("generate", {}), "generate"),
    )
