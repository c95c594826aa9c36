import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bongard_forge.config import Config  # noqa: E402
from bongard_forge.dataset import BenchmarkSpec, build_benchmark, write_dataset  # noqa: E402
from bongard_forge.library import cached_library  # noqa: E402

MINI = Fraction(1, 100)
MINI_SEED = 7


@pytest.fixture(scope="session")
def lib():
    return cached_library()


@pytest.fixture(scope="session")
def cfg():
    return Config()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def full_plan(lib, cfg):
    """Scale-1 manifest (no rendering) and the time it took to plan."""
    t0 = time.perf_counter()
    m = build_benchmark(BenchmarkSpec(Fraction(1), MINI_SEED), cfg, lib)
    return m, time.perf_counter() - t0


def _write_mini(root: Path, lib, cfg):
    t0 = time.perf_counter()
    m = build_benchmark(BenchmarkSpec(MINI, MINI_SEED), cfg, lib)
    write_dataset(m, root)
    return m, time.perf_counter() - t0


@pytest.fixture(scope="session")
def mini(tmp_path_factory, lib, cfg):
    """Mini build written to disk: (root, manifest, seconds)."""
    root = tmp_path_factory.mktemp("mini") / "data"
    m, seconds = _write_mini(root, lib, cfg)
    return root, m, seconds


@pytest.fixture(scope="session")
def mini_again(tmp_path_factory, lib, cfg):
    """A second, independent mini build with the same seed."""
    root = tmp_path_factory.mktemp("mini2") / "data"
    m, seconds = _write_mini(root, lib, cfg)
    return root, m, seconds
