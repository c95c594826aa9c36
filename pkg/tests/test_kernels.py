import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bongard_forge import kernels

compiled = kernels.compiled
python = kernels.python
needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")

seeds = st.integers(0, 2**32 - 1)


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")
    assert (kernels.BACKEND == "cython") == (compiled is not None)


def test_env_forces_fallback():
    env = dict(os.environ, BONGARD_FORGE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from bongard_forge import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_compiled
@settings(max_examples=40, deadline=None)
@given(seeds)
def test_raster_backends_agree(seed):
    rng = np.random.default_rng(seed)
    segs = rng.uniform(-10, 74, size=(int(rng.integers(0, 12)), 4))
    ss = int(rng.integers(1, 5))
    half = float(rng.uniform(0.2, 4))
    a = compiled.raster_capsules(segs, 64, 48, ss, half)
    b = python.raster_capsules(segs, 64, 48, ss, half)
    assert a.dtype == b.dtype == np.uint8
    assert np.array_equal(a, b)


@needs_compiled
@settings(max_examples=60, deadline=None)
@given(seeds)
def test_hausdorff_backends_agree(seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(int(rng.integers(1, 300)), 2))
    b = rng.normal(size=(int(rng.integers(1, 300)), 2))
    assert compiled.hausdorff(a, b) == python.hausdorff(a, b)


def test_hausdorff_definition():
    a = np.array([[0.0, 0.0], [1.0, 0.0]])
    b = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 3.0]])
    assert kernels.hausdorff(a, b) == 3.0
    assert kernels.hausdorff(a, a) == 0.0
    assert kernels.hausdorff(a, np.empty((0, 2))) == float("inf")


@needs_compiled
@settings(max_examples=60, deadline=None)
@given(seeds)
def test_near_and_scan_backends_agree(seed):
    rng = np.random.default_rng(seed)
    segs = rng.normal(size=(int(rng.integers(1, 20)), 4))
    pts = np.vstack([segs[:, :2], segs[:, 2:]]) + rng.normal(scale=0.01, size=(2 * len(segs), 2))
    tol = float(rng.uniform(0.001, 0.05))
    assert compiled.points_near_segments(pts, segs, tol) == python.points_near_segments(pts, segs, tol)
    ang = np.linspace(0, np.pi, 90, endpoint=False)
    cs = np.column_stack([np.cos(2 * ang), np.sin(2 * ang)])
    center = pts.mean(axis=0)
    assert compiled.reflection_scan(pts, segs, center, cs, 0.5) == python.reflection_scan(pts, segs, center, cs, 0.5)


@pytest.mark.parametrize("backend", [b for b in (compiled, python) if b is not None])
def test_reflection_scan_finds_the_axis(backend):
    # an isosceles triangle mirrored about the y axis
    V = np.array([[-1.0, 0.0], [1.0, 0.0], [0.0, 2.0], [-1.0, 0.0]])
    segs = np.hstack([V[:-1], V[1:]])
    pts = np.vstack([V[i] + t * (V[i + 1] - V[i]) for i in range(3) for t in np.linspace(0, 1, 9)])
    ang = np.arange(180) * np.pi / 180
    cs = np.column_stack([np.cos(2 * ang), np.sin(2 * ang)])
    k = backend.reflection_scan(pts, segs, pts.mean(axis=0) * [0, 1], cs, 1e-9)
    assert k == 90
    assert backend.points_near_segments(pts, segs, 1e-12)
    assert not backend.points_near_segments(pts + [0, 0.1], segs, 1e-3)
