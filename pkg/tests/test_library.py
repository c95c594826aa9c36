import json
from collections import Counter

import numpy as np
import pytest
from scipy.stats import chisquare

from bongard_forge.attributes import ATTRIBUTES
from bongard_forge.dsl import MovingType
from bongard_forge.errors import ArityMismatch, DuplicateName, EmptyFilter, InvalidStroke, ParseError, UnknownAttribute
from bongard_forge.library import Library, cached_library, instantiate_shape, load_library, sample_shape
from bongard_forge.problems import LibraryMatcher
from bongard_forge.turtle import Pose, execute_program

MIN_COVERAGE = 8


def write(tmp_path, data):
    path = tmp_path / "lib.json"
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return path


TRI = ["line(_,0.5,0.5)", "line(_,0.5,0.833)", "line(_,0.5,0.833)"]


@pytest.mark.parametrize("data, exc", [
    ("{oops", ParseError),
    ({"name": "x"}, ParseError),
    ([{"name": "x"}], ParseError),
    ([{"name": "", "strokes": TRI}], ParseError),
    ([{"name": "x", "strokes": []}], ParseError),
    ([{"name": "x", "strokes": ["line(normal,0.5,0.5)"]}], ParseError),
    ([{"name": "x", "strokes": ["blob(_,0.5,0.5)"]}], ParseError),
    ([{"name": "x", "strokes": TRI, "categories": [3]}], ParseError),
    ([{"name": "x", "strokes": ["arc(_,0.5,0.5)"]}], InvalidStroke),
    ([{"name": "x", "strokes": TRI}, {"name": "x", "strokes": TRI}], DuplicateName),
])
def test_parse_errors(tmp_path, data, exc):
    with pytest.raises(exc):
        load_library(write(tmp_path, data))


def test_small_library(tmp_path):
    lib = load_library(write(tmp_path, [{"name": "tri", "categories": ["triangle"], "strokes": TRI}]))
    assert len(lib) == 1 and "tri" in lib and lib["tri"].categories == {"triangle"}
    assert lib.vectors["tri"]["have_three_straight_lines"]
    assert lib.select(category=["triangle"], require=["closed_shape"])[0].name == "tri"
    assert lib.select(forbid=["closed_shape"]) == []
    assert len(load_library(write(tmp_path, "  \n"))) == 0


def test_version_tracks_content(tmp_path):
    a = load_library(write(tmp_path, [{"name": "tri", "strokes": TRI}]))
    b = load_library(write(tmp_path, [{"name": "tri", "strokes": TRI[:2] + ["line(_,0.5,0.834)"]}]))
    assert a.version != b.version
    assert a.version == load_library(write(tmp_path, [{"name": "tri", "strokes": TRI}])).version


def test_starter_library_loads(lib):
    assert len(lib) >= 500
    assert cached_library() is lib
    assert all(e.categories for e in lib)


@pytest.mark.parametrize("attribute", ATTRIBUTES)
def test_every_attribute_has_both_polarities(lib, attribute):
    true = len(lib.attribute_index[attribute])
    assert true >= MIN_COVERAGE and len(lib) - true >= MIN_COVERAGE


def test_no_geometric_duplicates(lib):
    matcher = LibraryMatcher(lib)
    rng = np.random.default_rng(3)
    for e in lib:
        pose = Pose(tuple(rng.uniform(50, 450, 2)), float(rng.uniform(0, 360)), float(rng.uniform(20, 200)))
        comp = execute_program(instantiate_shape(e, "random", rng), pose).components[0]
        assert [m.name for m in matcher.match(comp)] == [e.name]


def test_sample_shape_is_uniform(lib):
    rng = np.random.default_rng(2024)
    pool = lib.select(require=["convex"])
    draws = Counter(sample_shape(lib, {"require": {"convex"}}, rng).name for _ in range(50 * len(pool)))
    assert set(draws) <= {e.name for e in pool}
    observed = [draws[e.name] for e in pool]
    assert chisquare(observed).pvalue > 1e-3


def test_sample_shape_filters(lib, rng):
    e = sample_shape(lib, {"category": "triangle", "forbid": ["symmetric"]}, rng)
    assert "triangle" in e.categories and not lib.vectors[e.name]["symmetric"]
    with pytest.raises(EmptyFilter):
        sample_shape(lib, {"require": ["have_two_parts", "convex"]}, rng)
    with pytest.raises(ValueError):
        sample_shape(lib, {"colour": "red"}, rng)
    with pytest.raises(UnknownAttribute):
        sample_shape(lib, {"require": ["pointy"]}, rng)


def test_instantiate_shape(lib, rng):
    e = lib.entries[0]
    p = instantiate_shape(e, ["zigzag"] * len(e.strokes))
    assert {a.moving_type for a in p.shapes[0]} == {MovingType.ZIGZAG}
    assert [a.stroke for a in p.shapes[0]] == list(e.strokes)
    with pytest.raises(ArityMismatch):
        instantiate_shape(e, ["normal"])
    with pytest.raises(ValueError):
        instantiate_shape(e, "random")


def test_library_rejects_duplicate_names(lib):
    with pytest.raises(DuplicateName):
        Library([lib.entries[0], lib.entries[0]])
