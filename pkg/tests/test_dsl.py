import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bongard_forge.dsl import (
    DEFAULT_GRID,
    INCOMPARABLE,
    ActionProgram,
    BaseAction,
    Kind,
    MovingType,
    ValueGrid,
    degrees,
    field_alternatives,
    load_program,
    parse_action,
    parse_stroke,
    perturb_program,
    program_edit_distance,
    program_from_strings,
    quantize_action,
    sample_action,
    save_program,
    serialize_action,
    serialize_stroke,
    validate_program,
)
from bongard_forge.errors import (
    DSLError,
    ExhaustedAlternatives,
    MalformedSyntax,
    UnknownKind,
    UnknownMovingType,
    ValueOutOfRange,
)

milli = st.integers(0, 1000).map(lambda k: k / 1000)
actions = st.builds(BaseAction, st.sampled_from(list(Kind)), st.sampled_from(list(MovingType)), milli, milli)
programs = st.lists(st.lists(actions, min_size=1, max_size=9), min_size=1, max_size=2).map(
    lambda shapes: ActionProgram(tuple(tuple(s) for s in shapes)))


@given(actions)
def test_action_roundtrip(a):
    assert parse_action(serialize_action(a)) == a


@given(st.sampled_from(list(Kind)), st.sampled_from(list(MovingType)),
       st.floats(0, 1), st.floats(0, 1))
def test_quantize_is_idempotent(kind, mt, length, angle):
    q = quantize_action(BaseAction(kind, mt, length, angle))
    assert quantize_action(q) == q
    assert abs(q.length - length) <= 5e-4 + 1e-12
    assert abs(q.angle - angle) <= 5e-4 + 1e-12


@given(programs)
def test_program_dict_roundtrip(p):
    d = json.loads(json.dumps(p.to_dict()))
    assert ActionProgram.from_dict(d) == p
    assert program_edit_distance(p, ActionProgram.from_dict(d)) == 0


def test_stroke_placeholder():
    s = parse_stroke("arc(_, 0.25, 0.75)")
    assert s.kind is Kind.ARC and s.length == 0.25 and s.angle == 0.75
    assert serialize_stroke(s) == "arc(_,0.250,0.750)"
    with pytest.raises(MalformedSyntax):
        parse_stroke("arc(normal,0.25,0.75)")


def test_whitespace_and_signs():
    assert parse_action("  line ( zigzag , .5 , +0.25 ) ") == BaseAction("line", "zigzag", 0.5, 0.25)


@pytest.mark.parametrize("text, exc", [
    ("line(normal,0.5)", MalformedSyntax),
    ("line normal 0.5 0.5", MalformedSyntax),
    ("", MalformedSyntax),
    ("curve(normal,0.5,0.5)", UnknownKind),
    ("line(dotted,0.5,0.5)", UnknownMovingType),
    ("line(normal,1.5,0.5)", ValueOutOfRange),
    ("arc(normal,0.5,-0.1)", ValueOutOfRange),
    ("line(normal,0.5,0.5,0.5)", MalformedSyntax),
])
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_action(text)


def test_errors_share_a_base():
    with pytest.raises(DSLError):
        parse_action("nope")
    with pytest.raises(MalformedSyntax):
        ActionProgram.from_dict({"shape": []})
    with pytest.raises(MalformedSyntax):
        ActionProgram.from_dict({"shapes": ["line(normal,0.5,0.5)"]})
    with pytest.raises(ValueOutOfRange):
        BaseAction("line", "normal", float("nan"), 0.5)


def test_angle_mapping():
    assert degrees(0.5) == 0.0
    assert degrees(0.75) == 90.0
    assert degrees(0.25) == -90.0
    assert degrees(0.0) == -180.0
    assert degrees(1.0) == 180.0


def test_validation_codes():
    p = program_from_strings([["arc(normal,0.5,0.5)", "line(normal,0.3,0.5)"]])
    report = validate_program(p, DEFAULT_GRID, freeform=True)
    assert set(report.codes()) == {"degenerate_arc", "grid_length"}
    assert not report
    single = program_from_strings([["line(normal,0.5,0.5)"]])
    assert validate_program(single, freeform=True).codes() == ["stroke_count"]
    three = ActionProgram(((BaseAction("line", "normal", 0.5, 0.5),),) * 3)
    assert validate_program(three).codes() == ["shape_count"]
    assert validate_program(ActionProgram(((),))).codes() == ["empty_shape"]
    ok = program_from_strings([["line(normal,0.5,0.5)", "arc(square,0.25,0.75)"]])
    assert validate_program(ok, DEFAULT_GRID, freeform=True).ok


def test_grid_checks():
    with pytest.raises(ValueOutOfRange):
        ValueGrid(lengths=(0.5, 0.25))
    with pytest.raises(ValueOutOfRange):
        ValueGrid(lengths=(0.25, 0.3))
    with pytest.raises(ValueOutOfRange):
        ValueGrid(angles=())
    g = ValueGrid.parse("0.25,0.5;0,0.5,0.75")
    assert g.lengths == (0.25, 0.5) and g.angles == (0.0, 0.5, 0.75)
    assert ValueGrid.from_dict(g.to_dict()) == g
    with pytest.raises(MalformedSyntax):
        ValueGrid.parse("0.25,0.5")


def test_alternatives_never_degenerate():
    a = BaseAction("arc", "normal", 0.5, 0.75)
    alts = field_alternatives(a, DEFAULT_GRID)
    assert 0.5 not in alts["angle"]
    assert set(alts["moving_type"]) == set(MovingType) - {MovingType.NORMAL}
    straight = BaseAction("line", "normal", 0.5, 0.5)
    assert "kind" not in field_alternatives(straight, DEFAULT_GRID)


@settings(max_examples=200)
@given(st.integers(0, 2**32 - 1))
def test_perturbation_changes_one_field(seed):
    rng = np.random.default_rng(seed)
    p = ActionProgram.single(sample_action(rng, DEFAULT_GRID) for _ in range(int(rng.integers(2, 10))))
    q = perturb_program(p, DEFAULT_GRID, rng)
    assert program_edit_distance(p, q) == 1
    assert validate_program(q, DEFAULT_GRID).ok


def test_perturbation_needs_two_values(rng):
    p = program_from_strings([["line(normal,0.5,0.5)"]])
    with pytest.raises(ExhaustedAlternatives):
        perturb_program(p, ValueGrid(lengths=(0.5,)), rng)


def test_edit_distance_structure():
    p = program_from_strings([["line(normal,0.5,0.5)", "line(normal,0.5,0.5)"]])
    q = program_from_strings([["line(normal,0.5,0.5)"]])
    assert program_edit_distance(p, q) == INCOMPARABLE
    r = program_from_strings([["arc(zigzag,0.75,0.625)", "line(normal,0.5,0.5)"]])
    assert program_edit_distance(p, r) == 4


def test_program_files(tmp_path):
    p = program_from_strings([["line(normal,0.5,0.5)"], ["arc(circle,0.25,0.625)"]])
    save_program(p, tmp_path / "p.json")
    assert load_program(tmp_path / "p.json") == p
    (tmp_path / "bad.json").write_text("{not json")
    with pytest.raises(MalformedSyntax):
        load_program(tmp_path / "bad.json")
