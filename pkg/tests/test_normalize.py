import pytest
from hypothesis import given

from splice_forge.calculus import is_fibered, linking_number
from splice_forge.diagram import isomorphic, validate
from splice_forge.dsl import parse_diagram, serialize_diagram
from splice_forge.errors import PreconditionError
from splice_forge.normalize import (
    S3Answer,
    apply_move3,
    apply_move6,
    check_s3_cabling,
    invert,
    is_type_arrow_arrow,
    minimize,
    replay,
)
from strategies import diagrams

CABLE = "node u; node v; edge u:1 -- v:13; bound u:2; bound u:3; arrow v:2 m=1; bound v:1;"


def test_move3_dissolves_two_valent_vertex():
    d = parse_diagram(CABLE)
    out = apply_move3(d, ("v", "b3"))
    assert out.nodes == ["u"]
    assert out.weight("u", "a1") == 1
    assert validate(out).ok


def test_move3_on_three_valent_vertex_keeps_it():
    d = parse_diagram("node v; bound v:1; arrow v:2 m=1; arrow v:3 m=1; arrow v:5 m=1;")
    out = apply_move3(d, ("v", "b1"))
    assert out.nodes == ["v"] and out.degree("v") == 3


def test_move3_preconditions():
    d = parse_diagram(CABLE)
    with pytest.raises(PreconditionError):
        apply_move3(d, ("u", "b1"))
    with pytest.raises(PreconditionError):
        apply_move3(d, ("v", "a1"))


def test_move6_merges_nodes():
    # a0 * a0' = 1 * 6 = 2 * 3 * 1
    d = parse_diagram("node u; node v; edge u:1 -- v:6; arrow u:2 m=1; arrow u:3 m=1; arrow v:1 m=1;")
    out = apply_move6(d, ("u", "v"))
    assert out.nodes == ["u"]
    assert linking_number(out, "a1", "a2") == linking_number(d, "a1", "a2")


def test_move6_condition_checked():
    d = parse_diagram(CABLE)
    with pytest.raises(PreconditionError):
        apply_move6(d, ("u", "v"))


def test_cable_minimises_to_trefoil():
    small, trace = minimize(parse_diagram(CABLE))
    assert isomorphic(small, parse_diagram("node v; bound v:2; bound v:3; arrow v:1 m=1;"))
    assert [s.move for s in trace.steps] == ["3"]


def test_unit_node_becomes_type_link():
    small, trace = minimize(parse_diagram("node v; arrow v:1 m=1; arrow v:1 m=1;"))
    assert is_type_arrow_arrow(small)
    assert serialize_diagram(small) == "link a1 <-> a2 m=(1,1);\n"


def test_invert_negates():
    d = invert(parse_diagram("node v; arrow v:2 m=1; arrow v:3 m=-2;"))
    assert d.multiplicity == {"a1": -1, "a2": 2}


@pytest.mark.parametrize(
    "text, answer",
    [
        ("node v; bound v:2; bound v:3; arrow v:1 m=1;", S3Answer.YES),
        ("node v; bound v:2; bound v:3; arrow v:5 m=1;", S3Answer.UNKNOWN),
        (CABLE, S3Answer.YES),
        ("node u; node v; edge u:1 -- v:2; bound u:2; bound u:3; arrow v:7 m=1;", S3Answer.YES),
        ("node u; node v; edge u:5 -- v:7; bound u:2; bound u:3; bound v:2; arrow v:3 m=1;", S3Answer.UNKNOWN),
    ],
)
def test_check_s3(text, answer):
    assert check_s3_cabling(parse_diagram(text)) is answer


@given(diagrams())
def test_minimize_is_idempotent_and_replayable(d):
    small, trace = minimize(d)
    again, trace2 = minimize(small)
    assert len(trace2) == 0 and again == small
    assert replay(d, trace) == small


@given(diagrams())
def test_minimize_keeps_arrows_and_fiberedness(d):
    small, _ = minimize(d)
    assert small.multiplicity == d.multiplicity
    assert is_fibered(small).fibered == is_fibered(d).fibered


@given(diagrams())
def test_minimize_keeps_arrow_linking(d):
    small, _ = minimize(d)
    arrows = d.arrows
    for i, x in enumerate(arrows):
        for y in arrows[i + 1 :]:
            assert linking_number(small, x, y) == linking_number(d, x, y)
