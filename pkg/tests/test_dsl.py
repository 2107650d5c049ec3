import json

import pytest
from hypothesis import given

from splice_forge.diagram import isomorphic
from splice_forge.dsl import from_json, parse_diagram, serialize_diagram, to_json
from splice_forge.errors import DiagramSyntaxError
from strategies import diagrams


def test_comments_and_layout():
    d = parse_diagram("# trefoil\nnode v;\n  bound v:2;  # first\nbound v:3;\narrow v:1 m=1;\n")
    assert d.arrows == ["a1"] and d.multiplicity["a1"] == 1


def test_standalone_forms():
    link = parse_diagram("link a1 <-> a2 m=(1,-1);")
    assert link.is_degenerate and link.multiplicity == {"a1": 1, "a2": -1}
    assert parse_diagram("unknot a1 m=2;").bounds == ["b1"]
    assert len(parse_diagram("trivial;").bounds) == 2


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("node v;\nbound v:2\narrow v:1 m=1;", 3, 1),
        ("node v; arrow w:2 m=1;", 1, 15),
        ("node v; node v;", 1, 14),
        ("node v; arrow v:2 m=0;", 1, 21),
        ("node v; bound v:2; $", 1, 20),
        ("node v; link a1 <-> a2 m=(1,1);", 1, 9),
    ],
)
def test_syntax_errors_have_positions(text, line, column):
    with pytest.raises(DiagramSyntaxError) as exc:
        parse_diagram(text)
    assert (exc.value.line, exc.value.column) == (line, column)


def test_dsl_output_is_deterministic():
    text = "node v; arrow v:1 m=1; bound v:3; bound v:2;"
    assert serialize_diagram(parse_diagram(text)) == "node v;\nbound v:3;\nbound v:2;\narrow v:1 m=1;\n"


def test_json_shape():
    obj = to_json(parse_diagram("node v; bound v:2; arrow v:3 m=-2;"))
    assert obj["arrows"] == [{"id": "a1", "at": "v", "w": 3, "m": -2}]
    assert {"a": "v", "b": "b1", "wa": 2} in obj["edges"]


def test_dot_mentions_every_vertex():
    dot = serialize_diagram(parse_diagram("node v; bound v:2; bound v:3; arrow v:1 m=1;"), "dot")
    for v in ("v", "a1", "b1", "b2"):
        assert f'"{v}"' in dot


def test_unknown_format():
    with pytest.raises(ValueError):
        serialize_diagram(parse_diagram("trivial;"), "yaml")


@given(diagrams())
def test_dsl_round_trip(d):
    assert isomorphic(parse_diagram(serialize_diagram(d)), d)


@given(diagrams())
def test_json_round_trip_is_exact(d):
    back = from_json(json.loads(serialize_diagram(d, "json")))
    assert back.vertices == d.vertices and back.mults == d.mults
    assert set(back.edges) == set(d.edges)
