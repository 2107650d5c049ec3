import pytest
from hypothesis import given

from splice_forge.diagram import ARROW, BOUND, NODE, Edge, SpliceDiagram, canonical_form, isomorphic, validate
from splice_forge.dsl import parse_diagram
from splice_forge.errors import InvalidDiagramError
from splice_forge.diagram import require_valid
from strategies import diagrams

CABLE = "node u; node v; edge u:1 -- v:13; bound u:2; bound u:3; arrow v:2 m=1; bound v:1;"


def rules(text):
    return [v.rule for v in validate(parse_diagram(text)).violations]


def test_trefoil_is_valid():
    d = parse_diagram("node v; bound v:2; bound v:3; arrow v:1 m=1;")
    assert validate(d).ok
    assert d.nodes == ["v"] and d.arrows == ["a1"] and d.bounds == ["b1", "b2"]


@pytest.mark.parametrize(
    "text, rule",
    [
        ("node v; bound v:4; bound v:6; arrow v:1 m=1;", "coprime"),
        ("node v; arrow v:2 m=1;", "inner-degree"),
        ("node u; node v; arrow u:2 m=1; arrow v:3 m=1; bound u:3; bound v:2;", "tree"),
    ],
)
def test_violations(text, rule):
    assert rule in rules(text)


def test_zero_weight_rejected():
    d = SpliceDiagram.build({"v": NODE, "a": ARROW, "b": BOUND}, [Edge("v", "a", 0), Edge("v", "b", 1)], {"a": 1})
    assert "weight-positive" in [v.rule for v in validate(d).violations]


def test_missing_multiplicity():
    d = SpliceDiagram.build({"v": NODE, "a": ARROW, "b": BOUND}, [Edge("v", "a", 2), Edge("v", "b", 3)])
    assert "mult-missing" in [v.rule for v in validate(d).violations]


def test_require_valid_carries_report():
    with pytest.raises(InvalidDiagramError) as exc:
        require_valid(parse_diagram("node v; bound v:4; arrow v:6 m=1;"))
    assert not exc.value.report.ok


def test_path_and_side():
    d = parse_diagram(CABLE)
    assert d.path("b1", "a1") == ["b1", "u", "v", "a1"]
    assert d.side("u", "v") == {"v", "a1", "b3"}
    assert d.weight("v", "u") == 13


def test_canonical_form_ignores_labels():
    d = parse_diagram(CABLE)
    relabelled = d.relabel({"u": "x", "v": "y", "b1": "z"})
    assert isomorphic(d, relabelled)
    assert not isomorphic(d, d.with_mults({"a1": 2}))


@given(diagrams())
def test_relabel_keeps_canonical_form(d):
    mapping = {v: f"q{i}" for i, v in enumerate(sorted(d.kinds))}
    assert canonical_form(d.relabel(mapping)) == canonical_form(d)


@given(diagrams())
def test_generated_diagrams_are_trees(d):
    assert validate(d).ok
    assert len(d.edges) == len(d.vertices) - 1
