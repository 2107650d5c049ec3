from math import prod

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from splice_forge.calculus import (
    cut,
    fiber_degrees,
    hat_gamma,
    induced_multiplicity,
    is_fibered,
    linking_number,
    linking_oracle,
    seifert_multilink,
    splice,
)
from splice_forge.diagram import isomorphic
from splice_forge.dsl import parse_diagram
from splice_forge.errors import NotFiberedError, PreconditionError
from strategies import diagrams

TREFOIL = parse_diagram("node v; bound v:2; bound v:3; arrow v:1 m=1;")
CABLE = parse_diagram("node u; node v; edge u:1 -- v:13; bound u:2; bound u:3; arrow v:2 m=1; bound v:1;")


def test_single_node_closed_form():
    d = parse_diagram("node v; arrow v:2 m=1; arrow v:3 m=1; arrow v:5 m=1;")
    ws = d.weights("v")
    for x, y in [("a1", "a2"), ("a1", "a3"), ("a2", "a3")]:
        assert linking_number(d, x, y) == prod(ws.values()) // (ws[x] * ws[y])


def test_trefoil_values():
    assert linking_number(TREFOIL, "a1", "b1") == 3
    assert linking_number(TREFOIL, "b1", "b2") == 1
    assert fiber_degrees(TREFOIL) == {"v": 6}


def test_cable_values():
    # the path a1 - v - u - b1 picks up the off-path weights 1 (at v) and 3 (at u)
    assert linking_number(CABLE, "a1", "b1") == 3
    assert linking_oracle(CABLE, "a1", "b1") == 3
    assert fiber_degrees(CABLE) == {"u": 6, "v": 13}


def test_not_fibered():
    d = parse_diagram("node v; arrow v:2 m=2; arrow v:3 m=-3;")
    rep = is_fibered(d)
    assert not rep.fibered and rep.l_values == {"v": 0}
    with pytest.raises(NotFiberedError):
        hat_gamma(d)


def test_type_link_is_fibered():
    assert is_fibered(parse_diagram("link a1 <-> a2 m=(1,-1);")).fibered


def test_seifert_multilink_of_cable():
    assert seifert_multilink(CABLE, "v") == {"a1": 1, "b3": 0, "u": 0}
    # the core on u's side sees the arrowhead through v
    assert induced_multiplicity(CABLE, ("u", "v"), "left") == 1
    assert induced_multiplicity(CABLE, ("u", "v"), "right") == 0


def test_cut_reports_new_leaves():
    res = cut(CABLE, ("u", "v"))
    assert res.left_mult == 1 and res.right_mult == 0
    assert res.left.kind(res.left_leaf) == "arrow"
    assert res.right.kind(res.right_leaf) == "bound"


def test_cut_needs_inner_edge():
    with pytest.raises(PreconditionError):
        cut(CABLE, ("v", "a1"))


def test_hat_of_mixed_node():
    hat = hat_gamma(parse_diagram("node v; arrow v:2 m=1; arrow v:3 m=-1;"))
    assert hat.vertex_sign == {"v": 1}
    assert hat.root_sign[("v", "a2")] == -1
    assert not hat.all_positive
    assert "(+) v" in hat.ascii()


@given(diagrams())
def test_linking_matches_oracle(d):
    for i, x in enumerate(d.terminals):
        for y in d.terminals[i + 1 :]:
            lk = linking_number(d, x, y)
            assert lk == linking_oracle(d, x, y) == linking_number(d, y, x)
            assert lk > 0


@given(diagrams(max_nodes=3))
def test_cut_then_splice(d):
    for u, v in d.inner_edges():
        c = cut(d, (u, v))
        back = splice(c.left, c.left_leaf, c.right, c.right_leaf)
        assert isomorphic(back, d)


@given(diagrams(mults=st.integers(1, 3)))
def test_all_positive_roots_are_nonnegative(d):
    assume(is_fibered(d).fibered)
    hat = hat_gamma(d)
    assert all(s > 0 for s in hat.vertex_sign.values())
    assert hat.all_positive
