"""Equivalence moves on splice diagrams, reduction, inversion and an S^3 test.

Only two moves (and the bookkeeping they imply) are used:

* move 3 deletes a boundary edge with root weight 1; an inner vertex left
  with two edges is dissolved and the edges fused, one left with a single
  edge becomes a boundary vertex (its remaining core is an unknot);
* move 6 merges adjacent inner vertices u, v when a0 * a0' equals the
  product of all other weights at u and v.

The reduction additionally dissolves 2-valent inner vertices with weights
(1, 1), which is how the two-arrowhead diagram arises.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from enum import Enum

from .diagram import ARROW, BOUND, NODE, Edge, SpliceDiagram, canonical_form, require_valid, validate
from .errors import PreconditionError


@dataclass(frozen=True)
class MoveStep:
    move: str  # "3", "6", "invert"
    location: str
    before: str
    after: str

    def to_dict(self) -> dict:
        return {"move": self.move, "location": self.location, "before": self.before, "after": self.after}


@dataclass(frozen=True)
class MoveTrace:
    steps: tuple[MoveStep, ...] = field(default_factory=tuple)

    def __len__(self):
        return len(self.steps)

    def to_list(self) -> list:
        return [s.to_dict() for s in self.steps]


def diagram_hash(d: SpliceDiagram) -> str:
    return hashlib.sha256(canonical_form(d).encode()).hexdigest()[:12]


def _dissolve(d: SpliceDiagram, v: str, kinds: dict, edges: list) -> None:
    """Remove 2-valent or 1-valent inner vertex ``v`` from (kinds, edges) in place."""
    inc = [e for e in edges if v in (e.a, e.b)]
    for e in inc:
        edges.remove(e)
    del kinds[v]
    if len(inc) == 2:
        (x, wx), (y, wy) = [(e.other(v), e.weight_at(e.other(v))) for e in inc]
        edges.append(Edge(x, y, wx, wy))
    elif len(inc) == 1:
        (e,) = inc
        x = e.other(v)
        kinds[v] = BOUND
        edges.append(Edge(x, v, e.weight_at(x), None))
    else:
        raise AssertionError("dissolve needs degree 1 or 2")


def apply_move3(d: SpliceDiagram, e) -> SpliceDiagram:
    v, b = e
    if d.kind(v) != NODE:
        v, b = b, v
    if d.kind(v) != NODE or d.kind(b) != BOUND:
        raise PreconditionError(f"{e}: move 3 needs an inner vertex joined to a boundary vertex")
    if d.weight(v, b) != 1:
        raise PreconditionError(f"{e}: move 3 needs root weight 1, found {d.weight(v, b)}")
    kinds = dict(d.kinds)
    edges = [x for x in d.edges if x.key != frozenset((v, b))]
    del kinds[b]
    remaining = sum(1 for x in edges if v in (x.a, x.b))
    if remaining <= 2:
        _dissolve(d, v, kinds, edges)
    return SpliceDiagram.build(kinds, edges, d.multiplicity)


def _move6_ok(d: SpliceDiagram, u: str, v: str) -> bool:
    a0, a0p = d.weight(u, v), d.weight(v, u)
    rest = [w for nb, w in d.weights(u).items() if nb != v] + [w for nb, w in d.weights(v).items() if nb != u]
    return a0 * a0p == math.prod(rest)


def apply_move6(d: SpliceDiagram, e) -> SpliceDiagram:
    u, v = e
    if d.kind(u) != NODE or d.kind(v) != NODE:
        raise PreconditionError(f"{e}: move 6 needs an inner edge")
    if not _move6_ok(d, u, v):
        raise PreconditionError(f"{e}: edge condition a0*a0' = product of other weights fails")
    keep, gone = sorted((u, v))
    kinds = dict(d.kinds)
    del kinds[gone]
    edges = []
    for x in d.edges:
        if x.key == frozenset((u, v)):
            continue
        if gone in (x.a, x.b):
            other = x.other(gone)
            x = Edge(keep, other, x.weight_at(gone), x.weight_at(other))
        edges.append(x)
    out = SpliceDiagram.build(kinds, edges, d.multiplicity)
    rep = validate(out)
    if not rep.ok:
        raise PreconditionError(f"{e}: merged vertex invalid: {rep.violations[0].message}")
    return out


def _unit_vertex(d: SpliceDiagram, v: str) -> SpliceDiagram:
    kinds = dict(d.kinds)
    edges = list(d.edges)
    _dissolve(d, v, kinds, edges)
    return SpliceDiagram.build(kinds, edges, d.multiplicity)


def _next_move(d: SpliceDiagram):
    for v in d.nodes:
        for nb in sorted(d.neighbors(v)):
            if d.kind(nb) == BOUND and d.weight(v, nb) == 1:
                return "3", (v, nb), lambda: apply_move3(d, (v, nb))
    for u, v in d.inner_edges():
        if _move6_ok(d, u, v):
            try:
                out = apply_move6(d, (u, v))
            except PreconditionError:
                continue
            return "6", (u, v), lambda out=out: out
    for v in d.nodes:
        if d.degree(v) == 2 and all(w == 1 for w in d.weights(v).values()):
            return "3", (v,), lambda: _unit_vertex(d, v)
    return None


def minimize(d: SpliceDiagram) -> tuple[SpliceDiagram, MoveTrace]:
    """Apply moves 3 and 6 greedily in a fixed order until none applies."""
    require_valid(d)
    steps = []
    while True:
        nxt = _next_move(d)
        if nxt is None:
            return d, MoveTrace(tuple(steps))
        move, loc, run = nxt
        new = run()
        steps.append(MoveStep(move, "--".join(loc) if len(loc) == 2 else f"unit:{loc[0]}", diagram_hash(d), diagram_hash(new)))
        d = new


def replay(d: SpliceDiagram, trace: MoveTrace) -> SpliceDiagram:
    for step in trace.steps:
        if step.move == "invert":
            d = invert(d)
        elif step.location.startswith("unit:"):
            d = _unit_vertex(d, step.location[5:])
        elif step.move == "3":
            d = apply_move3(d, tuple(step.location.split("--")))
        else:
            d = apply_move6(d, tuple(step.location.split("--")))
        if diagram_hash(d) != step.after:
            raise AssertionError(f"replay diverged at {step}")
    return d


def invert(d: SpliceDiagram) -> SpliceDiagram:
    return d.with_mults({a: -m for a, m in d.mults})


def is_type_arrow_arrow(d: SpliceDiagram) -> bool:
    return d.is_degenerate and len(d.arrows) == 2


class S3Answer(str, Enum):
    YES = "Yes"
    UNKNOWN = "Unknown"


def _core_is_unknot(ws: list[int], at: int) -> bool:
    """Is the core with weight ws[at] an unknot in Sigma(ws) (assumed to be S^3)?"""
    big_others = sum(1 for i, w in enumerate(ws) if i != at and w > 1)
    return ws[at] > 1 or big_others <= 1


def check_s3_cabling(d: SpliceDiagram) -> S3Answer:
    """Sufficient test that the ambient homology sphere is S^3.

    Repeatedly peel an inner vertex v with at most one inner edge when its own
    piece is S^3 (at most two weights > 1) and the core along that inner edge
    is an unknot there; splicing along an unknot in S^3 leaves the other side's
    manifold unchanged, so the inner edge becomes a boundary vertex.  Answers
    ``Yes`` when everything peels, ``Unknown`` otherwise.
    """
    require_valid(d)
    while True:
        nodes = d.nodes
        if not nodes:
            return S3Answer.YES
        if len(nodes) == 1:
            ws = list(d.weights(nodes[0]).values())
            return S3Answer.YES if sum(w > 1 for w in ws) <= 2 else S3Answer.UNKNOWN
        for v in nodes:
            inner = [nb for nb in d.neighbors(v) if d.kind(nb) == NODE]
            if len(inner) != 1:
                continue
            nbs = d.neighbors(v)
            ws = [d.weight(v, nb) for nb in nbs]
            if sum(w > 1 for w in ws) > 2 or not _core_is_unknot(ws, nbs.index(inner[0])):
                continue
            u = inner[0]
            part = d.side(u, v)
            kinds = {x: k for x, k in d.vertices if x not in part}
            edges = [e for e in d.edges if e.a not in part and e.b not in part]
            kinds[v] = BOUND
            edges.append(Edge(u, v, d.weight(u, v), None))
            d = SpliceDiagram.build(kinds, edges, {a: m for a, m in d.mults if a in kinds})
            break
        else:
            return S3Answer.UNKNOWN
