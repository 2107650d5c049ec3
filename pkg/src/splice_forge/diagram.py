"""Splice diagram data model, structural validation and isomorphism.

A splice diagram is a finite tree.  Inner vertices (``node``) carry a positive
integer weight at the root of every incident edge; terminal vertices are either
boundary vertices (``bound``) or arrowheads (``arrow``), the latter carrying a
non-zero multiplicity.  Terminal ends of an edge never carry a weight.

Values are immutable; every transformation returns a new diagram.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping

NODE = "node"
BOUND = "bound"
ARROW = "arrow"
KINDS = (NODE, BOUND, ARROW)


@dataclass(frozen=True)
class Edge:
    a: str
    b: str
    wa: int | None = None
    wb: int | None = None

    def other(self, v: str) -> str:
        if v == self.a:
            return self.b
        if v == self.b:
            return self.a
        raise KeyError(v)

    def weight_at(self, v: str) -> int | None:
        if v == self.a:
            return self.wa
        if v == self.b:
            return self.wb
        raise KeyError(v)

    @property
    def key(self) -> frozenset:
        return frozenset((self.a, self.b))


@dataclass(frozen=True)
class Phantom:
    """A regular Seifert fiber at an inner vertex, seen as a weight-1 leaf."""

    vertex: str


@dataclass(frozen=True)
class SpliceDiagram:
    vertices: tuple[tuple[str, str], ...]
    edges: tuple[Edge, ...]
    mults: tuple[tuple[str, int], ...] = ()

    @classmethod
    def build(cls, vertices: Mapping[str, str], edges: Iterable, mults: Mapping[str, int] = None):
        es = []
        for e in edges:
            es.append(e if isinstance(e, Edge) else Edge(*e))
        return cls(
            vertices=tuple(sorted(vertices.items())),
            edges=tuple(es),
            mults=tuple(sorted((mults or {}).items())),
        )

    # -- lookups -----------------------------------------------------------

    @cached_property
    def kinds(self) -> dict[str, str]:
        return dict(self.vertices)

    @cached_property
    def multiplicity(self) -> dict[str, int]:
        return dict(self.mults)

    @cached_property
    def _incident(self) -> dict[str, list[Edge]]:
        inc = {v: [] for v in self.kinds}
        for e in self.edges:
            for end in (e.a, e.b):
                inc.setdefault(end, []).append(e)
        return inc

    def kind(self, v: str) -> str:
        return self.kinds[v]

    @property
    def nodes(self) -> list[str]:
        return sorted(v for v, k in self.vertices if k == NODE)

    @property
    def arrows(self) -> list[str]:
        return sorted(v for v, k in self.vertices if k == ARROW)

    @property
    def bounds(self) -> list[str]:
        return sorted(v for v, k in self.vertices if k == BOUND)

    @property
    def terminals(self) -> list[str]:
        return sorted(v for v, k in self.vertices if k != NODE)

    @property
    def is_degenerate(self) -> bool:
        """True for diagrams without inner vertices (a single terminal-terminal edge)."""
        return not self.nodes

    def incident(self, v: str) -> list[Edge]:
        return list(self._incident.get(v, ()))

    def degree(self, v: str) -> int:
        return len(self._incident.get(v, ()))

    def neighbors(self, v: str) -> list[str]:
        return [e.other(v) for e in self._incident.get(v, ())]

    def edge(self, u: str, v: str) -> Edge:
        for e in self._incident.get(u, ()):
            if e.other(u) == v:
                return e
        raise KeyError(f"no edge {u}--{v}")

    def weight(self, v: str, toward: str) -> int:
        """Root weight at inner vertex ``v`` on the edge leading to ``toward``."""
        return self.edge(v, toward).weight_at(v)

    def weights(self, v: str) -> dict[str, int]:
        return {e.other(v): e.weight_at(v) for e in self.incident(v)}

    def inner_edges(self) -> list[tuple[str, str]]:
        out = []
        for e in self.edges:
            if self.kinds.get(e.a) == NODE and self.kinds.get(e.b) == NODE:
                out.append(tuple(sorted((e.a, e.b))))
        return sorted(out)

    def attachment(self, t: str) -> str:
        """The unique neighbour of terminal vertex ``t``."""
        (nb,) = self.neighbors(t)
        return nb

    def path(self, x: str, y: str) -> list[str]:
        """Vertex sequence of the unique tree path from ``x`` to ``y``."""
        prev = {x: None}
        stack = [x]
        while stack:
            u = stack.pop()
            if u == y:
                break
            for w in self.neighbors(u):
                if w not in prev:
                    prev[w] = u
                    stack.append(w)
        if y not in prev:
            raise KeyError(f"{y} not reachable from {x}")
        out = [y]
        while out[-1] != x:
            out.append(prev[out[-1]])
        return out[::-1]

    def side(self, u: str, v: str) -> set[str]:
        """Vertices on ``v``'s side of the edge ``u--v``."""
        seen = {u, v}
        stack = [v]
        while stack:
            w = stack.pop()
            for z in self.neighbors(w):
                if z not in seen:
                    seen.add(z)
                    stack.append(z)
        seen.discard(u)
        return seen

    # -- transformations ---------------------------------------------------

    def with_mults(self, mults: Mapping[str, int]) -> "SpliceDiagram":
        new = dict(self.multiplicity)
        new.update(mults)
        return SpliceDiagram(self.vertices, self.edges, tuple(sorted(new.items())))

    def with_phantom(self, v: str, leaf_id: str | None = None) -> tuple["SpliceDiagram", str]:
        """Attach a weight-1 arrow at inner vertex ``v``; returns (diagram, arrow id)."""
        if self.kind(v) != NODE:
            raise KeyError(f"{v} is not an inner vertex")
        leaf = leaf_id or fresh_id(self.kinds, f"~{v}")
        kinds = dict(self.kinds)
        kinds[leaf] = ARROW
        mults = dict(self.multiplicity)
        mults[leaf] = 1
        return SpliceDiagram.build(kinds, self.edges + (Edge(v, leaf, 1, None),), mults), leaf

    def relabel(self, mapping: Mapping[str, str]) -> "SpliceDiagram":
        f = lambda v: mapping.get(v, v)
        return SpliceDiagram.build(
            {f(v): k for v, k in self.vertices},
            [Edge(f(e.a), f(e.b), e.wa, e.wb) for e in self.edges],
            {f(a): m for a, m in self.mults},
        )

    def __str__(self) -> str:
        from .dsl import serialize_diagram

        return serialize_diagram(self, "dsl")


def fresh_id(taken, base: str) -> str:
    if base not in taken:
        return base
    i = 2
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


# -- validation -------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    rule: str
    location: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [
                {"rule": v.rule, "location": v.location, "message": v.message}
                for v in self.violations
            ],
        }


def validate(d: SpliceDiagram) -> ValidationReport:
    out: list[Violation] = []
    add = lambda rule, loc, msg: out.append(Violation(rule, loc, msg))

    for v, k in d.vertices:
        if k not in KINDS:
            add("kind", v, f"unknown vertex kind {k!r}")
    for e in d.edges:
        for end, w in ((e.a, e.wa), (e.b, e.wb)):
            if end not in d.kinds:
                add("dangling", f"{e.a}--{e.b}", f"edge endpoint {end} is not a vertex")
            elif d.kinds[end] == NODE and w is None:
                add("weight-missing", f"{end}@{e.other(end)}", "inner-vertex root without weight")
            elif d.kinds[end] != NODE and w is not None:
                add("weight-terminal", f"{end}@{e.other(end)}", "weight on a terminal end")
            elif d.kinds[end] == NODE and w <= 0:
                add("weight-positive", f"{end}@{e.other(end)}", f"non-positive weight {w}")
    if out:
        return ValidationReport(tuple(out))

    # tree: connected with |E| = |V| - 1, no duplicate edges
    n = len(d.vertices)
    if n == 0:
        add("tree", "-", "empty diagram")
    else:
        if len({e.key for e in d.edges}) != len(d.edges) or any(e.a == e.b for e in d.edges):
            add("tree", "-", "repeated edge or loop")
        if len(d.edges) != n - 1:
            add("tree", "-", f"{len(d.edges)} edges for {n} vertices; not a tree")
        start = d.vertices[0][0]
        seen = {start}
        stack = [start]
        while stack:
            for w in d.neighbors(stack.pop()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != n:
            add("tree", "-", "diagram is not connected")

    for v, k in d.vertices:
        deg = d.degree(v)
        if k == NODE and deg < 2:
            add("inner-degree", v, f"inner vertex of degree {deg}")
        if k != NODE and deg != 1:
            add("terminal-degree", v, f"terminal vertex of degree {deg}")

    mult = d.multiplicity
    for a in d.arrows:
        if a not in mult:
            add("mult-missing", a, "arrowhead without multiplicity")
        elif mult[a] == 0:
            add("mult-nonzero", a, "zero multiplicity")
    for a in mult:
        if d.kinds.get(a) != ARROW:
            add("mult-orphan", a, "multiplicity on a non-arrowhead")

    for v in d.nodes:
        ws = [e.weight_at(v) for e in d.incident(v)]
        for x, y in combinations(ws, 2):
            if math.gcd(x, y) != 1:
                add("coprime", v, f"weights {sorted(ws)} not pairwise coprime (gcd({x},{y})>1)")
                break
    return ValidationReport(tuple(out))


def require_valid(d: SpliceDiagram) -> None:
    from .errors import InvalidDiagramError

    rep = validate(d)
    if not rep.ok:
        v = rep.violations[0]
        raise InvalidDiagramError(f"invalid diagram: {v.rule} at {v.location}: {v.message}", rep)


# -- isomorphism ------------------------------------------------------------


def _canon(d: SpliceDiagram, v: str, parent: str | None) -> str:
    k = d.kind(v)
    if k == ARROW:
        return f"A{d.multiplicity.get(v, 0)}"
    if k == BOUND:
        return "B"
    kids = sorted(f"{d.weight(v, w)}:{_canon(d, w, v)}" for w in d.neighbors(v) if w != parent)
    up = f"^{d.weight(v, parent)}" if parent is not None else ""
    return f"N{up}(" + ",".join(kids) + ")"


def canonical_form(d: SpliceDiagram) -> str:
    """Label-free string that is equal for exactly the isomorphic diagrams."""
    if d.is_degenerate:
        ends = sorted(_canon(d, t, None) for t in d.terminals)
        return "E(" + ",".join(ends) + ")"
    return min(_canon(d, v, None) for v in d.nodes)


def isomorphic(d1: SpliceDiagram, d2: SpliceDiagram) -> bool:
    return canonical_form(d1) == canonical_form(d2)
