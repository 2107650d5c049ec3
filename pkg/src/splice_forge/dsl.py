"""Text formats for splice diagrams: the line-oriented DSL, JSON and DOT.

DSL statements end with ``;`` and ``#`` starts a comment::

    node v;                 # inner vertex
    bound v:2;              # boundary vertex, root weight 2 at v
    arrow v:1 m=1;          # arrowhead, root weight 1, multiplicity 1
    edge u:1 -- v:13;       # inner edge with a root weight at each end
    link a1 <-> a2 m=(1,-1);   # the two-arrowhead diagram; must stand alone

Boundary vertices and arrowheads are named ``b1, b2, ...`` and ``a1, a2, ...``
in order of appearance.  Two further stand-alone forms, ``unknot a1 m=M;``
(arrowhead joined to a boundary vertex) and ``trivial;`` (two boundary
vertices), describe the other inner-vertex-free diagrams that minimisation
can produce.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .diagram import ARROW, BOUND, NODE, Edge, SpliceDiagram, fresh_id
from .errors import DiagramSyntaxError

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>\#[^\n]*)"
    r"|(?P<punct><->|--|m=\(|m=|[:;,)])"
    r"|(?P<int>-?\d+)|(?P<id>[A-Za-z_][A-Za-z0-9_.'~]*)"
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks, pos, line, line_start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DiagramSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise DiagramSyntaxError(msg, tok.line, tok.col)

    def take(self, kind, text=None):
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text or kind
            self.fail(f"expected {want!r}, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok

    def ident(self):
        return self.take("id")

    def integer(self, positive=False):
        tok = self.take("int")
        return int(tok.text), tok


def parse_diagram(text: str) -> SpliceDiagram:
    p = _Parser(text)
    nodes: dict[str, _Tok] = {}
    # terminal statements: (kind, at_tok, weight, mult, mult_tok)
    terms = []
    inner = []  # (u_tok, wu, v_tok, wv)
    standalone = None
    n_stmts = 0

    while p.peek().kind != "eof":
        head = p.ident()
        n_stmts += 1
        kw = head.text
        if kw == "node":
            tok = p.ident()
            if tok.text in nodes:
                p.fail(f"duplicate vertex id {tok.text!r}", tok)
            nodes[tok.text] = tok
        elif kw in ("bound", "arrow"):
            at = p.ident()
            p.take("punct", ":")
            w, _ = p.integer()
            m = mtok = None
            if kw == "arrow":
                p.take("punct", "m=")
                m, mtok = p.integer()
                if m == 0:
                    p.fail("zero multiplicity", mtok)
            terms.append((kw, at, w, m))
        elif kw == "edge":
            u = p.ident()
            p.take("punct", ":")
            wu, _ = p.integer()
            p.take("punct", "--")
            v = p.ident()
            p.take("punct", ":")
            wv, _ = p.integer()
            inner.append((u, wu, v, wv))
        elif kw == "link":
            a = p.ident()
            p.take("punct", "<->")
            b = p.ident()
            p.take("punct", "m=(")
            ma, ta = p.integer()
            p.take("punct", ",")
            mb, tb = p.integer()
            p.take("punct", ")")
            for val, tok in ((ma, ta), (mb, tb)):
                if val == 0:
                    p.fail("zero multiplicity", tok)
            if a.text == b.text:
                p.fail(f"duplicate vertex id {a.text!r}", b)
            standalone = ("link", head, a.text, b.text, ma, mb)
        elif kw == "unknot":
            a = p.ident()
            p.take("punct", "m=")
            m, mtok = p.integer()
            if m == 0:
                p.fail("zero multiplicity", mtok)
            standalone = ("unknot", head, a.text, m)
        elif kw == "trivial":
            standalone = ("trivial", head)
        else:
            p.fail(f"unknown statement {kw!r}", head)
        p.take("punct", ";")

    if standalone is not None:
        if n_stmts != 1:
            p.fail(f"'{standalone[0]}' must be the only statement", standalone[1])
        if standalone[0] == "link":
            _, _, a, b, ma, mb = standalone
            return SpliceDiagram.build({a: ARROW, b: ARROW}, [Edge(a, b)], {a: ma, b: mb})
        if standalone[0] == "unknot":
            _, _, a, m = standalone
            bnd = fresh_id({a}, "b1")
            return SpliceDiagram.build({a: ARROW, bnd: BOUND}, [Edge(a, bnd)], {a: m})
        return SpliceDiagram.build({"b1": BOUND, "b2": BOUND}, [Edge("b1", "b2")])

    def need_node(tok):
        if tok.text not in nodes:
            p.fail(f"weight on non-inner root: {tok.text!r} is not a declared node", tok)

    kinds = {v: NODE for v in nodes}
    edges, mults = [], {}
    for u, wu, v, wv in inner:
        need_node(u)
        need_node(v)
        edges.append(Edge(u.text, v.text, wu, wv))
    counters = {"bound": 0, "arrow": 0}
    for kw, at, w, m in terms:
        need_node(at)
        counters[kw] += 1
        tid = fresh_id(kinds, f"{'b' if kw == 'bound' else 'a'}{counters[kw]}")
        kinds[tid] = BOUND if kw == "bound" else ARROW
        edges.append(Edge(at.text, tid, w, None))
        if m is not None:
            mults[tid] = m
    return SpliceDiagram.build(kinds, edges, mults)


# -- serialisation ----------------------------------------------------------


def _dsl(d: SpliceDiagram) -> str:
    if d.is_degenerate:
        kinds = sorted(d.kind(t) for t in d.terminals)
        if kinds == [ARROW, ARROW]:
            a, b = d.arrows
            return f"link {a} <-> {b} m=({d.multiplicity[a]},{d.multiplicity[b]});\n"
        if kinds == [ARROW, BOUND]:
            (a,) = d.arrows
            return f"unknot {a} m={d.multiplicity[a]};\n"
        return "trivial;\n"
    lines = [f"node {v};" for v in d.nodes]
    for u, v in d.inner_edges():
        lines.append(f"edge {u}:{d.weight(u, v)} -- {v}:{d.weight(v, u)};")
    for b in d.bounds:
        at = d.attachment(b)
        lines.append(f"bound {at}:{d.weight(at, b)};")
    for a in d.arrows:
        at = d.attachment(a)
        lines.append(f"arrow {at}:{d.weight(at, a)} m={d.multiplicity[a]};")
    return "\n".join(lines) + "\n"


def to_json(d: SpliceDiagram) -> dict:
    edges = []
    for e in sorted(d.edges, key=lambda e: (e.a, e.b)):
        rec = {"a": e.a, "b": e.b}
        if e.wa is not None:
            rec["wa"] = e.wa
        if e.wb is not None:
            rec["wb"] = e.wb
        edges.append(rec)
    arrows = []
    for a in d.arrows:
        at = d.attachment(a)
        rec = {"id": a, "at": at}
        if d.kind(at) == NODE:
            rec["w"] = d.weight(at, a)
        rec["m"] = d.multiplicity[a]
        arrows.append(rec)
    return {
        "vertices": [{"id": v, "kind": k} for v, k in d.vertices],
        "edges": edges,
        "arrows": arrows,
    }


def from_json(obj) -> SpliceDiagram:
    if isinstance(obj, str):
        obj = json.loads(obj)
    kinds = {v["id"]: v["kind"] for v in obj["vertices"]}
    edges = [Edge(e["a"], e["b"], e.get("wa"), e.get("wb")) for e in obj["edges"]]
    mults = {a["id"]: a["m"] for a in obj.get("arrows", [])}
    return SpliceDiagram.build(kinds, edges, mults)


def _dot(d: SpliceDiagram, hat=None) -> str:
    out = ["graph splice {", "  node [fontname=Helvetica];"]
    for v, k in d.vertices:
        if k == NODE:
            label = v
            if hat is not None:
                label = "⊕" if hat.vertex_sign[v] > 0 else "⊖"
            out.append(f'  "{v}" [shape=circle, label="{label}"];')
        elif k == BOUND:
            out.append(f'  "{v}" [shape=point];')
        else:
            out.append(f'  "{v}" [shape=plaintext, label="{v} m={d.multiplicity.get(v)}"];')
    for e in sorted(d.edges, key=lambda e: (e.a, e.b)):
        a, b = e.a, e.b
        wa, wb = e.wa, e.wb
        if d.kind(a) == ARROW and d.kind(b) != ARROW:
            a, b, wa, wb = b, a, wb, wa
        attrs = []
        if wa is not None:
            tl = str(wa)
            if hat is not None:
                tl += " " + ("+" if hat.root_sign[(a, b)] > 0 else "-")
            attrs.append(f'taillabel="{tl}"')
        if wb is not None:
            hl = str(wb)
            if hat is not None:
                hl += " " + ("+" if hat.root_sign[(b, a)] > 0 else "-")
            attrs.append(f'headlabel="{hl}"')
        heads = [d.kind(x) == ARROW for x in (a, b)]
        if heads[0] and heads[1]:
            attrs.append("dir=both")
        elif heads[1]:
            attrs.append("dir=forward")
        out.append(f'  "{a}" -- "{b}" [{", ".join(attrs)}];')
    out.append("}")
    return "\n".join(out) + "\n"


def serialize_diagram(d: SpliceDiagram, format: str = "dsl", hat=None) -> str:
    if format == "dsl":
        return _dsl(d)
    if format == "json":
        return json.dumps(to_json(d), indent=2, sort_keys=False) + "\n"
    if format == "dot":
        return _dot(d, hat)
    raise ValueError(f"unsupported format {format!r}")
