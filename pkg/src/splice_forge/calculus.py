"""Linking numbers, fiber degrees, cutting/splicing and the signed hat decoration.

Two independent routes compute linking numbers between leaves of a diagram:

* :func:`linking_number` multiplies, along the tree path between the leaves,
  the root weights that are adjacent to the path but not on it;
* :func:`linking_oracle` presents H_1 of the exterior of all terminal leaves
  using the per-vertex (Q, H) bases, the meridian/longitude change of basis
  and the meridian-longitude swap across every inner edge, then reads the
  longitude of one leaf in the basis of meridians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .diagram import ARROW, BOUND, NODE, Edge, Phantom, SpliceDiagram, fresh_id, require_valid
from .errors import NotFiberedError, PreconditionError
from .seifert import node_data


def _endpoint(d: SpliceDiagram, x):
    if isinstance(x, Phantom):
        if d.kind(x.vertex) != NODE:
            raise KeyError(f"phantom leaf needs an inner vertex, got {x.vertex}")
        return x.vertex
    if d.kind(x) == NODE:
        raise KeyError(f"{x} is an inner vertex, not a leaf")
    return x


def linking_number(d: SpliceDiagram, x, y) -> int:
    """Path-product linking number of two distinct leaves.

    Leaves are terminal vertex ids (arrowheads, or boundary vertices standing
    for the cores they fill) or :class:`Phantom` regular fibers.
    """
    if x == y:
        raise ValueError("linking number of a leaf with itself is undefined")
    sx, sy = _endpoint(d, x), _endpoint(d, y)
    path = d.path(sx, sy)
    on_path = {u: set() for u in path}
    for u, w in zip(path, path[1:]):
        on_path[u].add(w)
        on_path[w].add(u)
    prod = 1
    for u in path:
        if d.kind(u) != NODE:
            continue
        for nb, w in d.weights(u).items():
            if nb not in on_path[u]:
                prod *= w
    return prod


# -- homological oracle -----------------------------------------------------


def _rref_solve(cols, rhss, n_rows):
    """Solve sum_j z_j cols[j] = rhs for each rhs over Q; free variables set to 0."""
    n_c = len(cols)
    M = [[Fraction(cols[j][i]) for j in range(n_c)] + [Fraction(r[i]) for r in rhss] for i in range(n_rows)]
    pivots = []
    row = 0
    for c in range(n_c):
        piv = next((r for r in range(row, n_rows) if M[r][c] != 0), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = 1 / M[row][c]
        M[row] = [v * inv for v in M[row]]
        for r in range(n_rows):
            if r != row and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[row])]
        pivots.append(c)
        row += 1
        if row == n_rows:
            break
    for r in range(row, n_rows):
        if any(M[r][n_c + k] != 0 for k in range(len(rhss))):
            raise ArithmeticError("inconsistent system in linking oracle")
    sols = []
    for k in range(len(rhss)):
        z = [Fraction(0)] * n_c
        for r, c in enumerate(pivots):
            z[c] = M[r][n_c + k]
        sols.append(z)
    return sols


@lru_cache(maxsize=4096)
def _oracle_matrix(d: SpliceDiagram) -> dict:
    """lk(x, y) for all ordered pairs of terminal leaves, from H_1 of the exterior."""
    gens: dict = {}

    def g(key):
        if key not in gens:
            gens[key] = len(gens)
        return gens[key]

    def vec(terms):
        return dict(terms)

    # meridian / longitude of the core at every root (v, nb) of an inner vertex
    ml = {}
    for v in d.nodes:
        nbs = sorted(d.neighbors(v))
        nd = node_data([d.weight(v, nb) for nb in nbs])
        for i, nb in enumerate(nbs):
            q, h = g(("Q", v, nb)), g(("H", v))
            a, b, s, dl = nd.a[i], nd.b[i], nd.sigma[i], nd.delta[i]
            ml[(v, nb)] = (vec([(q, a), (h, b)]), vec([(q, -s), (h, dl)]))

    def add(u, w, sign=1):
        out = dict(u)
        for k, c in w.items():
            out[k] = out.get(k, 0) + sign * c
        return out

    relations = []
    for v in d.nodes:
        relations.append(vec([(g(("Q", v, nb)), 1) for nb in d.neighbors(v)]))
    for u, v in d.inner_edges():
        mu, lu = ml[(u, v)]
        mv, lv = ml[(v, u)]
        relations.append(add(mu, lv, -1))
        relations.append(add(lu, mv, -1))

    term_ml = {}
    for t in d.terminals:
        nb = d.attachment(t)
        if d.kind(nb) == NODE:
            term_ml[t] = ml[(nb, t)]
        else:
            term_ml[t] = (vec([(g(("M", t)), 1)]), vec([(g(("L", t)), 1)]))
    if d.is_degenerate:
        x, y = d.terminals
        relations.append(add(term_ml[x][1], term_ml[y][0], -1))
        relations.append(add(term_ml[y][1], term_ml[x][0], -1))

    n = len(gens)
    dense = lambda sv: [sv.get(i, 0) for i in range(n)]
    terms = d.terminals
    cols = [dense(term_ml[t][0]) for t in terms] + [dense(r) for r in relations]
    rhss = [dense(term_ml[t][1]) for t in terms]
    sols = _rref_solve(cols, rhss, n)
    out = {}
    for j, y in enumerate(terms):
        for i, x in enumerate(terms):
            c = sols[j][i]
            if c.denominator != 1:
                raise ArithmeticError(f"non-integral linking number {c}")
            out[(x, y)] = int(c)
    return out


def linking_oracle(d: SpliceDiagram, x, y) -> int:
    """Linking number computed from integral homology of the link exterior."""
    if x == y:
        raise ValueError("linking number of a leaf with itself is undefined")
    for leaf in (x, y):
        _endpoint(d, leaf)
    # phantom leaves become genuine weight-1 arrowheads
    dd = d
    names = []
    for leaf in (x, y):
        if isinstance(leaf, Phantom):
            dd, name = dd.with_phantom(leaf.vertex)
            names.append(name)
        else:
            names.append(leaf)
    return _oracle_matrix(dd)[(names[1], names[0])]


def oracle_table(d: SpliceDiagram) -> dict:
    """All pairwise oracle linking numbers between distinct terminal leaves."""
    return {k: v for k, v in _oracle_matrix(d).items() if k[0] != k[1]}


# -- fiber degrees and fiberedness -----------------------------------------


def fiber_degree(d: SpliceDiagram, v: str) -> int:
    """Intersection number l_v of the Seifert fiber at ``v`` with the fiber surface."""
    return sum(m * linking_number(d, Phantom(v), a) for a, m in d.mults)


def fiber_degrees(d: SpliceDiagram) -> dict[str, int]:
    return {v: fiber_degree(d, v) for v in d.nodes}


@dataclass(frozen=True)
class FiberReport:
    fibered: bool
    l_values: dict = field(default_factory=dict)
    minimal_l_values: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "fibered": self.fibered,
            "l_values": dict(sorted(self.l_values.items())),
            "minimal_l_values": dict(sorted(self.minimal_l_values.items())),
        }


def is_fibered(d: SpliceDiagram) -> FiberReport:
    """Fiberedness: every inner vertex of the reduced diagram has l_v != 0.

    The criterion is evaluated after :func:`normalize.minimize`, so it does not
    depend on removable weight-1 decorations.  Inner-vertex-free diagrams are
    fibered as soon as they carry a (non-zero) arrowhead.
    """
    from .normalize import minimize

    require_valid(d)
    small, _ = minimize(d)
    ls = fiber_degrees(d)
    mls = fiber_degrees(small)
    if not d.arrows:
        return FiberReport(False, ls, mls)
    return FiberReport(all(l != 0 for l in mls.values()), ls, mls)


# -- cutting and splicing ---------------------------------------------------


def _half(d: SpliceDiagram, keep_from: str, toward: str, leaf: str, mult: int | None):
    """The part of ``d`` on ``toward``'s side of edge keep_from--toward, capped by ``leaf``.

    The new leaf hangs off ``toward`` in place of ``keep_from``'s side; it is an
    arrowhead with multiplicity ``mult`` or a boundary vertex when ``mult`` is
    None or 0.
    """
    part = d.side(keep_from, toward)
    kinds = {v: d.kind(v) for v in part}
    kinds[leaf] = ARROW if mult else BOUND
    edges = [e for e in d.edges if e.a in part and e.b in part]
    w = d.weight(toward, keep_from) if d.kind(toward) == NODE else None
    edges.append(Edge(toward, leaf, w, None))
    mults = {a: m for a, m in d.mults if a in part}
    if mult:
        mults[leaf] = mult
    return SpliceDiagram.build(kinds, edges, mults)


def _edge_pair(d, e):
    p, q = e
    d.edge(p, q)
    return p, q


def induced_multiplicity(d: SpliceDiagram, e, side: str = "left") -> int:
    """Multiplicity of the virtual component created by cutting along edge ``e``.

    ``e = (p, q)``; ``side="left"`` asks for the new core in ``p``'s half,
    ``"right"`` for the one in ``q``'s half.  It is the value of the fibration
    class on the meridian of the new core, which equals the sum over the
    arrowheads w of the other half of m_w * lk(new core, w), evaluated in the
    other half with the homological oracle.  Zero means the fiber surface caps
    off in meridian disks.
    """
    p, q = _edge_pair(d, e)
    if side == "right":
        p, q = q, p
    elif side != "left":
        raise ValueError("side must be 'left' or 'right'")
    probe = fresh_id(d.kinds, "~probe")
    far = _half(d, p, q, probe, 1)
    table = _oracle_matrix(far)
    return sum(m * table[(probe, a)] for a, m in far.mults if a != probe)


def seifert_multilink(d: SpliceDiagram, v: str) -> dict[str, int]:
    """Multiplicities of the Seifert multilink at inner vertex ``v``, keyed by neighbour."""
    out = {}
    for nb in d.neighbors(v):
        k = d.kind(nb)
        if k == ARROW:
            out[nb] = d.multiplicity[nb]
        elif k == BOUND:
            out[nb] = 0
        else:
            out[nb] = induced_multiplicity(d, (v, nb), "left")
    return out


@dataclass(frozen=True)
class CutResult:
    left: SpliceDiagram
    right: SpliceDiagram
    left_mult: int
    right_mult: int
    left_leaf: str
    right_leaf: str

    def to_dict(self) -> dict:
        from .dsl import to_json

        return {
            "left": to_json(self.left),
            "right": to_json(self.right),
            "left_mult": self.left_mult,
            "right_mult": self.right_mult,
            "left_leaf": self.left_leaf,
            "right_leaf": self.right_leaf,
        }


def cut(d: SpliceDiagram, e) -> CutResult:
    """Cut along inner edge ``e = (u, v)``; ``left`` contains ``u``.

    A new component whose induced multiplicity is 0 is recorded as a boundary
    vertex (an empty component) and its multiplicity reported as 0.
    """
    require_valid(d)
    u, v = _edge_pair(d, e)
    if d.kind(u) != NODE or d.kind(v) != NODE:
        raise PreconditionError(f"{u}--{v} is not an inner edge")
    ml = induced_multiplicity(d, (u, v), "left")
    mr = induced_multiplicity(d, (u, v), "right")
    lleaf = fresh_id(d.kinds, f"x_{u}_{v}")
    rleaf = fresh_id(d.kinds, f"x_{v}_{u}")
    left = _half(d, v, u, lleaf, ml)
    right = _half(d, u, v, rleaf, mr)
    return CutResult(left, right, ml, mr, lleaf, rleaf)


def splice(d1: SpliceDiagram, x1: str, d2: SpliceDiagram, x2: str) -> SpliceDiagram:
    """Fuse the terminal edges at ``x1`` and ``x2`` into one inner edge.

    The terminals' multiplicities are discarded and both root weights kept.
    Boundary vertices are accepted as well as arrowheads (an empty component
    is a legitimate splice locus).
    """
    for d, x in ((d1, x1), (d2, x2)):
        if d.kind(x) == NODE:
            raise PreconditionError(f"{x} is an inner vertex")
        if d.kind(d.attachment(x)) != NODE:
            raise PreconditionError("cannot splice at a diagram without inner vertices")
    u1, u2 = d1.attachment(x1), d2.attachment(x2)
    taken = set(d1.kinds) - {x1}
    rename = {}
    for v in d2.kinds:
        if v != x2 and v in taken:
            new = fresh_id(taken | set(d2.kinds) | set(rename.values()), v + "'")
            rename[v] = new
    d2r = d2.relabel(rename)
    x2r, u2r = rename.get(x2, x2), rename.get(u2, u2)
    kinds = {v: k for v, k in d1.vertices if v != x1}
    kinds.update({v: k for v, k in d2r.vertices if v != x2r})
    edges = [e for e in d1.edges if x1 not in (e.a, e.b)]
    edges += [e for e in d2r.edges if x2r not in (e.a, e.b)]
    edges.append(Edge(u1, u2r, d1.weight(u1, x1), d2r.weight(u2r, x2r)))
    mults = {a: m for a, m in d1.mults if a != x1}
    mults.update({a: m for a, m in d2r.mults if a != x2r})
    out = SpliceDiagram.build(kinds, edges, mults)
    require_valid(out)
    return out


# -- hat decoration ---------------------------------------------------------


@dataclass(frozen=True)
class HatDecoration:
    vertex_sign: dict  # inner vertex -> +1 (⊕) / -1 (⊖)
    root_sign: dict  # (inner vertex, neighbour) -> +1 / -1
    l_values: dict
    root_mults: dict

    @property
    def all_positive(self) -> bool:
        return all(s > 0 for s in self.vertex_sign.values()) and all(
            s > 0 for s in self.root_sign.values()
        )

    def to_dict(self) -> dict:
        return {
            "vertices": {v: ("⊕" if s > 0 else "⊖") for v, s in sorted(self.vertex_sign.items())},
            "roots": [
                {"at": v, "to": nb, "sign": "+" if s > 0 else "-", "m": self.root_mults[(v, nb)]}
                for (v, nb), s in sorted(self.root_sign.items())
            ],
            "l_values": dict(sorted(self.l_values.items())),
        }

    def ascii(self) -> str:
        lines = []
        for v, s in sorted(self.vertex_sign.items()):
            roots = ", ".join(
                f"{nb}{'+' if self.root_sign[(v, nb)] > 0 else '-'}"
                for (vv, nb) in sorted(self.root_sign)
                if vv == v
            )
            lines.append(f"{'(+)' if s > 0 else '(-)'} {v} [l={self.l_values[v]}]: {roots}")
        return "\n".join(lines)


def hat_gamma(d: SpliceDiagram) -> HatDecoration:
    require_valid(d)
    if d.is_degenerate:
        raise PreconditionError("hat decoration is undefined for diagrams without inner vertices")
    ls = fiber_degrees(d)
    if not d.arrows or any(l == 0 for l in ls.values()):
        raise NotFiberedError("diagram is not fibered", ls)
    vs = {v: (1 if l > 0 else -1) for v, l in ls.items()}
    rs, rm = {}, {}
    for v in d.nodes:
        for nb, m in seifert_multilink(d, v).items():
            rs[(v, nb)] = 1 if m >= 0 else -1
            rm[(v, nb)] = m
    return HatDecoration(vs, rs, ls, rm)
