"""Explicit contact forms near tori, described by plane curves.

A form ``alpha = h2(r) dmu + h1(r) dlambda`` on a solid torus or a collar
``T^2 x I`` is encoded by the curve ``gamma(r) = (x, y) = (-h1(r), h2(r))``.
It is a positive contact form exactly when ``h1 h2' - h2 h1' > 0``, i.e. when
gamma turns clockwise about the origin, and its Reeb field points along
``gamma'(r)`` read as a (mu, lambda) vector.  If gamma crosses the x-axis on
the side opposite to where it started, the meridian disk up to that radius is
overtwisted (a half Lutz twist).

Curves are made of closed-form segments (the core model, logarithmic spirals
and quadratic corner arcs), so the contact inequality and the monotone turning
of gamma' hold exactly; :func:`verify_contact` re-checks both on a grid.

Two global constructions are provided:

* ``lemma33``: per Seifert piece, the form ``beta + dt`` with boundary
  residues chosen by :func:`residues`, glued along splice tori by spiral
  collars.  Tubes of negative components start at ``(c, 0)`` and contain a
  half Lutz twist.
* ``tw``: per Seifert piece, the open-book form ``beta + R dt`` whose boundary
  values come from :func:`tw_boundary_data`, glued along splice tori by
  corner arcs turning from ``(0, 1)`` to ``(1, 0)``.  For canonically
  oriented multilinks every collar stays in the closed upper half-plane.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .calculus import hat_gamma, is_fibered, linking_number, seifert_multilink
from .diagram import ARROW, BOUND, NODE, SpliceDiagram, require_valid
from .errors import GlueError, NotFiberedError, PreconditionError
from .normalize import invert, minimize
from .seifert import SeifertNodeData, node_data

TWO_PI = 2 * math.pi


# -- boundary data ----------------------------------------------------------


@dataclass(frozen=True)
class ResidueSelection:
    R: tuple[Fraction, ...]
    eps_prime: Fraction

    def to_dict(self) -> dict:
        return {"R": [str(x) for x in self.R], "eps_prime": str(self.eps_prime)}


def residues(nd: SeifertNodeData, eps_prime=None) -> ResidueSelection:
    """Residues R_i of the 1-form beta near the boundary circles of the base.

    R_1 = -b_1/a_1 + 1/A - eps'.  For i >= 2, R_i = -b_i/a_i + t_i with
    t_i = min(eps'/(2(k-1)), b_i/(2 a_i) if that is positive), so every sign
    condition holds and sum R_i = -eps' + sum t_i < 0, which is what
    d(beta) > 0 needs.
    """
    if nd.k < 2:
        raise ValueError("need at least two boundary circles")
    eps = Fraction(1, 10 * nd.A) if eps_prime is None else Fraction(eps_prime)
    if not 0 < eps < Fraction(1, nd.A):
        raise ValueError(f"eps' = {eps} outside (0, 1/A) with A = {nd.A}")
    R = [Fraction(-nd.b[0], nd.a[0]) + Fraction(1, nd.A) - eps]
    cap = eps / (2 * (nd.k - 1))
    for a, b in zip(nd.a[1:], nd.b[1:]):
        q = Fraction(b, a)
        t = min(cap, q / 2) if q > 0 else cap
        R.append(-q + t)
    return ResidueSelection(tuple(R), eps)


def check_residues(nd: SeifertNodeData, rs: ResidueSelection) -> None:
    R, eps = rs.R, rs.eps_prime
    q = [Fraction(b, a) for a, b in zip(nd.a, nd.b)]
    assert -q[0] + Fraction(1, nd.A) + sum(-x for x in q[1:]) == 0
    assert R[0] == -q[0] + Fraction(1, nd.A) - eps
    assert (R[0] > 0) if q[0] <= 0 else (R[0] < 0)
    for Ri, qi in zip(R[1:], q[1:]):
        assert Ri > -qi
        if qi > 0:
            assert Ri < 0
    assert sum(R) < 0


@dataclass(frozen=True)
class BoundaryOneFormData:
    h1: tuple
    h2: tuple
    normals: tuple | None = None
    c: tuple | None = None
    R: float | None = None

    @property
    def points(self) -> list[tuple[float, float]]:
        return [(-float(a), float(b)) for a, b in zip(self.h1, self.h2)]

    @property
    def ratio(self):
        """h_{1,1}(1) / h_{1,2}(1), the epsilon of the first torus."""
        return self.h1[0] / self.h2[0]

    def to_dict(self) -> dict:
        out = {"h1": [str(x) for x in self.h1], "h2": [str(x) for x in self.h2]}
        if self.normals is not None:
            out["normals"] = [list(n) for n in self.normals]
        if self.c is not None:
            out["c"] = list(self.c)
        if self.R is not None:
            out["R"] = self.R
        return out


def seifert_boundary_data(nd: SeifertNodeData, rs: ResidueSelection) -> BoundaryOneFormData:
    """Exact values of (h_{i,1}(1), h_{i,2}(1)) = (delta_i - sigma_i R_i, b_i + a_i R_i)."""
    h1 = tuple(d - s * R for d, s, R in zip(nd.delta, nd.sigma, rs.R))
    h2 = tuple(b + a * R for a, b, R in zip(nd.a, nd.b, rs.R))
    return BoundaryOneFormData(h1, h2)


def tw_boundary_data(normals, c, R: float, special: bool = True) -> BoundaryOneFormData:
    """Boundary values of the open-book form.

    With ``special`` torus 1 carries ``R U_1 dmu + (-c_1 r + R V_1) dlambda``
    and needs -c_1 + sum_{i>=2} c_i > 0; every other torus carries
    ``R U_i dmu + (c_i / r + R V_i) dlambda``.
    """
    if len(normals) != len(c):
        raise ValueError("one constant per torus")
    if any(x <= 0 for x in c):
        raise ValueError(f"constants must be positive, got {list(c)}")
    total = (-c[0] + sum(c[1:])) if special else sum(c)
    if total <= 0:
        raise ValueError(f"-c_1 + sum c_i = {total} is not positive")
    if any(U <= 0 for U, _ in normals):
        raise ValueError("fiber-surface normals need U > 0")
    h1, h2 = [], []
    for i, ((U, V), ci) in enumerate(zip(normals, c)):
        if i == 0 and special:
            h1.append(-ci + R * V)
        else:
            h1.append(ci + R * V)
        h2.append(R * U)
    return BoundaryOneFormData(tuple(h1), tuple(h2), tuple(normals), tuple(c), R)


# -- curve segments ---------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    """One closed-form piece of a curve on [r0, r1].

    kinds: ``model`` (s*(-c), s*r^2), ``spiral`` exp(L0 + k g) e^{i(phi0 - D g)}
    with g = ((r - r0)/(r1 - r0))^p, ``bezier`` quadratic with control points
    P0, P1, P2, and ``const``.
    """

    kind: str
    r0: float
    r1: float
    params: tuple

    def eval(self, r):
        r = np.asarray(r, dtype=float)
        span = self.r1 - self.r0
        if self.kind == "model":
            c, s = self.params
            x = np.full_like(r, -s * c)
            return x, s * r**2, np.zeros_like(r), 2 * s * r
        if self.kind == "spiral":
            L0, k, phi0, D, p = self.params
            u = (r - self.r0) / span
            g = u**p
            dg = p * u ** (p - 1) / span if p != 1 else np.full_like(r, 1 / span)
            rho = np.exp(L0 + k * g)
            phi = phi0 - D * g
            x, y = rho * np.cos(phi), rho * np.sin(phi)
            # d/dg (rho e^{i phi}) = rho e^{i phi} (k - iD)
            dx = dg * (k * x + D * y)
            dy = dg * (k * y - D * x)
            return x, y, dx, dy
        if self.kind == "bezier":
            (x0, y0), (x1, y1), (x2, y2) = self.params
            u = (r - self.r0) / span
            a, b, c = (1 - u) ** 2, 2 * u * (1 - u), u**2
            x = a * x0 + b * x1 + c * x2
            y = a * y0 + b * y1 + c * y2
            dx = 2 * ((1 - u) * (x1 - x0) + u * (x2 - x1)) / span
            dy = 2 * ((1 - u) * (y1 - y0) + u * (y2 - y1)) / span
            return x, y, dx, dy
        if self.kind == "const":
            (px, py) = self.params
            return np.full_like(r, px), np.full_like(r, py), np.zeros_like(r), np.zeros_like(r)
        raise ValueError(self.kind)

    def scaled(self, s: float) -> "Segment":
        if self.kind == "model":
            raise ValueError("model segments cannot be rescaled uniformly")
        if self.kind == "spiral":
            L0, k, phi0, D, p = self.params
            return Segment("spiral", self.r0, self.r1, (L0 + math.log(s), k, phi0, D, p))
        if self.kind == "bezier":
            return Segment("bezier", self.r0, self.r1, tuple((s * x, s * y) for x, y in self.params))
        (px, py) = self.params
        return Segment("const", self.r0, self.r1, (s * px, s * py))


@dataclass(frozen=True)
class TorusCurve:
    segments: tuple[Segment, ...]
    start: str  # "(-c,r^2)", "(c,-r^2)" or "collar"
    samples: int = 1000
    normal: tuple[float, float] | None = None

    @property
    def domain(self) -> tuple[float, float]:
        return self.segments[0].r0, self.segments[-1].r1

    def eval(self, r):
        r = np.atleast_1d(np.asarray(r, dtype=float))
        out = [np.empty_like(r) for _ in range(4)]
        for i, seg in enumerate(self.segments):
            last = i == len(self.segments) - 1
            mask = (r >= seg.r0) & ((r <= seg.r1) if last else (r < seg.r1))
            if mask.any():
                vals = seg.eval(r[mask])
                for o, v in zip(out, vals):
                    o[mask] = v
        return tuple(out)

    def point(self, r: float) -> tuple[float, float]:
        x, y, _, _ = self.eval([r])
        return float(x[0]), float(y[0])

    def h(self, r):
        """(h1, h2) at r."""
        x, y, _, _ = self.eval(r)
        return -x, y

    def sample(self, n: int | None = None):
        n = n or self.samples
        a, b = self.domain
        r = np.linspace(a, b, n + 1)
        x, y, _, _ = self.eval(r)
        return r, x, y

    def to_dict(self) -> dict:
        return {
            "start": self.start,
            "domain": list(self.domain),
            "segments": [{"kind": s.kind, "r0": s.r0, "r1": s.r1, "params": _jsonable(s.params)} for s in self.segments],
        }


def _jsonable(x):
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    return float(x)


# -- verification -----------------------------------------------------------


@dataclass(frozen=True)
class ContactReport:
    min_contact: float | None
    monotone: bool
    arg_min: float
    arg_max: float
    compatible: bool | None = None
    min_compat: float | None = None
    grid: int = 1000

    @property
    def ok(self) -> bool:
        return self.min_contact is None or self.min_contact > 1e-12

    def to_dict(self) -> dict:
        return {
            "min_contact": self.min_contact,
            "monotone": self.monotone,
            "arg_range": [self.arg_min, self.arg_max],
            "compatible": self.compatible,
            "min_compat": self.min_compat,
            "grid": self.grid,
        }


def _unwrapped_args(x, y):
    return np.unwrap(np.arctan2(y, x))


def verify_contact(tc: TorusCurve, grid: int = 1000) -> ContactReport:
    """Minimum of h1 h2' - h2 h1' over the grid (start excluded) and shape checks."""
    a, b = tc.domain
    r = a + (b - a) * np.arange(0, grid + 1) / grid
    x, y, dx, dy = tc.eval(r)
    args = _unwrapped_args(x, y)
    # the unwrapped branch is anchored at the start point in (-pi, pi]
    if b == a or np.allclose([dx, dy], 0):
        return ContactReport(None, True, float(args.min()), float(args.max()), grid=grid)
    q = (y * dx - x * dy)[1:]
    tx, ty = dx[1:], dy[1:]
    nrm = np.hypot(tx, ty)
    keep = nrm > 0
    tx, ty = tx[keep] / nrm[keep], ty[keep] / nrm[keep]
    turn = tx[:-1] * ty[1:] - ty[:-1] * tx[1:]
    monotone = bool(np.all(turn <= 1e-12))
    compatible = min_compat = None
    if tc.normal is not None:
        nx, ny = tc.normal
        nn = math.hypot(nx, ny)
        ip = (tx * nx + ty * ny) / nn
        min_compat = float(ip.min())
        compatible = min_compat > 0
    return ContactReport(float(q.min()), monotone, float(args.min()), float(args.max()), compatible, min_compat, grid)


def detect_lutz(tc: TorusCurve, grid: int = 10000, tol: float = 1e-12) -> float | None:
    """Smallest r* > start with h2(r*) = 0 on the far side of the x-axis.

    For a tube starting at (c, 0) the far side is the negative x-axis; for
    tubes starting at (-c, 0) and for collars it is the positive x-axis.
    """
    a, b = tc.domain
    side = -1.0 if tc.start == "(c,-r^2)" else 1.0
    r = np.linspace(a, b, grid + 1)
    x, y, _, _ = tc.eval(r)
    on_axis = tc.start != "collar"
    hits = np.nonzero((y[:-1] * y[1:] <= 0) & (side * x[1:] > 0))[0] + 1
    if on_axis:
        hits = hits[hits > 1]
    if len(hits) == 0:
        return None
    j = hits[0]
    lo, hi, ylo = r[j - 1], r[j], y[j - 1]
    if y[j] == 0:
        return float(hi)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        _, ym, _, _ = tc.eval([mid])
        if ym[0] * ylo <= 0:
            hi = mid
        else:
            lo, ylo = mid, ym[0]
    return float(0.5 * (lo + hi))


# -- curve construction -----------------------------------------------------


def _arg(p) -> float:
    return math.atan2(p[1], p[0])


def _spiral_through(p_start, p_end, D, r0, r1, power, tangent=None):
    """Clockwise log-spiral from p_start to p_end turning by D.

    With ``p_start`` None, only the end point is pinned and the spiral's
    growth rate is chosen so that its end tangent is parallel to ``tangent``.
    """
    phi_end = _arg(p_end)
    phi0 = phi_end + D
    L_end = math.log(math.hypot(*p_end))
    if p_start is not None:
        k = L_end - math.log(math.hypot(*p_start))
        return Segment("spiral", r0, r1, (L_end - k, k, phi0, D, power)), True
    k, matched = 0.0, False
    if tangent is not None:
        # end direction is e^{i phi_end}(k - iD); match it to the tangent
        w = complex(*tangent) * complex(math.cos(-phi_end), math.sin(-phi_end))
        if w.imag < 0:
            kk = -D * w.real / w.imag
            if abs(kk) <= 8:
                k, matched = kk, True
    return Segment("spiral", r0, r1, (L_end - k, k, phi0, D, power)), matched


def extend_into_torus(point, m_sign: int, tangent=None, samples: int = 1000) -> TorusCurve:
    """Curve from the core (r = 0) to the boundary point (r = 1).

    For m >= 0 it starts like (-c, r^2) at angle pi, for m < 0 like (c, -r^2)
    at angle 0, and turns clockwise to the point; when ``tangent`` is given
    the spiral also ends parallel to it, if that keeps the growth bounded.
    """
    px, py = point
    if py <= 0:
        raise GlueError(f"boundary point {point} not in the open upper half-plane")
    th = _arg(point)
    D = (math.pi - th) if m_sign >= 0 else (TWO_PI - th)
    seg, matched = _spiral_through(None, point, D, 0.0, 1.0, 2, tangent)
    start = "(-c,r^2)" if m_sign >= 0 else "(c,-r^2)"
    return TorusCurve((seg,), start, samples)


def corner_extension(point, c_gap: float = 1.0, samples: int = 1000, normal=None) -> TorusCurve:
    """Core model (-c, r^2) followed by a quadratic arc ending at ``point`` moving in +x.

    Used for open-book forms, whose Reeb field at the boundary is (c_i, 0).
    """
    px, py = point
    if py <= 0:
        raise GlueError(f"boundary point {point} not in the open upper half-plane")
    c = max(-px, 0.0) + c_gap
    r0 = min(0.5, math.sqrt(py) / 2)
    model = Segment("model", 0.0, r0, (c, 1.0))
    arc = Segment("bezier", r0, 1.0, ((-c, r0 * r0), (-c, py), (px, py)))
    return TorusCurve((model, arc), "(-c,r^2)", samples, normal)


def _cross(p, q) -> float:
    return p[0] * q[1] - p[1] * q[0]


def _corner_ok(pA, pB) -> bool:
    """Is the quadratic arc pA -> (xA, yB) -> pB a contact curve?

    For a quadratic Bezier with controls P0, P1, P2 one has
    gamma x gamma' = 2((1-t)^2 P0xP1 + t(1-t) P0xP2 + t^2 P1xP2), so the arc
    turns clockwise throughout iff all three cross products are negative.
    """
    P1 = (pA[0], pB[1])
    return pB[0] > pA[0] and pB[1] > pA[1] and max(_cross(pA, P1), _cross(pA, pB), _cross(P1, pB)) < 0


def glue_boundary_curves(pA, pB, normal=None, rescale: bool = False, shape: str = "spiral", samples: int = 1000) -> TorusCurve:
    """Collar curve from pA to pB turning clockwise, for a splice torus.

    ``shape="spiral"`` joins the points by a log-spiral (needs a clockwise turn
    in (0, pi); with ``rescale`` pB is first scaled to |pA|).  ``shape="corner"``
    joins them by a quadratic arc whose tangent turns from (0, 1) to (1, 0);
    it needs pB up and to the right of pA with the arc turning clockwise, and
    with ``rescale`` pB is scaled by the smallest power of two that achieves
    this.  Points on one ray from the origin can never be joined: the
    argument of a contact curve strictly decreases.
    """
    pA = tuple(map(float, pA))
    pB = tuple(map(float, pB))
    if shape == "corner":
        s = 1.0
        while not _corner_ok(pA, (pB[0] * s, pB[1] * s)):
            if not rescale or s > 2.0**60:
                raise GlueError(f"no clockwise corner arc from {pA} to {pB}")
            s *= 2
        pB = (pB[0] * s, pB[1] * s)
        seg = Segment("bezier", 0.0, 1.0, (pA, (pA[0], pB[1]), pB))
        return TorusCurve((seg,), "collar", samples, normal)
    if rescale:
        k = math.hypot(*pA) / math.hypot(*pB)
        pB = (pB[0] * k, pB[1] * k)
    if math.isclose(pA[0], pB[0], rel_tol=0, abs_tol=1e-15) and math.isclose(pA[1], pB[1], rel_tol=0, abs_tol=1e-15):
        return TorusCurve((Segment("const", 0.0, 1.0, pA),), "collar", samples, normal)
    D = (_arg(pA) - _arg(pB)) % TWO_PI
    if not 1e-12 < D < math.pi:
        raise GlueError(f"clockwise turn {D:.6f} from {pA} to {pB} not in (0, pi)")
    seg, _ = _spiral_through(pA, pB, D, 0.0, 1.0, 1)
    return TorusCurve((seg,), "collar", samples, normal)


# -- global constructions ---------------------------------------------------


@dataclass(frozen=True)
class PlacedCurve:
    label: str  # arrow / boundary id, or "u--v" for a collar
    role: str  # "tube", "boundary", "collar"
    multiplicity: int
    curve: TorusCurve
    report: ContactReport
    lutz: float | None

    def to_dict(self, with_curve: bool = False) -> dict:
        out = {
            "label": self.label,
            "role": self.role,
            "multiplicity": self.multiplicity,
            "report": self.report.to_dict(),
            "lutz": self.lutz,
        }
        if with_curve:
            out["curve"] = self.curve.to_dict()
        return out


@dataclass(frozen=True)
class Construction:
    style: str
    inverted: bool
    curves: tuple[PlacedCurve, ...]
    pieces: dict = field(default_factory=dict)

    @property
    def min_contact(self) -> float:
        vals = [c.report.min_contact for c in self.curves if c.report.min_contact is not None]
        return min(vals) if vals else math.inf

    @property
    def lutz(self) -> list[tuple[str, float]]:
        return [(c.label, c.lutz) for c in self.curves if c.lutz is not None]

    @property
    def collar_ranges(self) -> list[tuple[str, float, float]]:
        return [(c.label, c.report.arg_min, c.report.arg_max) for c in self.curves if c.role == "collar"]

    @property
    def all_monotone(self) -> bool:
        return all(c.report.monotone for c in self.curves)

    def to_dict(self, with_curves: bool = False) -> dict:
        return {
            "style": self.style,
            "inverted": self.inverted,
            "min_contact": self.min_contact,
            "monotone": self.all_monotone,
            "lutz": [{"component": a, "r": r} for a, r in self.lutz],
            "collar_ranges": [{"edge": e, "min": lo, "max": hi} for e, lo, hi in self.collar_ranges],
            "pieces": self.pieces,
            "curves": [c.to_dict(with_curves) for c in self.curves],
        }


def _prepare(d: SpliceDiagram):
    require_valid(d)
    rep = is_fibered(d)
    if not rep.fibered:
        raise NotFiberedError("multilink is not fibered", dict(rep.l_values))
    small, _ = minimize(d)
    if small.is_degenerate:
        raise PreconditionError("construction needs at least one inner vertex after minimisation")
    return small


def _tree(d: SpliceDiagram, root: str | None = None):
    root = root or d.nodes[0]
    parent = {root: None}
    order = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for nb in sorted(d.neighbors(v)):
            if d.kind(nb) == NODE and nb not in parent:
                parent[nb] = v
                order.append(nb)
                queue.append(nb)
    return order, parent


def _place(label, role, m, curve, grid) -> PlacedCurve:
    return PlacedCurve(label, role, m, curve, verify_contact(curve, grid), detect_lutz(curve))


def _lemma33(d: SpliceDiagram, grid: int) -> Construction:
    hat = hat_gamma(d)
    inverted = False
    if all(s < 0 for s in hat.vertex_sign.values()):
        d, hat, inverted = invert(d), hat_gamma(invert(d)), True
    if any(s < 0 for s in hat.vertex_sign.values()):
        raise PreconditionError("lemma33 construction needs every inner vertex positive")
    for u, v in d.inner_edges():
        if hat.root_sign[(u, v)] < 0 or hat.root_sign[(v, u)] < 0:
            raise PreconditionError(f"lemma33 construction needs + signs on inner edge {u}--{v}")
    order, parent = _tree(d)
    mult = d.multiplicity
    curves, pieces = [], {}
    scale = {}
    target_angle = {}  # child -> angle of the parent's point on the splice torus
    parent_point = {}
    for v in order:
        nbs = sorted(d.neighbors(v))
        if parent[v] is not None:
            nbs.remove(parent[v])
            nbs.insert(0, parent[v])
        nd = node_data([d.weight(v, nb) for nb in nbs])
        eps = Fraction(1, 10 * nd.A)
        while True:
            rs = residues(nd, eps)
            bd = seifert_boundary_data(nd, rs)
            if parent[v] is None:
                break
            h1, h2 = float(bd.h1[0]), float(bd.h2[0])
            if math.pi - math.atan2(h1, h2) > target_angle[v] + 1e-9:
                break
            eps /= 2
        check_residues(nd, rs)
        pts = bd.points
        if parent[v] is None:
            scale[v] = 1.0
        else:
            px, py = parent_point[v]
            swapped = (-float(bd.h2[0]), float(bd.h1[0]))
            scale[v] = math.hypot(px, py) / math.hypot(*swapped)
            pc = (swapped[0] * scale[v], swapped[1] * scale[v])
            n = (seifert_multilink(d, parent[v])[v], seifert_multilink(d, v)[parent[v]])
            collar = glue_boundary_curves(pc, (px, py), normal=n, samples=grid)
            curves.append(_place(f"{parent[v]}--{v}", "collar", 0, collar, grid))
        pieces[v] = {
            "order": nbs,
            "a": list(nd.a),
            "b": list(nd.b),
            "eps_prime": str(rs.eps_prime),
            "R": [str(x) for x in rs.R],
            "scale": scale[v],
        }
        for i, nb in enumerate(nbs):
            if i == 0 and parent[v] is not None:
                continue
            p = (pts[i][0] * scale[v], pts[i][1] * scale[v])
            kind = d.kind(nb)
            if kind == NODE:
                target_angle[nb] = _arg(p)
                parent_point[nb] = p
                continue
            m = mult.get(nb, 0)
            tube = extend_into_torus(p, 1 if m >= 0 else -1, tangent=(nd.sigma[i], nd.a[i]), samples=grid)
            curves.append(_place(nb, "tube" if kind == ARROW else "boundary", m, tube, grid))
    return Construction("lemma33", inverted, tuple(curves), pieces)


def _arrow_normal(d: SpliceDiagram, a: str) -> tuple[int, int]:
    m = d.multiplicity[a]
    ell = sum(d.multiplicity[b] * linking_number(d, a, b) for b in d.arrows if b != a)
    return (abs(m), (1 if m > 0 else -1) * ell)


def _tw(d: SpliceDiagram, grid: int, R0: float = 10.0, eps: float = 0.1) -> Construction:
    signs = {m > 0 for m in d.multiplicity.values()}
    if len(signs) != 1:
        raise PreconditionError("tw construction needs all multiplicities of one sign")
    inverted = signs == {False}
    if inverted:
        d = invert(d)
    # rooting at a vertex that carries an arrowhead makes every parent side non-empty
    root = next(v for v in d.nodes if any(d.kind(nb) == ARROW for nb in d.neighbors(v)))
    order, parent = _tree(d, root)
    sm = {v: seifert_multilink(d, v) for v in d.nodes}
    for v in d.nodes:
        for nb, m in sm[v].items():
            if m < 0:
                raise PreconditionError(f"negative induced multiplicity at {v} toward {nb}")
    # a piece is "special" (torus 1 of -c r type) when it hangs below a non-empty torus
    special = {v: parent[v] is not None and sm[parent[v]][v] > 0 for v in order}
    tori, normals, consts = {}, {}, {}
    for v in order:
        nbs = [nb for nb in sorted(d.neighbors(v)) if sm[v][nb] > 0]
        if parent[v] is not None:
            nbs.remove(parent[v])
            nbs.insert(0, parent[v])
        tori[v] = nbs
        normals[v] = [
            (sm[v][nb], sm[nb][v]) if d.kind(nb) == NODE else _arrow_normal(d, nb) for nb in nbs
        ]
        if special[v]:
            rest = len(nbs) - 1
            if rest < 1:
                raise PreconditionError(f"piece {v} has no non-empty torus besides its splice torus")
            consts[v] = [1.0] + [2.0 / rest] * rest
        else:
            consts[v] = [1.0] * len(nbs)

    # R per piece, bottom-up: the parent's R must dominate each special child's,
    # and a free child's R must make its splice point nearly vertical
    R = {}
    for v in reversed(order):
        need = R0
        if parent[v] is not None and not special[v]:
            U, _ = normals[v][0]
            need = max(need, 4 * consts[v][0] / (U * eps * eps))
        for i, nb in enumerate(tori[v]):
            if d.kind(nb) == NODE and parent.get(nb) == v and special[nb]:
                U, V = normals[nb][0]
                need = max(need, 4 * R[nb] * V * consts[v][i] / (U * consts[nb][0]))
        R[v] = need

    curves, pieces, scale = [], {}, {root: 1.0}
    for v in order:
        bd = tw_boundary_data(normals[v], consts[v], R[v], special=special[v])
        pieces[v] = {
            "order": tori[v],
            "normals": [list(n) for n in normals[v]],
            "c": consts[v],
            "special": special[v],
            "R": R[v],
            "scale": scale[v],
        }
        for X in sorted(d.neighbors(v)):
            if d.kind(X) != NODE or parent.get(X) != v:
                continue
            if special[X]:
                # collar in X's coordinates, from the parent side to the child side
                i = tori[v].index(X)
                UX, VX = normals[X][0]
                cY, cX, RY, RX = consts[v][i], consts[X][0], R[v], R[X]
                K = (RY + 2 * cY / UX) / RX
                scale[X] = scale[v] * K
                pY = (scale[v] * (-RY * VX), scale[v] * (cY + RY * UX))
                pX = (scale[X] * (cX - RX * VX), scale[X] * (RX * UX))
                collar = glue_boundary_curves(pY, pX, normal=(UX, VX), shape="corner", samples=grid)
            else:
                # empty component on the parent side: the model c(r^2 dmu + dlambda)
                # at radius eps, glued to X's torus, which is of c/r type
                UX, _ = normals[X][0]
                cY = scale[v]
                cX, RX = consts[X][0], R[X]
                scale[X] = cY / (RX * UX)
                pY = (-cY * eps * eps, cY)
                pX = (-scale[X] * cX, cY)
                mid = (0.5 * (pY[0] + pX[0]), cY)
                seg = Segment("bezier", 0.0, 1.0, (pY, mid, pX))
                collar = TorusCurve((seg,), "collar", grid, (UX, 0))
            curves.append(_place(f"{v}--{X}", "collar", 0, collar, grid))
        for i, nb in enumerate(tori[v]):
            if d.kind(nb) != ARROW:
                continue
            x, y = bd.points[i]
            p = (x * scale[v], y * scale[v])
            tube = corner_extension(p, c_gap=scale[v], samples=grid)
            curves.append(_place(nb, "tube", d.multiplicity[nb], tube, grid))
    return Construction("tw", inverted, tuple(curves), pieces)


def assemble_construction(d: SpliceDiagram, style: str = "tw", grid: int = 1000) -> Construction:
    small = _prepare(d)
    if style == "lemma33":
        return _lemma33(small, grid)
    if style == "tw":
        return _tw(small, grid)
    raise ValueError(f"unknown style {style!r}")
