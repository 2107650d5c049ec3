"""Tightness of the contact structure compatible with a fibered graph multilink.

For a fibered multilink in S^3 given by a splice diagram with positive
weights, the compatible contact structure is tight exactly when the arrowhead
multiplicities are all positive or all negative.  The verdicts here carry a
certificate: the common sign, or a component where the orientation flips.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum

from .calculus import HatDecoration, fiber_degrees, hat_gamma, is_fibered, seifert_multilink
from .diagram import ARROW, NODE, SpliceDiagram, require_valid
from .errors import NotFiberedError, PreconditionError
from .normalize import S3Answer, check_s3_cabling, invert, minimize


class Verdict(str, Enum):
    TIGHT = "Tight"
    OVERTWISTED = "Overtwisted"


@dataclass(frozen=True)
class Witness:
    component: str
    reason: str  # "negative-arrow" or "negative-cut-edge"

    def to_dict(self) -> dict:
        return {"component": self.component, "reason": self.reason}


@dataclass(frozen=True)
class TightnessVerdict:
    verdict: Verdict
    sign: int | None = None
    witness: Witness | None = None
    hat: HatDecoration | None = None
    fibered: bool = True

    @property
    def tight(self) -> bool:
        return self.verdict is Verdict.TIGHT

    def to_dict(self) -> dict:
        out = {"verdict": self.verdict.value}
        if self.sign is not None:
            out["sign"] = "+" if self.sign > 0 else "-"
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        if self.hat is not None:
            out["hat"] = self.hat.to_dict()
        if not self.fibered:
            out["fibered"] = False
        return out


def _uniform_sign(values) -> int | None:
    signs = {1 if m > 0 else -1 for m in values if m != 0}
    if len(signs) == 1:
        return signs.pop()
    return None if signs else 1


def _require(d: SpliceDiagram, assume_s3: bool) -> None:
    require_valid(d)
    rep = is_fibered(d)
    if not rep.fibered:
        raise NotFiberedError("multilink is not fibered; no compatible contact structure", dict(rep.l_values))
    if not assume_s3 and check_s3_cabling(d) is not S3Answer.YES:
        raise PreconditionError("ambient manifold not recognised as S^3; pass assume_s3 to proceed")


def _witness(d: SpliceDiagram) -> Witness:
    """Where the orientation flips, after making the first Seifert piece positive."""
    small, _ = minimize(d)
    if small.is_degenerate:
        first = small.arrows[0]
        if small.multiplicity[first] < 0:
            small = invert(small)
        neg = [a for a in small.arrows if small.multiplicity[a] < 0]
        return Witness(neg[0], "negative-arrow")
    root = small.nodes[0]
    if fiber_degrees(small)[root] < 0:
        small = invert(small)
    seen, queue = {root}, deque([root])
    while queue:
        v = queue.popleft()
        sm = seifert_multilink(small, v)
        for nb in sorted(sm):
            if sm[nb] < 0:
                if small.kind(nb) == ARROW:
                    return Witness(nb, "negative-arrow")
                return Witness(f"{v}--{nb}", "negative-cut-edge")
        for nb in sorted(sm):
            if small.kind(nb) == NODE and nb not in seen:
                seen.add(nb)
                queue.append(nb)
    raise AssertionError("mixed multiplicities but no negative root found")


def _verdict(d: SpliceDiagram, fibered: bool = True) -> TightnessVerdict:
    sign = _uniform_sign(d.multiplicity.values())
    hat = None
    if fibered:
        small, _ = minimize(d)
        if not small.is_degenerate:
            hat = hat_gamma(small)
    if sign is not None:
        return TightnessVerdict(Verdict.TIGHT, sign=sign, hat=hat, fibered=fibered)
    wit = _witness(d) if fibered else Witness(
        next(a for a in d.arrows if d.multiplicity[a] < 0), "negative-arrow"
    )
    return TightnessVerdict(Verdict.OVERTWISTED, witness=wit, hat=hat, fibered=fibered)


def decide_tight(d: SpliceDiagram, assume_s3: bool = False) -> TightnessVerdict:
    _require(d, assume_s3)
    return _verdict(d)


def hat_characterization(d: SpliceDiagram) -> bool:
    """All vertices positive and all root signs + for d or its inversion.

    ``d`` should be minimal; a removable vertex may have l_v = 0.
    """
    for cand in (d, invert(d)):
        hat = hat_gamma(cand)
        if hat.all_positive:
            return True
    return False


@dataclass(frozen=True)
class PieceVerdict:
    vertex: str
    multiplicities: dict
    tight: bool

    def to_dict(self) -> dict:
        return {"vertex": self.vertex, "multiplicities": dict(self.multiplicities), "tight": self.tight}


def per_piece(d: SpliceDiagram) -> list[PieceVerdict]:
    """Sign uniformity of every Seifert multilink obtained by cutting all inner edges.

    A diagram without inner vertices is a single piece (the Hopf link or the
    unknot) carrying its own arrowheads.
    """
    require_valid(d)
    if not d.nodes:
        ms = dict(d.mults)
        return [PieceVerdict("", ms, _uniform_sign(ms.values()) is not None)]
    out = []
    for v in d.nodes:
        sm = seifert_multilink(d, v)
        out.append(PieceVerdict(v, sm, _uniform_sign(sm.values()) is not None))
    return out


def milnor_fg(d: SpliceDiagram, g_components, assume_s3: bool = False) -> TightnessVerdict:
    """Verdict for the multilink of f * conj(g), given the diagram of f * g.

    The arrows in ``g_components`` have their orientation reversed.  Reversal
    can destroy fiberedness; the sign rule is still reported then, flagged with
    ``fibered=False``.
    """
    require_valid(d)
    g = set(g_components)
    unknown = g - set(d.arrows)
    if unknown:
        raise PreconditionError(f"not arrowheads: {sorted(unknown)}")
    if not d.arrows or any(m <= 0 for m in d.multiplicity.values()):
        raise PreconditionError("milnor_fg needs all multiplicities positive")
    _require(d, assume_s3)
    fg = d.with_mults({a: -d.multiplicity[a] for a in g})
    return _verdict(fg, fibered=is_fibered(fg).fibered)
