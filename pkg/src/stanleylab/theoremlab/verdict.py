"""Check the depth bound on single instances."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core import IdealPair
from ..homology import DepthReport, depth
from ..linalg import RATIONALS, FieldSpec
from ..poset import SdepthCertificate, sdepth
from .profile import InstanceProfile, classify


@dataclass(frozen=True)
class TheoremVerdict:
    """``r = 1``, ``s != q+1`` and ``sdepth = d+1`` should force ``depth <= d+1``."""

    hypotheses_hold: bool
    conclusion_holds: bool
    profile: InstanceProfile
    sdepth: SdepthCertificate
    depth: DepthReport
    notes: list[str] = field(default_factory=list)

    @property
    def violation(self) -> bool:
        return self.hypotheses_hold and not self.conclusion_holds

    @property
    def status(self) -> str:
        if self.violation:
            return "VIOLATION"
        return "confirmed" if self.hypotheses_hold else "vacuous"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "hypotheses_hold": self.hypotheses_hold,
            "conclusion_holds": self.conclusion_holds,
            "sdepth": self.sdepth.value,
            "depth": self.depth.depth,
            "notes": list(self.notes),
        }


def theorem_check(pair: IdealPair, field: FieldSpec = RATIONALS) -> TheoremVerdict:
    prof = classify(pair)
    cert = sdepth(pair)
    rep = depth(pair, field)
    d = pair.d
    notes = []
    if prof.r != 1:
        notes.append(f"r = {prof.r} != 1")
    if prof.flags["s_eq_q_plus_1"]:
        notes.append("boundary case s = q+1 (excluded)")
    if cert.value != d + 1:
        notes.append(f"sdepth = {cert.value} != d+1 = {d + 1}")
    hyp = prof.r == 1 and not prof.flags["s_eq_q_plus_1"] and cert.value == d + 1
    return TheoremVerdict(hyp, rep.depth <= d + 1, prof, cert, rep, notes)
