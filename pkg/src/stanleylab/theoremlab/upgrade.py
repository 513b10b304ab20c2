"""Drive the partition surgery on a concrete instance.

:func:`upgrade_partition` walks the route of the argument: a partition of
``I_n/J_n``, the exchange that turns it into one of ``(B minus b1)``, the
singleton ``cbar``, a partition of ``I_b2/J_b2`` and finally the chain.  Each
step either produces a sdepth-(d+2) partition of ``I/J`` or stops with the
reason its inputs are missing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from ..core import IdealPair, Monomial, StanleyLabError
from ..poset import (
    Interval,
    IntervalPartition,
    PartitionCheck,
    build_poset,
    sdepth_decide,
    validate_partition,
)
from .profile import (
    InstanceProfile,
    classify,
    subquotient_B,
    subquotient_Ib,
    subquotient_In,
)
from .surgery import (
    ChainState,
    SurgeryContext,
    alternating_chain,
    chain_to_partition,
    fill_singletons,
    lift_to_quotient,
    read_assignment_map,
)


@dataclass
class UpgradeResult:
    status: str  # "upgraded" or "not-applicable"
    route: str = ""
    reason: str = ""
    partition: IntervalPartition | None = None
    check: PartitionCheck | None = None
    chain: ChainState | None = None
    chain_partition: IntervalPartition | None = None
    trace: list[str] = field(default_factory=list)

    @property
    def stop_case(self) -> int | None:
        return self.chain.stop_case if self.chain else None

    def to_dict(self) -> dict:
        out = {
            "status": self.status,
            "route": self.route,
            "reason": self.reason,
            "stop_case": self.stop_case,
            "trace": list(self.trace),
        }
        if self.partition is not None:
            out["partition"] = self.partition.to_lists()
            out["sdepth"] = self.partition.sdepth
            out["valid"] = bool(self.check)
        if self.chain is not None:
            out["chain"] = self.chain.to_dict()
        return out


def _finish(part: IntervalPartition, route: str, trace: list[str], chain=None, chain_part=None) -> UpgradeResult:
    check = validate_partition(part)
    return UpgradeResult("upgraded", route, partition=part, check=check, chain=chain, chain_partition=chain_part, trace=trace)


def _decide(pair: IdealPair, k: int) -> IntervalPartition | None:
    if k > pair.n:
        return None
    return sdepth_decide(pair, k)


def run_chain(ctx: SurgeryContext) -> tuple[ChainState, IntervalPartition, IntervalPartition]:
    """Chain, assembly and (cases 1-2) the lift to ``I/J``."""
    k = ctx.profile.d + 2
    m1 = read_assignment_map(ctx.p1, k)
    m2 = read_assignment_map(ctx.p2, k)
    state = alternating_chain(m1, m2, ctx.b1, ctx.b2, ctx.cbar)
    assembled = chain_to_partition(state, ctx)
    if state.stop_case == 3:
        return state, assembled, assembled
    return state, assembled, lift_to_quotient(assembled, ctx.pair, ctx.profile)


def upgrade_partition(pair: IdealPair, profile: InstanceProfile | None = None) -> UpgradeResult:
    profile = profile or classify(pair)
    trace: list[str] = []
    if profile.r != 1:
        return UpgradeResult("not-applicable", reason=f"r = {profile.r}, the surgery needs r = 1")
    d, f = profile.d, profile.f
    k = d + 2
    if k > pair.n:
        return UpgradeResult("not-applicable", reason="d+2 exceeds n")
    full = build_poset(pair, k)
    reasons = []
    for c in profile.C:
        if f.mask & ~c.mask:
            continue
        i, j = [t + 1 for t in range(pair.n) if (c.mask & ~f.mask) >> t & 1]
        for last, prev in ((j, i), (i, j)):
            fx_last, fx_prev = f.times(last), f.times(prev)
            tag = f"c={c}, n:=x{last}"
            try:
                pn_pair = subquotient_In(pair, profile, last)
            except StanleyLabError as exc:
                reasons.append(f"{tag}: {exc}")
                continue
            pn = _decide(pn_pair, k)
            if pn is None:
                reasons.append(f"{tag}: I_n/J_n has sdepth <= d+1")
                continue
            trace.append(f"{tag}: I_n/J_n has a sdepth-{k} partition")
            iv = pn.interval_of(c)
            if iv.u == c or iv.u == fx_prev:
                out = [iv]
                if iv.u == c:
                    # fx_prev sits in its own [fx_prev, c''] which must give way
                    other = pn.interval_of(fx_prev)
                    out.append(other)
                    extra = [Interval(other.v, other.v)]
                else:
                    extra = []
                kept = [x for x in pn.intervals if x not in out] + [Interval(f, c)] + extra
                part = IntervalPartition(full, tuple(fill_singletons(kept, full, k)))
                trace.append(f"switched {', '.join(map(str, out))} for [{f}, {c}]")
                return _finish(part, "direct-switch", trace)
            b1 = iv.u
            # [b1, c] -> [fx_last, c]: now a partition of (B minus b1)
            p1_pair = subquotient_B(pair, profile, b1)
            p1_host = build_poset(p1_pair, k)
            kept = [x for x in pn.intervals if x != iv and x.u in p1_host] + [Interval(fx_last, c)]
            p1 = IntervalPartition(p1_host, tuple(fill_singletons(kept, p1_host, k)))
            chk = validate_partition(p1)
            if not chk:
                reasons.append(f"{tag}: exchange for b1={b1} failed: {chk.detail}")
                continue
            trace.append(f"b1={b1}: exchanged [{b1}, {c}] for [{fx_last}, {c}]")
            result = _continue_from_p1(pair, profile, p1, b1, trace)
            if result.status == "upgraded":
                return result
            reasons.append(f"{tag}: {result.reason}")
    if not reasons:
        reasons.append("no element f*x_i*x_j in C")
    return UpgradeResult("not-applicable", reason="; ".join(reasons), trace=trace)


def _continue_from_p1(
    pair: IdealPair, profile: InstanceProfile, p1: IntervalPartition, b1: Monomial, trace: list[str]
) -> UpgradeResult:
    k = profile.d + 2
    singles = [iv.u for iv in p1.intervals if iv.is_singleton() and iv.u.degree == k]
    E_B = [e for e in profile.E if e in profile.B]
    cands = [(cb, b2) for cb in singles for b2 in E_B if b2 != b1 and b2.mask & ~cb.mask == 0]
    for cb in singles:
        if b1.mask & ~cb.mask == 0:
            host = build_poset(subquotient_B(pair, profile), k)
            kept = [x for x in p1.intervals if x.u != cb] + [Interval(b1, cb)]
            p_b = IntervalPartition(host, tuple(fill_singletons(kept, host, k)))
            if validate_partition(p_b):
                trace.append(f"cbar={cb} is divisible by b1: [{cb}, {cb}] -> [{b1}, {cb}]")
                try:
                    return _finish(lift_to_quotient(p_b, pair, profile), "absorb-b1", trace)
                except StanleyLabError as exc:
                    trace.append(f"lift failed: {exc}")
    if not cands:
        return UpgradeResult("not-applicable", reason=f"no singleton of (B minus {b1}) is divisible by some b2 in E")
    misses = []
    for cb, b2 in cands:
        p2 = _decide(subquotient_Ib(pair, profile, b2), k)
        if p2 is None:
            misses.append(f"I_b2/J_b2 for b2={b2} has sdepth <= d+1")
            continue
        ctx = SurgeryContext(pair, profile, b1, b2, cb, p1, p2)
        state, assembled, lifted = run_chain(ctx)
        trace.append(f"chain from b1={b1} to b2={b2}, cbar={cb}: case {state.stop_case}, e={state.e}")
        return _finish(lifted, f"chain-case-{state.stop_case}", trace, state, assembled)
    return UpgradeResult("not-applicable", reason="; ".join(misses))


def surgery_inputs(pair: IdealPair, profile: InstanceProfile | None = None) -> Iterator[SurgeryContext]:
    """Every ``(b1, b2, cbar)`` for which both source partitions exist.

    Unlike :func:`upgrade_partition` this does not insist that the partition of
    ``(B minus b1)`` came from ``I_n/J_n``; any sdepth-(d+2) partition with a
    suitable singleton feeds the chain.
    """
    profile = profile or classify(pair)
    if profile.r != 1 or profile.d + 2 > pair.n:
        return
    k = profile.d + 2
    E_B = [e for e in profile.E if e in profile.B]
    p2_cache: dict[Monomial, IntervalPartition | None] = {}
    for b1 in E_B:
        try:
            p1 = _decide(subquotient_B(pair, profile, b1), k)
        except StanleyLabError:
            continue
        if p1 is None:
            continue
        singles = [iv.u for iv in p1.intervals if iv.is_singleton() and iv.u.degree == k]
        for cb in singles:
            for b2 in E_B:
                if b2 == b1 or b2.mask & ~cb.mask:
                    continue
                if b2 not in p2_cache:
                    p2_cache[b2] = _decide(subquotient_Ib(pair, profile, b2), k)
                if p2_cache[b2] is not None:
                    yield SurgeryContext(pair, profile, b1, b2, cb, p1, p2_cache[b2])
