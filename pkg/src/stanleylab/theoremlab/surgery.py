"""Interval-partition surgery: swaps, assignment maps and the alternating chain.

All partitions here live on posets truncated at degree ``d+2`` and are in
normal form: every interval starting at degree ``d+2`` is a singleton, so a
partition of sdepth ``d+2`` is the same thing as an assignment of a top in C
to every element of B, plus one interval ``[f, f*x_i*x_j]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from ..core import IdealPair, Monomial, StanleyLabError
from ..poset import (
    Interval,
    IntervalPartition,
    PartitionCheck,
    StanleyPoset,
    build_poset,
    validate_partition,
)
from .profile import InstanceProfile


class SwapInvalidError(StanleyLabError):
    def __init__(self, message: str, check: PartitionCheck | None = None):
        super().__init__(message)
        self.check = check


class NormalizationRequiredError(StanleyLabError):
    pass


class InputContractError(StanleyLabError):
    pass


class AssemblyError(StanleyLabError):
    def __init__(self, message: str, check: PartitionCheck | None = None):
        super().__init__(message)
        self.check = check


def swap_intervals(
    p: IntervalPartition,
    out: Iterable[Interval],
    into: Iterable[Interval],
    host: StanleyPoset | None = None,
) -> IntervalPartition:
    """Replace ``out`` by ``into`` and validate on ``host`` (default: the same host)."""
    out, into = list(out), list(into)
    current = list(p.intervals)
    for iv in out:
        if iv not in current:
            raise SwapInvalidError(f"{iv} is not an interval of the partition")
        current.remove(iv)
    result = IntervalPartition(host or p.host, tuple(current + into))
    check = validate_partition(result)
    if not check:
        raise SwapInvalidError(f"swap does not give a partition: {check.detail}", check)
    return result


def fill_singletons(intervals: list[Interval], host: StanleyPoset, degree: int) -> list[Interval]:
    """Append ``[w, w]`` for every uncovered element of ``host`` of the given degree."""
    covered = {w for iv in intervals for w in iv.members()}
    return intervals + [Interval(w, w) for w in host.layer(degree) if w not in covered]


@dataclass(frozen=True)
class AssignmentMap:
    """``h: b -> c_b`` read off intervals ``[b, c_b]`` and its inverse ``g``.

    When the partition holds ``[f, f*x_i*x_j]`` (i < j) both ends map to the
    top and ``g`` sends the top back to ``f*x_i``; ``special`` records
    ``(f*x_i, f*x_j, f*x_i*x_j)``.
    """

    h: dict[Monomial, Monomial]
    g: dict[Monomial, Monomial]
    special: tuple[Monomial, Monomial, Monomial] | None = None

    @property
    def image(self) -> set[Monomial]:
        return set(self.g)


def read_assignment_map(p: IntervalPartition, top_degree: int | None = None) -> AssignmentMap:
    k = p.host.max_degree if top_degree is None else top_degree
    h: dict[Monomial, Monomial] = {}
    g: dict[Monomial, Monomial] = {}
    special = None
    for iv in p.intervals:
        du, dv = iv.u.degree, iv.v.degree
        if du >= k:
            if not iv.is_singleton():
                raise NormalizationRequiredError(f"{iv} starts at degree {du} >= {k} but is not a singleton")
            continue
        if dv != k:
            raise NormalizationRequiredError(f"{iv} is not topped at degree {k}")
        if du == k - 1:
            h[iv.u] = iv.v
            g[iv.v] = iv.u
        elif du == k - 2:
            if special is not None:
                raise NormalizationRequiredError(f"two intervals of rank 2: {iv} and [{special[0]}..]")
            low, high = sorted(Monomial(iv.u.mask | 1 << (t - 1), iv.u.n) for t in _vars(iv.v.mask & ~iv.u.mask))
            h[low] = h[high] = iv.v
            g[iv.v] = low
            special = (low, high, iv.v)
        else:
            raise NormalizationRequiredError(f"{iv} has rank {dv - du} > 2")
    return AssignmentMap(h, g, special)


def _vars(mask: int) -> list[int]:
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


@dataclass
class ChainState:
    m1: AssignmentMap
    m2: AssignmentMap
    a: list[Monomial] = field(default_factory=list)
    c: list[Monomial] = field(default_factory=list)
    stop_case: int = 0
    fixed_u: int | None = None

    @property
    def e(self) -> int:
        return len(self.a) - 1

    def bijection_holds(self) -> bool:
        """h1 maps {a_1..a_e} bijectively onto {c_0..c_{e-1}}."""
        e = self.e
        imgs = [self.m1.h.get(x) for x in self.a[1:]]
        return len(set(imgs)) == e and set(imgs) == set(self.c[:e])

    def to_dict(self) -> dict:
        return {
            "a": [list(x.vars) for x in self.a],
            "c": [list(x.vars) for x in self.c],
            "stop_case": self.stop_case,
            "fixed_u": self.fixed_u,
        }


def _check_inverse(m: AssignmentMap, name: str) -> None:
    for c, b in m.g.items():
        if m.h.get(b) != c:
            raise InputContractError(f"{name}: g({c}) = {b} but h({b}) = {m.h.get(b)}")
    for b, c in m.h.items():
        if c not in m.g:
            raise InputContractError(f"{name}: h({b}) = {c} has no preimage under g")
        if m.g[c] != b and not (m.special and b in m.special[:2]):
            raise InputContractError(f"{name}: h is not injective at {c}")


def alternating_chain(
    m1: AssignmentMap,
    m2: AssignmentMap,
    start: Monomial,
    b2: Monomial | None = None,
    cbar: Monomial | None = None,
) -> ChainState:
    """Run ``c_p = h2(a_p)``, ``a_{p+1} = g1(c_p)`` from ``a_0 = start`` until a stopping case.

    1: ``a_e = b2`` (then ``c_e = cbar``); 2: ``c_e`` is not in the image of
    h1; 3: ``a_e`` is the second end of h2's rank-2 interval to appear.
    """
    _check_inverse(m1, "h1")
    _check_inverse(m2, "h2")
    ends = set(m2.special[:2]) if m2.special else set()
    st = ChainState(m1, m2, [start])
    seen = {start}
    for _ in range(len(m1.h) + len(m2.h) + 2):
        p = len(st.a) - 1
        ap = st.a[-1]
        if p >= 1 and b2 is not None and ap == b2:
            if cbar is None:
                raise InputContractError("case 1 reached but no cbar supplied")
            st.c.append(cbar)
            st.stop_case = 1
            return st
        if ap in ends:
            if st.fixed_u is None:
                st.fixed_u = p
            elif st.a[st.fixed_u] != ap:
                st.stop_case = 3
                return st
        if ap not in m2.h:
            raise InputContractError(f"h2 is undefined at a_{p} = {ap}")
        cp = m2.h[ap]
        st.c.append(cp)
        if cp not in m1.g:
            st.stop_case = 2
            return st
        nxt = m1.g[cp]
        if nxt in seen:
            raise InputContractError(f"chain revisits {nxt}; maps are not from partitions")
        seen.add(nxt)
        st.a.append(nxt)
    raise InputContractError("chain did not terminate")


@dataclass(frozen=True)
class SurgeryContext:
    """The data the chain was run on: the instance and the two source partitions."""

    pair: IdealPair
    profile: InstanceProfile
    b1: Monomial
    b2: Monomial | None
    cbar: Monomial | None
    p1: IntervalPartition  # on (B minus b1), sdepth d+2
    p2: IntervalPartition  # on (f, E minus b2), sdepth d+2


def b_host(pair: IdealPair, profile: InstanceProfile) -> StanleyPoset:
    """Truncated poset of ``(B)/(B)∩J``: the elements of B and C divisible by some b."""
    from .profile import subquotient_B

    return build_poset(subquotient_B(pair, profile), profile.d + 2)


def chain_to_partition(state: ChainState, ctx: SurgeryContext) -> IntervalPartition:
    d = ctx.profile.d
    k = d + 2
    e = state.e
    used_c = set(state.c[:e])
    if state.stop_case in (1, 2):
        host = b_host(ctx.pair, ctx.profile)
        ivs = [Interval(state.a[p], state.c[p]) for p in range(e + 1)]
    elif state.stop_case == 3:
        host = build_poset(ctx.pair, k)
        u = state.fixed_u
        ivs = [Interval(state.a[p], state.c[p]) for p in range(e) if p != u]
        ivs.append(Interval(ctx.profile.f, state.c[u]))
    else:
        raise AssemblyError(f"chain has no stopping case ({state.stop_case})")
    in_chain = set(state.a)
    for ct, b in sorted(state.m1.g.items()):
        if ct in used_c or (state.stop_case == 1 and ct == ctx.cbar):
            continue
        if b in in_chain:
            raise AssemblyError(f"g1({ct}) = {b} is already on the chain")
        ivs.append(Interval(b, ct))
    ivs = fill_singletons(ivs, host, k)
    part = IntervalPartition(host, tuple(ivs))
    check = validate_partition(part)
    if not check:
        raise AssemblyError(f"case {state.stop_case} assembly is not a partition: {check.detail}", check)
    if part.sdepth < k:
        raise AssemblyError(f"assembled partition has sdepth {part.sdepth} < {k}")
    return part


def lift_to_quotient(p_b: IntervalPartition, pair: IdealPair, profile: InstanceProfile) -> IntervalPartition:
    """Turn a sdepth-(d+2) partition of ``(B)/(B)∩J`` into one of ``I/J``.

    Exchanges ``[f*x_i, f*x_i*x_j]`` and ``[f*x_j, c']`` for
    ``[f, f*x_i*x_j]`` and ``[c', c']``.
    """
    f = profile.f
    k = profile.d + 2
    host = build_poset(pair, k)
    for iv in sorted(p_b.intervals, key=lambda iv: (iv.u.sort_key(), iv.v.sort_key())):
        if iv.u.degree == k - 1 and f.mask & ~iv.u.mask == 0 and iv.v.degree == k:
            c = iv.v
            other = Monomial(c.mask & ~(iv.u.mask & ~f.mask), c.n)
            partner = p_b.interval_of(other)
            if partner is None or partner.u != other:
                continue
            out = [iv, partner]
            into = [Interval(f, c), Interval(partner.v, partner.v)]
            kept = [x for x in p_b.intervals if x not in out] + into
            try:
                return _validated(fill_singletons(kept, host, k), host)
            except SwapInvalidError:
                continue
    raise AssemblyError("no interval [f*x_i, f*x_i*x_j] to lift from")


def _validated(ivs: list[Interval], host: StanleyPoset) -> IntervalPartition:
    part = IntervalPartition(host, tuple(ivs))
    check = validate_partition(part)
    if not check:
        raise SwapInvalidError(check.detail, check)
    return part
