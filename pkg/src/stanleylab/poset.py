"""Stanley posets of ``I/J``, interval partitions and Stanley depth."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator

from . import _kernels
from .core import IdealPair, Monomial, StanleyLabError, CapacityError, squarefree_monomials

log = logging.getLogger(__name__)

ORACLE_CAP = 14


class MalformedIntervalError(StanleyLabError):
    pass


class RangeError(StanleyLabError):
    pass


@dataclass(frozen=True)
class StanleyPoset:
    """Squarefree monomials of ``I \\ J`` of degree at most ``max_degree``."""

    pair: IdealPair
    max_degree: int
    layers: dict[int, tuple[Monomial, ...]]
    empty_warning: bool = False

    @property
    def d(self) -> int:
        return self.pair.d

    @property
    def n(self) -> int:
        return self.pair.n

    @property
    def elements(self) -> frozenset[Monomial]:
        return frozenset(m for layer in self.layers.values() for m in layer)

    def ordered(self) -> list[Monomial]:
        """Elements sorted by degree, then lexicographically."""
        return [m for k in sorted(self.layers) for m in self.layers[k]]

    def layer(self, degree: int) -> tuple[Monomial, ...]:
        return self.layers.get(degree, ())

    def __contains__(self, m: Monomial) -> bool:
        return m.degree <= self.max_degree and self.pair.in_quotient(m)

    def __len__(self) -> int:
        return sum(len(v) for v in self.layers.values())

    def is_full(self) -> bool:
        return self.max_degree >= self.n


def build_poset(pair: IdealPair, max_degree: int | None = None) -> StanleyPoset:
    n = pair.n
    top = n if max_degree is None else min(max_degree, n)
    if top < pair.d:
        log.warning("max_degree=%s below d=%s: empty poset", max_degree, pair.d)
        return StanleyPoset(pair, top, {}, empty_warning=True)
    layers = {}
    for k in range(pair.d, top + 1):
        layer = tuple(m for m in squarefree_monomials(n, k) if pair.in_quotient(m))
        if layer:
            layers[k] = layer
    poset = StanleyPoset(pair, top, layers)
    if not layers:
        raise StanleyLabError(f"poset of {pair} is empty; I/J must be nonzero")
    assert min(layers) == pair.d
    return poset


@dataclass(frozen=True, slots=True)
class Interval:
    u: Monomial
    v: Monomial

    def __post_init__(self) -> None:
        if self.u.n != self.v.n or self.u.mask & ~self.v.mask:
            raise MalformedIntervalError(f"[{self.u}, {self.v}]: {self.u} does not divide {self.v}")

    @property
    def rank(self) -> int:
        return self.v.degree - self.u.degree

    def members(self) -> Iterator[Monomial]:
        free = self.v.mask & ~self.u.mask
        sub = free
        # enumerate all submasks of ``free``
        while True:
            yield Monomial(self.u.mask | sub, self.u.n)
            if sub == 0:
                break
            sub = (sub - 1) & free

    def __contains__(self, w: Monomial) -> bool:
        return self.u.mask & ~w.mask == 0 and w.mask & ~self.v.mask == 0

    def is_singleton(self) -> bool:
        return self.u == self.v

    def __str__(self) -> str:
        return f"[{self.u}, {self.v}]"


def interval_elements(iv: Interval, host: StanleyPoset | None = None) -> frozenset[Monomial]:
    out = frozenset(iv.members())
    if host is not None:
        missing = [w for w in out if w not in host]
        if missing:
            raise MalformedIntervalError(f"{iv} leaves the host poset at {min(missing)}")
    return out


@dataclass(frozen=True)
class IntervalPartition:
    host: StanleyPoset
    intervals: tuple[Interval, ...]

    @property
    def sdepth(self) -> int:
        return min(iv.v.degree for iv in self.intervals)

    def sorted(self) -> IntervalPartition:
        return IntervalPartition(self.host, tuple(sorted(self.intervals, key=lambda iv: (iv.u.sort_key(), iv.v.sort_key()))))

    def interval_of(self, w: Monomial) -> Interval | None:
        return next((iv for iv in self.intervals if w in iv), None)

    def to_lists(self) -> list[list[list[int]]]:
        return [[list(iv.u.vars), list(iv.v.vars)] for iv in self.intervals]


@dataclass(frozen=True)
class PartitionCheck:
    valid: bool
    detail: str = ""
    witness: Monomial | None = None

    def __bool__(self) -> bool:
        return self.valid


def validate_partition(p: IntervalPartition) -> PartitionCheck:
    host = p.host
    seen: dict[Monomial, Interval] = {}
    for iv in p.intervals:
        for w in sorted(iv.members()):
            if w not in host:
                return PartitionCheck(False, f"{w} in {iv} is not in the host poset", w)
            if w in seen:
                return PartitionCheck(False, f"{w} covered by both {seen[w]} and {iv}", w)
            seen[w] = iv
    for w in host.ordered():
        if w not in seen:
            return PartitionCheck(False, f"{w} is not covered", w)
    return PartitionCheck(True)


@dataclass(frozen=True)
class Refutation:
    """Why no partition of sdepth ``k`` exists."""

    k: int
    reason: str  # "search", "bound-conditions" or "ceiling"
    nodes: int = 0


@dataclass(frozen=True)
class SdepthCertificate:
    value: int
    witness: IntervalPartition
    refutation: Refutation
    decisions: dict[int, bool] = field(default_factory=dict)


def bound_conditions_fire(poset: StanleyPoset) -> dict[str, bool]:
    """The numerical conditions that force sdepth <= d+1, from layer sizes."""
    d = poset.d
    r, s, q = len(poset.layer(d)), len(poset.layer(d + 1)), len(poset.layer(d + 2))
    return {"s_gt_r_plus_q": s > r + q, "r_gt_q": r > q, "s_lt_2r": s < 2 * r}


def _truncated_cover_problem(poset: StanleyPoset, k: int):
    elems = poset.ordered()
    index = {m: i for i, m in enumerate(elems)}
    tops = poset.layer(k)
    need = 0
    cands: list[list[int]] = []
    cand_tops: list[list[Monomial]] = []
    for i, u in enumerate(elems):
        blocks: list[int] = []
        tlist: list[Monomial] = []
        if u.degree < k:
            need |= 1 << i
            for v in tops:
                if u.mask & ~v.mask == 0:
                    blocks.append(sum(1 << index[w] for w in Interval(u, v).members()))
                    tlist.append(v)
        cands.append(blocks)
        cand_tops.append(tlist)
    return elems, need, cands, cand_tops


def _check_k(pair: IdealPair, k: int) -> None:
    if not pair.d <= k <= pair.n:
        raise RangeError(f"k={k} outside [d, n] = [{pair.d}, {pair.n}]")


def sdepth_decide(
    pair: IdealPair,
    k: int,
    *,
    use_bounds: bool = True,
    budget: int = _kernels.DEFAULT_BUDGET,
    stats: dict | None = None,
) -> IntervalPartition | None:
    """Find a partition of the degree-<=k truncation with every low interval topped at degree k.

    A result certifies sdepth >= k for the full quotient; ``None`` certifies sdepth < k.
    """
    _check_k(pair, k)
    poset = build_poset(pair, k)
    if use_bounds and k == pair.d + 2 and any(bound_conditions_fire(poset).values()):
        if stats is not None:
            stats.update(reason="bound-conditions", nodes=0)
        return None
    elems, need, cands, cand_tops = _truncated_cover_problem(poset, k)
    choices, nodes = _kernels.cover_search(need, cands, budget)
    if stats is not None:
        stats.update(reason="search", nodes=nodes)
    if choices is None:
        return None
    intervals = [Interval(elems[e], cand_tops[e][j]) for e, j in choices]
    used = 0
    for e, j in choices:
        used |= cands[e][j]
    intervals += [Interval(m, m) for i, m in enumerate(elems) if m.degree == k and not used >> i & 1]
    return IntervalPartition(poset, tuple(intervals))


def iter_truncated_partitions(pair: IdealPair, k: int) -> Iterator[IntervalPartition]:
    """Every partition that :func:`sdepth_decide` could return, in search order."""
    _check_k(pair, k)
    poset = build_poset(pair, k)
    elems, need, cands, cand_tops = _truncated_cover_problem(poset, k)
    chosen: list[tuple[int, int]] = []

    def rec(covered: int) -> Iterator[IntervalPartition]:
        remaining = need & ~covered
        if not remaining:
            ivs = [Interval(elems[e], cand_tops[e][j]) for e, j in chosen]
            ivs += [Interval(m, m) for i, m in enumerate(elems) if m.degree == k and not covered >> i & 1]
            yield IntervalPartition(poset, tuple(ivs))
            return
        e = (remaining & -remaining).bit_length() - 1
        for j, block in enumerate(cands[e]):
            if block & covered == 0:
                chosen.append((e, j))
                yield from rec(covered | block)
                chosen.pop()

    yield from rec(0)


def extend_to_full(p: IntervalPartition) -> IntervalPartition:
    """Add singletons for every element above the truncation degree."""
    full = build_poset(p.host.pair)
    extra = [Interval(m, m) for m in full.ordered() if m.degree > p.host.max_degree]
    return IntervalPartition(full, p.intervals + tuple(extra))


def sdepth(
    pair: IdealPair, *, use_bounds: bool = True, budget: int = _kernels.DEFAULT_BUDGET
) -> SdepthCertificate:
    best = sdepth_decide(pair, pair.d, use_bounds=use_bounds, budget=budget)
    assert best is not None
    value = pair.d
    decisions = {pair.d: True}
    refutation = Refutation(pair.n + 1, "ceiling")
    for k in range(pair.d + 1, pair.n + 1):
        stats: dict = {}
        p = sdepth_decide(pair, k, use_bounds=use_bounds, budget=budget, stats=stats)
        decisions[k] = p is not None
        if p is None:
            refutation = Refutation(k, stats["reason"], stats["nodes"])
            break
        best, value = p, k
    witness = extend_to_full(best)
    assert witness.sdepth == value
    return SdepthCertificate(value, witness, refutation, decisions)


def all_intervals(poset: StanleyPoset) -> list[Interval]:
    elems = poset.ordered()
    return [Interval(u, v) for u in elems for v in elems if u.mask & ~v.mask == 0]


def sdepth_oracle(pair: IdealPair, cap: int = ORACLE_CAP) -> int:
    """Stanley depth by enumerating every interval partition of the full poset.

    Shares nothing with the truncated search: no truncation, no degree-ordered
    branching, no memo.  Elements are consumed from the top down.
    """
    poset = build_poset(pair)
    if len(poset) > cap:
        raise CapacityError(f"full poset has {len(poset)} elements, oracle cap is {cap}")
    elems = sorted(poset.ordered(), key=lambda m: m.sort_key(), reverse=True)
    pos = {m: i for i, m in enumerate(elems)}
    containing: list[list[tuple[int, int]]] = [[] for _ in elems]
    for iv in all_intervals(poset):
        mask = sum(1 << pos[w] for w in iv.members())
        for w in iv.members():
            containing[pos[w]].append((mask, iv.v.degree))
    full = (1 << len(elems)) - 1
    best = -1

    def rec(covered: int, low: int) -> None:
        nonlocal best
        if covered == full:
            best = max(best, low)
            return
        free = full & ~covered
        i = (free & -free).bit_length() - 1
        for mask, top in containing[i]:
            if mask & covered == 0:
                rec(covered | mask, min(low, top))

    rec(0, pair.n + 1)
    return best
