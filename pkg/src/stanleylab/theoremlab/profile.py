"""Classification of an instance into ``(d, f, E, B, C, r, s, q)``."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core import (
    IdealPair,
    Monomial,
    MonomialIdeal,
    StanleyLabError,
    intersect,
    minimalize,
    validate_pair,
)
from ..poset import build_poset


class NotApplicableError(StanleyLabError):
    pass


class ConstructionError(StanleyLabError):
    pass


@dataclass(frozen=True)
class InstanceProfile:
    pair: IdealPair
    d: int
    f: Monomial | None
    E: tuple[Monomial, ...]
    B: tuple[Monomial, ...]
    C: tuple[Monomial, ...]
    r: int
    s: int
    q: int
    flags: dict[str, bool] = field(default_factory=dict)

    def f_multiples(self) -> tuple[Monomial, ...]:
        """Elements ``f*x_i`` of B."""
        if self.f is None:
            return ()
        return tuple(b for b in self.B if self.f.mask & ~b.mask == 0)

    def to_dict(self) -> dict:
        def lst(ms):
            return [list(m.vars) for m in ms]

        return {
            "d": self.d,
            "f": list(self.f.vars) if self.f is not None else None,
            "E": lst(self.E),
            "B": lst(self.B),
            "C": lst(self.C),
            "r": self.r,
            "s": self.s,
            "q": self.q,
            "flags": dict(self.flags),
        }


def classify(pair: IdealPair) -> InstanceProfile:
    d = pair.d
    poset = build_poset(pair, d + 2)
    low = poset.layer(d)
    B, C = poset.layer(d + 1), poset.layer(d + 2)
    r, s, q = len(low), len(B), len(C)
    f = low[0] if r == 1 else None
    E = tuple(g for g in pair.I.gens if g.degree >= d + 1)
    fB = [m.mask for m in low] + [b.mask for b in B]
    flags = {
        "s_gt_r_plus_q": s > r + q,
        "r_gt_q": r > q,
        "s_lt_2r": s < 2 * r,
        "s_eq_q_plus_1": s == q + 1,
        "C_in_fB": all(any(g & ~c.mask == 0 for g in fB) for c in C),
        "gens_in_d_d1": all(g.degree in (d, d + 1) for g in pair.I.gens),
    }
    return InstanceProfile(pair, d, f, E, B, C, r, s, q, flags)


@dataclass(frozen=True)
class BoundVerdict:
    fired: tuple[str, ...]
    degree_restricted: bool  # generators of I confined to degrees d and d+1

    @property
    def predicts_sdepth_at_most_d_plus_1(self) -> bool:
        return bool(self.fired)


def bound_conditions(profile: InstanceProfile) -> BoundVerdict:
    r, s, q = profile.r, profile.s, profile.q
    tests = {"s_gt_r_plus_q": s > r + q, "r_gt_q": r > q, "s_lt_2r": s < 2 * r}
    return BoundVerdict(
        tuple(k for k, hit in tests.items() if hit), profile.flags.get("gens_in_d_d1", False)
    )


def c_condition(profile: InstanceProfile) -> bool:
    """Every c in C lies in (f)∩(a) for some a in E, or in (a)∩(a') for distinct a, a' in E."""
    if profile.r != 1:
        raise NotApplicableError(f"c_condition needs r = 1, got r = {profile.r}")
    fm = profile.f.mask
    for c in profile.C:
        over = [a for a in profile.E if a.mask & ~c.mask == 0]
        if not (over and fm & ~c.mask == 0) and len(over) < 2:
            return False
    return True


def _pair_from(gens, J: MonomialIdeal, what: str) -> IdealPair:
    gens = list(gens)
    if not gens:
        raise ConstructionError(f"{what}: no generators left")
    I = minimalize(gens)
    try:
        return validate_pair(I, intersect(I, J))
    except StanleyLabError as exc:
        raise ConstructionError(f"{what}: {exc}") from exc


def _require_r1(profile: InstanceProfile) -> Monomial:
    if profile.r != 1:
        raise NotApplicableError(f"needs r = 1, got r = {profile.r}")
    return profile.f


def subquotient_In(pair: IdealPair, profile: InstanceProfile, var: int) -> IdealPair:
    """``(B minus {f*x_var}) / (that ideal ∩ J)``."""
    f = _require_r1(profile)
    if f.mask >> (var - 1) & 1:
        raise ConstructionError(f"x{var} divides f={f}")
    fx = f.times(var)
    if fx not in profile.B:
        raise ConstructionError(f"{fx} is not in B")
    return _pair_from((b for b in profile.B if b != fx), pair.J, f"I_{var}")


def subquotient_Ib(pair: IdealPair, profile: InstanceProfile, b: Monomial) -> IdealPair:
    """``(f, E minus {b}) / (that ideal ∩ J)``."""
    f = _require_r1(profile)
    if b not in profile.E:
        raise ConstructionError(f"{b} is not in E")
    return _pair_from([f] + [e for e in profile.E if e != b], pair.J, f"I_b for b={b}")


def subquotient_B(pair: IdealPair, profile: InstanceProfile, drop: Monomial | None = None) -> IdealPair:
    """``(B minus {drop}) / (that ideal ∩ J)``; ``drop=None`` keeps all of B."""
    if drop is not None and drop not in profile.B:
        raise ConstructionError(f"{drop} is not in B")
    return _pair_from((b for b in profile.B if b != drop), pair.J, "(B)")
