"""Squarefree monomials and monomial ideals.

A squarefree monomial is stored as a bitmask over its variables: bit ``i-1``
is set iff ``x_i`` divides it.  Everything here is immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

MAX_VARS = 64


class StanleyLabError(ValueError):
    """Base class for all errors raised by this package."""


class AmbientMismatchError(StanleyLabError):
    pass


class CapacityError(StanleyLabError):
    pass


class EmptyIdealError(StanleyLabError):
    pass


class ContainmentError(StanleyLabError):
    pass


class TrivialPairError(StanleyLabError):
    pass


class GradingHypothesisError(StanleyLabError):
    pass


@dataclass(frozen=True, slots=True)
class Monomial:
    mask: int
    n: int

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VARS:
            raise CapacityError(f"n={self.n} exceeds the {MAX_VARS}-variable cap")
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#x} uses variables outside 1..{self.n}")

    @classmethod
    def from_vars(cls, variables: Iterable[int], n: int) -> Monomial:
        mask = 0
        for i in variables:
            if not 1 <= i <= n:
                raise ValueError(f"variable index {i} outside 1..{n}")
            mask |= 1 << (i - 1)
        return cls(mask, n)

    @classmethod
    def parse(cls, text: str, n: int) -> Monomial:
        """Parse ``x1*x3*x4`` (``*`` optional, ``1`` for the unit)."""
        text = text.strip().replace(" ", "")
        if text == "1":
            return cls(0, n)
        parts = [p for p in text.replace("*", "").split("x") if p != ""]
        if not text.startswith("x") or not parts:
            raise ValueError(f"cannot parse monomial {text!r}")
        return cls.from_vars((int(p) for p in parts), n)

    @property
    def vars(self) -> tuple[int, ...]:
        out = []
        m, i = self.mask, 1
        while m:
            if m & 1:
                out.append(i)
            m >>= 1
            i += 1
        return tuple(out)

    @property
    def degree(self) -> int:
        return self.mask.bit_count()

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.degree, self.vars)

    def __lt__(self, other: Monomial) -> bool:
        return self.sort_key() < other.sort_key()

    def times(self, i: int) -> Monomial:
        """Multiply by ``x_i``; ``x_i`` must not already divide."""
        bit = 1 << (i - 1)
        if self.mask & bit:
            raise ValueError(f"x{i} already divides {self}; result not squarefree")
        return Monomial(self.mask | bit, self.n)

    def lcm(self, other: Monomial) -> Monomial:
        _same_ambient(self, other)
        return Monomial(self.mask | other.mask, self.n)

    def __str__(self) -> str:
        v = self.vars
        return "*".join(f"x{i}" for i in v) if v else "1"

    def __repr__(self) -> str:
        return f"Monomial({self})"


def _same_ambient(a: Monomial, b: Monomial) -> None:
    if a.n != b.n:
        raise AmbientMismatchError(f"{a} lives in n={a.n}, {b} in n={b.n}")


def divides(a: Monomial, b: Monomial) -> bool:
    _same_ambient(a, b)
    return a.mask & ~b.mask == 0


def squarefree_monomials(n: int, degree: int | None = None) -> Iterator[Monomial]:
    """All squarefree monomials in ``n`` variables, by degree then lex."""
    degrees = range(n + 1) if degree is None else [degree]
    for k in degrees:
        for c in combinations(range(1, n + 1), k):
            yield Monomial.from_vars(c, n)


@dataclass(frozen=True, slots=True)
class MonomialIdeal:
    n: int
    gens: tuple[Monomial, ...]

    def __post_init__(self) -> None:
        for g in self.gens:
            if g.n != self.n:
                raise AmbientMismatchError(f"generator {g} has n={g.n}, ideal has n={self.n}")
        masks = [g.mask for g in self.gens]
        for a in masks:
            for b in masks:
                if a != b and a & ~b == 0:
                    raise ValueError("generators must form an antichain; use minimalize()")

    @classmethod
    def zero(cls, n: int) -> MonomialIdeal:
        return cls(n, ())

    @classmethod
    def generated_by(cls, gens: Iterable[Monomial], n: int) -> MonomialIdeal:
        """Like :func:`minimalize` but an empty input gives the zero ideal."""
        gens = list(gens)
        return minimalize(gens) if gens else cls.zero(n)

    def is_zero(self) -> bool:
        return not self.gens

    def contains(self, m: Monomial) -> bool:
        return ideal_contains(self, m)

    def min_degree(self) -> int:
        return min(g.degree for g in self.gens)

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.gens)) + ")" if self.gens else "0"


def ideal_contains(ideal: MonomialIdeal, m: Monomial) -> bool:
    if m.n != ideal.n:
        raise AmbientMismatchError(f"{m} has n={m.n}, ideal has n={ideal.n}")
    mm = m.mask
    return any(g.mask & ~mm == 0 for g in ideal.gens)


def minimalize(gens: Iterable[Monomial]) -> MonomialIdeal:
    """Return the ideal generated by ``gens`` with its minimal generating set."""
    uniq = sorted(set(gens))
    if not uniq:
        raise EmptyIdealError("cannot minimalize an empty generating set")
    n = uniq[0].n
    for g in uniq:
        _same_ambient(uniq[0], g)
    kept: list[Monomial] = []
    # sorted by degree, so any divisor of g is already in ``kept``
    for g in uniq:
        if not any(k.mask & ~g.mask == 0 for k in kept):
            kept.append(g)
    return MonomialIdeal(n, tuple(kept))


def intersect(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    """Intersection of monomial ideals via pairwise lcms."""
    if a.n != b.n:
        raise AmbientMismatchError(f"ideals live in n={a.n} and n={b.n}")
    if a.is_zero() or b.is_zero():
        return MonomialIdeal.zero(a.n)
    return minimalize(g.lcm(h) for g in a.gens for h in b.gens)


def ideal_sum(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    if a.n != b.n:
        raise AmbientMismatchError(f"ideals live in n={a.n} and n={b.n}")
    return MonomialIdeal.generated_by(a.gens + b.gens, a.n)


@dataclass(frozen=True, slots=True)
class IdealPair:
    """A validated quotient ``I/J``; build it with :func:`validate_pair`."""

    I: MonomialIdeal
    J: MonomialIdeal
    d: int

    @property
    def n(self) -> int:
        return self.I.n

    def in_quotient(self, m: Monomial) -> bool:
        """True iff ``m`` is a monomial of ``I`` outside ``J``."""
        return ideal_contains(self.I, m) and not ideal_contains(self.J, m)

    def __str__(self) -> str:
        return f"I={self.I}, J={self.J} (n={self.n})"


def validate_pair(I: MonomialIdeal, J: MonomialIdeal) -> IdealPair:
    if I.n != J.n:
        raise AmbientMismatchError(f"I has n={I.n}, J has n={J.n}")
    if I.is_zero():
        raise EmptyIdealError("I must be nonzero")
    for g in J.gens:
        if not ideal_contains(I, g):
            raise ContainmentError(f"generator {g} of J is not in I")
    if all(ideal_contains(J, g) for g in I.gens):
        raise TrivialPairError("J = I, the quotient is zero")
    d = I.min_degree()
    for g in J.gens:
        if g.degree <= d:
            raise GradingHypothesisError(
                f"generator {g} of J has degree {g.degree} <= d={d}; "
                "J must be zero or generated in degrees >= d+1"
            )
    return IdealPair(I, J, d)


def make_pair(n: int, I: Iterable[Iterable[int]], J: Iterable[Iterable[int]] = ()) -> IdealPair:
    """Convenience constructor from 1-based variable index lists."""
    Ig = [Monomial.from_vars(g, n) for g in I]
    Jg = [Monomial.from_vars(g, n) for g in J]
    return validate_pair(MonomialIdeal.generated_by(Ig, n), MonomialIdeal.generated_by(Jg, n))
