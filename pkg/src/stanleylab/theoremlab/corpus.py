"""Seeded random instance generators."""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterator

from ..core import IdealPair, Monomial, MonomialIdeal, StanleyLabError, minimalize, squarefree_monomials, validate_pair


def _random_subset(rng: random.Random, items: list, lo: int, hi: int) -> list:
    k = rng.randint(lo, min(hi, len(items)))
    return rng.sample(items, k)


def _random_J(rng: random.Random, I: MonomialIdeal, degree: int) -> MonomialIdeal:
    pool = [m for m in squarefree_monomials(I.n, degree) if I.contains(m)]
    if not pool or rng.random() < 0.1:
        return MonomialIdeal.zero(I.n)
    return MonomialIdeal.generated_by(_random_subset(rng, pool, 1, len(pool)), I.n)


def random_r1_instance(rng: random.Random, n: int, d: int) -> IdealPair | None:
    """``I = (f, E)`` with deg f = d and E of degree d+1 avoiding f; J in degree d+2."""
    f = Monomial.from_vars(rng.sample(range(1, n + 1), d), n)
    pool = [m for m in squarefree_monomials(n, d + 1) if f.mask & ~m.mask]
    E = _random_subset(rng, pool, 0, max(1, min(len(pool), 2 * n)))
    I = minimalize([f] + E)
    try:
        return validate_pair(I, _random_J(rng, I, d + 2))
    except StanleyLabError:
        return None


def random_bound_instance(rng: random.Random, n: int, d: int) -> IdealPair | None:
    """``r >= 1`` generators of degree d plus generators of degree d+1."""
    lows = [Monomial.from_vars(c, n) for c in combinations(range(1, n + 1), d)]
    F = _random_subset(rng, lows, 1, 3)
    pool = [m for m in squarefree_monomials(n, d + 1) if not any(g.mask & ~m.mask == 0 for g in F)]
    E = _random_subset(rng, pool, 0, max(1, min(len(pool), 2 * n))) if pool else []
    I = minimalize(F + E)
    try:
        return validate_pair(I, _random_J(rng, I, d + 2))
    except StanleyLabError:
        return None


def corpus(
    count: int,
    seed: int,
    *,
    n_values: tuple[int, ...] = (4, 5, 6),
    d_values: tuple[int, ...] = (1, 2),
    kind: str = "r1",
) -> Iterator[IdealPair]:
    """``count`` valid instances, deterministic in ``seed``."""
    if count <= 0 or not n_values:
        return
    rng = random.Random(seed)
    gen = {"r1": random_r1_instance, "bound": random_bound_instance}[kind]
    made = 0
    while made < count:
        n = rng.choice(n_values)
        d = rng.choice([x for x in d_values if x + 2 <= n] or [1])
        pair = gen(rng, n, d)
        if pair is not None:
            made += 1
            yield pair
