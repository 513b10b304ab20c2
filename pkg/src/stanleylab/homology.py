"""Depth of ``I/J`` from multigraded Koszul homology.

For a multidegree ``a`` (an exponent vector) the Koszul strand in homological
degree ``i`` has one basis vector per ``i``-subset ``sigma`` of ``supp(a)``
whose residual monomial ``x^(a - e_sigma)`` is a monomial of ``I \\ J``.  The
projective dimension is the largest ``i`` with nonzero homology in some
squarefree multidegree, and depth = n - pd.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .core import IdealPair, Monomial, squarefree_monomials
from .linalg import RATIONALS, FieldSpec, InternalConsistencyError, matmul, rank


def _in_quotient(pair: IdealPair, expo: Sequence[int]) -> bool:
    # generators are squarefree, so membership only sees the support
    supp = 0
    for i, e in enumerate(expo):
        if e < 0:
            return False
        if e:
            supp |= 1 << i
    return any(g.mask & ~supp == 0 for g in pair.I.gens) and not any(
        g.mask & ~supp == 0 for g in pair.J.gens
    )


def _popcount_below(mask: int, j: int) -> int:
    return (mask & ((1 << j) - 1)).bit_count()


@dataclass(frozen=True)
class KoszulStrand:
    a: tuple[int, ...]
    bases: tuple[tuple[int, ...], ...]  # bases[i]: sigma bitmasks
    differentials: tuple[list[list[int]], ...]  # differentials[i]: C_i -> C_{i-1}, rows index C_{i-1}

    @property
    def length(self) -> int:
        return len(self.bases) - 1

    def dims(self) -> list[int]:
        return [len(b) for b in self.bases]

    def is_zero(self) -> bool:
        return not any(self.bases)


def build_strand(
    pair: IdealPair,
    a: Monomial | Sequence[int],
    field: FieldSpec = RATIONALS,
    *,
    order: str = "lex",
) -> KoszulStrand:
    """Koszul strand of ``I/J`` in multidegree ``a``.

    ``a`` is a squarefree monomial or an exponent vector.  ``order`` is
    ``"lex"`` or ``"revlex"`` and only permutes basis vectors.  The field
    does not enter the integer matrices; it is accepted for symmetry with
    :func:`strand_homology_dims`.
    """
    n = pair.n
    if isinstance(a, Monomial):
        expo = tuple((a.mask >> i) & 1 for i in range(n))
    else:
        expo = tuple(int(e) for e in a)
        if len(expo) != n or min(expo, default=0) < 0:
            raise ValueError(f"multidegree {a} is not an exponent vector of length {n}")
    support = [i for i in range(n) if expo[i] > 0]

    bases: list[tuple[int, ...]] = []
    for i in range(n + 1):
        layer = []
        for c in combinations(support, i):
            resid = list(expo)
            for j in c:
                resid[j] -= 1
            if _in_quotient(pair, resid):
                layer.append(sum(1 << j for j in c))
        if order == "revlex":
            layer.reverse()
        elif order != "lex":
            raise ValueError(f"unknown basis order {order!r}")
        bases.append(tuple(layer))

    diffs: list[list[list[int]]] = [[]]
    for i in range(1, n + 1):
        target = {s: r for r, s in enumerate(bases[i - 1])}
        mat = [[0] * len(bases[i]) for _ in bases[i - 1]]
        for col, sigma in enumerate(bases[i]):
            s = sigma
            while s:
                low = s & -s
                j = low.bit_length() - 1
                s ^= low
                row = target.get(sigma ^ low)
                # x_j * (residual) lands in J: component is zero
                if row is not None:
                    mat[row][col] = -1 if _popcount_below(sigma, j) & 1 else 1
        diffs.append(mat)
    return KoszulStrand(expo, tuple(bases), tuple(diffs))


def check_strand(strand: KoszulStrand) -> None:
    """Raise unless every composite of consecutive differentials vanishes."""
    for i in range(2, len(strand.bases)):
        upper, lower = strand.differentials[i], strand.differentials[i - 1]
        if not upper or not lower or not upper[0]:
            continue
        prod = matmul(lower, upper)
        if any(x for row in prod for x in row):
            raise InternalConsistencyError(f"d^2 != 0 at i={i}, a={strand.a}")


def strand_homology_dims(strand: KoszulStrand, field: FieldSpec = RATIONALS) -> list[int]:
    dims = strand.dims()
    ranks = [0]
    for i in range(1, len(dims)):
        mat = strand.differentials[i]
        if len(mat) != dims[i - 1] or any(len(r) != dims[i] for r in mat):
            raise InternalConsistencyError(f"differential {i} has the wrong shape at a={strand.a}")
        ranks.append(rank(mat, field) if dims[i] and dims[i - 1] else 0)
    ranks.append(0)
    h = [dims[i] - ranks[i] - ranks[i + 1] for i in range(len(dims))]
    if min(h, default=0) < 0:
        raise InternalConsistencyError(f"negative homology {h} at a={strand.a}")
    return h


def euler_characteristic_holds(strand: KoszulStrand, h: list[int]) -> bool:
    dims = strand.dims()
    return sum((-1) ** i * c for i, c in enumerate(dims)) == sum((-1) ** i * x for i, x in enumerate(h))


@dataclass(frozen=True)
class DepthReport:
    depth: int
    pd: int
    witness: tuple[int, Monomial]  # (i, a) with H_i nonzero in multidegree a
    field: FieldSpec
    strands: int = 0

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "pd": self.pd,
            "witness": {"i": self.witness[0], "a": list(self.witness[1].vars)},
            "field": str(self.field),
        }


def depth(
    pair: IdealPair,
    field: FieldSpec = RATIONALS,
    *,
    order: str = "lex",
    check: bool = False,
) -> DepthReport:
    """Depth via Koszul homology over every squarefree multidegree.

    With ``check`` each strand is also tested for d^2 = 0 and the Euler
    characteristic identity.
    """
    n = pair.n
    pd = -1
    witness = None
    count = 0
    for a in squarefree_monomials(n):
        strand = build_strand(pair, a, field, order=order)
        if strand.is_zero():
            continue
        count += 1
        h = strand_homology_dims(strand, field)
        if check:
            check_strand(strand)
            if not euler_characteristic_holds(strand, h):
                raise InternalConsistencyError(f"Euler characteristic mismatch at {a}")
        top = max((i for i, x in enumerate(h) if x), default=-1)
        if top > pd:
            pd, witness = top, (top, a)
    assert witness is not None, "I/J is nonzero, some homology must survive"
    return DepthReport(n - pd, pd, witness, field, count)


def depth_oracle_sample(
    pair: IdealPair,
    field: FieldSpec = RATIONALS,
    trials: int = 50,
    seed: int = 0,
) -> bool:
    """Spot-check that homology vanishes in random non-squarefree multidegrees."""
    rng = random.Random(seed)
    n = pair.n
    for _ in range(trials):
        expo = [rng.randint(0, 2) for _ in range(n)]
        if 2 not in expo:
            expo[rng.randrange(n)] = 2
        strand = build_strand(pair, expo, field)
        if any(strand_homology_dims(strand, field)):
            return False
    return True
