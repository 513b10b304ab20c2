"""Exact matrix rank over the rationals and over prime fields."""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .core import StanleyLabError


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "Q" or "GF"
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind == "Q":
            if self.p is not None:
                raise ValueError("the rationals take no modulus")
        elif self.kind == "GF":
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"prime field needs a prime modulus, got {self.p}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """``q`` for the rationals, ``gfp:P`` for GF(P)."""
        t = text.strip().lower()
        if t in ("q", "qq", "rationals"):
            return RATIONALS
        if t.startswith("gfp:"):
            return cls("GF", int(t[4:]))
        raise ValueError(f"bad field {text!r}; expected 'q' or 'gfp:P'")

    def __str__(self) -> str:
        return "q" if self.kind == "Q" else f"gfp:{self.p}"


RATIONALS = FieldSpec("Q")
GF32003 = FieldSpec("GF", 32003)


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination.

    All intermediate entries stay integral (each division is exact), so the
    rank over QQ is computed without rationals.
    """
    a = [list(r) for r in rows]
    if not a or not a[0]:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(n):
        piv = next((r for r in range(rank, m) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pv = a[rank][col]
        for r in range(rank + 1, m):
            arc = a[r][col]
            row = a[r]
            prow = a[rank]
            for c in range(col + 1, n):
                row[c] = (pv * row[c] - arc * prow[c]) // prev
            row[col] = 0
        prev = pv
        rank += 1
        if rank == m:
            break
    return rank


def rank(rows: list[list[int]], field: FieldSpec) -> int:
    if field.kind == "Q":
        return bareiss_rank(rows)
    return _kernels.rank_mod_p(rows, field.p)


class InternalConsistencyError(StanleyLabError):
    pass


def matmul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    if a and b and len(a[0]) != len(b):
        raise InternalConsistencyError(f"shape mismatch {len(a)}x{len(a[0])} @ {len(b)}x{len(b[0]) if b else 0}")
    cols = len(b[0]) if b else 0
    return [[sum(r[k] * b[k][j] for k in range(len(b))) for j in range(cols)] for r in a]
