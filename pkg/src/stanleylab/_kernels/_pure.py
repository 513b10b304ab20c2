"""Pure-Python kernels.  Reference semantics for the compiled twins in ``_ext``."""

from __future__ import annotations

import sys


def cover_search(need: int, cands: list[list[int]], budget: int) -> tuple[list[tuple[int, int]] | None, int]:
    """Backtracking exact cover of the bits in ``need``.

    ``cands[e]`` lists the candidate blocks (bitmasks) that may cover element
    ``e``; each block covering ``e`` must have ``e`` as its lowest set bit
    among ``need``.  The lowest uncovered element is always branched on first,
    candidates in list order.  Covered-states known to fail are memoized up to
    ``budget`` entries.

    Returns ``(choices, nodes)`` where ``choices`` is a list of
    ``(element, candidate_index)`` or ``None`` when no cover exists.
    """
    failed: set[int] = set()
    chosen: list[tuple[int, int]] = []
    nodes = 0

    def search(covered: int) -> bool:
        nonlocal nodes
        nodes += 1
        remaining = need & ~covered
        if not remaining:
            return True
        if covered in failed:
            return False
        e = (remaining & -remaining).bit_length() - 1
        for idx, block in enumerate(cands[e]):
            if block & covered == 0:
                chosen.append((e, idx))
                if search(covered | block):
                    return True
                chosen.pop()
        if len(failed) < budget:
            failed.add(covered)
        return False

    limit = sys.getrecursionlimit()
    depth_needed = need.bit_count() + 50
    if depth_needed > limit:
        sys.setrecursionlimit(depth_needed)
    try:
        found = search(0)
    finally:
        sys.setrecursionlimit(limit)
    return (chosen if found else None), nodes


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    """Rank over GF(p) by row reduction."""
    a = [[x % p for x in r] for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], p - 2, p)
        prow = a[rank]
        for r in range(rank + 1, len(a)):
            f = a[r][col]
            if f:
                f = f * inv % p
                row = a[r]
                for c in range(col, ncols):
                    row[c] = (row[c] - f * prow[c]) % p
        rank += 1
        if rank == len(a):
            break
    return rank
