"""Hot kernels with a compiled backend and a pure-Python fallback.

The compiled module is used when it imports; set ``STANLEYLAB_PURE=1`` to
force the fallback.  ``BACKEND`` names the active one.
"""

from __future__ import annotations

import os

from . import _pure

try:
    from . import _ext
except ImportError:  # not built
    _ext = None

DEFAULT_BUDGET = 1 << 20

if _ext is not None and not os.environ.get("STANLEYLAB_PURE"):
    BACKEND = "compiled"
    _active = _ext
else:
    BACKEND = "python"
    _active = _pure


def cover_search(need: int, cands: list[list[int]], budget: int = DEFAULT_BUDGET):
    if _active is _ext and len(cands) > 64:
        return _pure.cover_search(need, cands, budget)
    return _active.cover_search(need, cands, budget)


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    if not rows or not rows[0]:
        return 0
    if _active is _ext and p >= 1 << 31:
        return _pure.rank_mod_p(rows, p)
    return _active.rank_mod_p(rows, p)


def backends() -> dict:
    """Both implementations keyed by name, for tests and benchmarks."""
    out = {"python": _pure}
    if _ext is not None:
        out["compiled"] = _ext
    return out
