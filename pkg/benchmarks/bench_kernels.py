"""Time the compiled kernels against the pure-Python fallback.

The workload is harvested from real calls: every exact-cover problem the
sdepth solver poses and every GF(p) rank the depth computation asks for on a
seeded corpus.  Both backends then replay the same problems.

    python3 benchmarks/bench_kernels.py --count 150 --repeat 3
"""

from __future__ import annotations

import argparse
import json
import time

from stanleylab import _kernels
from stanleylab.homology import depth
from stanleylab.linalg import GF32003
from stanleylab.poset import sdepth
from stanleylab.theoremlab.corpus import corpus


def harvest(count: int, seed: int, n_values: tuple[int, ...]):
    covers, ranks = [], []
    real_cover, real_rank = _kernels.cover_search, _kernels.rank_mod_p

    def rec_cover(need, cands, budget=_kernels.DEFAULT_BUDGET):
        covers.append((need, [list(c) for c in cands]))
        return real_cover(need, cands, budget)

    def rec_rank(rows, p):
        ranks.append(([list(r) for r in rows], p))
        return real_rank(rows, p)

    _kernels.cover_search, _kernels.rank_mod_p = rec_cover, rec_rank
    try:
        for pair in corpus(count, seed, n_values=n_values):
            sdepth(pair, use_bounds=False)
            depth(pair, GF32003)
    finally:
        _kernels.cover_search, _kernels.rank_mod_p = real_cover, real_rank
    return covers, ranks


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=150)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--n", default="5,6", help="comma-separated n values")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true", help="print one JSON object instead of a table")
    args = ap.parse_args(argv)

    n_values = tuple(int(x) for x in args.n.split(","))
    covers, ranks = harvest(args.count, args.seed, n_values)
    # only problems the compiled kernel accepts directly
    covers = [c for c in covers if len(c[1]) <= 64]
    ranks = [r for r in ranks if r[0] and r[0][0]]

    results = {}
    for name, mod in _kernels.backends().items():
        results[name] = {
            "cover_search_s": best_of(lambda: [mod.cover_search(n, c, _kernels.DEFAULT_BUDGET) for n, c in covers], args.repeat),
            "rank_mod_p_s": best_of(lambda: [mod.rank_mod_p(r, p) for r, p in ranks], args.repeat),
        }
    if "compiled" in results:
        # the backends must agree before their timings mean anything
        for n, c in covers:
            a = _kernels._pure.cover_search(n, c, _kernels.DEFAULT_BUDGET)[0] is None
            b = _kernels._ext.cover_search(n, c, _kernels.DEFAULT_BUDGET)[0] is None
            assert a == b, "backends disagree on a cover problem"

    summary = {"problems": {"cover_search": len(covers), "rank_mod_p": len(ranks)}, "timings": results}
    if args.json:
        print(json.dumps(summary, indent=2, sort_keys=True))
        return 0
    print(f"{len(covers)} cover problems, {len(ranks)} rank problems (best of {args.repeat})")
    print(f"{'backend':<10}{'cover_search':>14}{'rank_mod_p':>14}")
    for name, r in results.items():
        print(f"{name:<10}{r['cover_search_s']:>13.4f}s{r['rank_mod_p_s']:>13.4f}s")
    if "compiled" in results:
        py, c = results["python"], results["compiled"]
        print(
            f"speedup   {py['cover_search_s'] / max(c['cover_search_s'], 1e-9):>13.1f}x"
            f"{py['rank_mod_p_s'] / max(c['rank_mod_p_s'], 1e-9):>13.1f}x"
        )
    else:
        print("compiled backend not built; only the fallback was timed")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
