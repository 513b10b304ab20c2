"""Command-line front end.

Exit codes: 0 success (including vacuous or not-applicable results),
1 usage or parse errors, 2 a theorem violation was found.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable

from .core import StanleyLabError
from .homology import depth
from .io import (
    FIXTURES,
    Instance,
    base_record,
    dumps_record,
    fixture,
    load_batch,
    load_instance,
)
from .linalg import RATIONALS, FieldSpec
from .poset import ORACLE_CAP, build_poset, sdepth, sdepth_oracle
from .theoremlab import (
    bound_conditions,
    c_condition,
    classify,
    theorem_check,
    upgrade_partition,
)
from .theoremlab.corpus import corpus

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _mlist(ms) -> list[list[int]]:
    return [list(m.vars) for m in ms]


def sdepth_record(inst: Instance, oracle: bool = False, max_poset: int = ORACLE_CAP) -> dict:
    cert = sdepth(inst.pair)
    rec = {
        "value": cert.value,
        "witness": cert.witness.sorted().to_lists(),
        "refutation": {"k": cert.refutation.k, "reason": cert.refutation.reason},
        "decisions": {str(k): v for k, v in sorted(cert.decisions.items())},
    }
    if oracle:
        rec["oracle"] = sdepth_oracle(inst.pair, cap=max_poset)
    return rec


def classify_record(inst: Instance, trunc_degree: int | None = None) -> dict:
    prof = classify(inst.pair)
    bv = bound_conditions(prof)
    rec = {
        "profile": prof.to_dict(),
        "bounds": {"fired": list(bv.fired), "degree_restricted": bv.degree_restricted},
        "c_condition": c_condition(prof) if prof.r == 1 else None,
    }
    if trunc_degree is not None:
        poset = build_poset(inst.pair, trunc_degree)
        rec["layers"] = {str(k): _mlist(v) for k, v in sorted(poset.layers.items())}
    return rec


def theorem_record(inst: Instance, field: FieldSpec = RATIONALS, seed: int | None = None, index: int | None = None) -> dict:
    t0 = time.perf_counter()
    v = theorem_check(inst.pair, field)
    rec = base_record(inst, "check-theorem", seed)
    if index is not None:
        rec["index"] = index
    rec["profile"] = v.profile.to_dict()
    rec["verdict"] = v.to_dict()
    rec["depth"] = v.depth.to_dict()
    rec["timings"] = {"total_s": round(time.perf_counter() - t0, 6)}
    return rec


def _theorem_job(args) -> dict:
    obj, field, seed, index = args
    from .io import parse_json

    return theorem_record(parse_json(obj), FieldSpec.parse(field), seed, index)


def _emit(records: Iterable[dict], out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            for r in records:
                fh.write(dumps_record(r) + "\n")


def _timed(rec: dict, t0: float) -> dict:
    rec["timings"] = {"total_s": round(time.perf_counter() - t0, 6)}
    return rec


def _load(args) -> Instance:
    if args.fixture:
        return fixture(args.fixture)
    if not args.file:
        raise StanleyLabError("an instance file or --fixture is required")
    return load_instance(args.file)


def cmd_sdepth(args) -> int:
    t0 = time.perf_counter()
    inst = _load(args)
    rec = base_record(inst, "sdepth")
    rec["sdepth"] = sdepth_record(inst, args.oracle, args.max_poset)
    print(f"{inst.name or 'instance'}: sdepth = {rec['sdepth']['value']}")
    for u, v in rec["sdepth"]["witness"]:
        print(f"  [{_fmt(u)}, {_fmt(v)}]")
    if args.oracle:
        print(f"  oracle = {rec['sdepth']['oracle']}")
    _emit([_timed(rec, t0)], args.out)
    return EXIT_OK


def _fmt(vs) -> str:
    return "*".join(f"x{i}" for i in vs) or "1"


def cmd_depth(args) -> int:
    t0 = time.perf_counter()
    inst = _load(args)
    rep = depth(inst.pair, args.field)
    rec = base_record(inst, "depth")
    rec["depth"] = rep.to_dict()
    i, a = rep.witness
    print(f"{inst.name or 'instance'}: depth = {rep.depth}, pd = {rep.pd} over {rep.field} (H_{i} != 0 at {a})")
    _emit([_timed(rec, t0)], args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    t0 = time.perf_counter()
    inst = _load(args)
    rec = base_record(inst, "classify")
    rec.update(classify_record(inst, args.trunc_degree))
    p = rec["profile"]
    print(f"{inst.name or 'instance'}: d={p['d']} r={p['r']} s={p['s']} q={p['q']}")
    print("  flags: " + ", ".join(k for k, v in p["flags"].items() if v))
    print(f"  bound conditions fired: {', '.join(rec['bounds']['fired']) or 'none'}")
    if rec["c_condition"] is not None:
        print(f"  c_condition: {rec['c_condition']}")
    for k, layer in rec.get("layers", {}).items():
        print(f"  degree {k}: " + ", ".join(_fmt(m) for m in layer))
    _emit([_timed(rec, t0)], args.out)
    return EXIT_OK


def _parse_ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip())


def _corpus_instances(count: int, seed: int, n_values, d_values) -> list[Instance]:
    pairs = corpus(count, seed, n_values=n_values, d_values=d_values)
    return [Instance(p, f"corpus-{seed}-{i}") for i, p in enumerate(pairs)]


def cmd_check_theorem(args) -> int:
    if args.file or args.fixture:
        insts = [_load(args)]
    elif args.batch:
        insts = load_batch(args.batch)
    else:
        insts = _corpus_instances(args.count, args.seed, args.n, args.d)
    field = str(args.field)
    seed = None if (args.file or args.fixture or args.batch) else args.seed
    jobs = [(inst.to_json(), field, seed, i) for i, inst in enumerate(insts)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            records = list(pool.map(_theorem_job, jobs, chunksize=8))
    else:
        records = [_theorem_job(j) for j in jobs]
    counts = {"instances": len(records), "confirmed": 0, "vacuous": 0, "violations": 0, "boundary_s_eq_q_plus_1": 0}
    for rec in records:
        st = rec["verdict"]["status"]
        counts["violations" if st == "VIOLATION" else st] += 1
        counts["boundary_s_eq_q_plus_1"] += rec["profile"]["flags"]["s_eq_q_plus_1"]
    _emit(records, args.out)
    if len(records) == 1:
        v = records[0]["verdict"]
        print(f"{insts[0].name or 'instance'}: {v['status']} (sdepth={v['sdepth']}, depth={v['depth']}; {'; '.join(v['notes']) or 'hypotheses hold'})")
    print("summary: " + json.dumps(counts, sort_keys=True))
    bad = [r for r in records if r["verdict"]["status"] == "VIOLATION"]
    for r in bad:
        print("VIOLATION " + dumps_record(r), file=sys.stderr)
    return EXIT_VIOLATION if bad else EXIT_OK


def search_ccondition(count: int, seed: int, n_values, d_values, presets=()) -> list[dict]:
    """Records for instances satisfying the covering condition, plus a summary record."""
    insts = [fixture(p) for p in presets] + _corpus_instances(count, seed, n_values, d_values)
    findings = []
    satisfied = counterexamples = 0
    for i, inst in enumerate(insts):
        prof = classify(inst.pair)
        if prof.r != 1 or not c_condition(prof):
            continue
        satisfied += 1
        rep = depth(inst.pair)
        sd = sdepth(inst.pair).value
        bad = rep.depth > prof.d + 1
        counterexamples += bad
        rec = base_record(inst, "search-ccondition", seed)
        rec.update(index=i, d=prof.d, s=prof.s, q=prof.q, depth=rep.depth, sdepth=sd, counterexample=bad)
        findings.append(rec)
    summary = {
        "summary": {
            "generated": len(insts),
            "c_condition": satisfied,
            "counterexamples": counterexamples,
            "seed": seed,
        }
    }
    return findings + [summary]


def cmd_search_ccondition(args) -> int:
    recs = search_ccondition(args.count, args.seed, args.n, args.d, args.preset or ())
    if args.out:
        _emit(recs, args.out)
    else:
        for r in recs:
            print(dumps_record(r))
    s = recs[-1]["summary"]
    print(
        f"searched {s['generated']} instances: {s['c_condition']} satisfy the covering condition, "
        f"{s['counterexamples']} with depth > d+1",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_upgrade_partition(args) -> int:
    t0 = time.perf_counter()
    inst = _load(args)
    res = upgrade_partition(inst.pair)
    rec = base_record(inst, "upgrade-partition")
    rec["upgrade"] = res.to_dict()
    if res.status == "upgraded":
        case = f", stopping case {res.stop_case}" if res.stop_case else ""
        print(f"{inst.name or 'instance'}: upgraded via {res.route}{case}; valid={bool(res.check)} sdepth={res.partition.sdepth}")
        for u, v in res.partition.sorted().to_lists():
            print(f"  [{_fmt(u)}, {_fmt(v)}]")
    else:
        print(f"{inst.name or 'instance'}: not-applicable: {res.reason}")
    _emit([_timed(rec, t0)], args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="stanleylab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def instance_cmd(name: str, fn: Callable, help: str):
        p = sub.add_parser(name, help=help)
        p.add_argument("file", nargs="?")
        p.add_argument("--fixture", choices=FIXTURES, help="use a packaged example instead of a file")
        p.add_argument("--out", help="write the structured record (JSON lines) here")
        p.set_defaults(func=fn)
        return p

    p = instance_cmd("sdepth", cmd_sdepth, "Stanley depth with a witness partition")
    p.add_argument("--oracle", action="store_true", help="cross-check by exhaustive enumeration")
    p.add_argument("--max-poset", type=int, default=ORACLE_CAP, help="oracle poset size cap")

    p = instance_cmd("depth", cmd_depth, "depth via Koszul homology")
    p.add_argument("--field", type=FieldSpec.parse, default=RATIONALS, help="q or gfp:P")

    p = instance_cmd("classify", cmd_classify, "the (d, f, E, B, C, r, s, q) profile")
    p.add_argument("--trunc-degree", type=int, help="also list poset layers up to this degree")

    p = instance_cmd("check-theorem", cmd_check_theorem, "depth bound on one instance or a seeded corpus")
    p.add_argument("--batch", help="JSON-lines file of instances")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--n", type=_parse_ints, default=(4, 5, 6), help="comma-separated n values")
    p.add_argument("--d", type=_parse_ints, default=(1, 2), help="comma-separated d values")
    p.add_argument("--field", type=FieldSpec.parse, default=RATIONALS)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("search-ccondition", help="look for depth > d+1 under the covering condition")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--n", type=_parse_ints, default=(5,))
    p.add_argument("--d", type=_parse_ints, default=(1,))
    p.add_argument("--preset", action="append", choices=FIXTURES)
    p.add_argument("--out")
    p.set_defaults(func=cmd_search_ccondition)

    instance_cmd("upgrade-partition", cmd_upgrade_partition, "run the partition surgery")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except StanleyLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
