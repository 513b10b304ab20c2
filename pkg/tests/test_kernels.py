"""Compiled and pure kernels must agree with each other and with brute force."""

from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from stanleylab import _kernels

BACKENDS = _kernels.backends()


def brute_cover_exists(need, cands):
    blocks = [b for bs in cands for b in bs]
    for picks in product([0, 1], repeat=len(blocks)):
        chosen = [b for b, p in zip(blocks, picks) if p]
        union = 0
        ok = True
        for b in chosen:
            if union & b:
                ok = False
                break
            union |= b
        if ok and union & need == need and all(b & need for b in chosen):
            return True
    return False


@st.composite
def cover_problems(draw):
    n = draw(st.integers(1, 7))
    need = draw(st.integers(1, (1 << n) - 1))
    cands = []
    for e in range(n):
        if not need >> e & 1:
            cands.append([])
            continue
        # blocks must have e as lowest needed bit
        higher = ((1 << n) - 1) & ~((1 << (e + 1)) - 1)
        bs = draw(st.lists(st.integers(0, higher), max_size=3))
        cands.append([(1 << e) | (b & higher) for b in bs])
    return need, cands


@settings(max_examples=150, deadline=None)
@given(cover_problems())
def test_cover_search_matches_brute_force(problem):
    need, cands = problem
    expected = brute_cover_exists(need, cands)
    results = {}
    for name, mod in BACKENDS.items():
        choices, _ = mod.cover_search(need, cands, 1 << 20)
        assert (choices is not None) == expected, name
        if choices is not None:
            covered = 0
            for e, j in choices:
                assert covered & cands[e][j] == 0
                covered |= cands[e][j]
            assert covered & need == need
        results[name] = choices
    # same deterministic order, same answer
    assert len({repr(v) for v in results.values()}) == 1


@settings(max_examples=80, deadline=None)
@given(cover_problems(), st.integers(0, 3))
def test_cover_search_budget_does_not_change_answer(problem, budget):
    need, cands = problem
    for mod in BACKENDS.values():
        assert mod.cover_search(need, cands, budget)[0] == mod.cover_search(need, cands, 1 << 20)[0]


def test_cover_search_empty_need():
    for mod in BACKENDS.values():
        assert mod.cover_search(0, [[]], 10)[0] == []


def test_dispatch_falls_back_beyond_64_elements():
    cands = [[1 << i] for i in range(70)]
    choices, _ = _kernels.cover_search((1 << 70) - 1, cands)
    assert len(choices) == 70


@settings(max_examples=100, deadline=None)
@given(
    st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=1, max_size=6)
    ),
    st.sampled_from([2, 3, 7, 32003]),
)
def test_rank_mod_p_backends_agree(rows, p):
    ranks = {name: mod.rank_mod_p(rows, p) for name, mod in BACKENDS.items()}
    assert len(set(ranks.values())) == 1


def test_rank_mod_p_small_cases():
    for mod in BACKENDS.values():
        assert mod.rank_mod_p([[1, 1], [1, 1], [0, 1]], 7) == 2
        assert mod.rank_mod_p([[2, 4], [1, 2]], 2) == 1  # row 0 vanishes mod 2
        assert mod.rank_mod_p([[3, 0], [0, 3]], 3) == 0


def test_backend_reported():
    assert _kernels.BACKEND in ("compiled", "python")
    if "compiled" not in BACKENDS:
        pytest.skip("compiled kernels not built")


def _backend_in_subprocess(env_extra):
    import os
    import subprocess
    import sys

    env = {k: v for k, v in os.environ.items() if k != "STANLEYLAB_PURE"}
    env.update(env_extra)
    code = "import stanleylab._kernels as k, stanleylab.poset as p, stanleylab.io as io; " \
           "print(k.BACKEND, p.sdepth(io.fixture('covering').pair).value)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return out.stdout.split()


def test_fallback_selected_by_environment():
    assert _backend_in_subprocess({"STANLEYLAB_PURE": "1"}) == ["python", "3"]
    default = _backend_in_subprocess({})
    assert default[1] == "3"
    assert default[0] == ("compiled" if "compiled" in BACKENDS else "python")


def test_benchmark_runs(capsys):
    import importlib.util
    from pathlib import Path

    path = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    bench = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(bench)
    assert bench.main(["--count", "5", "--repeat", "1", "--json"]) == 0
    assert '"cover_search"' in capsys.readouterr().out
