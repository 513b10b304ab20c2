import json

import pytest

from stanleylab import cli
from stanleylab.io import (
    FIXTURES,
    ParseError,
    dumps_record,
    fixture,
    load_batch,
    parse_instance,
    parse_json,
    strip_timings,
)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def read_jsonl(path):
    return [json.loads(line) for line in path.read_text().splitlines()]


# -- parsing --------------------------------------------------------------------

def test_parse_text_and_roundtrip():
    inst = parse_instance("n=5\nI: x1*x2, x3x4x5  # comment\nJ: x1*x2*x3*x5, x1*x2*x4*x5\n")
    assert inst.pair == fixture("boundary").pair
    again = parse_instance(inst.to_text())
    assert again.pair == inst.pair
    assert parse_instance(json.dumps(inst.to_json())).pair == inst.pair


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_roundtrip(name):
    inst = fixture(name)
    assert inst.name == name
    assert parse_json(inst.to_json()).pair == inst.pair


def test_zero_J():
    inst = parse_instance("n=3\nI: x1\nJ: 0\n")
    assert inst.pair.J.gens == ()
    assert "J: 0" in inst.to_text()


@pytest.mark.parametrize(
    "text, fragment",
    [
        ('{"n": 3, "I": [[0, 1]]}', "1-based"),
        ('{"n": 3, "I": [[4]]}', "exceeds n=3"),
        ('{"n": 3, "I": [[1, 1]]}', "squarefree"),
        ('{"n": 3, "I": []}', "no generators"),
        ('{"I": [[1]]}', "missing field 'n'"),
        ("n=3\nI: x1\nJ: x2*x3\n", "invalid pair"),
        ("n=3\nI: y1\n", "cannot parse"),
        ("I: x1\n", "missing 'n='"),
        ("n=3\nK: x1\n", "unrecognized line"),
        ("{not json", "bad JSON"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_instance(text)


def test_parse_error_line_number():
    with pytest.raises(ParseError) as err:
        parse_instance("n=3\n\nI: x1, q\n", "f.txt")
    assert err.value.line == 3 and "f.txt:3" in str(err.value)


def test_load_batch(tmp_path):
    path = tmp_path / "b.jsonl"
    path.write_text("\n".join(json.dumps(fixture(n).to_json()) for n in ("boundary", "top4")) + "\n\n")
    insts = load_batch(path)
    assert [i.name for i in insts] == ["boundary", "top4"]


def test_dumps_record_is_canonical():
    assert dumps_record({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'
    assert strip_timings({"a": 1, "timings": {}}) == {"a": 1}


# -- CLI subcommands ---------------------------------------------------------------

def test_cli_sdepth(capsys, tmp_path):
    out_path = tmp_path / "r.jsonl"
    code, out, _ = run(capsys, "sdepth", "--fixture", "boundary", "--oracle", "--out", str(out_path))
    assert code == 0 and "sdepth = 3" in out and "oracle = 3" in out
    (rec,) = read_jsonl(out_path)
    assert rec["sdepth"]["value"] == 3 and rec["sdepth"]["refutation"]["k"] == 4
    assert "timings" in rec and rec["instance"]["n"] == 5


def test_cli_sdepth_from_file(capsys, tmp_path):
    path = tmp_path / "i.txt"
    path.write_text(fixture("top4").to_text())
    code, out, _ = run(capsys, "sdepth", str(path))
    assert code == 0 and "sdepth = 4" in out


def test_cli_depth(capsys):
    code, out, _ = run(capsys, "depth", "--fixture", "covering", "--field", "gfp:32003")
    assert code == 0 and "depth = 2" in out and "gfp:32003" in out


def test_cli_classify(capsys, tmp_path):
    out_path = tmp_path / "c.jsonl"
    code, out, _ = run(capsys, "classify", "--fixture", "covering", "--trunc-degree", "3", "--out", str(out_path))
    assert code == 0 and "s=8 q=7" in out and "c_condition: True" in out
    (rec,) = read_jsonl(out_path)
    assert len(rec["layers"]["3"]) == 7 and rec["bounds"]["fired"] == []


def test_cli_check_theorem_single(capsys):
    code, out, _ = run(capsys, "check-theorem", "--fixture", "boundary")
    assert code == 0 and "vacuous" in out


def test_cli_check_theorem_corpus_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    code, out, _ = run(capsys, "check-theorem", "--count", "30", "--seed", "5", "--out", str(a))
    assert code == 0 and '"violations": 0' in out
    code, _, _ = run(capsys, "check-theorem", "--count", "30", "--seed", "5", "--jobs", "2", "--out", str(b))
    assert code == 0
    ra, rb = read_jsonl(a), read_jsonl(b)
    assert len(ra) == 30
    assert [dumps_record(strip_timings(r)) for r in ra] == [dumps_record(strip_timings(r)) for r in rb]
    assert all(r["seed"] == 5 for r in ra)


def test_cli_check_theorem_batch(capsys, tmp_path):
    path = tmp_path / "b.jsonl"
    path.write_text("\n".join(json.dumps(fixture(n).to_json()) for n in FIXTURES) + "\n")
    code, out, _ = run(capsys, "check-theorem", "--batch", str(path))
    assert code == 0 and '"instances": 5' in out


def test_cli_violation_exit_code(capsys, monkeypatch):
    real = cli.theorem_check

    def broken(pair, field):
        v = real(pair, field)
        import dataclasses

        return dataclasses.replace(v, hypotheses_hold=True, conclusion_holds=False)

    monkeypatch.setattr(cli, "theorem_check", broken)
    code, out, err = run(capsys, "check-theorem", "--fixture", "covering")
    assert code == 2 and "VIOLATION" in err


def test_cli_search_ccondition(capsys, tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    args = ["search-ccondition", "--count", "40", "--seed", "1", "--preset", "covering"]
    assert run(capsys, *args, "--out", str(a))[0] == 0
    _, _, err = run(capsys, *args, "--out", str(b))
    assert "satisfy the covering condition" in err
    assert a.read_bytes() == b.read_bytes()
    recs = read_jsonl(a)
    assert recs[0]["instance"]["name"] == "covering" and recs[0]["depth"] == 2
    assert recs[-1]["summary"]["counterexamples"] == 0


def test_cli_search_empty_range(capsys):
    code, out, _ = run(capsys, "search-ccondition", "--count", "0")
    assert code == 0
    (summary,) = [json.loads(line) for line in out.splitlines()]
    assert summary["summary"]["generated"] == 0


def test_cli_upgrade(capsys, tmp_path):
    out_path = tmp_path / "u.jsonl"
    code, out, _ = run(capsys, "upgrade-partition", "--fixture", "chain3", "--out", str(out_path))
    assert code == 0 and "stopping case 3" in out and "valid=True" in out
    (rec,) = read_jsonl(out_path)
    assert rec["upgrade"]["chain"]["stop_case"] == 3
    code, out, _ = run(capsys, "upgrade-partition", "--fixture", "boundary")
    assert code == 0 and "not-applicable" in out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["sdepth"],
        ["sdepth", "--fixture", "nope"],
        ["depth", "--fixture", "boundary", "--field", "gfp:10"],
        ["sdepth", "/does/not/exist.txt"],
    ],
)
def test_cli_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = cli.main(argv)
        raise SystemExit(code)
    assert exc.value.code == 1
