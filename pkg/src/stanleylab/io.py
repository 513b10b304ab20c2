"""Instance files and result records.

Text form::

    name: boundary
    n=5
    I: x1*x2, x3*x4*x5
    J: x1*x2*x3*x5, x1*x2*x4*x5

``J: 0`` or a missing ``J`` line means the zero ideal; ``#`` starts a comment.
Structured form is a JSON object ``{"n": 5, "I": [[1, 2], [3, 4, 5]], "J": [...],
"name": ...}`` with 1-based indices; batches hold one object per line.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import __version__
from .core import IdealPair, Monomial, MonomialIdeal, StanleyLabError, validate_pair


class ParseError(StanleyLabError):
    def __init__(self, message: str, line: int | None = None, source: str = "<input>"):
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")
        self.line = line


@dataclass(frozen=True)
class Instance:
    pair: IdealPair
    name: str | None = None

    @property
    def n(self) -> int:
        return self.pair.n

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "I": [list(g.vars) for g in self.pair.I.gens],
            "J": [list(g.vars) for g in self.pair.J.gens],
        }

    def to_text(self) -> str:
        lines = []
        if self.name:
            lines.append(f"name: {self.name}")
        lines.append(f"n={self.n}")
        lines.append("I: " + ", ".join(map(str, self.pair.I.gens)))
        lines.append("J: " + (", ".join(map(str, self.pair.J.gens)) or "0"))
        return "\n".join(lines) + "\n"


_MONO = re.compile(r"^x\d+(\*?x\d+)*$")


def _build(n: int, I: list[list[int]], J: list[list[int]], name, source: str, lines: dict) -> Instance:
    def mono(vs, field):
        for i in vs:
            if not isinstance(i, int) or isinstance(i, bool):
                raise ParseError(f"{field}: index {i!r} is not an integer", lines.get(field), source)
            if i < 1:
                raise ParseError(f"{field}: index {i} invalid, indices are 1-based", lines.get(field), source)
            if i > n:
                raise ParseError(f"{field}: index {i} exceeds n={n}", lines.get(field), source)
        if len(set(vs)) != len(vs):
            raise ParseError(f"{field}: generator {vs} repeats a variable (not squarefree)", lines.get(field), source)
        return Monomial.from_vars(vs, n)

    if not I:
        raise ParseError("I has no generators", lines.get("I"), source)
    Ig = [mono(g, "I") for g in I]
    Jg = [mono(g, "J") for g in J]
    try:
        pair = validate_pair(MonomialIdeal.generated_by(Ig, n), MonomialIdeal.generated_by(Jg, n))
    except StanleyLabError as exc:
        raise ParseError(f"invalid pair: {exc}", None, source) from exc
    return Instance(pair, name)


def parse_text(text: str, source: str = "<input>") -> Instance:
    n = None
    fields: dict[str, list[list[int]]] = {"I": [], "J": []}
    lines: dict[str, int] = {}
    name = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"^(name|n|I|J)\s*[:=]\s*(.*)$", line)
        if not m:
            raise ParseError(f"unrecognized line {raw!r}", lineno, source)
        key, val = m.group(1), m.group(2).strip()
        lines[key] = lineno
        if key == "name":
            name = val
        elif key == "n":
            if not val.isdigit():
                raise ParseError(f"n must be a positive integer, got {val!r}", lineno, source)
            n = int(val)
        else:
            if key == "J" and val in ("0", ""):
                continue
            for tok in val.split(","):
                tok = tok.strip().replace(" ", "")
                if not _MONO.match(tok):
                    raise ParseError(f"{key}: cannot parse generator {tok!r}", lineno, source)
                fields[key].append([int(x) for x in re.findall(r"\d+", tok)])
    if n is None:
        raise ParseError("missing 'n=' line", None, source)
    if n > 64:
        raise ParseError(f"n={n} exceeds the 64-variable cap", lines["n"], source)
    return _build(n, fields["I"], fields["J"], name, source, lines)


def parse_json(obj: dict, source: str = "<input>") -> Instance:
    for key in ("n", "I"):
        if key not in obj:
            raise ParseError(f"missing field {key!r}", None, source)
    n = obj["n"]
    if not isinstance(n, int) or n < 1 or n > 64:
        raise ParseError(f"n must be an integer in 1..64, got {n!r}", None, source)
    return _build(n, obj["I"], obj.get("J") or [], obj.get("name"), source, {})


def parse_instance(text: str, source: str = "<input>") -> Instance:
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}", exc.lineno, source) from exc
        return parse_json(obj, source)
    return parse_text(text, source)


def load_instance(path: str | Path) -> Instance:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read: {exc.strerror}", None, str(path)) from exc
    return parse_instance(text, str(path))


def load_batch(path: str | Path) -> list[Instance]:
    """One JSON instance per non-blank line."""
    out = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        if line.strip():
            try:
                out.append(parse_json(json.loads(line), f"{path}:{lineno}"))
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad JSON: {exc}", lineno, str(path)) from exc
    return out


FIXTURES = ("boundary", "top4", "covering", "covering_full", "chain3")


def fixture(name: str) -> Instance:
    text = resources.files("stanleylab.fixtures").joinpath(f"{name}.txt").read_text()
    return parse_text(text, f"fixture:{name}")


def dumps_record(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def strip_timings(record: dict) -> dict:
    return {k: v for k, v in record.items() if k != "timings"}


def base_record(inst: Instance, command: str, seed: int | None = None) -> dict:
    rec = {"tool": "stanleylab", "version": __version__, "command": command, "instance": inst.to_json()}
    if seed is not None:
        rec["seed"] = seed
    return rec
