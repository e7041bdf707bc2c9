"""Line-oriented storage of classification entries.

One entry per line, fields separated by ``|``::

    id kind q11 .. q17 q21 .. q27 | l1 | l2 | l3 | mu | antik | k4 | source

Series rows drop ``k4``, write expressions instead of integers and append
the parameter names and the admissibility constraint::

    id series <14 exprs> | l1 | l2 | l3 | mu | antik | source | a,l | a >= 1, l odd

Blank lines and lines starting with ``#`` are ignored.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable

from .series import SeriesTemplate
from .validity import SpecifyingData

NVARS = 7


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}" if line else message)
        self.line = line
        self.column = column


class SchemaError(ParseError):
    """A record is missing fields or has the wrong kind."""


@dataclass
class ClassEntry:
    id: str
    kind: str
    Q: list[list]
    l1: list
    l2: list
    l3: list
    mu: list
    antik: list
    k4: int | None
    source: str
    params: tuple[str, ...] = ()
    constraint: str = ""

    @property
    def is_series(self) -> bool:
        return self.kind == "series"

    def data(self) -> SpecifyingData:
        if self.is_series:
            raise TypeError(f"{self.id} is a series; instantiate it first")
        return SpecifyingData(self.Q, (self.l1, self.l2, self.l3))

    def template(self) -> SeriesTemplate:
        if not self.is_series:
            raise TypeError(f"{self.id} is sporadic")
        return SeriesTemplate(
            id=self.id,
            params=tuple(self.params),
            Q=tuple(tuple(r) for r in self.Q),
            monomials=(tuple(self.l1), tuple(self.l2), tuple(self.l3)),
            mu=tuple(self.mu),
            antik=tuple(self.antik),
            constraint=self.constraint,
            source=self.source,
        )

    def to_json(self) -> dict:
        d = {
            "id": self.id, "kind": self.kind, "Q": self.Q,
            "l": [self.l1, self.l2, self.l3], "mu": self.mu, "antik": self.antik,
            "source": self.source,
        }
        if self.is_series:
            d["params"] = list(self.params)
            d["constraint"] = self.constraint
        else:
            d["k4"] = self.k4
        return d


def _fmt(values: Iterable) -> str:
    return " ".join(str(v) for v in values)


def format_entry(e: ClassEntry) -> str:
    head = f"{e.id} {e.kind} {_fmt(e.Q[0])} {_fmt(e.Q[1])}"
    fields = [head, _fmt(e.l1), _fmt(e.l2), _fmt(e.l3), _fmt(e.mu), _fmt(e.antik)]
    if e.is_series:
        fields += [e.source, ",".join(e.params), e.constraint]
    else:
        fields += [str(e.k4), e.source]
    return " | ".join(fields)


def _tokens(text: str, lineno: int, col0: int, count: int, what: str, numeric: bool) -> list:
    toks = text.split()
    if len(toks) != count:
        raise ParseError(f"{what}: expected {count} values, got {len(toks)}", lineno, col0 + 1)
    if not numeric:
        return toks
    out = []
    for t in toks:
        try:
            out.append(int(t))
        except ValueError:
            raise ParseError(f"{what}: {t!r} is not an integer", lineno, col0 + text.find(t) + 1) from None
    return out


def parse_line(line: str, lineno: int = 0) -> ClassEntry:
    raw = line.rstrip("\n")
    parts = raw.split("|")
    offsets = []
    pos = 0
    for p in parts:
        offsets.append(pos)
        pos += len(p) + 1
    head = parts[0].split()
    if len(head) < 2:
        raise SchemaError("missing id or kind", lineno, 1)
    ident, kind = head[0], head[1]
    if kind not in ("sporadic", "series"):
        raise SchemaError(f"unknown kind {kind!r}", lineno, raw.find(kind) + 1)
    series = kind == "series"
    expected = 9 if series else 8
    if len(parts) < expected:
        raise SchemaError(f"{kind} record needs {expected} fields, got {len(parts)}", lineno, len(raw))
    if not series and len(parts) > expected:
        raise ParseError(f"unexpected extra field", lineno, offsets[expected] + 1)
    num = not series
    qtext = parts[0].split(None, 2)[2] if len(head) > 2 else ""
    qcol = raw.find(qtext) if qtext else len(parts[0])
    qvals = _tokens(qtext, lineno, qcol, 2 * NVARS, "Q", num)
    ls = [_tokens(parts[i], lineno, offsets[i], NVARS, f"l{i}", num) for i in (1, 2, 3)]
    mu = _tokens(parts[4], lineno, offsets[4], 2, "mu", num)
    antik = _tokens(parts[5], lineno, offsets[5], 2, "antik", num)
    if series:
        source = parts[6].strip()
        params = tuple(p.strip() for p in parts[7].split(",") if p.strip())
        constraint = "|".join(parts[8:]).strip()
        k4 = None
    else:
        (k4,) = _tokens(parts[6], lineno, offsets[6], 1, "k4", True)
        source = parts[7].strip()
        params, constraint = (), ""
    if not source:
        raise SchemaError("missing source", lineno, offsets[7 if not series else 6] + 1)
    return ClassEntry(ident, kind, [qvals[:NVARS], qvals[NVARS:]], ls[0], ls[1], ls[2],
                      mu, antik, k4, source, params, constraint)


def parse_text(text: str) -> list[ClassEntry]:
    out = []
    for n, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        out.append(parse_line(line, n))
    return out


def parse_entries(path) -> list[ClassEntry]:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json":
        return entries_from_json(json.loads(text))
    return parse_text(text)


def emit_text(entries: Iterable[ClassEntry]) -> str:
    return "".join(format_entry(e) + "\n" for e in entries)


def emit_entries(entries: Iterable[ClassEntry], path) -> None:
    path = Path(path)
    entries = list(entries)
    if path.suffix == ".json":
        path.write_text(json.dumps([e.to_json() for e in entries], indent=1) + "\n", encoding="utf-8")
    else:
        path.write_text(emit_text(entries), encoding="utf-8")


def entries_from_json(items: list[dict]) -> list[ClassEntry]:
    out = []
    for n, d in enumerate(items, 1):
        try:
            l1, l2, l3 = d["l"]
            out.append(ClassEntry(
                str(d["id"]), d["kind"], [list(d["Q"][0]), list(d["Q"][1])], list(l1), list(l2), list(l3),
                list(d["mu"]), list(d["antik"]), d.get("k4"), d["source"],
                tuple(d.get("params", ())), d.get("constraint", ""),
            ))
        except (KeyError, ValueError, TypeError) as e:
            raise SchemaError(f"record {n}: {e}") from None
    return out


def entry_from_data(ident: str, d: SpecifyingData, k4: int | None, source: str) -> ClassEntry:
    from .validity import anticanonical_class

    return ClassEntry(ident, "sporadic", [list(d.Q[0]), list(d.Q[1])], list(d.g.l1), list(d.g.l2),
                      list(d.g.l3), list(d.mu), list(anticanonical_class(d)), k4, source)


# Shipped lists, keyed by short name.
LISTS = {
    "s2": "5.1",
    "s3_sample": "5.2",
    "s3_nsample": "5.3",
    "s3_series": "5.4",
    "s4_sample": "5.5",
    "s4_nsample": "5.6",
    "s4_series": "5.7",
    "s5_sample": "5.8",
    "s5_nsample": "5.9",
    "s5_series": "5.10",
    "s6_series": "5.11",
}


# Per source list: number of rays s, and whether mu lies in the ample
# chamber (True), outside it (False) or either (None).
LIST_INFO = {
    "5.1": (2, None),
    "5.2": (3, True),
    "5.3": (3, False),
    "5.4": (3, None),
    "5.5": (4, True),
    "5.6": (4, False),
    "5.7": (4, None),
    "5.8": (5, True),
    "5.9": (5, False),
    "5.10": (5, None),
    "5.11": (6, None),
}


def data_path(name: str) -> Path:
    return Path(str(resources.files("coxfano") / "data" / f"{name}.dat"))


def resolve(where: str) -> Path:
    """A file path, or the short name of a shipped list."""
    p = Path(where)
    if p.exists():
        return p
    stem = p.stem if p.suffix == ".dat" else where
    if stem in LISTS:
        return data_path(stem)
    raise FileNotFoundError(where)


def load_list(name: str) -> list[ClassEntry]:
    return parse_entries(data_path(name))


def load_all() -> list[ClassEntry]:
    out = []
    for name in LISTS:
        out.extend(load_list(name))
    return out


def import_external(path) -> list[ClassEntry]:
    """Read a complete classification dump given as JSON records.

    Accepted records carry ``id``, ``Q`` (2 x 7), the three exponent vectors
    under ``g`` or ``l``, and optionally ``K4``/``k4`` and ``list``/``source``.
    Missing invariants are recomputed from the data.
    """
    from .intersection import anticanonical_degree
    from .validity import anticanonical_class

    items = json.loads(Path(path).read_text(encoding="utf-8"))
    out = []
    for n, d in enumerate(items, 1):
        try:
            ls = d.get("l") or d["g"]
            sd = SpecifyingData(d["Q"], ls)
        except (KeyError, ValueError, TypeError) as e:
            raise SchemaError(f"record {n}: {e}") from None
        k4 = d.get("k4", d.get("K4"))
        if k4 is None:
            try:
                k4 = anticanonical_degree(sd)
            except (ValueError, ArithmeticError) as e:
                raise SchemaError(f"record {n}: no K4 given and none computable ({e})") from None
        l1, l2, l3 = (list(x) for x in ls)
        out.append(ClassEntry(str(d.get("id", n)), "sporadic", [list(sd.Q[0]), list(sd.Q[1])], l1, l2, l3,
                              list(sd.mu), list(anticanonical_class(sd)), k4,
                              str(d.get("source", d.get("list", "external")))))
    return out
