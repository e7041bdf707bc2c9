"""Command-line interface: ``coxfano <command> ...``.

Exit codes: 0 success, 1 a verification failed or a difference was found,
2 usage, input or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import dataio
from .dataio import ClassEntry, ParseError, entry_from_data, format_entry, parse_entries, resolve
from .enumeration import SUBCASES, SearchBounds, SearchStats, default_jobs, enumerate_sporadic, verify_list
from .intersection import anticanonical_degree
from .isomorphy import KEY_PREFIX, canonical_form, diff, parse_key
from .series import ExpressionError, InadmissibleParams, parse_assignments
from .validity import smoothable_flag, validate

SCHEMA = "coxfano/1"


class UsageError(Exception):
    pass


def _emit_json(obj) -> None:
    json.dump({"schema": SCHEMA, **obj}, sys.stdout, indent=1)
    sys.stdout.write("\n")


def _load(where: str) -> list[ClassEntry]:
    try:
        path = resolve(where)
    except FileNotFoundError:
        raise UsageError(f"no such file or shipped list: {where}") from None
    return parse_entries(path)


def _load_keys(where: str) -> list[str]:
    """Canonical keys of a data file, or the lines of a key file."""
    p = Path(where)
    if p.exists() and p.suffix not in (".dat", ".json"):
        lines = [ln.strip() for ln in p.read_text(encoding="utf-8").splitlines()]
        if lines and all(ln.startswith(KEY_PREFIX) for ln in lines if ln):
            return [ln for ln in lines if ln]
    return [canonical_form(e.data()).key for e in _load(where) if not e.is_series]


def cmd_verify(args) -> int:
    entries = _load(args.file)
    rep = verify_list(entries, jobs=args.jobs)
    if args.format == "json":
        _emit_json({
            "command": "verify",
            "passed": rep.passed,
            "total": rep.total,
            "entries": [{"id": r.id, "ok": r.ok, "problems": r.problems, "computed": r.computed}
                        for r in rep.results],
        })
    else:
        for r in rep.failures:
            print(r.line())
        print(rep.summary())
    return 0 if rep.ok else 1


def _invariants(e: ClassEntry) -> dict:
    d = e.data()
    rep = validate(d)
    row = {"id": e.id, "valid": rep.ok, "mu": list(d.mu)}
    if rep.antik is not None:
        row["antik"] = list(rep.antik)
    if rep.constellation is not None:
        row["s"] = rep.s
        row["constellation"] = list(rep.constellation.multiplicities)
    if rep.ok:
        row["k4"] = anticanonical_degree(d, lam=rep.lam)
        row["smoothable"] = smoothable_flag(d, rep.lam)
    else:
        row["failures"] = [str(c) for c in rep.failures]
    return row


def cmd_invariants(args) -> int:
    rows = [_invariants(e) for e in _load(args.file) if not e.is_series]
    if args.format == "json":
        _emit_json({"command": "invariants", "entries": rows})
    else:
        print("id\tmu\tantik\tK4\ts\tconstellation\tsmoothable")
        for r in rows:
            if not r["valid"]:
                print(f"{r['id']}\tINVALID\t{'; '.join(r['failures'])}")
                continue
            print("\t".join([
                r["id"], _pair(r["mu"]), _pair(r["antik"]), str(r["k4"]), str(r["s"]),
                "(" + ",".join(map(str, r["constellation"])) + ")", "yes" if r["smoothable"] else "no",
            ]))
    return 0 if all(r["valid"] for r in rows) else 1


def _pair(v) -> str:
    return f"({v[0]},{v[1]})"


def cmd_canonicalize(args) -> int:
    out = []
    for e in _load(args.file):
        if e.is_series:
            continue
        out.append((e.id, canonical_form(e.data()).key))
    if args.format == "json":
        _emit_json({"command": "canonicalize", "entries": [{"id": i, "key": k} for i, k in out]})
    else:
        for i, k in out:
            print(f"{i}\t{k}")
    return 0


def cmd_enumerate(args) -> int:
    try:
        bounds = SearchBounds(args.max_coord, args.max_exp, args.max_deg)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if not 2 <= args.s <= 7:
        raise UsageError("--s must lie between 2 and 7")
    subcase = None
    if args.subcase:
        if args.subcase not in SUBCASES:
            raise UsageError(f"unknown subcase {args.subcase!r}; known: {', '.join(SUBCASES)}")
        subcase = SUBCASES[args.subcase]
    stats = SearchStats()
    forms = enumerate_sporadic(args.s, bounds, prune=not args.no_prune, jobs=args.jobs,
                               subcase=subcase, progress=not args.quiet, stats=stats)
    entries = []
    for n, cf in enumerate(forms, 1):
        d = cf.data
        entries.append(entry_from_data(f"E{n}", d, anticanonical_degree(d), "enumerated"))
    if args.output:
        dataio.emit_entries(entries, args.output)
    if args.format == "json":
        _emit_json({
            "command": "enumerate",
            "s": args.s,
            "bounds": [bounds.max_coord, bounds.max_exp, bounds.max_total_deg],
            "prune": not args.no_prune,
            "stats": vars(stats),
            "entries": [dict(e.to_json(), key=cf.key) for e, cf in zip(entries, forms)],
        })
    elif not args.output:
        for e in entries:
            print(format_entry(e))
    print(f"{len(forms)} canonical forms", file=sys.stderr)
    return 0


def _find_template(ident: str, file: str | None) -> ClassEntry:
    pool = _load(file) if file else dataio.load_all()
    for e in pool:
        if e.id == ident and e.is_series:
            return e
    raise UsageError(f"no series template {ident!r}")


def cmd_series(args) -> int:
    entry = _find_template(args.id, args.file)
    t = entry.template()
    try:
        values = parse_assignments(args.params or [])
    except ValueError as e:
        raise UsageError(str(e)) from None
    try:
        d = t.instantiate(values)
    except InadmissibleParams as e:
        print(f"InadmissibleParams: {e}", file=sys.stderr)
        return 1
    rep = validate(d)
    label = f"{t.id}[" + ",".join(f"{k}={v}" for k, v in values.items()) + "]"
    if not rep.ok:
        for c in rep.failures:
            print(f"{label}: {c}", file=sys.stderr)
        return 1
    k4 = anticanonical_degree(d, lam=rep.lam)
    e = entry_from_data(label, d, k4, entry.source)
    expected = t.expected_antik(values)
    matches = tuple(rep.antik) == tuple(expected)
    if args.format == "json":
        _emit_json({"command": "series", "entry": e.to_json(), "expected_antik": list(expected),
                    "antik_matches": matches})
    else:
        print(format_entry(e))
        if not matches:
            print(f"antik {rep.antik} differs from the closed form {expected}", file=sys.stderr)
    return 0 if matches else 1


def cmd_diff(args) -> int:
    only_a, only_b, common = diff(_load_keys(args.a), _load_keys(args.b))
    if args.format == "json":
        _emit_json({"command": "diff", "only_a": only_a, "only_b": only_b, "common": len(common)})
    else:
        for k in only_a:
            print(f"< {k}")
        for k in only_b:
            print(f"> {k}")
        print(f"{len(only_a)} only in {args.a}, {len(only_b)} only in {args.b}, {len(common)} common")
    return 0 if not only_a and not only_b else 1


def build_parser() -> argparse.ArgumentParser:
    def shared(defaults: bool) -> argparse.ArgumentParser:
        # subcommands must not reset options given before the command name
        parent = argparse.ArgumentParser(add_help=False)
        parent.add_argument("--jobs", type=int, default=default_jobs() if defaults else argparse.SUPPRESS,
                            help="worker processes (default: $COXFANO_JOBS or 1)")
        parent.add_argument("--format", choices=("text", "json"),
                            default="text" if defaults else argparse.SUPPRESS)
        return parent

    common = shared(False)
    p = argparse.ArgumentParser(prog="coxfano", description=__doc__.splitlines()[0], parents=[shared(True)])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="validate entries and compare invariants")
    s.add_argument("file", help="data file or shipped list name (e.g. s2)")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("invariants", parents=[common], help="print invariants per entry")
    s.add_argument("file")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("canonicalize", parents=[common], help="print canonical keys")
    s.add_argument("file")
    s.set_defaults(func=cmd_canonicalize)

    s = sub.add_parser("enumerate", parents=[common], help="bounded search for sporadic entries")
    s.add_argument("--s", type=int, required=True, help="number of rays")
    s.add_argument("--max-coord", type=int, required=True)
    s.add_argument("--max-exp", type=int, required=True)
    s.add_argument("--max-deg", type=int, required=True)
    s.add_argument("--no-prune", action="store_true")
    s.add_argument("--subcase", help=f"restrict the search ({', '.join(SUBCASES)})")
    s.add_argument("--output", "-o", help="write entries to this .dat or .json file")
    s.add_argument("--quiet", "-q", action="store_true", help="no progress on stderr")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("series", parents=[common], help="instantiate a series template")
    s.add_argument("--id", required=True)
    s.add_argument("--params", nargs="*", help="assignments such as a=5 or a=5,l=1")
    s.add_argument("--file", help="look the template up in this file instead of the shipped lists")
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("diff", parents=[common], help="compare two lists up to isomorphy")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_diff)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        return args.func(args)
    except (UsageError, ParseError, ExpressionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
