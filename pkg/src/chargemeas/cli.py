"""Command line front end.

Exit codes: 0 decided/passed, 1 property fails or suite violation,
2 input error, 3 resource cap hit.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import harness
from .cset import CSet
from .extreal import fmt
from .instance import InstanceError, parse_instance, parse_value
from .measurability import PROPERTIES, DecideError, decide, phi_profile
from .oracle import DEFAULT_CUTOFF, DEFAULT_GRID, OracleContext, ReplayError, replay
from .space import FieldCapError, FinCofNat, SpaceError
from .uniform import CodomainError
from .func import FuncError

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(ValueError):
    pass


class Report:
    """Collects records and prints them as aligned text or JSON lines."""

    def __init__(self, machine: bool, out=None):
        self.machine = machine
        self.out = out or sys.stdout
        self.records = []

    def emit(self, record: dict, lines: list[tuple[str, object]] | None = None):
        self.records.append(record)
        if self.machine:
            print(json.dumps(record, sort_keys=True, ensure_ascii=False), file=self.out)
            return
        rows = lines if lines is not None else [(k, v) for k, v in record.items()]
        width = max((len(k) for k, _ in rows), default=0)
        for k, v in rows:
            print(f"{k.ljust(width)}  {_text(v)}", file=self.out)


def _text(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, ensure_ascii=False)
    if v is None:
        return "-"
    return str(v)


def _read_instance(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return parse_instance(text)
    except InstanceError as exc:
        raise InputError(f"{path}: {exc}") from None


def _check_property(prop: str, space, cod):
    if prop not in PROPERTIES:
        raise InputError(f"unknown property {prop!r}; known: {', '.join(PROPERTIES)}")
    if prop in harness.REAL_ONLY and not cod.is_real:
        raise InputError(f"{prop} needs the rational line as codomain")
    if prop == "conventional" and isinstance(space, FinCofNat):
        raise InputError("conventional measurability needs a finite ground set (a σ-field)")


def cmd_decide(args, rep: Report, certify: bool = False) -> int:
    space, cod, f = _read_instance(args.file)
    _check_property(args.property, space, cod)
    start = time.perf_counter()
    v = decide(args.property, space, cod, f)
    rec = {"command": "certify" if certify else "decide", "file": args.file}
    rec.update(v.to_record())
    if certify:
        try:
            ctx = OracleContext(space, cod, f, args.grid, args.cutoff)
            replay(v, space, cod, f, args.grid, args.cutoff, ctx=ctx)
            rec["replay"] = "ok"
        except ReplayError as exc:
            rec["replay"] = f"failed: {exc}"
        rec["cutoff"] = args.cutoff if isinstance(space, FinCofNat) else None
        rec["grid"] = args.grid
    if args.timing:
        rec["seconds"] = round(time.perf_counter() - start, 3)
    lines = [("command", f"{rec['command']} {args.property} {args.file}"), ("property", v.property),
             ("holds", v.holds)]
    if v.holds:
        lines.append(("certificate", rec["certificate"]))
    else:
        lines += [("entourage", rec["entourage"]), ("infimum", rec["infimum"]), ("obstruction", rec["obstruction"])]
    if certify:
        lines.append(("replay", rec["replay"]))
    rep.emit(rec, lines)
    if certify and rec["replay"] != "ok":
        return EXIT_FAIL
    return EXIT_OK if v.holds else EXIT_FAIL


def cmd_phi(args, rep: Report) -> int:
    space, cod, f = _read_instance(args.file)
    if not cod.is_real:
        raise InputError("phi needs the rational line as codomain")
    prof = phi_profile(space, f)
    rec = {"command": "phi", "file": args.file}
    rec.update(prof.to_record())
    lines = [("command", f"phi {args.file}"), ("support", rec["support"]),
             ("progression", rec["progression"]), ("infinite", rec["infinite"])]
    rep.emit(rec, lines)
    return EXIT_OK


def parse_set(text: str, space, cod=None) -> CSet:
    """Set syntax: ``[a, b]`` lists points; on the naturals also
    ``cofinite [0, 2]`` and ``residues <period> [r, ...] from <start>``."""
    text = text.strip()
    try:
        if text.startswith("cofinite"):
            return CSet.cofinite(int(x) for x in parse_value(text[len("cofinite"):].strip() or "[]"))
        if text.startswith("residues"):
            head, _, start = text[len("residues"):].partition("from")
            period, _, res = head.strip().partition(" ")
            return CSet.periodic((), int(period), [int(x) for x in parse_value(res.strip())], int(start or 0))
        items = parse_value(text if text.startswith("[") else f"[{text}]")
    except (ValueError, InstanceError) as exc:
        raise InputError(f"cannot read set {text!r}: {exc}") from None
    if isinstance(space, FinCofNat):
        if not all(isinstance(x, int) and x >= 0 for x in items):
            raise InputError("points of the naturals are nonnegative integers")
        return CSet.finite(items)
    known = {str(p): p for p in space.points}
    pts = []
    for x in items:
        if str(x) not in known:
            raise InputError(f"unknown ground point {x!r}")
        pts.append(known[str(x)])
    return CSet.finite(pts)


def cmd_complete(args, rep: Report) -> int:
    space, cod, f = _read_instance(args.file)
    a = parse_set(" ".join(args.set), space)
    ok, sw = space.pj_membership(a)
    rec = {"command": "complete", "file": args.file, "set": a.describe(),
           "in_field": space.in_field(a), "in_completion": ok,
           "outer": fmt(space.outer(a)), "inner": fmt(space.inner(a)),
           "charge": fmt(space.pj_charge(a)) if ok else None, "sandwich": sw.to_record()}
    rep.emit(rec)
    return EXIT_OK if ok else EXIT_FAIL


def _params(args) -> harness.InstanceParams:
    kw = {}
    if args.max_points is not None:
        kw["max_points"] = args.max_points
    if args.max_codomain_points is not None:
        kw["max_codomain_points"] = args.max_codomain_points
    if args.no_fincof:
        kw["include_fincof"] = False
    return harness.InstanceParams(**kw)


def cmd_suite(args, rep: Report) -> int:
    try:
        report = harness.run_suite(args.id, _params(args), replay_certificates=not args.no_replay)
    except harness.CapExceeded:
        raise
    except harness.HarnessError as exc:
        raise InputError(str(exc)) from None
    rec = {"command": "suite"}
    rec.update(report.to_record())
    if not args.timing:
        rec.pop("wall")
    lines = [("suite", report.suite), ("checked", report.checked), ("skipped", report.skipped),
             ("violations", len(report.violations)), ("replayed", report.replayed),
             ("replay failures", len(report.replay_failures)), ("notes", rec["notes"]),
             ("passed", report.passed), ("seconds", rec.get("wall"))]
    for v in report.violations[:10]:
        lines.append(("violation", f"{v.instance}: {v.claim} {v.verdicts}"))
    if not args.timing:
        lines = [x for x in lines if x[0] != "seconds"]
    rep.emit(rec, lines)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_search(args, rep: Report) -> int:
    try:
        res = harness.search_counterexample(args.claim, _params(args))
    except harness.CapExceeded:
        raise
    except harness.HarnessError as exc:
        raise InputError(str(exc)) from None
    rec = {"command": "search"}
    rec.update(res.to_record())
    if not args.timing:
        rec.pop("wall")
    lines = [("claim", res.claim), ("witness", res.witness or "exhausted"), ("expected", res.expected),
             ("searched", res.searched), ("verdicts", rec["verdicts"]), ("oracle", rec["oracle"]),
             ("facts", rec["facts"]), ("confirmed", res.confirmed)]
    rep.emit(rec, lines)
    return EXIT_OK if res.confirmed else EXIT_FAIL


def _common(suppress: bool) -> argparse.ArgumentParser:
    # subcommands repeat the global flags; SUPPRESS keeps them from
    # overwriting values given before the subcommand name
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true", default=d(False), help="emit JSON lines only")
    common.add_argument("--cutoff", type=int, default=d(DEFAULT_CUTOFF), help="oracle truncation on the naturals")
    common.add_argument("--grid", type=int, default=d(DEFAULT_GRID), help="oracle epsilon grid depth")
    common.add_argument("--timing", action="store_true", default=d(False), help="add wall-clock seconds to reports")
    return common


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chargemeas", description="Measurability deciders for charge spaces.",
                                parents=[_common(False)])
    common = _common(True)
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("decide", "certify"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("property")
        s.add_argument("file")
    s = sub.add_parser("phi", parents=[common])
    s.add_argument("file")
    s = sub.add_parser("complete", parents=[common])
    s.add_argument("file")
    s.add_argument("set", nargs="+", help="e.g. [a, b], cofinite [0], residues 2 [1] from 0")
    bounds = argparse.ArgumentParser(add_help=False)
    bounds.add_argument("--max-points", type=int)
    bounds.add_argument("--max-codomain-points", type=int)
    bounds.add_argument("--no-fincof", action="store_true", help="skip instances on the naturals")
    s = sub.add_parser("suite", parents=[common, bounds])
    s.add_argument("id")
    s.add_argument("--no-replay", action="store_true")
    s = sub.add_parser("search", parents=[common, bounds])
    s.add_argument("claim")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    rep = Report(args.machine)
    handlers = {"decide": cmd_decide, "certify": lambda a, r: cmd_decide(a, r, certify=True),
                "phi": cmd_phi, "complete": cmd_complete, "suite": cmd_suite, "search": cmd_search}
    try:
        return handlers[args.command](args, rep)
    except (FieldCapError, harness.CapExceeded) as exc:
        _error(rep, "cap", str(exc))
        return EXIT_CAP
    except (InputError, DecideError, SpaceError, CodomainError, FuncError) as exc:
        _error(rep, "input", str(exc))
        return EXIT_INPUT


def _error(rep: Report, kind: str, msg: str):
    if rep.machine:
        print(json.dumps({"error": kind, "message": msg}, sort_keys=True, ensure_ascii=False))
    else:
        print(f"error: {msg}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
