"""Command-line front end.

Inputs are catalog names written ``@name`` or paths to JSON files.  A path
that does not exist relative to the working directory is looked up in the
fixture directory, so ``scenarios/trefoil_unknotting.json`` works anywhere.

Exit codes: 0 success, 1 domain error (or a failed verification), 2 usage
error.  With ``--json`` a domain error prints ``{"error": {...}}``.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path as FsPath

from . import _kernels, catalog
from . import diagram as dg
from .bracket import jones, kauffman_bracket, singular_bracket, singular_bracket_eval, vs_polynomial
from .cocycle import cross_of_loop, cross_of_path, generic_cross, meridian_suite, oracle_quotient
from .homotopy import (
    CrossingChange,
    InapplicableMove,
    Path,
    apply_event,
    event_to_json,
    inverse_event,
    is_loop,
    random_path,
    validate_path,
)
from .poly import ParseError

__all__ = ["main", "build_parser"]


class UsageError(Exception):
    pass


def _read_json_file(arg: str) -> str:
    p = FsPath(arg)
    if not p.is_file():
        alt = catalog.fixture_dir() / arg
        if not alt.is_file():
            raise UsageError(f"no such file: {arg}")
        p = alt
    return p.read_text()


def load_diagram(arg: str) -> dg.LongDiagram:
    if arg.startswith("@"):
        return catalog.resolve(arg)
    return catalog.parse_diagram(_read_json_file(arg))


def load_path(arg: str) -> Path:
    if arg.startswith("@"):
        name = arg[1:]
        if name in catalog.scenario_names():
            return catalog.scenario(name)
        # a bare diagram is the empty path at it
        return Path(catalog.resolve(arg), ())
    return catalog.parse_path(_read_json_file(arg))


def _kw(args) -> dict:
    return {"method": args.method, "backend": args.backend, "threads": args.threads}


def _emit(args, plain: str, obj: dict) -> None:
    if args.json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(plain)


# ------------------------------------------------------------------ commands


def cmd_bracket(args) -> int:
    d = load_diagram(args.input)
    if args.eval:
        v = singular_bracket_eval(d, **_kw(args))
        kind = "singular_eval"
    elif d.n_double:
        v = singular_bracket(d, **_kw(args))
        kind = "singular"
    else:
        v = kauffman_bracket(d, **_kw(args))
        kind = "kauffman"
    _emit(args, str(v), {"kind": kind, "value": str(v), "terms": v.to_json()})
    return 0


def cmd_jones(args) -> int:
    v = jones(load_diagram(args.input), **_kw(args))
    _emit(args, str(v), {"kind": "jones", "value": str(v), "terms": v.to_json()})
    return 0


def cmd_vs(args) -> int:
    v = vs_polynomial(load_diagram(args.input), **_kw(args))
    _emit(args, str(v), {"kind": "vs", "value": str(v), "terms": v.to_json()})
    return 0


def cmd_cross(args) -> int:
    p = load_path(args.script)
    kw = _kw(args)
    if args.generic:
        v = generic_cross(p, **kw)
        if args.loop and not is_loop(p):
            from .cocycle import NotALoop

            raise NotALoop("the path does not return to its start diagram")
        _emit(args, str(v), {"kind": "generic_cross", "value": str(v), "terms": v.to_json()})
        return 0
    rep = cross_of_loop(p, **kw) if args.loop else cross_of_path(p, **kw)
    if args.json:
        obj = rep.to_json()
        if not args.audit:
            obj.pop("contributions")
        print(json.dumps(obj, sort_keys=True))
        return 0
    if args.audit:
        for w, v in rep.contributions:
            print(f"# event {w.position}: crossing {w.crossing}, ind {w.ind:+d}: {v}")
        print(f"# ind sum {rep.ind_sum}, framing {'ok' if rep.framing_ok else 'VIOLATED'}")
        for c in rep.certificates:
            print(f"# crossing {c.crossing}: {c.status}")
    for note in rep.warnings:
        print(f"warning: {note}", file=sys.stderr)
    print(rep.value)
    return 0


def _parse_set(items) -> int:
    c_factor = -1
    for item in items or ():
        key, _, val = item.replace(" ", "").partition("=")
        if key != "C" or val not in ("B", "-B", "+B"):
            raise UsageError(f"--set accepts C=B or C=-B, got {item!r}")
        c_factor = -1 if val == "-B" else 1
    return c_factor


def verify_moves(seed: int, count: int, max_crossings: int = 9) -> dict:
    """Random events from catalog diagrams: R2/R3 keep both brackets, each
    inverse event restores the diagram, crossing changes keep the framing
    bookkeeping and every wall matches the difference quotient."""
    rng = random.Random(seed)
    starts = [catalog.get(n).diagram for n in ("unknot", "kink+", "3_1", "4_1")]
    failures = []
    done = 0
    while done < count:
        d = rng.choice(starts)
        p = random_path(d, rng, min(25, count - done), max_crossings=max_crossings)
        tr = validate_path(p)
        if not tr.ok:
            failures.append({"seed": seed, "event": tr.failed_at, "reason": tr.reason})
            break
        for i, ev in enumerate(p.events):
            before, after = tr.diagrams[i], tr.diagrams[i + 1]
            where = {"event": done + i, "op": event_to_json(ev)}
            if isinstance(ev, CrossingChange):
                wall = dg.make_singular(before, ev.crossing)
                if singular_bracket_eval(wall) != oracle_quotient(before, ev.crossing):
                    failures.append({**where, "check": "difference quotient"})
            else:
                if kauffman_bracket(before) != kauffman_bracket(after):
                    failures.append({**where, "check": "bracket invariance"})
                if dg.framing(before) != dg.framing(after):
                    failures.append({**where, "check": "framing"})
            if apply_event(after, inverse_event(before, ev)).key() != before.key():
                failures.append({**where, "check": "inverse"})
        done += max(1, len(p.events))
    return {"seed": seed, "count": count, "passed": not failures, "failures": failures}


def cmd_verify(args) -> int:
    if args.suite == "meridians":
        rep = meridian_suite(_parse_set(args.set))
        if args.json:
            print(json.dumps(rep.to_json(), sort_keys=True))
        else:
            for s in rep.scenarios:
                print(f"{s.name}: {'pass' if s.passed else 'FAIL'}")
        return 0 if rep.passed else 1
    if args.set:
        raise UsageError("--set only applies to the meridians suite")
    res = verify_moves(args.seed, args.count)
    if args.json:
        print(json.dumps(res, sort_keys=True))
    else:
        for f in res["failures"]:
            print(f"FAIL {json.dumps(f, sort_keys=True)}")
        print(f"moves: {'pass' if res['passed'] else 'FAIL'} ({res['count']} events, seed {res['seed']})")
    return 0 if res["passed"] else 1


def cmd_catalog(args) -> int:
    if args.action == "list":
        names = catalog.names()
        scen = catalog.scenario_names()
        if args.json:
            print(json.dumps({"diagrams": names, "scenarios": scen}, sort_keys=True))
        else:
            for n in names:
                e = catalog.get(n)
                print(f"{n}\t{len(e.diagram)} vertices\tw={e.framing.writhe} n={e.framing.whitney}")
            for s in scen:
                print(f"scenario {s}")
        return 0
    if not args.name:
        raise UsageError("catalog show needs a name")
    name = args.name[1:] if args.name.startswith("@") else args.name
    if name in catalog.scenario_names() and name not in catalog.names():
        print(json.dumps(catalog.scenario_json(name), sort_keys=True, indent=None if args.json else 1))
        return 0
    e = catalog.get(name)
    print(json.dumps(e.to_json(), sort_keys=True, indent=None if args.json else 1))
    return 0


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=1, help="workers for state enumeration (default 1)")
    common.add_argument("--backend", choices=("numba", "numpy"), default=None,
                        help=f"state-sum kernel (default {_kernels.BACKEND})")
    common.add_argument("--method", choices=("auto", "naive", "contract"), default="auto",
                        help="exhaustive state sum or tangle contraction")

    ap = argparse.ArgumentParser(prog="skeincross", description="Kauffman bracket and the Cross 1-cocycle")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", parents=[common], help="Kauffman or singular bracket")
    p.add_argument("input", help="@name or diagram JSON file")
    p.add_argument("--eval", action="store_true", help="specialise at B=1, C=-1")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("jones", parents=[common], help="(-A)^(-3w) <D>")
    p.add_argument("input")
    p.set_defaults(func=cmd_jones)

    p = sub.add_parser("vs", parents=[common], help="(-A)^(-3w) <D>_s")
    p.add_argument("input")
    p.set_defaults(func=cmd_vs)

    p = sub.add_parser("cross", parents=[common], help="Cross of a path script")
    p.add_argument("script", help="@scenario, @diagram (empty path) or path JSON file")
    p.add_argument("--loop", action="store_true", help="require a loop")
    p.add_argument("--generic", action="store_true", help="leave B and C symbolic")
    p.add_argument("--audit", action="store_true", help="per-wall breakdown")
    p.set_defaults(func=cmd_cross)

    p = sub.add_parser("verify", parents=[common], help="verification suites")
    p.add_argument("suite", choices=("meridians", "moves"))
    p.add_argument("--set", action="append", metavar="C=B", help="meridians: calibration to test")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=200)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", parents=[common], help="bundled diagrams and scenarios")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_catalog)
    return ap


def _error(args, code: int, kind: str, msg: str) -> int:
    if getattr(args, "json", False):
        print(json.dumps({"error": {"type": kind, "message": msg}}, sort_keys=True))
    else:
        print(f"error: {msg}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.threads < 1:
        ap.error("--threads must be at least 1")
    try:
        return args.func(args)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"{ap.prog}: error: {exc}", file=sys.stderr)
        return 2
    except catalog.UnknownName as exc:
        return _error(args, 1, "UnknownName", f"unknown catalog name {exc.args[0]!r}")
    except ParseError as exc:
        return _error(args, 1, "ParseError", str(exc))
    except (dg.DiagramError, InapplicableMove, ValueError, RuntimeError) as exc:
        return _error(args, 1, type(exc).__name__, str(exc))


if __name__ == "__main__":
    sys.exit(main())
