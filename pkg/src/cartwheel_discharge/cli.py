"""Command-line front end.

Exit codes: 0 verified / clean, 1 verification failure or lint
findings or golden-table mismatch, 2 malformed input, 3 internal
invariant breach (always a bug, never a property of the inputs).
"""

from __future__ import annotations

import argparse
import os
import sys

from .configurations import (build_good_configuration, parse_configurations,
                             radius_at_most_two)
from .errors import (CartwheelError, InputError, InternalInvariantError,
                     VerificationFailure)
from .hubcaps import check_h2, validate_hubcap
from .presentation import (parse_presentation, run_presentation,
                           structural_problems)
from .rules import (derive_outlets, diff_outlet_tables, format_outlet_table,
                    parse_outlet_table, parse_rules)


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(str(e), path=path)


def _emit_trace(trace, name):
    target = os.environ.get("CARTWHEEL_TRACE_DIR", "").strip()
    if target:
        path = os.path.join(target, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(trace) + "\n")
        print(f"trace written to {path}")
    else:
        for line in trace:
            print(line)


def cmd_verify(args) -> int:
    if not 7 <= args.degree <= 11:
        raise InputError(f"degree {args.degree} out of range 7..11")
    rules = parse_rules(_read(args.rules), args.rules)
    table = derive_outlets(rules, args.degree)
    if args.golden:
        golden = parse_outlet_table(_read(args.golden), args.golden)
        diffs = diff_outlet_tables(table, golden)
        if diffs:
            for line in diffs:
                print(line)
            print(f"derived outlet table disagrees with {args.golden}")
            return 1
    db = [build_good_configuration(c)
          for c in parse_configurations(_read(args.configs), args.configs)]
    degree, lines = parse_presentation(_read(args.presentation),
                                       args.presentation)
    if degree != args.degree:
        raise InputError(
            f"presentation is for degree {degree}, requested {args.degree}",
            1, args.presentation)
    trace = [] if args.trace else None
    jobs = args.jobs if args.jobs else os.cpu_count() or 1
    try:
        report = run_presentation(degree, lines, table, db,
                                  trace=trace, jobs=jobs)
    except VerificationFailure:
        if trace:
            _emit_trace(trace, f"trace-verify-d{degree}.txt")
        raise
    except InputError as e:
        if e.path is None:
            e.path = args.presentation
        raise
    if trace is not None:
        _emit_trace(trace, f"trace-verify-d{degree}.txt")
    disp = " ".join(f"{k}={v}" for k, v in sorted(report.dispositions.items()))
    print(f"verified: degree {degree}, {report.steps} steps, "
          f"{report.branches} branches, dispositions {disp or 'none'}")
    return 0


def cmd_derive_outlets(args) -> int:
    if not 5 <= args.degree <= 11:
        raise InputError(f"degree {args.degree} out of range 5..11")
    rules = parse_rules(_read(args.rules), args.rules)
    table = derive_outlets(rules, args.degree)
    text = format_outlet_table(table)
    if args.golden:
        golden = parse_outlet_table(_read(args.golden), args.golden)
        diffs = diff_outlet_tables(table, golden)
        if diffs:
            for line in diffs:
                print(line)
            print(f"derived outlet table disagrees with {args.golden}")
            return 1
        print(f"outlet table matches {args.golden} "
              f"({len(table)} outlets at degree {args.degree})")
        return 0
    if text:
        print(text, end="")
    return 0


def cmd_lint(args) -> int:
    if not (args.rules or args.presentation or args.configs):
        raise InputError("nothing to lint: pass -r, -p, or -c")
    findings = []

    def note(path, line, msg):
        where = path if line is None else f"{path}:{line}"
        findings.append(f"{where}: {msg}")

    if args.rules:
        try:
            rules = parse_rules(_read(args.rules), args.rules)
            for d in range(5, 12):
                derive_outlets(rules, d)
        except InputError as e:
            note(args.rules, e.line, e.message)

    if args.presentation:
        try:
            degree, lines = parse_presentation(_read(args.presentation),
                                               args.presentation)
        except InputError as e:
            note(args.presentation, e.line, e.message)
        else:
            for no, msg in structural_problems(degree, lines):
                note(args.presentation, no, msg)
            for ln in lines:
                if ln.kind != "H":
                    continue
                try:
                    mult = validate_hubcap(ln.payload, degree)
                    if not check_h2(ln.payload, mult, degree):
                        note(args.presentation, ln.no,
                             "hubcap sum fails the closing inequality")
                except InputError as e:
                    note(args.presentation, ln.no, e.message)

    if args.configs:
        try:
            configs = parse_configurations(_read(args.configs), args.configs)
        except InputError as e:
            note(args.configs, e.line, e.message)
        else:
            for cfg in configs:
                if radius_at_most_two(cfg) is None:
                    note(args.configs, None,
                         f"{cfg.name}: some vertex is more than two steps "
                         f"from every center")
                    continue
                try:
                    build_good_configuration(cfg)
                except InputError as e:
                    note(args.configs, None, e.message)

    for f in findings:
        print(f)
    return 1 if findings else 0


def _parser():
    p = argparse.ArgumentParser(
        prog="cartwheel-discharge",
        description="verify machine-checked case analyses of hub "
                    "neighborhoods in plane triangulations")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a proof script")
    v.add_argument("-d", "--degree", type=int, required=True)
    v.add_argument("-r", "--rules", required=True)
    v.add_argument("-p", "--presentation", required=True)
    v.add_argument("-c", "--configs", required=True)
    v.add_argument("--golden", default=None,
                   help="outlet table the derived one must match")
    v.add_argument("--trace", action="store_true")
    v.add_argument("--trace-format", choices=["v1"], default="v1")
    v.add_argument("--jobs", type=int, default=0,
                   help="worker threads for hubcap triples (default: all cores)")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("derive-outlets", help="print the outlet table")
    o.add_argument("-d", "--degree", type=int, required=True)
    o.add_argument("-r", "--rules", required=True)
    o.add_argument("--golden", default=None)
    o.set_defaults(func=cmd_derive_outlets)

    l = sub.add_parser("lint", help="static checks without verification")
    l.add_argument("-r", "--rules", default=None)
    l.add_argument("-p", "--presentation", default=None)
    l.add_argument("-c", "--configs", default=None)
    l.set_defaults(func=cmd_lint)
    return p


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except InternalInvariantError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 3
    except VerificationFailure as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return 1
    except CartwheelError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def entry():
    sys.exit(main())
