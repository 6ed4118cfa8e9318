"""``apc``: run contracted λ_J programs and query the contract algebra."""

from __future__ import annotations

import argparse
import json
import sys

from . import bench
from .containment import decide_containment, reduce
from .contract import derive_path
from .literals import IOTA
from .report import EXIT_ERROR, render_json, render_text, run_program
from .syntax import ContractSyntaxError, parse_contract, pretty


def _parse_path(text: str) -> tuple:
    if text in ("", "e"):
        return ()
    return tuple(IOTA if p == "@" else p for p in text.split("."))


def cmd_run(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            src = fh.read()
    except OSError as exc:
        print(f"apc: cannot read {args.file}: {exc.strerror}", file=sys.stderr)
        return EXIT_ERROR
    report = run_program(src, args.mode, log=not args.no_log)
    if args.format == "json":
        sys.stdout.write(render_json(report))
    else:
        sys.stdout.write(render_text(report))
        if report.error is not None:
            print(f"apc: {report.error['message']}", file=sys.stderr)
    return report.exit_code


def _contracts(*sources):
    return [parse_contract(s) for s in sources]


def cmd_contains(args) -> int:
    lhs, rhs = _contracts(args.lhs, args.rhs)
    print("true" if decide_containment(lhs, rhs) else "false")
    return 0


def cmd_derive(args) -> int:
    (c,) = _contracts(args.contract)
    d = derive_path(c, _parse_path(args.path))
    print(pretty(reduce(d) if args.reduce else d))
    return 0


def cmd_reduce(args) -> int:
    (c,) = _contracts(args.contract)
    print(pretty(reduce(c)))
    return 0


def cmd_nullable(args) -> int:
    (c,) = _contracts(args.contract)
    print("true" if c.nullable else "false")
    return 0


def cmd_bench(args) -> int:
    rows = bench.run_suite(args.suite)
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    else:
        sys.stdout.write(bench.format_table(rows))
    return 0


class _Parser(argparse.ArgumentParser):
    # exit status 2 is reserved for strict-mode violations
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="apc", description="Access permission contracts for λ_J programs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run a program and report its accesses")
    run.add_argument("file")
    run.add_argument("--mode", choices=("strict", "observer", "protector"), default="strict")
    run.add_argument("--format", choices=("text", "json"), default="text")
    run.add_argument("--no-log", action="store_true", help="enforce contracts without collecting paths")
    run.set_defaults(func=cmd_run)

    c = sub.add_parser("contains", help="decide L(C1) <= L(C2) (sound, may say false)")
    c.add_argument("lhs")
    c.add_argument("rhs")
    c.set_defaults(func=cmd_contains)

    d = sub.add_parser("derive", help="derive a contract by a dotted path")
    d.add_argument("contract")
    d.add_argument("path", help="properties separated by '.', '@' for the blank property")
    d.add_argument("--reduce", action="store_true", help="reduce the result")
    d.set_defaults(func=cmd_derive)

    r = sub.add_parser("reduce", help="simplify a contract")
    r.add_argument("contract")
    r.set_defaults(func=cmd_reduce)

    n = sub.add_parser("nullable", help="does the contract accept the empty path")
    n.add_argument("contract")
    n.set_defaults(func=cmd_nullable)

    b = sub.add_parser("bench", help="trie and derivative measurements")
    b.add_argument("--suite", choices=sorted(bench.SUITES), default="trie")
    b.add_argument("--format", choices=("text", "json"), default="text")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ContractSyntaxError as exc:
        print(f"apc: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
