"""
Batch command line for msring.

Commands that take input read line-delimited JSON from stdin and write one
result line per input line. The exit code is the worst seen across lines:
0 ok, 1 domain failure (Postnikov-Wu violation, invalid plan, failed round
trip), 2 malformed input or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, TextIO

from pydantic import ValidationError

from msring import config
from msring.catalogue import CATALOGUE, get_entry
from msring.classify import W_CLASSES, census, census_to_json
from msring.errors import MsringError
from msring.intforms import altform_from_json, boplan_to_json, realize_integral
from msring.msforms import cup_kernel_dim, descriptor_from_json, descriptor_to_json, pw_violations
from msring.normalform import normalize
from msring.realize import realize, roundtrip
from msring.surgeryplan import eval_plan, plan_from_json, plan_to_json

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_INPUT = 2


def _verify(line: str) -> tuple[str, int]:
    d = descriptor_from_json(line)
    bad = pw_violations(d.form, d.w)
    if not bad:
        return "ok", EXIT_OK
    return "violated: " + " ".join(f"({i},{j})" for i, j in bad), EXIT_DOMAIN


def _normalize(line: str) -> tuple[str, int]:
    return normalize(descriptor_from_json(line)).to_model().model_dump_json(), EXIT_OK


def _realize(line: str) -> tuple[str, int]:
    plan, change = realize(descriptor_from_json(line))
    config.log("realize", f"basis change {change.g}")
    return plan_to_json(plan), EXIT_OK


def _evalplan(line: str) -> tuple[str, int]:
    return descriptor_to_json(eval_plan(plan_from_json(line)).descriptor), EXIT_OK


def _roundtrip(line: str) -> tuple[str, int]:
    result = roundtrip(descriptor_from_json(line))
    if result.ok:
        return "ok", EXIT_OK
    return f"mismatch at {result.mismatch}", EXIT_DOMAIN


def _kernel(line: str) -> tuple[str, int]:
    return str(cup_kernel_dim(descriptor_from_json(line).form)), EXIT_OK


def _integral(line: str) -> tuple[str, int]:
    return boplan_to_json(realize_integral(altform_from_json(line))), EXIT_OK


LINE_COMMANDS: dict[str, Callable[[str], tuple[str, int]]] = {
    "verify": _verify,
    "normalize": _normalize,
    "realize": _realize,
    "evalplan": _evalplan,
    "roundtrip": _roundtrip,
    "kernel": _kernel,
    "integral": _integral,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="msring", description="MS-algebras of closed 3-manifolds: verify, realize, classify.")
    parser.add_argument("--verbose", action="store_true", help="Write tagged progress lines to stderr.")
    sub = parser.add_subparsers(dest="command", required=True)

    help_text = {
        "verify": "Check the Postnikov-Wu identity for each form line.",
        "normalize": "Print the normalizing basis change and its block report.",
        "realize": "Compile each form line into a link plan.",
        "evalplan": "Evaluate each plan line to its form.",
        "roundtrip": "Realize, evaluate and compare each form line.",
        "kernel": "Print the dimension of the cup product kernel.",
        "integral": "Realize each alternating integral form as a Bo(n) plan.",
    }
    for name, text in help_text.items():
        sub.add_parser(name, help=text)

    classify = sub.add_parser("classify", help="Print the census for a rank and w-class.")
    classify.add_argument("--rank", type=int, required=True)
    classify.add_argument("--w", choices=W_CLASSES, default="zero")
    classify.add_argument("--parallel", type=int, default=config.DEFAULT_PARALLEL)

    example = sub.add_parser("example", help="Print a catalogue entry.")
    example.add_argument("name", nargs="?")
    example.add_argument("--plan", action="store_true", help="Print the entry's link plan instead of its form.")
    example.add_argument("--list", action="store_true", help="List catalogue names.")
    return parser


def _run_lines(handler, stdin: TextIO, stdout: TextIO, stderr: TextIO) -> int:
    worst = EXIT_OK
    for lineno, raw in enumerate(stdin, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            out, code = handler(line)
        except (ValidationError, json.JSONDecodeError) as exc:
            print(f"[cli] error: line {lineno}: malformed input: {exc}", file=stderr)
            code = EXIT_INPUT
        except MsringError as exc:
            print(f"[cli] error: line {lineno}: {exc}", file=stderr)
            code = exc.exit_code
        else:
            print(out, file=stdout)
        worst = max(worst, code)
    return worst


def _example(args, stdout: TextIO, stderr: TextIO) -> int:
    if args.list:
        for entry in CATALOGUE.values():
            print(f"{entry.name}\t{entry.title}", file=stdout)
        return EXIT_OK
    if not args.name:
        print("[cli] error: example needs a NAME or --list", file=stderr)
        return EXIT_INPUT
    try:
        entry = get_entry(args.name)
    except KeyError as exc:
        print(f"[cli] error: {exc.args[0]}", file=stderr)
        return EXIT_INPUT
    if args.plan:
        if entry.plan is None:
            print(f"[cli] error: {entry.name} has no plan in the catalogue", file=stderr)
            return EXIT_DOMAIN
        print(plan_to_json(entry.plan), file=stdout)
    else:
        print(descriptor_to_json(entry.descriptor), file=stdout)
    return EXIT_OK


def _classify(args, stdout: TextIO, stderr: TextIO) -> int:
    try:
        result = census(args.rank, args.w, parallel=max(1, args.parallel))
    except MsringError as exc:
        print(f"[cli] error: {exc}", file=stderr)
        return exc.exit_code
    print(census_to_json(result), file=stdout)
    return EXIT_OK


def main(argv: list[str] | None = None, stdin: TextIO | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK

    if args.verbose:
        config.set_verbose(True)
    config.log("cli", f"command={args.command}")

    if args.command == "example":
        return _example(args, stdout, stderr)
    if args.command == "classify":
        return _classify(args, stdout, stderr)
    return _run_lines(LINE_COMMANDS[args.command], stdin, stdout, stderr)
