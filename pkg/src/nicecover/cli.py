"""Command-line interface.

Exit status: 0 on success, 1 when a mathematical precondition fails at
run time (including a failed verification), 2 on usage or parse errors.
All rationals are printed canonically and output is byte-deterministic
for identical inputs.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path
from typing import Sequence

from . import analysis, cover as cover_mod, crn, expressions, machine
from .errors import DomainError, InvalidProgram, ParseError, ZeroDenominator
from .rational import parse_rational, render


def _rational_flag(text: str):
    try:
        return parse_rational(text)
    except (ParseError, ZeroDenominator) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _natural_flag(text: str) -> int:
    if not text.strip().isdigit():
        raise argparse.ArgumentTypeError(f"not a natural number: {text!r}")
    return int(text)


def _inputs_flag(text: str) -> range:
    m = re.fullmatch(r"(\d+)\.\.(\d+)", text.strip())
    if m is None:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    first, last = int(m.group(1)), int(m.group(2))
    if last < first:
        raise argparse.ArgumentTypeError(f"empty input range {text!r}")
    return range(first, last + 1)


def _selected_flag(text: str) -> list[int]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts or not all(p.isdigit() for p in parts):
        raise argparse.ArgumentTypeError(f"expected comma-separated indices, got {text!r}")
    return [int(p) for p in parts]


def _oracle_flag(text: str):
    try:
        return analysis.parse_oracle(text)
    except (ParseError, ZeroDenominator) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _targets_flag(text: str):
    try:
        return analysis.parse_targets(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _modulus_flag(text: str):
    s = text.strip()
    if s == "lebesgue":
        return ("lebesgue", None)
    if s.startswith("const:"):
        try:
            return ("const", parse_rational(s[len("const:") :]))
        except (ParseError, ZeroDenominator) as exc:
            raise argparse.ArgumentTypeError(str(exc))
    raise argparse.ArgumentTypeError(
        f"expected `lebesgue` or `const:<rational>`, got {text!r}"
    )


def _samples_flag(text: str):
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("expected comma-separated rationals")
    try:
        return tuple(parse_rational(p) for p in parts)
    except (ParseError, ZeroDenominator) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nicecover",
        description="Exact constructive analysis on [0,1]: computable reals, "
        "a step-counted machine sandbox, bisection, and verified finite subcovers.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    rat = commands.add_parser("rat", help="evaluate an exact rational expression")
    rat.add_argument("expr", help="expression over rationals with + - * and parentheses")

    crn_cmd = commands.add_parser("crn", help="constructive real values")
    crn_sub = crn_cmd.add_subparsers(dest="subcommand", required=True)
    crn_approx = crn_sub.add_parser("approx", help="approximate a value expression")
    crn_approx.add_argument("--expr", required=True, help="value expression; builtins: waiting(...), bisect_limit(...)")
    crn_approx.add_argument("--prec", required=True, type=_natural_flag, help="precision level n; answer is within 2^-n")

    machine_cmd = commands.add_parser("machine", help="counter-machine sandbox")
    machine_sub = machine_cmd.add_subparsers(dest="subcommand", required=True)
    machine_run = machine_sub.add_parser("run", help="run a program under a step budget")
    machine_run.add_argument("--prog", required=True, help="program file")
    machine_run.add_argument("--input", required=True, type=_natural_flag)
    machine_run.add_argument("--budget", required=True, type=_natural_flag)
    machine_dovetail = machine_sub.add_parser("dovetail", help="enumerate halting inputs")
    machine_dovetail.add_argument("--prog", required=True, help="program file")
    machine_dovetail.add_argument("--inputs", required=True, type=_inputs_flag, help="inclusive range A..B")
    machine_dovetail.add_argument("--budget", required=True, type=_natural_flag, help="total steps across all runs")

    waiting_cmd = commands.add_parser("waiting", help="waiting-sequence values")
    waiting_sub = waiting_cmd.add_subparsers(dest="subcommand", required=True)
    waiting_approx = waiting_sub.add_parser("approx", help="approximate a waiting value")
    waiting_approx.add_argument("--prog", required=True, help="monitored program file")
    waiting_approx.add_argument("--input", required=True, type=_natural_flag)
    waiting_approx.add_argument("--targets", default="geometric", type=_targets_flag)
    waiting_approx.add_argument("--prec", required=True, type=_natural_flag)
    waiting_approx.add_argument("--max-steps", type=_natural_flag, default=None, help="cap on machine steps per entry")

    reduce_cmd = commands.add_parser("reduce", help="step-certified halting probe of a waiting value")
    reduce_cmd.add_argument("--prog", required=True, help="monitored program file")
    reduce_cmd.add_argument("--input", required=True, type=_natural_flag)
    reduce_cmd.add_argument("--prec", required=True, type=_natural_flag, help="probe precision level")
    reduce_cmd.add_argument("--targets", default="geometric", type=_targets_flag)
    reduce_cmd.add_argument("--oracle", default="step@1/2", type=_oracle_flag, help="discrete map used as the probe")

    bisect_cmd = commands.add_parser("bisect", help="bisection search for a discontinuity")
    bisect_cmd.add_argument("--oracle", required=True, type=_oracle_flag, help="step@<r> or stair:<r1>,...")
    bisect_cmd.add_argument("--lo", required=True, type=_rational_flag)
    bisect_cmd.add_argument("--hi", required=True, type=_rational_flag)
    bisect_cmd.add_argument("--steps", required=True, type=_natural_flag)
    bisect_cmd.add_argument("--transcript", default=None, help="write the transcript to this TSV file")

    cover_cmd = commands.add_parser("cover", help="interval covers and finite subcovers")
    cover_sub = cover_cmd.add_subparsers(dest="subcommand", required=True)
    cover_lebesgue = cover_sub.add_parser("lebesgue", help="exact uniform containment radius")
    cover_lebesgue.add_argument("--cover", required=True, help="cover file")
    cover_subcover = cover_sub.add_parser("subcover", help="extract a certified finite subcover")
    cover_subcover.add_argument("--cover", required=True, help="cover file")
    cover_subcover.add_argument("--modulus", default=("lebesgue", None), type=_modulus_flag, help="lebesgue | const:<r>")
    cover_subcover.add_argument("--samples", default=None, type=_samples_flag, help="constancy sample points, comma-separated")
    cover_verify = cover_sub.add_parser("verify", help="check that selected elements cover [0,1]")
    cover_verify.add_argument("--cover", required=True, help="cover file")
    cover_verify.add_argument("--selected", required=True, type=_selected_flag)
    cover_verify_cert = cover_sub.add_parser("verify-cert", help="re-check a subcover certificate")
    cover_verify_cert.add_argument("--cover", required=True, help="cover file")
    cover_verify_cert.add_argument("--cert", required=True, help="certificate file")

    return parser


def _kebab(exc: DomainError) -> str:
    name = type(exc).__name__
    return re.sub(r"(?<!^)(?=[A-Z])", "-", name).lower()


def _cmd_rat(args) -> int:
    node = expressions.parse_expression(args.expr)
    print(render(expressions.eval_rational(node)))
    return 0


def _cmd_crn_approx(args) -> int:
    node = expressions.parse_expression(args.expr)
    value = expressions.eval_crn(node, analysis.expression_builtins())
    print(f"{render(crn.approx_to(value, args.prec))} ± 2^-{args.prec}")
    return 0


def _cmd_machine_run(args) -> int:
    program = machine.load_program(args.prog)
    outcome = machine.run_for(program, args.input, args.budget)
    if isinstance(outcome, machine.Halted):
        print(f"halted steps={outcome.steps}")
    else:
        print(f"still-running budget={outcome.budget}")
    return 0


def _cmd_machine_dovetail(args) -> int:
    program = machine.load_program(args.prog)
    for input_value, steps in machine.dovetail_enumerate(program, args.inputs, args.budget):
        print(f"input={input_value} steps={steps}")
    return 0


def _cmd_waiting_approx(args) -> int:
    program = machine.load_program(args.prog)
    value = analysis.waiting_crn(program, args.input, args.targets, max_steps=args.max_steps)
    print(f"{render(crn.approx_to(value, args.prec))} ± 2^-{args.prec}")
    return 0


def _cmd_reduce(args) -> int:
    program = machine.load_program(args.prog)
    verdict = analysis.halting_reduction(
        program, args.input, args.targets, args.oracle, args.prec
    )
    if isinstance(verdict, analysis.HaltsAt):
        print(f"halts-at steps={verdict.steps}")
    else:
        print(f"no-halt-within steps={verdict.steps}")
    return 0


def _cmd_bisect(args) -> int:
    limit, rows = analysis.bisect_to_precision(args.oracle, args.lo, args.hi, args.steps)
    del limit  # the enclosure below is the printed result
    if args.transcript is not None:
        lines = [
            f"{row.index}\t{render(row.lo)}\t{render(row.hi)}\t{row.branch}"
            for row in rows
        ]
        Path(args.transcript).write_text("\n".join(lines) + "\n")
    last = rows[-1]
    print(f"steps={args.steps}")
    print(f"lo={render(last.lo)}")
    print(f"hi={render(last.hi)}")
    print(f"width={render(last.hi - last.lo)}")
    return 0


def _cmd_cover_lebesgue(args) -> int:
    intervals = cover_mod.load_cover(args.cover)
    print(f"lebesgue-number={render(cover_mod.lebesgue_number(intervals))}")
    return 0


def _cmd_cover_subcover(args) -> int:
    intervals = cover_mod.load_cover(args.cover)
    kind, const_radius = args.modulus
    if kind == "const":
        modulus = cover_mod.ConstantModulus(const_radius)
    else:
        modulus = cover_mod.LebesgueModulus(intervals)
    samples = args.samples if args.samples else cover_mod.DEFAULT_SAMPLE_POINTS
    certificate = cover_mod.extract_finite_subcover(intervals, modulus, samples)
    sys.stdout.write(cover_mod.render_certificate(certificate))
    return 0


def _cmd_cover_verify(args) -> int:
    intervals = cover_mod.load_cover(args.cover)
    for index in args.selected:
        if index >= len(intervals):
            raise ParseError(f"selected index {index} out of range")
    verdict = cover_mod.verify_subcover(intervals, args.selected)
    if isinstance(verdict, cover_mod.Covered):
        print("covered")
        return 0
    print(f"uncovered {render(verdict.witness)}")
    return 1


def _cmd_cover_verify_cert(args) -> int:
    intervals = cover_mod.load_cover(args.cover)
    certificate = cover_mod.load_certificate(args.cert)
    problems = cover_mod.verify_certificate(intervals, certificate)
    if not problems:
        print("certificate-ok")
        return 0
    for problem in problems:
        print(f"certificate-invalid: {problem}")
    return 1


def dispatch(argv: Sequence[str]) -> int:
    """Route argv to a command; returns the exit status instead of exiting."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    handlers = {
        ("rat", None): _cmd_rat,
        ("crn", "approx"): _cmd_crn_approx,
        ("machine", "run"): _cmd_machine_run,
        ("machine", "dovetail"): _cmd_machine_dovetail,
        ("waiting", "approx"): _cmd_waiting_approx,
        ("reduce", None): _cmd_reduce,
        ("bisect", None): _cmd_bisect,
        ("cover", "lebesgue"): _cmd_cover_lebesgue,
        ("cover", "subcover"): _cmd_cover_subcover,
        ("cover", "verify"): _cmd_cover_verify,
        ("cover", "verify-cert"): _cmd_cover_verify_cert,
    }
    handler = handlers[(args.command, getattr(args, "subcommand", None))]
    try:
        return handler(args)
    except DomainError as exc:
        print(f"{_kebab(exc)} {exc}".rstrip())
        return 1
    except (ParseError, ZeroDenominator, InvalidProgram) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
