"""Step-counted counter machine: parsing, bounded runs, dovetailed enumeration.

The instruction set is INC r | DEC r | JZ r label | GOTO label | HALT.
Registers hold unbounded naturals and DEC of zero leaves zero.  One
instruction is one step.  A run either halts (HALT executes, or control
falls off the end) or exhausts its step budget; both outcomes carry exact
step counts, which is what makes every higher-level construction in this
library reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import InvalidProgram

OPS = ("INC", "DEC", "JZ", "GOTO", "HALT")

_LABEL_RE = re.compile(r"([A-Za-z_]\w*):")


@dataclass(frozen=True)
class Instruction:
    op: str
    reg: int | None = None
    target: int | None = None  # resolved instruction index for JZ / GOTO


@dataclass(frozen=True)
class Program:
    instructions: tuple[Instruction, ...]
    register_count: int


@dataclass(frozen=True)
class Halted:
    steps: int


@dataclass(frozen=True)
class StillRunning:
    budget: int


RunOutcome = Halted | StillRunning


def parse_program(text: str) -> Program:
    """Parse program text: one instruction per line, `name:` label prefixes,
    `#` comments, decimal register indices."""
    labels: dict[str, int] = {}
    raw: list[tuple[str, list[str], int]] = []  # (op, args, source line)
    for line_no, line in enumerate(text.splitlines(), start=1):
        code = line.split("#", 1)[0].strip()
        while code:
            m = _LABEL_RE.match(code)
            if m is None:
                break
            name = m.group(1)
            if name in labels:
                raise InvalidProgram(f"line {line_no}: duplicate label {name!r}")
            labels[name] = len(raw)
            code = code[m.end() :].strip()
        if not code:
            continue
        tokens = code.split()
        raw.append((tokens[0].upper(), tokens[1:], line_no))

    if not raw:
        raise InvalidProgram("program has no instructions")
    for name, index in labels.items():
        if index >= len(raw):
            raise InvalidProgram(f"label {name!r} points past the last instruction")

    instructions: list[Instruction] = []
    max_register = 0

    def register(token: str, line_no: int) -> int:
        if not token.isdigit():
            raise InvalidProgram(f"line {line_no}: bad register {token!r}")
        return int(token)

    def target(token: str, line_no: int) -> int:
        if token not in labels:
            raise InvalidProgram(f"line {line_no}: unknown label {token!r}")
        return labels[token]

    for op, args, line_no in raw:
        if op not in OPS:
            raise InvalidProgram(f"line {line_no}: unknown instruction {op!r}")
        if op in ("INC", "DEC"):
            if len(args) != 1:
                raise InvalidProgram(f"line {line_no}: {op} takes one register")
            reg = register(args[0], line_no)
            max_register = max(max_register, reg)
            instructions.append(Instruction(op, reg=reg))
        elif op == "JZ":
            if len(args) != 2:
                raise InvalidProgram(f"line {line_no}: JZ takes a register and a label")
            reg = register(args[0], line_no)
            max_register = max(max_register, reg)
            instructions.append(Instruction(op, reg=reg, target=target(args[1], line_no)))
        elif op == "GOTO":
            if len(args) != 1:
                raise InvalidProgram(f"line {line_no}: GOTO takes a label")
            instructions.append(Instruction(op, target=target(args[0], line_no)))
        else:  # HALT
            if args:
                raise InvalidProgram(f"line {line_no}: HALT takes no arguments")
            instructions.append(Instruction(op))

    return Program(tuple(instructions), register_count=max_register + 1)


def load_program(path: str | Path) -> Program:
    return parse_program(Path(path).read_text())


class MachineState:
    """Mutable state of a single run; `step()` executes exactly one instruction.

    Separate runs never share state, so distinct runs are safe on distinct
    threads.
    """

    def __init__(self, program: Program, input_value: int):
        if input_value < 0:
            raise ValueError("input must be a natural number")
        self.program = program
        self.registers = [0] * program.register_count
        self.registers[0] = input_value
        self.pc = 0
        self.steps = 0
        self.halted = False

    def step(self) -> None:
        if self.halted:
            return
        instruction = self.program.instructions[self.pc]
        self.steps += 1
        op = instruction.op
        if op == "INC":
            self.registers[instruction.reg] += 1
            self.pc += 1
        elif op == "DEC":
            value = self.registers[instruction.reg]
            self.registers[instruction.reg] = value - 1 if value > 0 else 0
            self.pc += 1
        elif op == "JZ":
            if self.registers[instruction.reg] == 0:
                self.pc = instruction.target
            else:
                self.pc += 1
        elif op == "GOTO":
            self.pc = instruction.target
        else:  # HALT
            self.halted = True
            return
        if self.pc >= len(self.program.instructions):
            self.halted = True


def run_for(program: Program, input_value: int, budget: int) -> RunOutcome:
    """Run with the input in register 0 for at most `budget` steps.

    Deterministic: identical arguments always give the identical outcome,
    and a halt reported with step count k is reproduced by any budget >= k.
    """
    if budget < 0:
        raise ValueError("budget must be a natural number")
    state = MachineState(program, input_value)
    while state.steps < budget:
        state.step()
        if state.halted:
            return Halted(state.steps)
    return StillRunning(budget)


def dovetail_enumerate(
    program: Program, inputs: Iterable[int], total_budget: int
) -> list[tuple[int, int]]:
    """Enumerate the halting inputs by interleaving.

    Round-robin schedule: every sweep gives each still-pending input one
    additional step, in increasing input order.  The pair (input, k) is
    emitted the moment that input halts at its k-th step; the sweep stops
    as soon as `total_budget` steps have been spent across all runs.  The
    emission order is therefore fully deterministic: sorted by halting
    step, ties broken by input.
    """
    if total_budget < 1:
        raise ValueError("total budget must be at least 1")
    pending = [(i, MachineState(program, i)) for i in sorted(set(inputs))]
    emitted: list[tuple[int, int]] = []
    total = 0
    while pending and total < total_budget:
        survivors: list[tuple[int, MachineState]] = []
        for position, (input_value, state) in enumerate(pending):
            if total >= total_budget:
                survivors.extend(pending[position:])
                break
            state.step()
            total += 1
            if state.halted:
                emitted.append((input_value, state.steps))
            else:
                survivors.append((input_value, state))
        pending = survivors
    return emitted
