"""ForNo: parse, check, evaluate and invert reversible stack programs, compile
polynomial-time Turing machines into them, and build zero-garbage bijections."""

from .evaluator import EvalResult, eval_snapshot, evaluate
from .invert import invert
from .state import MachineState, pop_op, push_op, state
from .syntax import (For, If, Normal, ParseError, Pop, Push, Rof, Seq, Skip, Term,
                     parse, registers, rename, render, seq)
from .validity import Violation, ViolationKind, check, is_valid, written_registers

__all__ = [
    "EvalResult", "eval_snapshot", "evaluate", "invert", "MachineState", "pop_op",
    "push_op", "state", "For", "If", "Normal", "ParseError", "Pop", "Push", "Rof",
    "Seq", "Skip", "Term", "parse", "registers", "rename", "render", "seq",
    "Violation", "ViolationKind", "check", "is_valid", "written_registers",
]
