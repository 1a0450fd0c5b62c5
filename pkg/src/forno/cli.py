"""``forno`` command line.

Exit status: 0 on success, 1 on bad input (parse, validation, format), 2 when
``run-tm`` finds the compiled program disagreeing with the direct simulator.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bennett, compiler, syntax, turing, validity
from .evaluator import evaluate
from .invert import invert
from .state import MachineState, format_stack, format_state, parse_stack


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


def _load_term(path: str) -> syntax.Term:
    try:
        return syntax.parse(_read(path))
    except syntax.ParseError as e:
        raise InputError(f"{path}:{e}") from None


def _load_tm(path: str) -> turing.TuringMachine:
    try:
        return turing.parse_tm(_read(path))
    except turing.TmFormatError as e:
        raise InputError(f"{path}: {e}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _default_codes(*terms: syntax.Term) -> int:
    lits = set().union(*(syntax.literals(t) for t in terms))
    return max(lits, default=0) + 1


# ---------------------------------------------------------------- commands


def cmd_check(args) -> int:
    source = _read(args.file)
    t = _load_term(args.file)
    problems = validity.check(t)
    for v in problems:
        where = ""
        if v.span is not None:
            line, col = syntax.line_col(source, v.span.start)
            where = f"{line}:{col}:"
        print(f"{args.file}:{where} {v}", file=sys.stderr)
    return 1 if problems else 0


def cmd_run(args) -> int:
    t = _load_term(args.file)
    store = {}
    for item in args.set:
        name, sep, lit = item.partition("=")
        name = name.strip()
        if not sep or not syntax.is_register_name(name):
            raise InputError(f"bad --set {item!r}; expected name=[v0,v1,...]")
        try:
            store[name] = parse_stack(lit)
        except ValueError as e:
            raise InputError(str(e)) from None
    if args.counter < 0:
        raise InputError("--counter must be a natural")
    result = evaluate(t, MachineState(store, args.counter), trace=args.trace)
    if args.trace:
        for ev in result.trace:
            print(ev, file=sys.stderr)
    print(format_state(result.final))
    if args.steps:
        print(f"steps = {result.steps}")
    return 0


def cmd_invert(args) -> int:
    _emit(syntax.render(invert(_load_term(args.file))), args.output)
    return 0


def _header(cp: compiler.CompiledProgram) -> str:
    enc = cp.encoding
    lines = [f"# compiled from a {len(cp.machine.states)}-state machine, "
             f"p(x) = {cp.machine.poly.a}*x^{cp.machine.poly.b} + {cp.machine.poly.d}"]
    lines.append("# roles: " + " ".join(f"{k}={v}" for k, v in cp.roles.as_dict().items()))
    lines.append("# symbols: " + " ".join(f"{s}={enc.code(s)}" for s in enc.symbols)
                 + f"  (input codes < {enc.input_count}, blank={enc.blank_code})")
    lines.append("# states: " + " ".join(f"{q}={enc.state_code(q)}" for q in enc.states))
    return "\n".join(lines)


def cmd_compile_tm(args) -> int:
    cp = compiler.compile_tm(_load_tm(args.file))
    _emit(_header(cp) + "\n" + syntax.render(cp.term), args.output)
    return 0


def _check_input(m: turing.TuringMachine, w: str) -> None:
    bad = set(w) - set(m.input_alphabet)
    if bad:
        raise InputError(f"input contains non-input symbols {sorted(bad)}")


def cmd_simulate_tm(args) -> int:
    m = _load_tm(args.file)
    _check_input(m, args.input)
    try:
        out, steps = turing.tm_run(m, args.input)
    except turing.BoundExceeded as e:
        print(f"BoundExceeded: {e}")
        return 1
    print(out)
    print(f"steps = {steps}")
    return 0


def cmd_encode(args) -> int:
    m = _load_tm(args.file)
    try:
        print(format_stack(turing.encode_string(m.encoding, args.string)))
    except turing.DecodeError as e:
        raise InputError(str(e)) from None
    return 0


def cmd_run_tm(args) -> int:
    m = _load_tm(args.file)
    _check_input(m, args.input)
    try:
        expected, _ = turing.tm_run(m, args.input)
    except turing.BoundExceeded as e:
        print(f"BoundExceeded: {e}", file=sys.stderr)
        return 1
    cp = compiler.compile_tm(m)
    final = evaluate(cp.term, cp.initial_state(args.input)).final
    try:
        got = cp.output(final)
    except turing.DecodeError:
        got = None
    if got != expected or not final.sound:
        print(f"mismatch: compiled run gave {got!r} (counter {final.counter}), "
              f"simulator gave {expected!r}", file=sys.stderr)
        return 2
    print(got)
    return 0


def cmd_bennett(args) -> int:
    t = _load_term(args.file)
    codes = args.codes or _default_codes(t)
    try:
        out = bennett.bennett_wrap(t, args.io, args.target, codes)
    except bennett.TargetCollision as e:
        raise InputError(str(e)) from None
    _emit(syntax.render(out), args.output)
    return 0


def cmd_twoway(args) -> int:
    t_f = _load_term(args.forward)
    t_inv = _load_term(args.inverse)
    codes = args.codes or _default_codes(t_f, t_inv)
    term, out_reg = bennett.zero_garbage_compose(t_f, args.io, t_inv, args.io_inv, codes)
    _emit(f"# output register: {out_reg}\n" + syntax.render(term), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="forno", description="ForNo reversible stack language toolchain")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check ForNo validity of a .forno file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("run", help="evaluate a .forno file")
    p.add_argument("file")
    p.add_argument("--set", action="append", default=[], metavar="NAME=[..]")
    p.add_argument("--counter", type=int, default=0)
    p.add_argument("--trace", action="store_true", help="print rule applications to stderr")
    p.add_argument("--steps", action="store_true")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("invert", help="print the inverse program")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("compile-tm", help="compile a .tm machine to ForNo")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_compile_tm)

    p = sub.add_parser("simulate-tm", help="run a .tm machine directly")
    p.add_argument("file")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_simulate_tm)

    p = sub.add_parser("encode", help="print the stack encoding of a string")
    p.add_argument("file")
    p.add_argument("--string", required=True)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("run-tm", help="compile, evaluate and decode; cross-checked with simulate-tm")
    p.add_argument("file")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_run_tm)

    p = sub.add_parser("bennett", help="emit T; COPY(io, target); -T")
    p.add_argument("file")
    p.add_argument("--io", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--codes", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bennett)

    p = sub.add_parser("twoway", help="emit the zero-garbage composition of both directions")
    p.add_argument("forward")
    p.add_argument("--io", required=True)
    p.add_argument("inverse")
    p.add_argument("--io-inv", required=True)
    p.add_argument("--codes", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_twoway)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"forno: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
