"""Zero-garbage run of a compiled bijection, forwards and backwards.

Compiles a fixture machine, shows the garbage left by the plain compiled
program, then runs the two-way composition and its inverse on the same input.

    python scripts/bennett_demo.py --fixture reverse --input 0011
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from forno.bennett import check_zero_garbage, zero_garbage_compose
from forno.compiler import compile_tm
from forno.evaluator import evaluate
from forno.fixtures import BIJECTIONS, load_fixture
from forno.invert import invert
from forno.state import MachineState, format_state
from forno.syntax import size
from forno.turing import decode_stack, encode_string


@dataclass
class DemoConfig:
    fixture: str = "swap"
    input: str = "0110"


def indent(text: str) -> str:
    return "\n".join("    " + line for line in text.splitlines())


def run(cfg: DemoConfig) -> bool:
    m = load_fixture(cfg.fixture)
    cp = compile_tm(m)
    enc, io = cp.encoding, cp.roles.rgt
    start = MachineState({io: encode_string(enc, cfg.input)})

    plain = evaluate(cp.term, start)
    print(f"compiled {cfg.fixture}: {size(cp.term)} nodes, {plain.steps} steps on {cfg.input!r}")
    print(indent(format_state(plain.final)))

    r, fx = zero_garbage_compose(cp.term, io, cp.term, io, enc.input_count)
    fwd = evaluate(r, start)
    print(f"\nzero-garbage composition: {size(r)} nodes, {fwd.steps} steps")
    print(indent(format_state(fwd.final)))
    out = decode_stack(enc, fwd.final[fx])
    clean = check_zero_garbage(fwd.final, fx)
    print(f"    output {out!r}, zero garbage: {clean}")

    back = evaluate(invert(r), fwd.final)
    print(f"\ninverse: {back.steps} steps")
    print(indent(format_state(back.final)))
    restored = back.final == start
    print(f"    input restored: {restored}")
    return clean and restored


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fixture", choices=BIJECTIONS, default="swap")
    ap.add_argument("--input", default="0110")
    args = ap.parse_args(argv)
    bad = set(args.input) - {"0", "1"}
    if bad:
        ap.error(f"input must be over 0 and 1, got {sorted(bad)}")
    return 0 if run(DemoConfig(args.fixture, args.input)) else 1


if __name__ == "__main__":
    raise SystemExit(main())
