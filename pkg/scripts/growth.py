"""Step counts of compiled fixture machines against input length.

Prints, per fixture, the worst-case and mean evaluator step count for each
input length together with the log-log least-squares slope, and optionally
writes the raw numbers as CSV.

    python scripts/growth.py --max-len 7 --csv growth.csv
"""

from __future__ import annotations

import argparse
import csv
import itertools
import math
import statistics
from dataclasses import dataclass

from forno.compiler import compile_tm
from forno.evaluator import evaluate
from forno.fixtures import FIXTURES, load_fixture
from forno.turing import tm_run


@dataclass
class GrowthConfig:
    fixtures: tuple[str, ...] = FIXTURES
    min_len: int = 1
    max_len: int = 6
    csv_path: str | None = None


@dataclass
class Row:
    fixture: str
    length: int
    inputs: int
    tm_steps_max: int
    eval_steps_max: int
    eval_steps_mean: float


def measure(name: str, cfg: GrowthConfig) -> list[Row]:
    m = load_fixture(name)
    cp = compile_tm(m)
    rows = []
    for n in range(cfg.min_len, cfg.max_len + 1):
        inputs = ["".join(p) for p in itertools.product(m.input_alphabet, repeat=n)]
        tm_steps = [tm_run(m, w)[1] for w in inputs]
        steps = [evaluate(cp.term, cp.initial_state(w)).steps for w in inputs]
        rows.append(Row(name, n, len(inputs), max(tm_steps), max(steps), statistics.fmean(steps)))
    return rows


def slope(rows: list[Row]) -> float:
    xs = [math.log(r.length) for r in rows]
    ys = [math.log(r.eval_steps_max) for r in rows]
    return statistics.linear_regression(xs, ys).slope


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fixtures", nargs="+", default=list(FIXTURES), choices=FIXTURES)
    ap.add_argument("--min-len", type=int, default=1)
    ap.add_argument("--max-len", type=int, default=6)
    ap.add_argument("--csv", dest="csv_path")
    args = ap.parse_args(argv)
    cfg = GrowthConfig(tuple(args.fixtures), args.min_len, args.max_len, args.csv_path)

    all_rows = []
    for name in cfg.fixtures:
        rows = measure(name, cfg)
        all_rows += rows
        b = load_fixture(name).poly.b
        print(f"{name}  (declared exponent b = {b})")
        print(f"  {'|w|':>4} {'inputs':>7} {'tm max':>7} {'eval max':>9} {'eval mean':>10}")
        for r in rows:
            print(f"  {r.length:>4} {r.inputs:>7} {r.tm_steps_max:>7} {r.eval_steps_max:>9} "
                  f"{r.eval_steps_mean:>10.1f}")
        if len(rows) >= 2:
            print(f"  slope of log(eval max) vs log|w|: {slope(rows):.3f}  (bound b + 1.2 = {b + 1.2})")
        print()

    if cfg.csv_path:
        with open(cfg.csv_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(Row.__dataclass_fields__)
            for r in all_rows:
                writer.writerow([r.fixture, r.length, r.inputs, r.tm_steps_max,
                                 r.eval_steps_max, f"{r.eval_steps_mean:.3f}"])
        print(f"wrote {cfg.csv_path}")


if __name__ == "__main__":
    main()
