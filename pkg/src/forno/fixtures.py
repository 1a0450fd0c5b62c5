"""The sample machines shipped in ``forno/machines``."""

from __future__ import annotations

from importlib import resources

from .turing import TuringMachine, parse_tm

FIXTURES = ("swap", "reverse", "parity")
# fixtures computing self-inverse bijections of {0,1}*
BIJECTIONS = ("swap", "reverse")


def fixture_path(name: str):
    return resources.files("forno") / "machines" / f"{name}.tm"


def load_fixture(name: str) -> TuringMachine:
    return parse_tm(fixture_path(name).read_text(encoding="utf-8"))
