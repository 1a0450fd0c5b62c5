"""Single-tape Turing machines on a semi-infinite tape, and their encoding.

A configuration ``(left, state, right)`` keeps ``left`` in tape order (the cell
next to the head is its last character) and ``right`` starting with the
scanned cell, with trailing blanks trimmed.  A left move on the leftmost cell
leaves the head where it is.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from .state import Stack

log = logging.getLogger(__name__)

L, R = "L", "R"


class TmFormatError(ValueError):
    pass


class DecodeError(ValueError):
    pass


class Halted(Exception):
    pass


class BoundExceeded(RuntimeError):
    def __init__(self, machine: "TuringMachine", word: str, bound: int):
        self.word, self.bound = word, bound
        super().__init__(f"machine did not halt within p({len(word)}) = {bound} steps on {word!r}")


@dataclass(frozen=True)
class Poly:
    """p(x) = a * x**b + d."""

    a: int
    b: int
    d: int = 0

    def __call__(self, x: int) -> int:
        return self.a * x ** self.b + self.d


@dataclass(frozen=True, eq=False)
class TuringMachine:
    states: tuple[str, ...]
    initial: str
    halt: str
    input_alphabet: tuple[str, ...]
    tape_alphabet: tuple[str, ...]
    blank: str
    delta: dict  # (state, symbol) -> (state, symbol, "L" | "R")
    poly: Poly

    def __post_init__(self):
        validate(self)

    @property
    def encoding(self) -> "Encoding":
        return Encoding(self.tape_alphabet, len(self.input_alphabet), self.states, self.blank)


def validate(m: TuringMachine) -> None:
    if len(set(m.states)) != len(m.states):
        raise TmFormatError("duplicate state")
    for name, q in (("initial", m.initial), ("halt", m.halt)):
        if q not in m.states:
            raise TmFormatError(f"{name} state {q!r} not in states")
    for sym in m.tape_alphabet:
        if len(sym) != 1 or sym.isspace():
            raise TmFormatError(f"symbol {sym!r} must be one non-whitespace character")
    if len(set(m.tape_alphabet)) != len(m.tape_alphabet):
        raise TmFormatError("duplicate tape symbol")
    k = len(m.input_alphabet)
    if tuple(m.tape_alphabet[:k]) != tuple(m.input_alphabet):
        raise TmFormatError("tape_alphabet must start with input_alphabet, in the same order")
    if m.blank in m.input_alphabet:
        raise TmFormatError("blank must not be an input symbol")
    if m.blank not in m.tape_alphabet:
        raise TmFormatError("blank must be a tape symbol")
    if m.poly.a < 1 or m.poly.b < 1 or m.poly.d < 0:
        raise TmFormatError("poly needs a >= 1, b >= 1, d >= 0")
    for (q, a), (q2, a2, d) in m.delta.items():
        if q == m.halt:
            raise TmFormatError(f"delta defined on halt state for symbol {a!r}")
        if q not in m.states or q2 not in m.states:
            raise TmFormatError(f"delta mentions unknown state in {q} {a} -> {q2} {a2} {d}")
        if a not in m.tape_alphabet or a2 not in m.tape_alphabet:
            raise TmFormatError(f"delta mentions unknown symbol in {q} {a} -> {q2} {a2} {d}")
        if d not in (L, R):
            raise TmFormatError(f"direction must be L or R, got {d!r}")
    missing = [(q, a) for q in m.states if q != m.halt for a in m.tape_alphabet
               if (q, a) not in m.delta]
    if missing:
        q, a = missing[0]
        raise TmFormatError(f"delta not total: no transition for ({q}, {a})")


def parse_tm(text: str) -> TuringMachine:
    """Read the line-based ``.tm`` format; see ``machines/*.tm`` for samples."""
    fields: dict[str, list[str]] = {}
    delta: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise TmFormatError(f"line {lineno}: expected 'key: value'")
        words = rest.split()
        if key == "delta":
            if len(words) != 6 or words[2] != "->":
                raise TmFormatError(f"line {lineno}: expected 'delta: q a -> q2 b L|R'")
            q, a, _, q2, a2, d = words
            if (q, a) in delta:
                raise TmFormatError(f"line {lineno}: duplicate transition for ({q}, {a})")
            delta[q, a] = (q2, a2, d)
        elif key in ("states", "initial", "halt", "input_alphabet", "tape_alphabet", "blank", "poly"):
            if key in fields:
                raise TmFormatError(f"line {lineno}: duplicate key {key!r}")
            fields[key] = words
        else:
            raise TmFormatError(f"line {lineno}: unknown key {key!r}")

    for key in ("states", "initial", "halt", "input_alphabet", "tape_alphabet", "blank", "poly"):
        if key not in fields:
            raise TmFormatError(f"missing key {key!r}")
    for key in ("initial", "halt", "blank"):
        if len(fields[key]) != 1:
            raise TmFormatError(f"{key} takes exactly one value")
    try:
        poly = Poly(*(int(v) for v in fields["poly"]))
    except (TypeError, ValueError):
        raise TmFormatError("poly takes integers 'a b [d]'") from None
    return TuringMachine(
        states=tuple(fields["states"]),
        initial=fields["initial"][0],
        halt=fields["halt"][0],
        input_alphabet=tuple(fields["input_alphabet"]),
        tape_alphabet=tuple(fields["tape_alphabet"]),
        blank=fields["blank"][0],
        delta=delta,
        poly=poly,
    )


# ----------------------------------------------------------------- encoding


@dataclass(frozen=True)
class Encoding:
    """Symbol i of the tape alphabet has code i; input symbols come first."""

    symbols: tuple[str, ...]
    input_count: int
    states: tuple[str, ...] = ()
    blank: Optional[str] = None

    @property
    def blank_code(self) -> int:
        if self.blank is None:
            raise ValueError("encoding has no blank symbol")
        return self.code(self.blank)

    @property
    def size(self) -> int:
        return len(self.symbols)

    def code(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise DecodeError(f"unknown symbol {symbol!r}") from None

    def symbol(self, code: int) -> str:
        if not 0 <= code < len(self.symbols):
            raise DecodeError(f"code {code} out of range")
        return self.symbols[code]

    def state_code(self, q: str) -> int:
        return self.states.index(q)

    def input_codes(self) -> range:
        return range(self.input_count)

    def tape_only_codes(self) -> range:
        return range(self.input_count, len(self.symbols))


def encode_string(e: Encoding, w: str) -> Stack:
    return tuple(e.code(ch) for ch in w)


def decode_stack(e: Encoding, s: Stack) -> str:
    return "".join(e.symbol(v) for v in s)


# --------------------------------------------------------------- simulation


@dataclass(frozen=True)
class Configuration:
    left: str
    state: str
    right: str


def initial_configuration(m: TuringMachine, w: str) -> Configuration:
    return Configuration("", m.initial, w.rstrip(m.blank))


def tm_step(m: TuringMachine, c: Configuration) -> Configuration:
    if c.state == m.halt:
        raise Halted(c)
    scanned = c.right[:1] or m.blank
    q2, a2, d = m.delta[c.state, scanned]
    rest = c.right[1:]
    if d == R:
        left, right = c.left + a2, rest
    elif c.left:
        left, right = c.left[:-1], c.left[-1] + a2 + rest
    else:
        left, right = "", a2 + rest
    return Configuration(left, q2, right.rstrip(m.blank))


def run_to_halt(m: TuringMachine, w: str) -> tuple[Configuration, int]:
    bound = m.poly(len(w))
    c = initial_configuration(m, w)
    steps = 0
    while c.state != m.halt:
        if steps == bound:
            raise BoundExceeded(m, w, bound)
        c = tm_step(m, c)
        steps += 1
    return c, steps


def tm_run(m: TuringMachine, w: str) -> tuple[str, int]:
    """Output tape (trailing blanks stripped) and number of steps to halt."""
    c, steps = run_to_halt(m, w)
    if c.left:
        log.warning("halted away from the leftmost cell on input %r", w)
    return (c.left + c.right).rstrip(m.blank), steps


def reachable_configurations(m: TuringMachine, words: Sequence[str]) -> list[Configuration]:
    """Every configuration met while running ``m`` on ``words``, halting ones included."""
    seen: dict[Configuration, None] = {}
    for w in words:
        c = initial_configuration(m, w)
        seen[c] = None
        while c.state != m.halt:
            c = tm_step(m, c)
            seen[c] = None
    return list(seen)
