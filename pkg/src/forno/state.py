"""Stacks of naturals, stores, the error counter and the push/pop bijection.

A stack is a tuple whose first element is the top.  ``pop_op``/``push_op`` are
total and mutually inverse on ``Stack x N``; once the counter is positive
neither of them touches the stack.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

Stack = tuple[int, ...]
EMPTY: Stack = ()


def head(s: Stack) -> Optional[int]:
    return s[0] if s else None


def tail(s: Stack) -> Stack:
    return s[1:]


def is_empty(s: Stack) -> bool:
    return not s


def reverse(s: Stack) -> Stack:
    return s[::-1]


def length(s: Stack) -> int:
    return len(s)


def push_op(n: int, s: Stack, c: int) -> tuple[Stack, int]:
    matches = bool(s) and s[0] == n
    if c == 0:
        return (n,) + s, 0
    if matches:
        return s, c
    return s, c - 1


def pop_op(n: int, s: Stack, c: int) -> tuple[Stack, int]:
    matches = bool(s) and s[0] == n
    if c == 0:
        return (s[1:], 0) if matches else (s, 1)
    if matches:
        return s, c
    return s, c + 1


@dataclass(frozen=True)
class MachineState:
    """A store paired with the error counter.

    Empty stacks are dropped from ``store`` so two states are equal exactly
    when they agree on every register.
    """

    store: Mapping[str, Stack] = field(default_factory=dict)
    counter: int = 0

    def __post_init__(self):
        if self.counter < 0:
            raise ValueError("counter must be a natural")
        clean = {}
        for r, s in self.store.items():
            s = tuple(s)
            if any(v < 0 for v in s):
                raise ValueError(f"negative value on stack {r}")
            if s:
                clean[r] = s
        object.__setattr__(self, "store", dict(sorted(clean.items())))

    def __getitem__(self, r: str) -> Stack:
        return self.store.get(r, EMPTY)

    def __hash__(self):
        return hash((tuple(self.store.items()), self.counter))

    @property
    def sound(self) -> bool:
        return self.counter == 0

    def support(self) -> set[str]:
        return set(self.store)

    def bind(self, r: str, s: Iterable[int]) -> "MachineState":
        store = dict(self.store)
        store[r] = tuple(s)
        return MachineState(store, self.counter)

    def with_counter(self, c: int) -> "MachineState":
        return MachineState(self.store, c)


def state(counter: int = 0, **stacks: Iterable[int]) -> MachineState:
    """Shorthand: ``state(x=[0, 1])`` is the empty store with x bound."""
    return MachineState({r: tuple(s) for r, s in stacks.items()}, counter)


# ------------------------------------------------------------- text formats

_STACK = re.compile(r"\s*\[\s*((?:\d+\s*(?:,\s*\d+\s*)*)?)\]\s*\Z")


def format_stack(s: Stack) -> str:
    return "[" + ",".join(str(v) for v in s) + "]"


def parse_stack(text: str) -> Stack:
    m = _STACK.match(text)
    if m is None:
        raise ValueError(f"bad stack literal {text!r}; expected e.g. [0,1]")
    body = m.group(1).strip()
    return tuple(int(v) for v in body.split(",")) if body else EMPTY


def format_state(w: MachineState) -> str:
    lines = [f"{r} = {format_stack(s)}" for r, s in w.store.items()]
    lines.append(f"counter = {w.counter}")
    return "\n".join(lines)
