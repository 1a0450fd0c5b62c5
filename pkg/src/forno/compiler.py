"""Compile a polynomial-time Turing machine into a ForNo term.

The compiled program is::

    POLYNOMIAL(rgt -> p);
    PUSH[q0] q;
    EMPTY(rgt); IF empty = 0 {PUSH[blank] rgt};
    NORMAL p {FOR p {SIMULATE}};
    REMOVE-BLANKS

``lft``, ``q`` and ``rgt`` hold the simulated configuration; every other role
register only accumulates garbage.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .state import MachineState
from .syntax import For, If, Normal, Pop, Push, Register, Rof, Skip, Term, seq
from .turing import Configuration, Encoding, L, Poly, TuringMachine, decode_stack, encode_string

ROLE_NAMES = ("rgt", "lft", "q", "p", "g", "g1", "qStart", "aStart", "empty", "emptyT", "t")


@dataclass(frozen=True)
class Roles:
    rgt: Register = "rgt"
    lft: Register = "lft"
    q: Register = "q"
    p: Register = "p"
    g: Register = "g"
    g1: Register = "g1"
    qStart: Register = "qStart"
    aStart: Register = "aStart"
    empty: Register = "empty"
    emptyT: Register = "emptyT"
    t: Register = "t"

    def __post_init__(self):
        regs = self.as_dict().values()
        if len(set(regs)) != len(ROLE_NAMES):
            raise ValueError("role registers must be pairwise distinct")

    def as_dict(self) -> dict[str, Register]:
        return {name: getattr(self, name) for name in ROLE_NAMES}


@dataclass(frozen=True)
class CompiledProgram:
    term: Term
    roles: Roles
    encoding: Encoding
    machine: TuringMachine = field(repr=False)

    def initial_state(self, w: str) -> MachineState:
        return MachineState({self.roles.rgt: encode_string(self.encoding, w)})

    def output(self, w: MachineState) -> str:
        return decode_stack(self.encoding, w[self.roles.rgt])


# ------------------------------------------------------------------ macros


def pow_term(n: int, source: Register, target: Register) -> Term:
    """NORMAL source { n nested FOR source { PUSH[1] target } }."""
    if n < 1:
        raise ValueError("exponent must be positive")
    if source == target:
        raise ValueError("source and target must differ")
    body: Term = Push(1, target)
    for _ in range(n):
        body = For(source, (body,))
    return Normal((source,), body)


def polynomial_term(p: Poly, source: Register, target: Register) -> Term:
    if p.a < 1 or p.b < 1 or p.d < 0:
        raise ValueError("need a >= 1, b >= 1, d >= 0")
    parts = [pow_term(p.b, source, target) for _ in range(p.a)]
    parts += [Push(1, target) for _ in range(p.d)]
    return seq(*parts)


def empty_macro(x: Register, verdict: Register, codes: Iterable[int]) -> Term:
    """Push 1 on ``verdict`` if ``x`` is non-empty, 0 otherwise."""
    if x == verdict:
        raise ValueError("verdict register must differ from the tested one")
    flip = seq(Pop(0, verdict), Push(1, verdict))
    return seq(Push(0, verdict), *(If(x, c, flip) for c in sorted(codes)))


def to_macro(x: Register, y: Register, codes: Iterable[int], scratch: Register,
             verdict: Register) -> Term:
    """Move the top of ``x`` onto ``y``; a no-op when ``x`` is empty."""
    if len({x, y, scratch, verdict}) != 4:
        raise ValueError("x, y, scratch and verdict must be pairwise distinct")
    codes = sorted(codes)
    copy_head = [If(x, c, Push(c, scratch)) for c in codes]
    move = [If(scratch, c, seq(Pop(c, x), Push(c, y))) for c in codes]
    clear = [If(y, c, Pop(c, scratch)) for c in codes]
    return seq(empty_macro(x, verdict, codes), If(verdict, 1, seq(*copy_head, *move, *clear)))


def transition_l(q2: int, a2: int, roles: Roles, enc: Encoding) -> Term:
    codes = range(enc.size)
    r = roles
    return seq(
        Push(q2, r.q),
        to_macro(r.rgt, r.g, codes, r.t, r.emptyT),
        Push(a2, r.rgt),
        empty_macro(r.lft, r.empty, codes),
        If(r.empty, 1, to_macro(r.lft, r.rgt, codes, r.t, r.emptyT)),
    )


def transition_r(q2: int, a2: int, roles: Roles, enc: Encoding) -> Term:
    codes = range(enc.size)
    r = roles
    return seq(
        Push(q2, r.q),
        to_macro(r.rgt, r.g, codes, r.t, r.emptyT),
        Push(a2, r.rgt),
        to_macro(r.rgt, r.lft, codes, r.t, r.emptyT),
        empty_macro(r.rgt, r.empty, codes),
        If(r.empty, 0, Push(enc.blank_code, r.rgt)),
    )


def simulate_term(m: TuringMachine, roles: Roles, enc: Encoding) -> Term:
    """One machine step; a no-op on halting configurations.

    The state snapshot into qStart covers the halt state too, so that a halted
    machine never dispatches on a stale qStart head.
    """
    r = roles
    snap_state = [If(r.q, enc.state_code(q), Push(enc.state_code(q), r.qStart)) for q in m.states]
    snap_symbol = [If(r.rgt, enc.code(a), Push(enc.code(a), r.aStart)) for a in m.tape_alphabet]
    dispatch = []
    for q in m.states:
        if q == m.halt:
            continue
        cases = []
        for a in m.tape_alphabet:
            q2, a2, d = m.delta[q, a]
            build = transition_l if d == L else transition_r
            cases.append(If(r.aStart, enc.code(a), build(enc.state_code(q2), enc.code(a2), r, enc)))
        dispatch.append(If(r.qStart, enc.state_code(q), seq(*cases)))
    return seq(*snap_state, *snap_symbol, *dispatch)


def remove_blanks_term(roles: Roles, enc: Encoding) -> Term:
    """Drop every tape-only code from rgt, keeping input codes in order.

    rgt is first copied onto g1, then popped away under g1's guidance, then
    rebuilt from g1 with the tape-only codes falling to the SKIP default.
    """
    r = roles
    n, m = enc.size, enc.input_count
    copy = Normal((r.rgt,), Rof(r.rgt, tuple(Push(i, r.g1) for i in range(n))))
    erase = For(r.g1, tuple(Pop(i, r.rgt) for i in range(n)))
    rebuild = Rof(r.g1, tuple(Push(i, r.rgt) for i in range(m)) + (Skip(),))
    return seq(copy, Normal((r.g1,), seq(erase, rebuild)))


def compile_tm(m: TuringMachine, roles: Roles = Roles()) -> CompiledProgram:
    enc = m.encoding
    r = roles
    codes = range(enc.size)
    term = seq(
        polynomial_term(m.poly, r.rgt, r.p),
        Push(enc.state_code(m.initial), r.q),
        empty_macro(r.rgt, r.empty, codes),
        If(r.empty, 0, Push(enc.code(m.blank), r.rgt)),
        Normal((r.p,), For(r.p, (simulate_term(m, r, enc),))),
        remove_blanks_term(r, enc),
    )
    return CompiledProgram(term, roles, enc, m)


# ------------------------------------------------------- simulation relations


def simulates(w: MachineState, c: Configuration, enc: Encoding, roles: Roles = Roles()) -> bool:
    """``w`` is sound and holds ``c`` in lft/q/rgt, up to trailing blanks on rgt.

    lft holds the left part with the head-adjacent cell on top.
    """
    if not w.sound:
        return False
    if w[roles.lft] != encode_string(enc, c.left[::-1]):
        return False
    qs = w[roles.q]
    if not qs or qs[0] != enc.state_code(c.state):
        return False
    rgt, v = w[roles.rgt], encode_string(enc, c.right)
    return rgt[: len(v)] == v and all(x == enc.blank_code for x in rgt[len(v):])


def simulates_cleanly(w: MachineState, c: Configuration, enc: Encoding,
                      roles: Roles = Roles()) -> bool:
    return simulates(w, c, enc, roles) and w[roles.rgt] == encode_string(enc, c.right)


def simulating_state(c: Configuration, enc: Encoding, roles: Roles = Roles(),
                     blanks: int = 0, garbage: Mapping[Register, Iterable[int]] = None,
                     q_history: Iterable[int] = ()) -> MachineState:
    """A sound state that simulates ``c`` with ``blanks`` trailing blanks on rgt."""
    store = {r: tuple(s) for r, s in (garbage or {}).items()}
    store[roles.lft] = encode_string(enc, c.left[::-1])
    store[roles.q] = (enc.state_code(c.state),) + tuple(q_history)
    store[roles.rgt] = encode_string(enc, c.right) + (enc.blank_code,) * blanks
    return MachineState(store, 0)
