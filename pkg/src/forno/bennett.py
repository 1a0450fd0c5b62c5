"""COPY, the Bennett wrapper and zero-garbage composition of two directions.

``bennett_wrap(T, x, fx)`` is ``T; COPY(x, fx); -T``: run ``T``, copy its
result, then uncompute everything ``T`` did.  Given ``T_f`` and ``T_finv`` for a
bijection ``f``, ``zero_garbage_compose`` builds ``B[T_f]; -B[T_finv]`` which maps
``{x: w}`` to ``{fx: f(w)}`` and nothing else.
"""

from __future__ import annotations

from typing import Iterable

from .invert import invert
from .state import MachineState
from .syntax import Normal, Push, Register, Rof, Term, registers, rename, seq


class TargetCollision(ValueError):
    pass


def copy_term(x: Register, y: Register, code_count: int) -> Term:
    """Push a same-order copy of ``x`` onto ``y``; needs every code < code_count."""
    if x == y:
        raise ValueError("COPY needs two distinct registers")
    if code_count < 1:
        raise ValueError("code_count must be positive")
    return Normal((x,), Rof(x, tuple(Push(i, y) for i in range(code_count))))


def bennett_wrap(t: Term, io: Register, target: Register, code_count: int) -> Term:
    if target in registers(t):
        raise TargetCollision(f"target {target!r} already occurs in the wrapped term")
    return seq(t, copy_term(io, target, code_count), invert(t))


def fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    if base not in taken:
        return base
    i = 1
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


def disjoint_renaming(t: Term, avoid: Iterable[Register], io: Register,
                      io_name: str = "fx") -> dict[Register, Register]:
    """Map ``io`` to a fresh ``io_name`` and every other register to ``<r>_inv``."""
    taken = set(avoid) | registers(t)
    mapping = {}
    new_io = fresh_name(io_name, taken)
    taken.add(new_io)
    mapping[io] = new_io
    for r in sorted(registers(t) - {io}):
        new = fresh_name(f"{r}_inv", taken)
        taken.add(new)
        mapping[r] = new
    return mapping


def zero_garbage_compose(t_f: Term, io_f: Register, t_finv: Term, io_finv: Register,
                         code_count: int, out_name: str = "fx") -> tuple[Term, Register]:
    """``B[t_f]; -B[t_finv]`` after renaming ``t_finv`` apart; returns the term and its output register."""
    regs_f = registers(t_f) | {io_f}
    mapping = disjoint_renaming(t_finv, regs_f, io_finv, out_name)
    inv = rename(t_finv, mapping)
    fx = mapping[io_finv]
    assert not registers(inv) & regs_f
    forward = bennett_wrap(t_f, io_f, fx, code_count)
    backward = bennett_wrap(inv, fx, io_f, code_count)
    return seq(forward, invert(backward)), fx


def check_zero_garbage(w: MachineState, out: Register) -> bool:
    return w.sound and w.support() <= {out}
