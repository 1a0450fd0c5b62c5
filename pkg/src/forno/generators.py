"""Seeded random generators of raw terms, valid ForNo terms and states."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .state import MachineState
from .syntax import For, If, Normal, Pop, Push, Register, Rof, Seq, Skip, Term


@dataclass(frozen=True)
class GenConfig:
    registers: tuple[Register, ...] = ("x", "y", "z", "w")
    max_depth: int = 4
    max_literal: int = 3
    max_bodies: int = 3
    max_stack: int = 4
    fault_rate: float = 0.3
    max_counter: int = 5


def _atom(rng: random.Random, cfg: GenConfig, writable) -> Term:
    if not writable or rng.random() < 0.1:
        return Skip()
    cls = Push if rng.random() < 0.5 else Pop
    return cls(rng.randint(0, cfg.max_literal), rng.choice(writable))


def random_raw_term(rng: random.Random, cfg: GenConfig = GenConfig(), depth: int = None) -> Term:
    """Any term of the raw grammar; ForNo restrictions are ignored."""
    depth = cfg.max_depth if depth is None else depth
    regs = list(cfg.registers)
    kind = "atom" if depth <= 0 else rng.choice(["atom", "atom", "seq", "seq", "if", "normal", "for", "rof"])
    sub = lambda: random_raw_term(rng, cfg, depth - 1)  # noqa: E731
    if kind == "atom":
        return _atom(rng, cfg, regs)
    if kind == "seq":
        return Seq(sub(), sub())
    if kind == "if":
        return If(rng.choice(regs), rng.randint(0, cfg.max_literal), sub())
    if kind == "normal":
        return Normal(tuple(rng.sample(regs, rng.randint(1, len(regs)))), sub())
    cls = For if kind == "for" else Rof
    return cls(rng.choice(regs), tuple(sub() for _ in range(rng.randint(1, cfg.max_bodies))))


def random_valid_term(rng: random.Random, cfg: GenConfig = GenConfig()) -> Term:
    """A raw term that satisfies every ForNo restriction by construction."""
    regs = list(cfg.registers)

    def top(depth, readonly) -> Term:
        writable = [r for r in regs if r not in readonly]
        kind = "atom" if depth <= 0 else rng.choice(["atom", "seq", "seq", "if", "normal", "normal"])
        if kind == "atom":
            return _atom(rng, cfg, writable)
        if kind == "seq":
            return Seq(top(depth - 1, readonly), top(depth - 1, readonly))
        if kind == "if":
            g = rng.choice(regs)
            return If(g, rng.randint(0, cfg.max_literal), top(depth - 1, readonly | {g}))
        normals = frozenset(rng.sample(regs, rng.randint(1, len(regs) - 1)))
        return Normal(tuple(sorted(normals)), safe(depth - 1, readonly | normals, normals))

    def safe(depth, readonly, normals) -> Term:
        writable = [r for r in regs if r not in readonly]
        kind = "atom" if depth <= 0 else rng.choice(["atom", "seq", "seq", "if", "for", "rof"])
        if kind == "atom":
            return _atom(rng, cfg, writable)
        if kind == "seq":
            return Seq(safe(depth - 1, readonly, normals), safe(depth - 1, readonly, normals))
        if kind == "if":
            g = rng.choice(regs)
            return If(g, rng.randint(0, cfg.max_literal), safe(depth - 1, readonly | {g}, normals))
        g = rng.choice(sorted(normals))
        cls = For if kind == "for" else Rof
        bodies = tuple(safe(depth - 1, readonly | {g}, normals)
                       for _ in range(rng.randint(1, cfg.max_bodies)))
        return cls(g, bodies)

    return top(cfg.max_depth, frozenset())


def random_stack(rng: random.Random, cfg: GenConfig = GenConfig()) -> tuple[int, ...]:
    return tuple(rng.randint(0, cfg.max_literal) for _ in range(rng.randint(0, cfg.max_stack)))


def random_state(rng: random.Random, cfg: GenConfig = GenConfig(), faulted: bool = None) -> MachineState:
    if faulted is None:
        faulted = rng.random() < cfg.fault_rate
    counter = rng.randint(1, cfg.max_counter) if faulted else 0
    return MachineState({r: random_stack(rng, cfg) for r in cfg.registers}, counter)
