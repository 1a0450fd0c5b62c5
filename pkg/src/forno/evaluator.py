"""Total big-step evaluator for raw terms.

Rule applications of kind skip, push, pop, if-eq, if-neq and step cost one
unit each; seq, for, rof, n and base are free.  Evaluation runs off an explicit
work list, so program depth never turns into host recursion.

FOR/ROF read their guard once, at loop entry, and iterate over that snapshot.
IF looks only at the guard's head and ignores the counter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .state import MachineState, Stack
from .syntax import For, If, Normal, Pop, Push, Register, Rof, Seq, Skip, SourceSpan, Term

RULES = ("skip", "seq", "pop", "push", "if-eq", "if-neq", "for", "rof", "n", "base", "step")


@dataclass(frozen=True)
class TraceEvent:
    rule: str
    span: Optional[SourceSpan]
    register: Optional[Register]
    stack: Optional[Stack]
    counter: int

    def __str__(self) -> str:
        span = str(self.span) if self.span is not None else "-"
        if self.register is None:
            reg = "-"
        elif self.stack is None:
            reg = self.register
        else:
            reg = f"{self.register}=[" + ",".join(map(str, self.stack)) + "]"
        return f"{self.rule}\t{span}\t{reg}\tcounter={self.counter}"


@dataclass(frozen=True)
class EvalResult:
    final: MachineState
    steps: int
    trace: Optional[tuple[TraceEvent, ...]] = None


class _Step:
    """Work-list marker for one unfolding of a loop (only used when tracing)."""

    __slots__ = ("loop", "element")

    def __init__(self, loop, element):
        self.loop = loop
        self.element = element


class _Base:
    __slots__ = ("loop",)

    def __init__(self, loop):
        self.loop = loop


def _event(trace, store, counter, rule, node, reg):
    stack = None
    if reg is not None:
        stack = tuple(reversed(store.get(reg, ())))
    trace.append(TraceEvent(rule, node.span, reg, stack, counter))


def _run(work: list, store: dict, counter: int, trace: Optional[list]):
    """Drain ``work``; ``store`` maps registers to lists with the top at the end."""
    steps = 0

    while work:
        t = work.pop()
        cls = type(t)
        if cls is Seq:
            if trace is not None:
                _event(trace, store, counter, "seq", t, None)
            work.append(t.second)
            work.append(t.first)
        elif cls is Push or cls is Pop:
            steps += 1
            s = store.get(t.target)
            if s is None:
                s = store[t.target] = []
            n = t.value
            matches = bool(s) and s[-1] == n
            if cls is Push:
                if counter == 0:
                    s.append(n)
                elif not matches:
                    counter -= 1
            else:
                if counter == 0:
                    if matches:
                        s.pop()
                    else:
                        counter = 1
                elif not matches:
                    counter += 1
            if trace is not None:
                _event(trace, store, counter, "push" if cls is Push else "pop", t, t.target)
        elif cls is If:
            steps += 1
            s = store.get(t.guard)
            if s and s[-1] == t.value:
                if trace is not None:
                    _event(trace, store, counter, "if-eq", t, t.guard)
                work.append(t.body)
            elif trace is not None:
                _event(trace, store, counter, "if-neq", t, t.guard)
        elif cls is For or cls is Rof:
            s = store.get(t.guard) or []
            # top-first snapshot; ROF walks it bottom-first
            snap = s[::-1] if cls is For else list(s)
            bodies = t.bodies
            last = len(bodies) - 1
            if trace is not None:
                _event(trace, store, counter, "for" if cls is For else "rof", t, t.guard)
                work.append(_Base(t))
                for i in reversed(snap):
                    work.append(bodies[i if i < last else last])
                    work.append(_Step(t, i))
            else:
                steps += len(snap)
                for i in reversed(snap):
                    work.append(bodies[i if i < last else last])
        elif cls is Normal:
            if trace is not None:
                _event(trace, store, counter, "n", t, None)
            work.append(t.body)
        elif cls is Skip:
            steps += 1
            if trace is not None:
                _event(trace, store, counter, "skip", t, None)
        elif cls is _Step:
            steps += 1
            trace.append(TraceEvent("step", t.loop.span, t.loop.guard, (t.element,), counter))
        elif cls is _Base:
            trace.append(TraceEvent("base", t.loop.span, t.loop.guard, None, counter))
        else:
            raise TypeError(f"not a term: {t!r}")
    return counter, steps


def _load(w: MachineState) -> dict:
    return {r: list(reversed(s)) for r, s in w.store.items()}


def _unload(store: dict, counter: int) -> MachineState:
    return MachineState({r: tuple(reversed(s)) for r, s in store.items()}, counter)


def evaluate(t: Term, w: MachineState = MachineState(), trace: bool = False) -> EvalResult:
    store = _load(w)
    events: Optional[list] = [] if trace else None
    counter, steps = _run([t], store, w.counter, events)
    return EvalResult(_unload(store, counter), steps, tuple(events) if trace else None)


def eval_snapshot(s: Stack, bodies: Sequence[Term], w: MachineState) -> MachineState:
    """Unfold ``s`` (top first) over ``bodies`` with the last body as default."""
    if not bodies:
        raise ValueError("bodies must be non-empty")
    last = len(bodies) - 1
    work = [bodies[min(i, last)] for i in reversed(s)]
    store = _load(w)
    counter, _ = _run(work, store, w.counter, None)
    return _unload(store, counter)


def run(t: Term, w: MachineState = MachineState()) -> MachineState:
    return evaluate(t, w).final
