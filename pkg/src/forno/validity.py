"""ForNo membership of raw terms.

A raw term is in ForNo when

* FOR/ROF occur only inside the body of a NORMAL block, and NORMAL blocks are
  never nested (the T/S stratification of the grammar);
* the register leading an IF/FOR/ROF is never written inside its bodies;
* the normal registers of ``NORMAL N {S}`` are never written in ``S`` and are
  the only registers allowed to lead iterations in ``S``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .syntax import For, If, Normal, Pop, Push, Register, Rof, SourceSpan, Term, children, walk


class ViolationKind(enum.Enum):
    IterationOutsideNormal = "iteration outside NORMAL"
    NestedNormal = "NORMAL nested in NORMAL"
    WriteToGuard = "guard register written in its body"
    WriteToNormal = "normal register written in its block"
    IterationLedByNonNormal = "iteration led by a non-normal register"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    register: Optional[Register]
    span: Optional[SourceSpan]

    def __str__(self) -> str:
        where = str(self.span) if self.span else "?"
        reg = f" {self.register!r}" if self.register is not None else ""
        return f"{where}: {self.kind.name}{reg}: {self.kind.value}"


def written_registers(t: Term) -> set[Register]:
    return {n.target for n in walk(t) if isinstance(n, (Push, Pop))}


def _first_writes(ts) -> dict[Register, Optional[SourceSpan]]:
    """Span of the first PUSH/POP on each register written in ``ts``."""
    first: dict[Register, Optional[SourceSpan]] = {}
    for t in ts:
        for n in walk(t):
            if isinstance(n, (Push, Pop)) and n.target not in first:
                first[n.target] = n.span
    return first


def check(t: Term) -> list[Violation]:
    """All violations of the ForNo restrictions, in source order. Empty means valid."""
    out: list[Violation] = []
    # (node, enclosing NORMAL's register set or None)
    todo: list[tuple[Term, Optional[frozenset]]] = [(t, None)]
    while todo:
        node, normals = todo.pop()
        span = node.span
        if isinstance(node, (For, Rof)):
            if normals is None:
                out.append(Violation(ViolationKind.IterationOutsideNormal, node.guard, span))
            elif node.guard not in normals:
                out.append(Violation(ViolationKind.IterationLedByNonNormal, node.guard, span))
        if isinstance(node, (If, For, Rof)):
            writes = _first_writes(children(node))
            if node.guard in writes:
                out.append(Violation(ViolationKind.WriteToGuard, node.guard,
                                     writes[node.guard] or span))
        if isinstance(node, Normal):
            if normals is not None:
                out.append(Violation(ViolationKind.NestedNormal, None, span))
            writes = _first_writes((node.body,))
            # duplicates in N are tolerated
            for r in dict.fromkeys(node.normals):
                if r in writes:
                    out.append(Violation(ViolationKind.WriteToNormal, r, writes[r] or span))
            # without an enclosing set, nested iterations are judged against this block
            inner = frozenset(node.normals) if normals is None else normals
            todo.append((node.body, inner))
            continue
        for child in reversed(children(node)):
            todo.append((child, normals))
    # write violations point into bodies, so restore source order
    return sorted(out, key=lambda v: v.span.start if v.span is not None else -1)


def is_valid(t: Term) -> bool:
    return not check(t)
