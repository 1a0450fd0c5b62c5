"""Syntax-directed inverse of raw terms."""

from __future__ import annotations

from .syntax import For, If, Normal, Pop, Push, Rof, Seq, Skip, Term


def invert(t: Term) -> Term:
    """``-t``: PUSH and POP swap, sequences flip, FOR and ROF swap.

    Total on raw terms and an involution; ``t; -t`` is the identity only when
    ``t`` is valid ForNo.
    """
    if isinstance(t, Seq):
        # walk the right spine iteratively: a;(b;c) becomes (-c;-b);-a
        lefts = []
        while isinstance(t, Seq):
            lefts.append(t)
            t = t.second
        out = invert(t)
        for node in reversed(lefts):
            out = Seq(out, invert(node.first), node.span)
        return out
    if isinstance(t, Skip):
        return Skip(t.span)
    if isinstance(t, Push):
        return Pop(t.value, t.target, t.span)
    if isinstance(t, Pop):
        return Push(t.value, t.target, t.span)
    if isinstance(t, If):
        return If(t.guard, t.value, invert(t.body), t.span)
    if isinstance(t, Normal):
        return Normal(t.normals, invert(t.body), t.span)
    if isinstance(t, For):
        return Rof(t.guard, tuple(invert(b) for b in t.bodies), t.span)
    if isinstance(t, Rof):
        return For(t.guard, tuple(invert(b) for b in t.bodies), t.span)
    raise TypeError(f"not a term: {t!r}")
