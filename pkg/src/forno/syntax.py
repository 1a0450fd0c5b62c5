"""Raw terms: abstract syntax, concrete text syntax, parser and printer.

Concrete syntax::

    T ::= S ; T | S
    S ::= SKIP | PUSH[n] x | POP[n] x | IF x = n {T}
        | NORMAL x,y,... {T} | FOR x {T}...{T} | ROF x {T}...{T} | (T)

``;`` binds loosest and associates to the right.  Parentheses only exist so
that left-nested sequences survive a render/parse round trip.  ``#`` starts a
comment running to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional, Union

Register = str

KEYWORDS = frozenset({"SKIP", "PUSH", "POP", "IF", "NORMAL", "FOR", "ROF"})
_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def is_register_name(name: str) -> bool:
    return bool(_IDENT.match(name)) and name not in KEYWORDS


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start <= self.end:
            raise ValueError(f"bad span {self.start}..{self.end}")

    def __str__(self) -> str:
        return f"{self.start}-{self.end}"


# Spans are diagnostics only; they never take part in equality.
def _span():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Skip:
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class Push:
    value: int
    target: Register
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class Pop:
    value: int
    target: Register
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class Seq:
    first: "Term"
    second: "Term"
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class If:
    guard: Register
    value: int
    body: "Term"
    span: Optional[SourceSpan] = _span()


@dataclass(frozen=True)
class Normal:
    normals: tuple[Register, ...]
    body: "Term"
    span: Optional[SourceSpan] = _span()

    def __post_init__(self):
        object.__setattr__(self, "normals", tuple(self.normals))
        if not self.normals:
            raise ValueError("NORMAL needs at least one register")


@dataclass(frozen=True)
class For:
    guard: Register
    bodies: tuple["Term", ...]
    span: Optional[SourceSpan] = _span()

    def __post_init__(self):
        object.__setattr__(self, "bodies", tuple(self.bodies))
        if not self.bodies:
            raise ValueError("FOR needs at least one body")


@dataclass(frozen=True)
class Rof:
    guard: Register
    bodies: tuple["Term", ...]
    span: Optional[SourceSpan] = _span()

    def __post_init__(self):
        object.__setattr__(self, "bodies", tuple(self.bodies))
        if not self.bodies:
            raise ValueError("ROF needs at least one body")


Term = Union[Skip, Push, Pop, Seq, If, Normal, For, Rof]


def seq(*terms: Term) -> Term:
    """Right-nested sequence of ``terms``; ``seq()`` is SKIP.

    Arguments that are themselves sequences are spliced along their right spine.
    """
    items: list[Term] = []
    for t in terms:
        items.extend(_seq_spine(t))
    if not items:
        return Skip()
    out = items[-1]
    for t in reversed(items[:-1]):
        out = Seq(t, out)
    return out


def children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, Seq):
        return (t.first, t.second)
    if isinstance(t, (If, Normal)):
        return (t.body,)
    if isinstance(t, (For, Rof)):
        return t.bodies
    return ()


def walk(t: Term) -> Iterator[Term]:
    """Pre-order traversal, without host recursion."""
    todo = [t]
    while todo:
        node = todo.pop()
        yield node
        todo.extend(reversed(children(node)))


def registers(t: Term) -> set[Register]:
    out: set[Register] = set()
    for node in walk(t):
        if isinstance(node, (Push, Pop)):
            out.add(node.target)
        elif isinstance(node, (If, For, Rof)):
            out.add(node.guard)
        elif isinstance(node, Normal):
            out.update(node.normals)
    return out


def literals(t: Term) -> set[int]:
    """Every numeric literal of PUSH/POP/IF nodes."""
    return {node.value for node in walk(t) if isinstance(node, (Push, Pop, If))}


def size(t: Term) -> int:
    return sum(1 for _ in walk(t))


class RenameCollision(ValueError):
    pass


def rename(t: Term, mapping: Mapping[Register, Register]) -> Term:
    """Replace register names; registers missing from ``mapping`` are kept."""
    regs = registers(t)
    image: dict[Register, Register] = {}
    for r in regs:
        new = mapping.get(r, r)
        if new in image and image[new] != r:
            raise RenameCollision(f"{image[new]!r} and {r!r} both map to {new!r}")
        image[new] = r

    def go(node: Term) -> Term:
        m = lambda r: mapping.get(r, r)  # noqa: E731
        if isinstance(node, Skip):
            return Skip(node.span)
        if isinstance(node, Push):
            return Push(node.value, m(node.target), node.span)
        if isinstance(node, Pop):
            return Pop(node.value, m(node.target), node.span)
        if isinstance(node, Seq):
            return Seq(go(node.first), go(node.second), node.span)
        if isinstance(node, If):
            return If(m(node.guard), node.value, go(node.body), node.span)
        if isinstance(node, Normal):
            return Normal(tuple(m(r) for r in node.normals), go(node.body), node.span)
        if isinstance(node, For):
            return For(m(node.guard), tuple(go(b) for b in node.bodies), node.span)
        if isinstance(node, Rof):
            return Rof(m(node.guard), tuple(go(b) for b in node.bodies), node.span)
        raise TypeError(f"not a term: {node!r}")

    return go(t)


# ---------------------------------------------------------------- printing

INDENT = "  "


def render(t: Term) -> str:
    return "\n".join(_render_lines(t))


def _seq_spine(t: Term) -> list[Term]:
    items = []
    while isinstance(t, Seq):
        items.append(t.first)
        t = t.second
    items.append(t)
    return items


def _render_lines(t: Term) -> list[str]:
    if isinstance(t, Seq):
        items = _seq_spine(t)
        lines: list[str] = []
        for i, item in enumerate(items):
            sub = _render_lines(item)
            if isinstance(item, Seq):
                # a Seq as left operand needs grouping
                sub = ["(" + sub[0]] + sub[1:]
                sub[-1] += ")"
            if i < len(items) - 1:
                sub[-1] += ";"
            lines.extend(sub)
        return lines
    if isinstance(t, Skip):
        return ["SKIP"]
    if isinstance(t, Push):
        return [f"PUSH[{t.value}] {t.target}"]
    if isinstance(t, Pop):
        return [f"POP[{t.value}] {t.target}"]
    if isinstance(t, If):
        return _with_bodies(f"IF {t.guard} = {t.value}", [t.body])
    if isinstance(t, Normal):
        return _with_bodies("NORMAL " + ",".join(t.normals), [t.body])
    if isinstance(t, For):
        return _with_bodies(f"FOR {t.guard}", t.bodies)
    if isinstance(t, Rof):
        return _with_bodies(f"ROF {t.guard}", t.bodies)
    raise TypeError(f"not a term: {t!r}")


def _with_bodies(head: str, bodies) -> list[str]:
    rendered = [_render_lines(b) for b in bodies]
    if all(len(r) == 1 for r in rendered) and sum(len(r[0]) for r in rendered) < 60:
        return [head + " " + " ".join("{" + r[0] + "}" for r in rendered)]
    lines = [head + " {"]
    for i, r in enumerate(rendered):
        lines.extend(INDENT + line for line in r)
        lines.append("} {" if i < len(rendered) - 1 else "}")
    return lines


# ----------------------------------------------------------------- parsing


def line_col(source: str, offset: int) -> tuple[int, int]:
    line = source.count("\n", 0, offset) + 1
    return line, offset - (source.rfind("\n", 0, offset) + 1) + 1


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan, source: str = ""):
        self.message = message
        self.span = span
        line, col = line_col(source, span.start)
        self.line, self.column = line, col
        super().__init__(f"{line}:{col}: {message}")


_TOKEN = re.compile(
    r"(?P<ws>\s+|\#[^\n]*)"
    r"|(?P<num>\d+)"
    r"|(?P<ident>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<sym>[;{}\[\]=,()])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # num, ident, kw, sym, eof
    text: str
    span: SourceSpan


def tokenize(source: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise ParseError(f"unexpected character {source[pos]!r}",
                             SourceSpan(pos, pos + 1), source)
        kind = m.lastgroup
        text = m.group()
        if kind != "ws":
            if kind == "ident" and text in KEYWORDS:
                kind = "kw"
            tokens.append(Token(kind, text, SourceSpan(m.start(), m.end())))
        pos = m.end()
    tokens.append(Token("eof", "", SourceSpan(len(source), len(source))))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def fail(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.span, self.source)

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = repr(text) if text is not None else kind
            got = repr(tok.text) if tok.kind != "eof" else "end of input"
            self.fail(f"expected {want}, got {got}", tok)
        self.pos += 1
        return tok

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        tok = self.peek()
        return tok.kind == kind and (text is None or tok.text == text)

    def span_from(self, start: int) -> SourceSpan:
        return SourceSpan(start, self.tokens[self.pos - 1].span.end)

    def program(self) -> Term:
        t = self.sequence()
        if not self.at("eof"):
            self.fail(f"unexpected {self.peek().text!r}")
        return t

    def sequence(self) -> Term:
        # iterative so long ';' chains do not hit the recursion limit
        items = [self.statement()]
        while self.at("sym", ";"):
            self.pos += 1
            items.append(self.statement())
        out = items[-1]
        for item in reversed(items[:-1]):
            end = out.span.end if out.span else item.span.end
            out = Seq(item, out, SourceSpan(item.span.start, end))
        return out

    def number(self) -> int:
        return int(self.expect("num").text)

    def register(self) -> Register:
        return self.expect("ident").text

    def body(self) -> Term:
        self.expect("sym", "{")
        if self.at("sym", "}"):
            self.fail("empty body")
        t = self.sequence()
        self.expect("sym", "}")
        return t

    def bodies(self) -> tuple[Term, ...]:
        if not self.at("sym", "{"):
            self.fail("expected at least one body '{...}'")
        out = []
        while self.at("sym", "{"):
            out.append(self.body())
        return tuple(out)

    def statement(self) -> Term:
        tok = self.peek()
        start = tok.span.start
        if tok.kind == "sym" and tok.text == "(":
            self.pos += 1
            t = self.sequence()
            self.expect("sym", ")")
            return t
        if tok.kind != "kw":
            self.fail(f"expected a statement, got {tok.text or 'end of input'!r}")
        self.pos += 1
        kw = tok.text
        if kw == "SKIP":
            return Skip(self.span_from(start))
        if kw in ("PUSH", "POP"):
            self.expect("sym", "[")
            n = self.number()
            self.expect("sym", "]")
            x = self.register()
            cls = Push if kw == "PUSH" else Pop
            return cls(n, x, self.span_from(start))
        if kw == "IF":
            x = self.register()
            self.expect("sym", "=")
            n = self.number()
            b = self.body()
            return If(x, n, b, self.span_from(start))
        if kw == "NORMAL":
            regs = [self.register()]
            while self.at("sym", ","):
                self.pos += 1
                regs.append(self.register())
            b = self.body()
            return Normal(tuple(regs), b, self.span_from(start))
        # FOR / ROF
        x = self.register()
        bs = self.bodies()
        cls = For if kw == "FOR" else Rof
        return cls(x, bs, self.span_from(start))


def parse(source: str) -> Term:
    return _Parser(source).program()
