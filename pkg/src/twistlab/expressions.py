"""Textual twist-word expressions.

Grammar (whitespace is ignored)::

    expr   := [ term ( "*" term )* ]
    term   := atom ( "^" int )?
    atom   := "T(" int "," int ")" | "U" | "D" | "CONJ(" expr "," expr ")"
            | "(" expr ")" | name

``^`` binds tighter than ``*`` and ``*`` is left-associative. ``D`` is the
boundary twist and ``CONJ(a, b)`` means ``b * a * b^-1``. Names refer to
bindings supplied by the caller (the fixture catalog uses them for
abbreviations such as ``u1``).
"""

from __future__ import annotations

import re
from collections.abc import Collection, Mapping
from dataclasses import dataclass
from typing import Union

from twistlab import mapclass as mc
from twistlab.errors import ParseError
from twistlab.surface import SurfaceModel


@dataclass(frozen=True)
class Twist:
    i: int
    j: int


@dataclass(frozen=True)
class Transposition:
    pass


@dataclass(frozen=True)
class BoundaryTwist:
    pass


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Conj:
    base: "Expression"
    by: "Expression"


@dataclass(frozen=True)
class Product:
    items: tuple["Expression", ...]


@dataclass(frozen=True)
class Power:
    base: "Expression"
    exponent: int


Expression = Union[Twist, Transposition, BoundaryTwist, Name, Conj, Product, Power]

_TOKENS = re.compile(
    r"\s*(?:(?P<int>-?\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[()*^,]))"
)


class _Parser:
    def __init__(self, src: str, model: SurfaceModel, names: Collection[str]):
        self.src = src
        self.model = model
        self.names = names
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            m = _TOKENS.match(src, pos)
            if m is None:
                if src[pos:].strip():
                    self._fail("unexpected character", pos + len(src[pos:]) - len(src[pos:].lstrip()))
                break
            kind = m.lastgroup
            assert kind is not None
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def _fail(self, message: str, char_pos: int) -> None:
        raise ParseError(message, len(self.src[:char_pos].encode("utf-8")))

    def _peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _end_pos(self) -> int:
        return len(self.src)

    def _expect(self, value: str) -> int:
        tok = self._peek()
        if tok is None or tok[1] != value:
            self._fail(f"expected {value!r}", tok[2] if tok else self._end_pos())
        self.i += 1
        return tok[2]  # type: ignore[index]

    def _int(self) -> int:
        tok = self._peek()
        if tok is None or tok[0] != "int":
            self._fail("expected an integer", tok[2] if tok else self._end_pos())
        self.i += 1
        return int(tok[1])  # type: ignore[index]

    def parse(self) -> Expression:
        expr = self._expr(top=True)
        tok = self._peek()
        if tok is not None:
            self._fail(f"unexpected {tok[1]!r}", tok[2])
        return expr

    def _expr(self, top: bool = False) -> Expression:
        tok = self._peek()
        if tok is None or tok[1] in (")", ","):
            if top or tok is not None:
                return Product(())
        items = [self._term()]
        while (tok := self._peek()) is not None and tok[1] == "*":
            self.i += 1
            items.append(self._term())
        return items[0] if len(items) == 1 else Product(tuple(items))

    def _term(self) -> Expression:
        base = self._atom()
        tok = self._peek()
        if tok is not None and tok[1] == "^":
            self.i += 1
            return Power(base, self._int())
        return base

    def _atom(self) -> Expression:
        tok = self._peek()
        if tok is None:
            self._fail("unexpected end of expression", self._end_pos())
        kind, value, pos = tok  # type: ignore[misc]
        if value == "(":
            self.i += 1
            inner = self._expr()
            self._expect(")")
            return inner
        if kind != "ident":
            self._fail(f"unexpected {value!r}", pos)
        self.i += 1
        k = self.model.crosscaps
        if value == "T":
            self._expect("(")
            i = self._int()
            self._expect(",")
            j = self._int()
            self._expect(")")
            if not 1 <= i <= j <= k:
                self._fail(f"T({i},{j}) is outside the crosscaps 1..{k}", pos)
            if (j - i) % 2 == 0:
                self._fail(f"T({i},{j}) is about a one-sided curve (j - i is even)", pos)
            return Twist(i, j)
        if value == "U":
            if k < 2:
                self._fail("U needs at least two crosscaps", pos)
            return Transposition()
        if value == "D":
            return BoundaryTwist()
        if value == "CONJ":
            self._expect("(")
            base = self._expr()
            self._expect(",")
            by = self._expr()
            self._expect(")")
            return Conj(base, by)
        if value in self.names:
            return Name(value)
        self._fail(f"unknown atom {value!r}", pos)
        raise AssertionError("unreachable")


def parse(src: str, model: SurfaceModel, names: Collection[str] = ()) -> Expression:
    return _Parser(src, model, names).parse()


def to_source(e: Expression) -> str:
    if isinstance(e, Twist):
        return f"T({e.i},{e.j})"
    if isinstance(e, Transposition):
        return "U"
    if isinstance(e, BoundaryTwist):
        return "D"
    if isinstance(e, Name):
        return e.name
    if isinstance(e, Conj):
        return f"CONJ({to_source(e.base)}, {to_source(e.by)})"
    if isinstance(e, Power):
        inner = to_source(e.base)
        if isinstance(e.base, (Product, Power)):
            inner = f"({inner})"
        return f"{inner}^{e.exponent}"
    parts = []
    for item in e.items:
        text = to_source(item)
        parts.append(f"({text})" if isinstance(item, Product) else text)
    return "*".join(parts)


def to_class(
    e: Expression,
    model: SurfaceModel,
    bindings: Mapping[str, mc.MappingClass] | None = None,
) -> mc.MappingClass:
    bindings = bindings or {}
    if isinstance(e, Twist):
        return mc.twist(model, e.i, e.j)
    if isinstance(e, Transposition):
        return mc.transposition(model)
    if isinstance(e, BoundaryTwist):
        return mc.boundary(model)
    if isinstance(e, Name):
        return bindings[e.name]
    if isinstance(e, Conj):
        return mc.conjugate_class(to_class(e.base, model, bindings), to_class(e.by, model, bindings))
    if isinstance(e, Power):
        return mc.power(to_class(e.base, model, bindings), e.exponent)
    return mc.product(model, [to_class(x, model, bindings) for x in e.items])


def evaluate_source(
    src: str,
    model: SurfaceModel,
    bindings: Mapping[str, mc.MappingClass] | None = None,
) -> mc.MappingClass:
    bindings = bindings or {}
    return to_class(parse(src, model, bindings.keys()), model, bindings)


def bind_all(
    definitions: list[tuple[str, str]], model: SurfaceModel
) -> dict[str, mc.MappingClass]:
    """Evaluate ``(name, source)`` pairs in order; later ones may use earlier names."""
    bindings: dict[str, mc.MappingClass] = {}
    for name, src in definitions:
        bindings[name] = evaluate_source(src, model, bindings)
    return bindings
