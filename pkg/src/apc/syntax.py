"""Concrete syntax for contracts.

Grammar, loosest binding first::

    contract := and ("+" and)*
    and      := cat ("&" cat)*
    cat      := star ("." star)*          # right-associated
    star     := atom "*"*
    atom     := "@" | "?" | "e" | "∅" | "{}" | IDENT | "/" REGEX "/"
              | "!" ("/" REGEX "/" | IDENT) | "(" contract ")"

``e`` is the empty contract, so a property literally named ``e`` has to be
written ``/^e$/``.  A bare identifier matches exactly that property name.
"""

from __future__ import annotations

from . import contract as K
from .literals import (
    INTER,
    blank,
    exact_literal,
    neg_literal,
    regex_literal,
    universe,
)
from .regex import RegexSyntaxError

__all__ = ["ContractSyntaxError", "parse_contract", "pretty"]

_IDENT_CHARS = frozenset("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_$")


class ContractSyntaxError(ValueError):
    def __init__(self, message: str, source: str, pos: int):
        super().__init__(f"{message} at position {pos}: {source!r}")
        self.source = source
        self.pos = pos


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def error(self, msg, pos=None):
        return ContractSyntaxError(msg, self.src, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def parse(self):
        c = self.parse_alt()
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return c

    def parse_alt(self):
        parts = [self.parse_and()]
        while self.peek() == "+":
            self.pos += 1
            parts.append(self.parse_and())
        return K.alt(*parts) if len(parts) > 1 else parts[0]

    def parse_and(self):
        parts = [self.parse_cat()]
        while self.peek() == "&":
            self.pos += 1
            parts.append(self.parse_cat())
        return K.conj(*parts) if len(parts) > 1 else parts[0]

    def parse_cat(self):
        parts = [self.parse_star()]
        while self.peek() == ".":
            self.pos += 1
            parts.append(self.parse_star())
        node = parts[-1]
        for p in reversed(parts[:-1]):
            node = K.cat(p, node)
        return node

    def parse_star(self):
        node = self.parse_atom()
        while self.peek() == "*":
            self.pos += 1
            node = K.star(node)
        return node

    def parse_atom(self):
        ch = self.peek()
        start = self.pos
        if not ch:
            raise self.error("unexpected end of contract")
        if ch == "@":
            self.pos += 1
            return K.lit(blank())
        if ch == "?":
            self.pos += 1
            return K.lit(universe())
        if ch == "∅":
            self.pos += 1
            return K.empty()
        if ch == "{":
            if self.src.startswith("{}", self.pos):
                self.pos += 2
                return K.empty()
            raise self.error("expected '{}'")
        if ch == "(":
            self.pos += 1
            inner = self.parse_alt()
            if self.peek() != ")":
                raise self.error("missing ')'", start)
            self.pos += 1
            return inner
        if ch == "/":
            return K.lit(self.parse_regex())
        if ch == "!":
            self.pos += 1
            nxt = self.peek()
            if nxt == "/":
                return K.lit(neg_literal(self.parse_regex()))
            if nxt in _IDENT_CHARS and nxt:
                name = self.parse_ident()
                if name == "e":
                    raise self.error("'!e' is not a literal; write !/^e$/", start)
                return K.lit(neg_literal(exact_literal(name)))
            raise self.error("expected a regex or identifier after '!'")
        if ch in _IDENT_CHARS:
            name = self.parse_ident()
            if name == "e":
                return K.eps()
            return K.lit(exact_literal(name))
        raise self.error(f"unexpected {ch!r}")

    def parse_ident(self):
        start = self.pos
        while self.pos < len(self.src) and self.src[self.pos] in _IDENT_CHARS:
            self.pos += 1
        return self.src[start:self.pos]

    def parse_regex(self):
        start = self.pos
        self.pos += 1  # opening slash
        body = []
        in_class = False
        while True:
            if self.pos >= len(self.src):
                raise self.error("unterminated regex literal", start)
            ch = self.src[self.pos]
            if ch == "\\":
                body.append(self.src[self.pos:self.pos + 2])
                self.pos += 2
                continue
            if ch == "[":
                in_class = True
            elif ch == "]":
                in_class = False
            elif ch == "/" and not in_class:
                self.pos += 1
                break
            body.append(ch)
            self.pos += 1
        source = "".join(body)
        try:
            return regex_literal(source)
        except RegexSyntaxError as exc:
            raise self.error(f"invalid regex: {exc}", start) from None


_cache: dict = {}


def parse_contract(src: str) -> K.Contract:
    """Parse and normalize ``src``; raises :class:`ContractSyntaxError`."""
    hit = _cache.get(src)
    if hit is None:
        hit = _Parser(src).parse()
        if len(_cache) < 100_000:
            _cache[src] = hit
    return hit


# precedence levels: or < and < cat < star < atom
_PREC = {K.OR: 1, K.AND: 2, K.CAT: 3, K.STAR: 4}


def _prec(c):
    return _PREC.get(c.kind, 5)


def pretty(c: K.Contract) -> str:
    kind = c.kind
    if kind == K.EMPTY:
        return "∅"
    if kind == K.EPS:
        return "e"
    if kind == K.LIT:
        if c.lit.kind == INTER:
            raise ValueError("intersection literals have no source form")
        return c.lit.display
    if kind == K.STAR:
        inner = c.args[0]
        s = pretty(inner)
        return (s if _prec(inner) > 4 else f"({s})") + "*"
    a, b = c.args
    p = _PREC[kind]
    sa, sb = pretty(a), pretty(b)
    if kind == K.CAT:
        # right-associated: the left operand needs parentheses at equal level
        if _prec(a) <= p:
            sa = f"({sa})"
        if _prec(b) < p:
            sb = f"({sb})"
        return f"{sa}.{sb}"
    # left-associated + and &
    if _prec(a) < p:
        sa = f"({sa})"
    if _prec(b) <= p:
        sb = f"({sb})"
    op = "+" if kind == K.OR else "&"
    return f"{sa}{op}{sb}"
