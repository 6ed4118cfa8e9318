"""Surface syntax of λ_J programs.

Core forms::

    c | x | fun(x){e} | e1(e2) | new e | e1[e2] | e1[e2] = e3 | permit "C" in e

Sugar::

    e.p                 e["p"]          (p may be an identifier or an integer)
    e.p = e2            e["p"] = e2
    f()                 f(undefined)
    let x = e1 in e2    binds x in e2 (e2 extends as far as possible)
    e1; e2              evaluate e1, discard it, evaluate e2
    {p: e, ...}         new null, then one write per field, in order
    [e0, e1, ...]       the same with keys "0", "1", ... and "length"

Line comments start with ``//``.  Contracts appear as quoted strings and are
parsed together with the program.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any

from .contract import Contract
from .syntax import ContractSyntaxError, parse_contract

__all__ = [
    "ProgramSyntaxError",
    "Const",
    "Var",
    "Fun",
    "App",
    "New",
    "Get",
    "Put",
    "Permit",
    "Let",
    "Seq",
    "Undefined",
    "Null",
    "UNDEFINED",
    "NULL",
    "parse_program",
]


class Undefined:
    __slots__ = ()
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "undefined"

    def __reduce__(self):
        return (Undefined, ())


class Null:
    __slots__ = ()
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "null"

    def __reduce__(self):
        return (Null, ())


UNDEFINED = Undefined()
NULL = Null()


class ProgramSyntaxError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Const:
    value: Any


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Fun:
    param: str
    body: Any


@dataclass(frozen=True)
class App:
    fn: Any
    arg: Any


@dataclass(frozen=True)
class New:
    proto: Any


@dataclass(frozen=True)
class Get:
    obj: Any
    key: Any


@dataclass(frozen=True)
class Put:
    obj: Any
    key: Any
    value: Any


@dataclass(frozen=True)
class Permit:
    source: str
    contract: Contract
    body: Any


@dataclass(frozen=True)
class Let:
    """``let name = value in body``; behaves as ``(fun(name){body})(value)``."""

    name: str
    value: Any
    body: Any


@dataclass(frozen=True)
class Seq:
    items: tuple


_KEYWORDS = {"let", "in", "fun", "new", "permit", "true", "false", "undefined", "null"}

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|//[^\n]*)
  | (?P<num>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
  | (?P<str>"(?:[^"\\\n]|\\.)*"|'(?:[^'\\\n]|\\.)*')
  | (?P<id>[A-Za-z_$][A-Za-z0-9_$]*)
  | (?P<op>[{}()\[\].,:;=-])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _decode_string(text: str) -> str:
    body = text[1:-1]
    if text[0] == "'":
        body = body.replace('\\"', '"').replace('"', '\\"').replace("\\'", "'")
    return json.loads('"' + body + '"')


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = self._lex(src)
        self.i = 0
        self.fresh = 0

    def _where(self, pos):
        line = self.src.count("\n", 0, pos) + 1
        col = pos - (self.src.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, msg, tok=None):
        tok = tok or self.toks[self.i]
        return ProgramSyntaxError(msg, *self._where(tok.pos))

    def _lex(self, src):
        toks = []
        pos = 0
        while pos < len(src):
            m = _TOKEN.match(src, pos)
            if not m:
                line = src.count("\n", 0, pos) + 1
                col = pos - (src.rfind("\n", 0, pos) + 1) + 1
                raise ProgramSyntaxError(f"unexpected character {src[pos]!r}", line, col)
            kind = m.lastgroup
            if kind != "ws":
                text = m.group()
                if kind == "id" and text in _KEYWORDS:
                    kind = text
                toks.append(_Tok(kind, text, pos))
            pos = m.end()
        toks.append(_Tok("eof", "", len(src)))
        return toks

    @property
    def tok(self):
        return self.toks[self.i]

    def at(self, *texts):
        t = self.tok
        return t.text in texts and t.kind in ("op", *texts)

    def expect(self, text):
        if not self.at(text):
            raise self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        self.i += 1

    def program(self):
        e = self.seq()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")
        return e

    def seq(self):
        items = [self.expr()]
        while self.at(";"):
            self.i += 1
            if self.tok.kind == "eof" or self.at(")", "}", "]"):
                break
            items.append(self.expr())
        return items[0] if len(items) == 1 else Seq(tuple(items))

    def expr(self):
        t = self.tok
        if t.kind == "let":
            self.i += 1
            name = self.ident()
            self.expect("=")
            value = self.expr()
            if self.tok.kind != "in":
                raise self.error("expected 'in'")
            self.i += 1
            return Let(name, value, self.seq())
        if t.kind == "permit":
            self.i += 1
            st = self.tok
            if st.kind != "str":
                raise self.error("expected a quoted contract after 'permit'")
            self.i += 1
            source = _decode_string(st.text)
            try:
                contract = parse_contract(source)
            except ContractSyntaxError as exc:
                raise self.error(f"bad contract: {exc}", st) from None
            if self.tok.kind != "in":
                raise self.error("expected 'in'")
            self.i += 1
            return Permit(source, contract, self.expr())
        target = self.postfix()
        if self.at("="):
            eq = self.tok
            self.i += 1
            value = self.expr()
            if not isinstance(target, Get):
                raise self.error("left side of '=' must be a property reference", eq)
            return Put(target.obj, target.key, value)
        return target

    def ident(self):
        t = self.tok
        if t.kind != "id":
            raise self.error("expected an identifier")
        self.i += 1
        return t.text

    def postfix(self):
        e = self.primary()
        while True:
            if self.at("."):
                self.i += 1
                t = self.tok
                if t.kind == "num":
                    self.i += 1
                    for part in t.text.split("."):
                        if not part.isdigit():
                            raise self.error("property names after '.' must be identifiers or integers", t)
                        e = Get(e, Const(str(int(part))))
                elif t.kind == "id" or t.kind in _KEYWORDS:
                    self.i += 1
                    e = Get(e, Const(t.text))
                else:
                    raise self.error("expected a property name after '.'")
            elif self.at("["):
                self.i += 1
                key = self.seq()
                self.expect("]")
                e = Get(e, key)
            elif self.at("("):
                self.i += 1
                if self.at(")"):
                    arg = Const(UNDEFINED)
                else:
                    arg = self.expr()
                self.expect(")")
                e = App(e, arg)
            else:
                return e

    def _tmp(self):
        self.fresh += 1
        return f"%tmp{self.fresh}"

    def _object(self, fields):
        tmp = self._tmp()
        items = [Put(Var(tmp), Const(k), v) for k, v in fields]
        items.append(Var(tmp))
        return Let(tmp, New(Const(NULL)), Seq(tuple(items)))

    def primary(self):
        t = self.tok
        k = t.kind
        if k == "num":
            self.i += 1
            return Const(_number(t.text))
        if k == "op" and t.text == "-" and self.toks[self.i + 1].kind == "num":
            self.i += 2
            return Const(-_number(self.toks[self.i - 1].text))
        if k == "str":
            self.i += 1
            return Const(_decode_string(t.text))
        if k in ("true", "false"):
            self.i += 1
            return Const(k == "true")
        if k == "undefined":
            self.i += 1
            return Const(UNDEFINED)
        if k == "null":
            self.i += 1
            return Const(NULL)
        if k == "id":
            self.i += 1
            return Var(t.text)
        if k == "new":
            self.i += 1
            return New(self.postfix())
        if k == "fun":
            self.i += 1
            self.expect("(")
            param = "%unused" if self.at(")") else self.ident()
            self.expect(")")
            self.expect("{")
            body = self.seq()
            self.expect("}")
            return Fun(param, body)
        if self.at("("):
            self.i += 1
            e = self.seq()
            self.expect(")")
            return e
        if self.at("{"):
            self.i += 1
            fields = []
            while not self.at("}"):
                kt = self.tok
                if kt.kind == "str":
                    key = _decode_string(kt.text)
                elif kt.kind == "num":
                    key = str(_number(kt.text))
                elif kt.kind == "id" or kt.kind in _KEYWORDS:
                    key = kt.text
                else:
                    raise self.error("expected a field name")
                self.i += 1
                self.expect(":")
                fields.append((key, self.expr()))
                if not self.at(","):
                    break
                self.i += 1
            self.expect("}")
            return self._object(fields)
        if self.at("["):
            self.i += 1
            elems = []
            while not self.at("]"):
                elems.append(self.expr())
                if not self.at(","):
                    break
                self.i += 1
            self.expect("]")
            fields = [(str(n), e) for n, e in enumerate(elems)]
            fields.append(("length", Const(len(elems))))
            return self._object(fields)
        raise self.error(f"unexpected {t.text or 'end of input'!r}")


def _number(text: str):
    v = float(text)
    return int(v) if v.is_integer() and abs(v) < 2**53 else v


def parse_program(src: str):
    """Parse program text into an expression tree."""
    return _Parser(src).program()
