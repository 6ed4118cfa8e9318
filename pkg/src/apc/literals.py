"""Contract literals: ``@``, ``?``, ``R`` and ``!R``.

Every non-blank literal carries its full-match language over UTF-8 property
bytes, so containment and intersection reduce to regex emptiness checks.
"""

from __future__ import annotations

import re
import threading

from . import regex as rx

__all__ = [
    "IOTA",
    "Literal",
    "BLANK",
    "UNIVERSE",
    "REGEX",
    "NEGREGEX",
    "INTER",
    "blank",
    "universe",
    "exact_literal",
    "regex_literal",
    "neg_literal",
    "lit_match",
    "lit_contains",
    "lit_intersect",
    "lit_empty",
]


class _Iota:
    """The blank property; never produced by a running program."""

    __slots__ = ()
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "ι"

    def __reduce__(self):
        return (_Iota, ())


IOTA = _Iota()

BLANK, UNIVERSE, REGEX, NEGREGEX, INTER = "blank", "universe", "regex", "negregex", "inter"


class Literal:
    __slots__ = ("kind", "display", "lang", "uid", "_empty")

    def __init__(self, kind, display, lang, uid):
        self.kind = kind
        self.display = display
        self.lang = lang  # None for the blank literal
        self.uid = uid
        self._empty = None

    @property
    def is_blank(self):
        return self.kind == BLANK

    def __repr__(self):
        return f"Literal({self.display})"

    def __str__(self):
        return self.display


_table: dict = {}
_lock = threading.Lock()


def _intern(kind, display, make_lang, key=None):
    key = (kind, display if key is None else key)
    lit = _table.get(key)
    if lit is None:
        with _lock:
            lit = _table.get(key)
            if lit is None:
                lit = Literal(kind, display, make_lang(), len(_table))
                _table[key] = lit
    return lit


_BLANK = _intern(BLANK, "@", lambda: None)
_UNIVERSE = _intern(UNIVERSE, "?", lambda: rx.ANYSTAR)


def blank() -> Literal:
    return _BLANK


def universe() -> Literal:
    return _UNIVERSE


_IDENT = re.compile(r"[A-Za-z0-9_$]+")


def exact_literal(name: str) -> Literal:
    """The literal matching exactly the property ``name``.

    Names that would not read back as a bare identifier (``e`` is the empty
    contract keyword) are spelled as an anchored regex instead.
    """
    if name == "e" or not _IDENT.fullmatch(name):
        return regex_literal("^" + _escape(name) + "$")
    return _intern(REGEX, name, lambda: rx.exact(name).lang)


def _escape(name: str) -> str:
    return "".join("\\" + ch if not (ch.isalnum() or ch == "_" or ord(ch) > 127) else ch for ch in name)


def regex_literal(source: str) -> Literal:
    """``/source/``; raises :class:`~apc.regex.RegexSyntaxError` on a bad body."""
    pat = rx.compile_pattern(source)
    return _intern(REGEX, f"/{source}/", lambda: pat.lang)


def neg_literal(lit: Literal) -> Literal:
    if lit.kind != REGEX:
        raise ValueError("only regex literals can be negated")
    return _intern(NEGREGEX, "!" + lit.display, lambda: rx.complement(lit.lang))


def _inter_literal(lang) -> Literal:
    return _intern(INTER, f"<inter#{lang.uid}>", lambda: lang, key=lang)


_EMPTY_LIT = _inter_literal(rx.EMPTY)


def lit_match(lit: Literal, prop) -> bool:
    if prop is IOTA:
        return lit.kind == BLANK
    if lit.kind == BLANK:
        return False
    return rx.matches(lit.lang, prop.encode("utf-8"))


def lit_empty(lit: Literal) -> bool:
    """True only if ``L(lit)`` is empty; budget overruns answer False."""
    if lit.kind == BLANK:
        return False
    if lit._empty is None:
        try:
            lit._empty = rx.is_empty(lit.lang)
        except rx.StateBudgetExceeded:
            lit._empty = False
    return lit._empty


_contains_cache: dict = {}


def lit_contains(c: Literal, target: Literal) -> bool:
    """Sound test for ``L(c) <= L(target)``, aware of the blank property."""
    if c is target:
        return True
    if target.kind == BLANK:
        return lit_empty(c)
    if c.kind == BLANK:
        return False
    if target.kind == UNIVERSE:
        return True
    key = (c.uid, target.uid)
    hit = _contains_cache.get(key)
    if hit is None:
        try:
            hit = rx.is_empty(rx.inter(c.lang, rx.complement(target.lang)))
        except rx.StateBudgetExceeded:
            hit = False
        _contains_cache[key] = hit
    return hit


def lit_intersect(a: Literal, b: Literal) -> Literal:
    if a is b:
        return a
    if a.kind == BLANK or b.kind == BLANK:
        return _EMPTY_LIT
    if a.kind == UNIVERSE:
        return b
    if b.kind == UNIVERSE:
        return a
    return _inter_literal(rx.inter(a.lang, b.lang))


def empty_literal() -> Literal:
    return _EMPTY_LIT
