"""Contract terms: interned nodes, eager normalization and derivatives.

Contracts are hash-consed, so two structurally equal contracts are the same
Python object and can be compared with ``is``.  The smart constructors
(:func:`star`, :func:`alt`, :func:`conj`, :func:`cat`) normalize eagerly:

* ``ε*``, ``∅*`` become ``ε`` and ``C**`` becomes ``C*``;
* ``ε.C``, ``C.ε`` become ``C``; ``∅.C``, ``C.∅`` become ``∅``;
* ``∅+C`` becomes ``C``; ``∅&C`` becomes ``∅``;
* nested ``+`` and ``&`` are flattened, duplicates are dropped in order of
  first occurrence and the result is rebuilt left-associatively;
* concatenation is kept right-associated.

Every rule preserves the language, including paths that mention the blank
property ``ι``.  The intern and memo tables are guarded by a lock for
insertion; lookups are lock-free, which is safe under the GIL.
"""

from __future__ import annotations

import threading
from typing import Iterable, Sequence

from .literals import IOTA, Literal, lit_match

__all__ = [
    "Contract",
    "EMPTY",
    "EPS",
    "LIT",
    "STAR",
    "OR",
    "AND",
    "CAT",
    "empty",
    "eps",
    "lit",
    "star",
    "alt",
    "conj",
    "cat",
    "normalize",
    "nullable",
    "derive_prop",
    "derive_path",
    "conjuncts",
    "disjuncts",
    "size",
]

EMPTY, EPS, LIT, STAR, OR, AND, CAT = "empty", "eps", "lit", "star", "or", "and", "cat"


class Contract:
    """An interned contract node.  Treat as immutable."""

    __slots__ = ("kind", "args", "lit", "nullable", "uid", "size", "has_blank", "_deriv", "_cache")

    def __init__(self, kind, args, literal, nullable, uid, size, has_blank):
        self.kind = kind
        self.args = args
        self.lit = literal
        self.nullable = nullable
        self.uid = uid
        self.size = size
        self.has_blank = has_blank  # some @ literal occurs syntactically
        self._deriv = {}
        self._cache = {}

    def __repr__(self):
        from .syntax import pretty

        return f"Contract({pretty(self)!r})"

    def __str__(self):
        from .syntax import pretty

        return pretty(self)

    def __reduce__(self):
        from . import syntax

        return (syntax.parse_contract, (syntax.pretty(self),))


_table: dict = {}
_lock = threading.Lock()


def _make(kind, args=(), literal=None):
    key = (kind, args, literal)
    node = _table.get(key)
    if node is not None:
        return node
    if kind == LIT:
        null, sz, hb = False, 1, literal.is_blank
    elif kind == STAR:
        null, sz, hb = True, 1 + args[0].size, args[0].has_blank
    elif kind == OR:
        a, b = args
        null, sz, hb = a.nullable or b.nullable, 1 + a.size + b.size, a.has_blank or b.has_blank
    elif kind in (AND, CAT):
        a, b = args
        null, sz, hb = a.nullable and b.nullable, 1 + a.size + b.size, a.has_blank or b.has_blank
    else:
        null, sz, hb = kind == EPS, 1, False
    with _lock:
        node = _table.get(key)
        if node is None:
            node = Contract(kind, args, literal, null, len(_table), sz, hb)
            _table[key] = node
    return node


_EMPTY = _make(EMPTY)
_EPS = _make(EPS)


def empty() -> Contract:
    return _EMPTY


def eps() -> Contract:
    return _EPS


def lit(literal: Literal) -> Contract:
    return _make(LIT, (), literal)


def star(c: Contract) -> Contract:
    if c is _EMPTY or c is _EPS:
        return _EPS
    if c.kind == STAR:
        return c
    return _make(STAR, (c,))


def _collect(kind, items, out, seen):
    for c in items:
        if c.kind == kind:
            _collect(kind, c.args, out, seen)
        elif c not in seen:
            seen.add(c)
            out.append(c)


def _rebuild(kind, parts):
    node = parts[0]
    for p in parts[1:]:
        node = _make(kind, (node, p))
    return node


def alt(*items: Contract) -> Contract:
    parts: list = []
    _collect(OR, items, parts, set())
    parts = [p for p in parts if p is not _EMPTY]
    if not parts:
        return _EMPTY
    return _rebuild(OR, parts)


def conj(*items: Contract) -> Contract:
    parts: list = []
    _collect(AND, items, parts, set())
    if not parts:
        raise ValueError("conj() needs at least one operand")
    if _EMPTY in parts:
        return _EMPTY
    return _rebuild(AND, parts)


def cat(a: Contract, b: Contract) -> Contract:
    if a is _EMPTY or b is _EMPTY:
        return _EMPTY
    if a is _EPS:
        return b
    if b is _EPS:
        return a
    if a.kind == CAT:
        return cat(a.args[0], cat(a.args[1], b))
    return _make(CAT, (a, b))


def disjuncts(c: Contract) -> list:
    out: list = []
    _collect(OR, (c,), out, set())
    return out


def conjuncts(c: Contract) -> list:
    out: list = []
    _collect(AND, (c,), out, set())
    return out


def normalize(c: Contract) -> Contract:
    """Rebuild ``c`` through the smart constructors.

    Nodes are normalized on construction already, so this is the identity on
    anything built by this module; it exists for callers holding raw trees.
    """
    return rebuild(c)


def rebuild(c) -> Contract:
    kind = c.kind
    if kind == EMPTY:
        return _EMPTY
    if kind == EPS:
        return _EPS
    if kind == LIT:
        return lit(c.lit)
    if kind == STAR:
        return star(rebuild(c.args[0]))
    a, b = rebuild(c.args[0]), rebuild(c.args[1])
    if kind == OR:
        return alt(a, b)
    if kind == AND:
        return conj(a, b)
    return cat(a, b)


def nullable(c: Contract) -> bool:
    return c.nullable


def size(c: Contract) -> int:
    return c.size


def derive_prop(c: Contract, p) -> Contract:
    """Brzozowski derivative by one property (a ``str`` or ``IOTA``)."""
    d = c._deriv.get(p)
    if d is None:
        d = _derive(c, p)
        c._deriv[p] = d
    return d


def _derive(c: Contract, p) -> Contract:
    kind = c.kind
    if kind == LIT:
        return _EPS if lit_match(c.lit, p) else _EMPTY
    if kind == EMPTY or kind == EPS:
        return _EMPTY
    if kind == STAR:
        return cat(derive_prop(c.args[0], p), c)
    a, b = c.args
    if kind == OR:
        return alt(derive_prop(a, p), derive_prop(b, p))
    if kind == AND:
        return conj(derive_prop(a, p), derive_prop(b, p))
    head = cat(derive_prop(a, p), b)
    if a.nullable:
        # tail derivative first: keeps ∂a(a*.a*) printing as a*+a*.a*
        return alt(derive_prop(b, p), head)
    return head


def derive_path(c: Contract, path: Iterable) -> Contract:
    for p in path:
        if c is _EMPTY:
            return c
        c = derive_prop(c, p)
    return c


def table_size() -> int:
    return len(_table)


def subterms(c: Contract) -> Sequence[Contract]:
    """All distinct subterms, children before parents."""
    out: list = []
    seen: set = set()
    stack = [(c, False)]
    while stack:
        node, done = stack.pop()
        if done:
            out.append(node)
            continue
        if node in seen:
            continue
        seen.add(node)
        stack.append((node, True))
        for a in reversed(node.args):
            stack.append((a, False))
    return out


__all__ += ["IOTA", "rebuild", "subterms", "table_size"]
