"""Containment and reduction of contracts.

``decide_containment`` is an Antimirov-style unfolding: it derives both sides
by every first literal of the left side and remembers visited queries in a
branch-local context.  It is sound but incomplete.  The auxiliary predicates
``bl``, ``emp``, ``ind`` and ``unv`` are syntactic under-approximations of
"the language is {ι}", "is empty", "is 𝒜" and "is 𝒜*".

All predicates respect the blank property: a path may end in ``ι``, so for
example ``@&a`` is empty and ``?*`` does not contain ``@``.
"""

from __future__ import annotations

import sys

from . import contract as K
from .contract import Contract, conj, conjuncts, derive_path, derive_prop
from .literals import (
    BLANK,
    IOTA,
    UNIVERSE,
    Literal,
    lit_contains,
    lit_empty,
    lit_intersect,
)

__all__ = [
    "first_literals",
    "lit_derive",
    "bl",
    "emp",
    "ind",
    "unv",
    "decide_containment",
    "contains",
    "reduce",
    "reduce_handler",
    "is_readable",
    "is_writeable",
    "DEPTH_BUDGET",
]

DEPTH_BUDGET = 256

if sys.getrecursionlimit() < 20_000:
    sys.setrecursionlimit(20_000)


def _cached(tag):
    def wrap(fn):
        def inner(c):
            cache = c._cache
            hit = cache.get(tag)
            if hit is None:
                hit = fn(c)
                cache[tag] = hit
            return hit

        inner.__name__ = fn.__name__
        inner.__doc__ = fn.__doc__
        return inner

    return wrap


# -- first literals and literal derivatives ----------------------------------


@_cached("first")
def first_literals(c: Contract) -> tuple:
    """Literals covering every first property of ``L(c)``; empty ones dropped."""
    kind = c.kind
    if kind == K.LIT:
        out = [c.lit]
    elif kind in (K.EMPTY, K.EPS):
        out = []
    elif kind == K.STAR:
        out = list(first_literals(c.args[0]))
    elif kind == K.OR:
        out = list(first_literals(c.args[0])) + list(first_literals(c.args[1]))
    elif kind == K.AND:
        out = [lit_intersect(x, y) for x in first_literals(c.args[0]) for y in first_literals(c.args[1])]
    else:
        out = list(first_literals(c.args[0]))
        if c.args[0].nullable:
            out += first_literals(c.args[1])
    return tuple(x for x in dict.fromkeys(out) if not lit_empty(x))


def _lit_step(c: Literal, target: Literal) -> bool:
    """Does every property of ``c`` match ``target``?"""
    if target.kind == UNIVERSE:
        return c.kind != BLANK
    return lit_contains(c, target)


def lit_derive(c: Contract, literal: Literal) -> Contract:
    key = ("lit", literal.uid)
    hit = c._cache.get(key)
    if hit is None:
        hit = _lit_derive(c, literal)
        c._cache[key] = hit
    return hit


def _lit_derive(c, literal):
    kind = c.kind
    if kind == K.LIT:
        return K.eps() if _lit_step(literal, c.lit) else K.empty()
    if kind in (K.EMPTY, K.EPS):
        return K.empty()
    if kind == K.STAR:
        return K.cat(lit_derive(c.args[0], literal), c)
    a, b = c.args
    if kind == K.OR:
        return K.alt(lit_derive(a, literal), lit_derive(b, literal))
    if kind == K.AND:
        return K.conj(lit_derive(a, literal), lit_derive(b, literal))
    head = K.cat(lit_derive(a, literal), b)
    if a.nullable:
        return K.alt(lit_derive(b, literal), head)
    return head


# -- auxiliary predicates -----------------------------------------------------


def _eps_only(c: Contract) -> bool:
    """L(c) = {ε}."""
    return c.nullable and not first_literals(c)


def _has_iota(c: Contract) -> bool:
    """ι ∈ L(c), decided exactly."""
    return derive_prop(c, IOTA).nullable


@_cached("bl")
def bl(c: Contract) -> bool:
    kind = c.kind
    if kind == K.LIT:
        return c.lit.kind == BLANK
    if kind in (K.EMPTY, K.EPS, K.STAR):
        return False
    a, b = c.args
    if kind == K.OR:
        return bl(a) and bl(b)
    if kind == K.AND:
        return (bl(a) and _has_iota(b)) or (bl(b) and _has_iota(a))
    return (bl(a) and _eps_only(b)) or (_eps_only(a) and bl(b))


@_cached("emp")
def emp(c: Contract) -> bool:
    kind = c.kind
    if kind == K.EMPTY:
        return True
    if kind == K.LIT:
        return lit_empty(c.lit)
    if kind in (K.EPS, K.STAR):
        return False
    a, b = c.args
    if kind == K.OR:
        return emp(a) and emp(b)
    if kind == K.CAT:
        return emp(a) or emp(b)
    if emp(a) or emp(b):
        return True
    return not c.nullable and not first_literals(c)


@_cached("ind")
def ind(c: Contract) -> bool:
    kind = c.kind
    if kind == K.LIT:
        return c.lit.kind == UNIVERSE
    if kind in (K.EMPTY, K.EPS, K.STAR):
        return False
    a, b = c.args
    if kind in (K.OR, K.AND):
        return ind(a) and ind(b)
    return (a is K.eps() and ind(b)) or (ind(a) and b is K.eps())


@_cached("unv")
def unv(c: Contract) -> bool:
    kind = c.kind
    if kind == K.STAR:
        return unv(c.args[0]) or ind(c.args[0])
    if kind in (K.LIT, K.EMPTY, K.EPS):
        return False
    a, b = c.args
    if kind == K.OR:
        return (unv(a) and not b.has_blank) or (unv(b) and not a.has_blank)
    if kind == K.AND:
        return unv(a) and unv(b)
    return unv(a) and unv(b)


# -- containment --------------------------------------------------------------

_top_cache: dict = {}


def decide_containment(lhs: Contract, rhs: Contract) -> bool:
    """Sound test for ``L(lhs) <= L(rhs)``; may answer False on true containments."""
    key = (lhs.uid, rhs.uid)
    hit = _top_cache.get(key)
    if hit is None:
        hit = _judge(lhs, rhs, set(), 0)
        _top_cache[key] = hit
    return hit


contains = decide_containment


def _judge(lhs, rhs, ctx, depth):
    # prove axioms
    if lhs is rhs:
        return True
    if emp(lhs) or (unv(rhs) and not lhs.has_blank):
        return True
    if lhs is K.eps() and rhs.nullable:
        return True
    # disprove axioms
    if lhs.nullable and not rhs.nullable:
        return False
    if emp(rhs):
        return False
    if bl(rhs) and (ind(lhs) or unv(lhs)):
        return False
    key = (lhs, rhs)
    if key in ctx:
        return True
    if depth >= DEPTH_BUDGET:
        return False
    ctx.add(key)
    try:
        for literal in first_literals(lhs):
            if not _judge(lit_derive(lhs, literal), lit_derive(rhs, literal), ctx, depth + 1):
                return False
        return True
    finally:
        ctx.discard(key)


# -- reduction ----------------------------------------------------------------


@_cached("red")
def reduce(c: Contract) -> Contract:
    """Language-preserving simplification that never grows the term."""
    kind = c.kind
    if kind in (K.EMPTY, K.EPS, K.LIT):
        return c
    if kind == K.STAR:
        inner = reduce(c.args[0])
        return K.eps() if emp(inner) else K.star(inner)
    a, b = reduce(c.args[0]), reduce(c.args[1])
    if kind == K.CAT:
        if emp(a) or emp(b):
            return K.empty()
        return K.cat(a, b)
    if kind == K.OR:
        if emp(a) and emp(b):
            return K.empty()
        if bl(a) and bl(b):
            return K.lit(_blank_lit())
        if decide_containment(b, a):
            return a
        if decide_containment(a, b):
            return b
        return K.alt(a, b)
    if emp(a) or emp(b):
        return K.empty()
    if bl(a):
        return K.lit(_blank_lit()) if _has_iota(b) else K.empty()
    if bl(b):
        return K.lit(_blank_lit()) if _has_iota(a) else K.empty()
    if decide_containment(a, b):
        return a
    if decide_containment(b, a):
        return b
    return K.conj(a, b)


def _blank_lit():
    from .literals import blank

    return blank()


def reduce_handler(c: Contract) -> Contract:
    """Reduce each top-level conjunct separately.

    A merged handler is the conjunction of the contracts met along every
    path to the object; keeping the conjuncts apart makes its permission
    checks coincide with walking a chain of single-contract proxies.
    """
    parts = conjuncts(c)
    if len(parts) == 1:
        return reduce(c)
    return conj(*(reduce(k) for k in parts))


# -- permissions ----------------------------------------------------------------


def is_readable(c: Contract, path) -> bool:
    """Some permitted path continues ``path``.

    Checked per top-level conjunct with ``emp``: a conjunction is readable
    when none of its conjuncts is (syntactically) exhausted.
    """
    d = derive_path(c, path)
    return not any(emp(k) for k in conjuncts(d))


def is_writeable(c: Contract, path) -> bool:
    return derive_path(c, path).nullable
