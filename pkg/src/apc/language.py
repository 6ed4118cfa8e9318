"""Bounded contract languages by direct set semantics.

This is the reference oracle for the derivative and containment machinery,
so it deliberately shares none of their code: literals are matched with
Python's ``re`` module and the operators are plain set constructions.
"""

from __future__ import annotations

import re

from .literals import BLANK, INTER, IOTA, NEGREGEX, REGEX, UNIVERSE

__all__ = ["LanguageOverflow", "enumerate_language", "literal_matches", "DEFAULT_CAP"]

DEFAULT_CAP = 2_000_000


class LanguageOverflow(OverflowError):
    pass


def literal_matches(literal, prop) -> bool:
    kind = literal.kind
    if kind == BLANK:
        return prop is IOTA
    if prop is IOTA:
        return False
    if kind == UNIVERSE:
        return True
    if kind == INTER:
        raise ValueError("intersection literals do not occur in contracts")
    display = literal.display
    inner = display[1:] if kind == NEGREGEX else display
    if inner.startswith("/"):
        hit = re.search(inner[1:-1], prop) is not None
    else:
        hit = inner == prop
    return hit if kind == REGEX else not hit


def enumerate_language(c, alphabet, max_len: int, cap: int = DEFAULT_CAP) -> frozenset:
    """All paths of ``L(c)`` over ``alphabet ∪ {ι}`` with at most ``max_len`` steps.

    Paths are tuples of property names, with ``IOTA`` for the blank property.
    ``c`` may be any tree exposing ``kind``, ``args`` and ``lit``, including
    terms that were never normalized.
    """
    symbols = list(dict.fromkeys(alphabet)) + [IOTA]
    memo: dict = {}

    def check(s):
        if len(s) > cap:
            raise LanguageOverflow(f"language exceeds {cap} paths")
        return s

    def go(node):
        key = id(node)
        hit = memo.get(key)
        if hit is not None:
            return hit[1]
        kind = node.kind
        if kind == "empty":
            out = frozenset()
        elif kind == "eps":
            out = frozenset({()})
        elif kind == "lit":
            out = frozenset((p,) for p in symbols if literal_matches(node.lit, p))
        elif kind == "or":
            out = check(go(node.args[0]) | go(node.args[1]))
        elif kind == "and":
            out = go(node.args[0]) & go(node.args[1])
        elif kind == "cat":
            left, right = go(node.args[0]), go(node.args[1])
            out = check(frozenset(p + q for p in left for q in right if len(p) + len(q) <= max_len))
        elif kind == "star":
            body = [p for p in go(node.args[0]) if p]
            acc = {()}
            frontier = {()}
            while frontier:
                nxt = set()
                for q in frontier:
                    for p in body:
                        w = p + q
                        if len(w) <= max_len and w not in acc:
                            nxt.add(w)
                acc |= nxt
                check(acc)
                frontier = nxt
            out = frozenset(acc)
        else:
            raise ValueError(f"unknown contract kind {kind!r}")
        memo[key] = (node, out)  # keep node alive so id() stays unique
        return out

    return go(c)
