import random

import pytest

from apc import contract as K
from apc.containment import (
    bl,
    decide_containment,
    emp,
    first_literals,
    ind,
    is_readable,
    is_writeable,
    lit_derive,
    reduce,
    reduce_handler,
    unv,
)
from apc.language import enumerate_language
from apc.literals import IOTA, lit_match
from apc.syntax import parse_contract, pretty

from support import ALPHABET, SYMBOLS, random_raw

P = parse_contract


def L(c, n=4):
    return enumerate_language(c, ALPHABET, n)


@pytest.mark.parametrize(
    "lhs, rhs, expected",
    [("a", "?", True), ("?", "a", False), ("e", "a*", True), ("a.b", "?*", True), ("@", "?*", False),
     ("a*.a*", "a*", True), ("a*", "a*.a*", True), ("a.@", "a.?*", False), ("a&b", "∅", True),
     ("(a+b)*", "(a*.b*)*", True), ("!a", "?", True), ("b", "!a", True), ("?", "!a", False)],
)
def test_containment_examples(lhs, rhs, expected):
    assert decide_containment(P(lhs), P(rhs)) is expected


def test_predicates_are_sound_on_random_terms():
    rng = random.Random(7)
    for _ in range(3000):
        c = K.rebuild(random_raw(rng, 7))
        lang = L(c)
        if emp(c):
            assert not lang
        if bl(c):
            assert lang == {(IOTA,)}
        if ind(c):
            assert {p for p in lang if len(p) == 1} == {(s,) for s in ALPHABET} and all(len(p) == 1 for p in lang)
        if unv(c):
            assert all(p in lang for p in enumerate_language(P("?*"), ALPHABET, 4))


def test_first_literals_cover_first_properties():
    rng = random.Random(3)
    for _ in range(2000):
        c = K.rebuild(random_raw(rng, 7))
        firsts = first_literals(c)
        for p in L(c, 3):
            if p:
                assert any(lit_match(x, p[0]) for x in firsts), (pretty(c), p)


def test_literal_derivative_underapproximates_property_derivatives():
    rng = random.Random(5)
    for _ in range(1000):
        c = K.rebuild(random_raw(rng, 7))
        for x in first_literals(c):
            d = L(lit_derive(c, x), 3)
            for s in SYMBOLS:
                if lit_match(x, s):
                    assert d <= L(K.derive_prop(c, s), 3)


@pytest.mark.parametrize(
    "src, expected",
    [("a&(a+b)", "a"), ("a*+a*.a*", "a*"), ("(e+b)&b.@", "(e+b)&b.@"), ("(a&b)*", "e"), ("a.(b&c)", "∅"),
     ("@&a.@", "∅"), ("@&(@+a)", "@"), ("a+a.b*", "a.b*")],
)
def test_reduce_examples(src, expected):
    assert pretty(reduce(P(src))) == expected


def test_reduce_handler_keeps_conjuncts_apart():
    c = K.conj(P("a+a"), P("a*+a*.a*"))
    assert pretty(reduce_handler(c)) == "a&a*"


def test_permissions():
    c = P("a.b.@")
    assert is_readable(c, ["a", "b"]) and not is_writeable(c, ["a", "b"])
    assert not is_readable(c, ["b"])
    assert is_writeable(P("a.b"), ["a", "b"]) and not is_writeable(P("a.b"), ["a"])
    assert not is_readable(P("(a+b)&(a.c+b.d)"), ["a", "d"])
