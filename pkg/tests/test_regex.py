import itertools
import re

import pytest

from apc import regex as rx

PATTERNS = [
    "a", "ab", "^a", "a$", "^ab$", "a|b", "^a|b$", "a*", "^a*$", "^(ab)*$", "g.t", "^get.+",
    "[ab]", "^[^a]+$", "^[a-e]{2}$", "^a{1,2}b?$", "^(?:a|bg)+$", "\\d", "^\\w+$", "^e*t$",
    "t$", "a+?", "^$", "^[gt]e.?$",
]
WORDS = ["".join(w) for n in range(5) for w in itertools.product("abget", repeat=n)]


@pytest.mark.parametrize("source", PATTERNS)
def test_substring_semantics_agree_with_re(source):
    pat = rx.compile_pattern(source)
    oracle = re.compile(source)
    for w in WORDS:
        assert pat.match(w) == (oracle.search(w) is not None), (source, w)


def test_exact_pattern_is_anchored():
    p = rx.exact("get")
    assert p.match("get") and not p.match("getx") and not p.match("xget")


def test_non_ascii_is_matched_as_utf8():
    p = rx.compile_pattern("^é+$")
    assert p.match("éé") and not p.match("e")


def test_boolean_operations():
    a = rx.compile_pattern("^a+$").lang
    b = rx.compile_pattern("^a{2}$").lang
    assert not rx.is_empty(rx.inter(a, b))
    assert rx.is_empty(rx.inter(b, rx.complement(a)))
    assert rx.find_witness(rx.inter(a, rx.complement(b))) in (b"a", b"aaa")
    assert rx.is_empty(rx.EMPTY) and not rx.is_empty(rx.EPS)


def test_derivatives_are_interned():
    r = rx.compile_pattern("^(ab)*$").lang
    assert rx.derive(rx.derive(r, ord("a")), ord("b")) is r


def test_witness_budget():
    # "a twelve symbols from the end" needs 2^13 states to prove empty
    r = rx.compile_pattern("a[ab]{12}$").lang
    with pytest.raises(rx.StateBudgetExceeded):
        rx.find_witness(rx.inter(r, rx.complement(r)), budget=50)


@pytest.mark.parametrize("bad", ["(", "a)", "[a", "a{2,1}", "(?=a)", "*a", "a^b", "\\", "[b-a]", "(^a|b)e"])
def test_syntax_errors(bad):
    with pytest.raises(rx.RegexSyntaxError):
        rx.compile_pattern(bad)
