import random

import pytest

from apc.literals import IOTA
from apc.trie import LAZY_APPEND_THRESHOLD, PathTrie, TrieOverflow, render_path


def _paths(rng, n):
    return [tuple(rng.choice("abc") for _ in range(rng.randint(0, 5))) for _ in range(n)]


def test_stats_count_shared_prefixes_once():
    t = PathTrie.from_paths([("a", "b"), ("a", "c")])
    assert t.stats() == {"node_count": 3, "path_count": 2, "char_count": 3}


def test_empty_and_epsilon():
    assert PathTrie.empty().is_empty() and len(PathTrie.empty()) == 0
    assert PathTrie.epsilon().flatten() == [()]
    assert PathTrie.empty().append("a").is_empty()


def test_roundtrip_against_sets():
    rng = random.Random(1)
    for _ in range(200):
        ps = _paths(rng, rng.randint(0, 12))
        t = PathTrie.from_paths(ps)
        assert set(t.flatten()) == set(ps)
        assert len(t.flatten()) == len(set(ps))
        for p in _paths(rng, 5):
            assert (p in t) == (p in set(ps))


def test_append_and_union_match_set_semantics():
    rng = random.Random(2)
    for _ in range(100):
        ps, qs = _paths(rng, rng.randint(1, 50)), _paths(rng, 10)
        t = PathTrie.from_paths(ps)
        suffix = tuple(rng.choice("ab") for _ in range(rng.randint(1, 3)))
        appended = t.append_path(suffix)
        assert set(appended.flatten()) == {p + suffix for p in ps}
        for p in ps:
            assert p + suffix in appended
        both = appended.union(PathTrie.from_paths(qs))
        assert set(both.flatten()) == {p + suffix for p in ps} | set(qs)
        assert both == PathTrie.from_paths(list(both.flatten()))


def test_lazy_append_is_materialized_equivalently():
    many = PathTrie.from_paths([(str(i),) for i in range(LAZY_APPEND_THRESHOLD + 5)])
    lazy = many.append("x").append("y")
    assert lazy == lazy.materialize()
    assert ("3", "x", "y") in lazy and ("3", "x") not in lazy
    assert lazy.stats()["path_count"] == LAZY_APPEND_THRESHOLD + 5


def test_persistence():
    t = PathTrie.from_paths([("a",)])
    t2 = t.insert(("b",))
    t3 = t.append("c")
    assert t.flatten() == [("a",)]
    assert set(t2.flatten()) == {("a",), ("b",)}
    assert t3.flatten() == [("a", "c")]


def test_flatten_cap(monkeypatch):
    t = PathTrie.from_paths([(c,) for c in "abcd"])
    with pytest.raises(TrieOverflow):
        t.flatten(cap=3)
    monkeypatch.setenv("APC_MAX_PATHS", "2")
    with pytest.raises(TrieOverflow):
        t.flatten()


def test_rendering():
    assert render_path(("a", "b", IOTA)) == "a.b.@"
    assert PathTrie.from_paths([("a", "b")]).serialize() == "a.b\n"
    assert PathTrie.from_paths([(IOTA,)]).stats()["char_count"] == 1


def test_not_hashable():
    with pytest.raises(TypeError):
        hash(PathTrie.epsilon())
