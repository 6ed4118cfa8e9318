"""Persistent prefix tries over access paths.

A trie node has at most one child per property and an end marker standing
for the ``[ε ↦ ∅]`` edge.  Operations never mutate: they rebuild the spine
they touch and share everything else.

Appending a property to every path ending is the hot operation of the
membrane (every proxied read does it).  Once a trie has more than
``LAZY_APPEND_THRESHOLD`` endings the append is recorded as a pending suffix
instead and materialized on the next structural operation.
"""

from __future__ import annotations

import os
from typing import Iterable, Iterator

from .literals import IOTA

__all__ = ["PathTrie", "TrieOverflow", "LAZY_APPEND_THRESHOLD", "max_paths", "render_path"]

LAZY_APPEND_THRESHOLD = 32


class TrieOverflow(OverflowError):
    pass


def max_paths() -> int:
    return int(os.environ.get("APC_MAX_PATHS", "1000000"))


class _Node:
    __slots__ = ("end", "kids", "nend")

    def __init__(self, end: bool, kids: dict):
        self.end = end
        self.kids = kids
        self.nend = int(end) + sum(k.nend for k in kids.values())


_NONE = _Node(False, {})
_LEAF = _Node(True, {})


def _chain(seq) -> _Node:
    node = _LEAF
    for p in reversed(seq):
        node = _Node(False, {p: node})
    return node


def _insert(node: _Node, seq, i=0) -> _Node:
    if i == len(seq):
        return node if node.end else _Node(True, node.kids)
    p = seq[i]
    child = node.kids.get(p)
    new_child = _insert(child, seq, i + 1) if child is not None else _chain(seq[i + 1:])
    if new_child is child:
        return node
    kids = dict(node.kids)
    kids[p] = new_child
    return _Node(node.end, kids)


def _union(a: _Node, b: _Node) -> _Node:
    if a is b or b is _NONE:
        return a
    if a is _NONE:
        return b
    kids = dict(a.kids)
    changed = False
    for p, child in b.kids.items():
        mine = kids.get(p)
        merged = child if mine is None else _union(mine, child)
        if merged is not mine:
            kids[p] = merged
            changed = True
    end = a.end or b.end
    if not changed and end == a.end:
        return a
    return _Node(end, kids)


def _append(node: _Node, seq, memo=None) -> _Node:
    if not seq or node.nend == 0:
        return node
    if memo is None:
        memo = {}
    hit = memo.get(id(node))
    if hit is not None:
        return hit
    kids = {p: _append(child, seq, memo) for p, child in node.kids.items()}
    out = _Node(False, kids)
    if node.end:
        out = _union(out, _chain(seq))
    memo[id(node)] = out
    return out


class PathTrie:
    """An immutable set of access paths with prefix sharing."""

    __slots__ = ("_root", "_suffix")

    def __init__(self, root: _Node = _NONE, suffix: tuple = ()):
        self._root = root
        self._suffix = suffix

    @classmethod
    def empty(cls) -> "PathTrie":
        return _EMPTY_TRIE

    @classmethod
    def epsilon(cls) -> "PathTrie":
        """The trie holding only the empty path."""
        return _EPS_TRIE

    @classmethod
    def from_paths(cls, paths: Iterable) -> "PathTrie":
        root = _NONE
        for p in paths:
            root = _insert(root, tuple(p))
        return cls(root)

    def _materialized(self) -> _Node:
        if not self._suffix:
            return self._root
        return _append(self._root, self._suffix)

    def materialize(self) -> "PathTrie":
        return self if not self._suffix else PathTrie(self._materialized())

    def is_empty(self) -> bool:
        return self._root.nend == 0

    def __len__(self):
        return self._root.nend

    def insert(self, path) -> "PathTrie":
        return PathTrie(_insert(self._materialized(), tuple(path)))

    def append(self, prop) -> "PathTrie":
        """Extend every represented path by ``prop``."""
        if self._root.nend == 0:
            return self
        if self._root.nend > LAZY_APPEND_THRESHOLD:
            return PathTrie(self._root, self._suffix + (prop,))
        return PathTrie(_append(self._root, self._suffix + (prop,)))

    def append_path(self, path) -> "PathTrie":
        out = self
        for p in path:
            out = out.append(p)
        return out

    def union(self, other: "PathTrie") -> "PathTrie":
        if other is self or other.is_empty():
            return self
        if self.is_empty():
            return other
        if self._suffix == other._suffix:
            return PathTrie(_union(self._root, other._root), self._suffix)
        return PathTrie(_union(self._materialized(), other._materialized()))

    def __contains__(self, path) -> bool:
        path = tuple(path)
        n = len(self._suffix)
        if n:
            if len(path) < n or path[len(path) - n:] != self._suffix:
                return False
            path = path[: len(path) - n]
        node = self._root
        for p in path:
            node = node.kids.get(p)
            if node is None:
                return False
        return node.end

    def iter_paths(self) -> Iterator[tuple]:
        suffix = self._suffix
        stack = [(self._root, ())]
        while stack:
            node, prefix = stack.pop()
            if node.end:
                yield prefix + suffix
            for p, child in reversed(list(node.kids.items())):
                stack.append((child, prefix + (p,)))

    def flatten(self, cap: int | None = None) -> list:
        """All represented paths in depth-first order of first insertion."""
        cap = max_paths() if cap is None else cap
        if len(self) > cap:
            raise TrieOverflow(f"trie holds {len(self)} paths, more than the cap of {cap}")
        return list(self.iter_paths())

    def stats(self) -> dict:
        root = self._materialized()
        nodes = chars = 0
        stack = [root]
        while stack:
            node = stack.pop()
            for p, child in node.kids.items():
                # shared subtrees still count once per position in the trie
                nodes += 1
                chars += 1 if p is IOTA else len(p.encode("utf-8"))
                stack.append(child)
        return {"node_count": nodes, "path_count": root.nend, "char_count": chars}

    def __eq__(self, other):
        if not isinstance(other, PathTrie):
            return NotImplemented
        return _same(self._materialized(), other._materialized())

    def __hash__(self):
        raise TypeError("PathTrie is not hashable")

    def __repr__(self):
        shown = [render_path(p) for p in self.flatten(cap=10**9)[:8]]
        more = ", ..." if len(self) > 8 else ""
        return f"PathTrie({{{', '.join(shown)}{more}}})"

    def serialize(self) -> str:
        return "".join(render_path(p) + "\n" for p in self.flatten())


def _same(a: _Node, b: _Node) -> bool:
    if a is b:
        return True
    if a.end != b.end or a.nend != b.nend or a.kids.keys() != b.kids.keys():
        return False
    return all(_same(child, b.kids[p]) for p, child in a.kids.items())


def render_path(path) -> str:
    """Properties joined by ``.``, the blank property shown as ``@``."""
    return ".".join("@" if p is IOTA else p for p in path)


_EMPTY_TRIE = PathTrie(_NONE)
_EPS_TRIE = PathTrie(_LEAF)
