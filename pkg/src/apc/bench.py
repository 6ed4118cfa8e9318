"""Desk-scale measurements for path storage and derivative growth.

The trie suite compares the size of a path trie with the flat path lists it
replaces; the derive suite checks that repeated derivation with reduction
keeps contracts small.
"""

from __future__ import annotations

import time
from typing import Callable, Iterable, Optional

from .containment import reduce
from .contract import derive_prop
from .interp import Interpreter, Obj
from .program import parse_program
from .syntax import parse_contract, pretty
from .trie import PathTrie

__all__ = ["SUITES", "list_walk_paths", "run_suite", "format_table", "trie_row", "derive_rows"]


def list_walk_paths(walks: int = 100, depth: int = 100):
    """Read paths logged by ``walks`` traversals of a list ``a.b.b...``."""
    for _ in range(walks):
        for k in range(1, depth + 1):
            yield ("a",) + ("b",) * (k - 1)


def tree_walk_paths(depth: int = 12):
    """Every root-to-node path of a complete binary tree with fields l/r."""
    level = [()]
    for _ in range(depth):
        level = [p + (s,) for p in level for s in ("l", "r")]
        yield from level


def _interpreted_list_walk(walks: int = 100, depth: int = 100):
    """Paths logged by the interpreter walking a contracted list.

    λ_J has no conditionals, so the heap is assembled directly and each step
    ``x.b`` of the walk is evaluated under the membrane.
    """
    interp = Interpreter("observer")
    head = node = interp.alloc(Obj())
    for _ in range(depth - 1):
        nxt = interp.alloc(Obj())
        interp.storable(node).props["b"] = nxt
        node = nxt
    root = interp.alloc(Obj({"a": head}))
    first, step = parse_program("x.a"), parse_program("x.b")
    contract = parse_contract("a.b*")
    for _ in range(walks):
        cur = interp.eval(first, {"x": interp.permit(contract, root)})
        for _ in range(depth - 1):
            cur = interp.eval(step, {"x": cur})
    trie = PathTrie.empty()
    records = flat = 0
    for entry in interp.monitor:
        for p in entry.trie.iter_paths():
            records += 1
            flat += len(p)
        trie = trie.union(entry.trie)
    return records, flat, trie


def trie_row(name: str, paths: Iterable) -> Optional[dict]:
    t0 = time.perf_counter()
    trie = PathTrie.empty()
    records = flat = 0
    for p in paths:
        trie = trie.insert(p)
        records += 1
        flat += len(p)
    if not records:
        return None
    stats = trie.stats()
    return _row(name, records, flat, stats, t0)


def _row(name, records, flat, stats, t0):
    return {
        "workload": name,
        "records": records,
        "flat_length": flat,
        "distinct_paths": stats["path_count"],
        "node_count": stats["node_count"],
        "ratio": round(stats["node_count"] / flat, 6) if flat else 0.0,
        "ms": round((time.perf_counter() - t0) * 1000, 1),
    }


def trie_suite(workloads: Optional[list] = None) -> list:
    if workloads is None:
        workloads = [
            ("list-walk 100x100", lambda: list_walk_paths(100, 100)),
            ("tree-walk depth 12", lambda: tree_walk_paths(12)),
            ("interpreted list-walk 100x100", None),
        ]
    rows = []
    for name, make in workloads:
        if make is None:
            t0 = time.perf_counter()
            records, flat, trie = _interpreted_list_walk(100, 100)
            if records:
                rows.append(_row(name, records, flat, trie.stats(), t0))
            continue
        row = trie_row(name, make())
        if row is not None:
            rows.append(row)
    return rows


def derive_rows(source: str = "a*.a*", prop: str = "a", steps: int = 20) -> list:
    rows = []
    raw = reduced = parse_contract(source)
    for i in range(1, steps + 1):
        t0 = time.perf_counter()
        raw = derive_prop(raw, prop)
        reduced = reduce(derive_prop(reduced, prop))
        rows.append({
            "step": i,
            "size": raw.size,
            "reduced_size": reduced.size,
            "reduced": pretty(reduced),
            "ms": round((time.perf_counter() - t0) * 1000, 3),
        })
    return rows


def derive_suite(workloads: Optional[list] = None) -> list:
    if workloads is None:
        workloads = [("a*.a*", "a", 20), ("(a+b)*.a.(a+b)*", "a", 20), ("(a.b+a)*.b*", "a", 20)]
    rows = []
    for source, prop, steps in workloads:
        for r in derive_rows(source, prop, steps):
            rows.append({"contract": source, "by": prop, **r})
    return rows


SUITES: dict = {"trie": trie_suite, "derive": derive_suite}


def run_suite(name: str, workloads: Optional[list] = None) -> list:
    try:
        suite: Callable = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown bench suite {name!r}") from None
    return suite(workloads)


def format_table(rows: list) -> str:
    if not rows:
        return "(no rows)\n"
    cols = list(rows[0])
    cells = [[str(r[c]) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    out = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
    out += ["  ".join(v.ljust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(line.rstrip() for line in out) + "\n"
