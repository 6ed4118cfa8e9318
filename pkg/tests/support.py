"""Shared generators for the property and acceptance tests."""

from __future__ import annotations

import itertools
import random
from collections import namedtuple

from apc import contract as K
from apc.literals import IOTA, blank, exact_literal, neg_literal, universe

# "z" stands in for every property the contracts below never mention, so a
# bounded language over {a, b, z, ι} decides membership for all of 𝒜.
ALPHABET = ("a", "b", "z")
SYMBOLS = ("a", "b", "z", IOTA)

Raw = namedtuple("Raw", "kind args lit")


def leaves():
    return [
        Raw(K.EMPTY, (), None),
        Raw(K.EPS, (), None),
        Raw(K.LIT, (), exact_literal("a")),
        Raw(K.LIT, (), exact_literal("b")),
        Raw(K.LIT, (), universe()),
        Raw(K.LIT, (), blank()),
        Raw(K.LIT, (), neg_literal(exact_literal("a"))),
    ]


def raw_terms(max_size):
    """Every raw (unnormalized) term with at most ``max_size`` nodes."""
    by_size = {1: leaves()}
    for n in range(2, max_size + 1):
        out = [Raw(K.STAR, (t,), None) for t in by_size[n - 1]]
        for i in range(1, n - 1):
            j = n - 1 - i
            for kind in (K.OR, K.AND, K.CAT):
                for x, y in itertools.product(by_size[i], by_size[j]):
                    out.append(Raw(kind, (x, y), None))
        by_size[n] = out
    return [t for n in sorted(by_size) for t in by_size[n]]


def random_raw(rng: random.Random, max_size: int):
    """A random raw term with between 1 and ``max_size`` nodes."""
    target = rng.randint(1, max_size)
    return _random_of_size(rng, target)


def _random_of_size(rng, n):
    if n == 1:
        return rng.choice(leaves())
    if n == 2 or rng.random() < 0.2:
        return Raw(K.STAR, (_random_of_size(rng, n - 1),), None)
    i = rng.randint(1, n - 2)
    kind = rng.choice((K.OR, K.AND, K.CAT))
    return Raw(kind, (_random_of_size(rng, i), _random_of_size(rng, n - 1 - i)), None)


def paths(max_len, symbols=SYMBOLS):
    for n in range(max_len + 1):
        yield from itertools.product(symbols, repeat=n)


# -- random λ_J programs ---------------------------------------------------------

ROOT_SOURCE = "{a: {a: {a: 1}, b: 2}, b: {b: {b: 3}, a: 4}, c: fun(o){ o.a }}"
KEYS = ("a", "b", "c")


def random_contract_source(rng, max_size=6):
    from apc.syntax import pretty

    return pretty(K.rebuild(random_raw(rng, max_size)))


def random_ops(rng, n_ops=20, permits=3):
    """A straight-line program over variables ``v0``, ``v1``, ...

    ``v0`` is a fresh plain object graph and ``v1`` a contracted view of it.
    Each op is ``(kind, dst, source_text)``; ``dst`` is the variable bound to
    the op's value or None.
    """
    ops = [("let", "v0", ROOT_SOURCE), ("permit", "v1", f'permit "{random_contract_source(rng)}" in v0')]
    nvars = 2
    budget = permits - 1
    while len(ops) < n_ops:
        var = f"v{rng.randrange(1, nvars)}"
        roll = rng.random()
        if roll < 0.45:
            ops.append(("read", f"v{nvars}", f"{var}.{rng.choice(KEYS)}"))
            nvars += 1
        elif roll < 0.8:
            if rng.random() < 0.5:
                value = f"v{rng.randrange(0 if rng.random() < 0.1 else 1, nvars)}"
            else:
                value = str(rng.randrange(100))
            ops.append(("write", None, f"{var}.{rng.choice(KEYS)} = {value}"))
        elif roll < 0.9 and budget > 0:
            budget -= 1
            ops.append(("permit", f"v{nvars}", f'permit "{random_contract_source(rng)}" in {var}'))
            nvars += 1
        else:
            ops.append(("call", f"v{nvars}", f"{var}.c({f'v{rng.randrange(1, nvars)}'})"))
            nvars += 1
    return ops


OpResult = namedtuple("OpResult", "status value entries")


def run_ops(ops, mode, *, merge=True, override=None):
    """Evaluate ``ops`` one at a time in a single interpreter.

    ``override`` maps op indices to ``"skip"``, ``"undefined"`` or
    ``"error"``, which replace the op by nothing, by the value undefined or
    by a runtime error; it turns an uncontracted run into the expected
    protector-mode run.
    """
    from apc.interp import ContractViolation, Interpreter, LambdaJError, deep_render
    from apc.program import UNDEFINED, parse_program

    interp = Interpreter(mode, merge=merge)
    env = {}
    results = []
    for i, (kind, dst, text) in enumerate(ops):
        mark = len(interp.monitor)
        forced = (override or {}).get(i)
        if forced == "skip":
            value = interp.eval(parse_program(text).value, env)
            results.append(OpResult("ok", deep_render(interp, value), []))
            continue
        try:
            if forced == "error":
                raise LambdaJError("forced")
            value = UNDEFINED if forced == "undefined" else interp.eval(parse_program(text), env)
        except ContractViolation:
            results.append(OpResult("halt", None, interp.monitor[mark:]))
            break
        except LambdaJError:
            results.append(OpResult("error", None, interp.monitor[mark:]))
            if dst is not None:
                env[dst] = UNDEFINED
            continue
        if dst is not None:
            env[dst] = value
        results.append(OpResult("ok", deep_render(interp, value), interp.monitor[mark:]))

    final = deep_render(interp, env.get("v0"))
    return results, final, interp


def protector_override(ops, results):
    """Translate protector-mode denials into edits of the uncontracted run.

    A denied write disappears, a denied read yields undefined, and a call
    whose callee read was denied fails because undefined is not callable.
    """
    from apc.trie import render_path

    out = {}
    for i, ((kind, _, _), r) in enumerate(zip(ops, results)):
        denied = [e for e in r.entries if e.is_violation]
        if not denied:
            continue
        if kind == "write":
            out[i] = "skip"
        elif kind == "call" and any(p and p[-1] == "c" for e in denied for p in e.trie.iter_paths()):
            out[i] = "error"
        else:
            out[i] = "undefined"
    return out


def op_paths(entries):
    from apc.trie import render_path

    return sorted({render_path(p) for e in entries for p in e.trie.iter_paths()})


def op_decision(result):
    """Outcome, whether anything was denied, and the violation kinds in order."""
    violations = [e.kind for e in result.entries if e.is_violation]
    return (result.status, bool(violations), list(dict.fromkeys(violations)))
