"""Big-step interpreter for λ_J with contracted proxies.

A proxy holds a target location and a handler: the trie of access paths
that lead to the target and the contract still in force.  Reading through a
proxy checks the derivative of the contract, logs the access, and wraps any
object it returns in a new proxy carrying that derivative, so no raw target
reference escapes the membrane.  When a proxy would wrap another proxy the
two handlers are merged (trie union and ``&`` of contracts) instead of
chaining, unless ``merge=False`` asks for the plain chained behaviour.

Modes:

``strict``     a violation is logged and raised as :class:`ContractViolation`
``observer``   violations are logged and the access proceeds
``protector``  a denied read yields ``undefined``, a denied write is dropped
``none``       ``permit`` is ignored; the uncontracted reference run
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Any, Callable, Optional

from .containment import emp, reduce_handler
from .contract import Contract, conj, conjuncts, derive_prop
from .program import (
    NULL,
    UNDEFINED,
    App,
    Const,
    Fun,
    Get,
    Let,
    New,
    Null,
    Permit,
    Put,
    Seq,
    Undefined,
    Var,
    parse_program,
)
from .trie import PathTrie

__all__ = [
    "MODES",
    "Loc",
    "Obj",
    "Proxy",
    "Entry",
    "LambdaJError",
    "ContractViolation",
    "Interpreter",
    "run_source",
    "render_value",
    "deep_render",
]

MODES = ("strict", "observer", "protector", "none")

READ, WRITE, READ_VIOLATION, WRITE_VIOLATION = "read", "write", "read_violation", "write_violation"


class Loc:
    __slots__ = ("ix",)

    def __init__(self, ix: int):
        self.ix = ix

    def __eq__(self, other):
        return isinstance(other, Loc) and other.ix == self.ix

    def __hash__(self):
        return hash(("loc", self.ix))

    def __repr__(self):
        return f"ξ{self.ix}"


class Obj:
    """A plain storable: own properties, an optional closure and a prototype."""

    __slots__ = ("props", "closure", "proto")

    def __init__(self, props=None, closure=None, proto=NULL):
        self.props = {} if props is None else props
        self.closure = closure  # (env, param, body) or None
        self.proto = proto


class Proxy:
    __slots__ = ("target", "trie", "contract")

    def __init__(self, target: Loc, trie: PathTrie, contract: Contract):
        self.target = target
        self.trie = trie
        self.contract = contract


@dataclass(frozen=True)
class Entry:
    """One monitor record; ``contract`` is set for violations only."""

    kind: str
    trie: PathTrie
    contract: Optional[Contract] = None

    @property
    def is_violation(self):
        return self.kind in (READ_VIOLATION, WRITE_VIOLATION)


class LambdaJError(RuntimeError):
    pass


class ContractViolation(LambdaJError):
    def __init__(self, entry: Entry):
        from .syntax import pretty
        from .trie import render_path

        self.entry = entry
        paths = ", ".join(render_path(p) for p in entry.trie.flatten())
        action = "read" if entry.kind == READ_VIOLATION else "write"
        super().__init__(f"{action} of {paths} violates contract {pretty(entry.contract)}")


def _key(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, bool):
        raise LambdaJError("property keys must be strings")
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float) and v.is_integer():
        return str(int(v))
    raise LambdaJError(f"property keys must be strings, got {render_value(v)}")


class Interpreter:
    """Evaluator state: heap, monitor and enforcement settings.

    ``eval`` may be called repeatedly; heap and monitor persist across calls.
    """

    def __init__(self, mode: str = "strict", *, merge: bool = True, log: bool = True,
                 reduce: bool = True, trace: Optional[Callable[[Entry], None]] = None):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")
        self.mode = mode
        self.merge = merge
        self.log = log
        self.reduce = reduce
        self.trace = trace
        self.heap: list = []
        self.monitor: list = []

    # -- heap ---------------------------------------------------------------

    def alloc(self, storable) -> Loc:
        self.heap.append(storable)
        return Loc(len(self.heap) - 1)

    def storable(self, loc: Loc):
        return self.heap[loc.ix]

    def unwrap(self, v):
        """Follow proxies down to the underlying plain location."""
        while isinstance(v, Loc):
            s = self.heap[v.ix]
            if not isinstance(s, Proxy):
                break
            v = s.target
        return v

    def _record(self, entry: Entry):
        self.monitor.append(entry)
        if self.trace is not None:
            self.trace(entry)

    # -- evaluation ------------------------------------------------------------

    def eval(self, e, env: Optional[dict] = None):
        if env is None:
            env = {}
        while True:
            t = type(e)
            if t is Const:
                return e.value
            if t is Var:
                try:
                    return env[e.name]
                except KeyError:
                    raise LambdaJError(f"unbound variable {e.name}") from None
            if t is Let:
                v = self.eval(e.value, env)
                env = {**env, e.name: v}
                e = e.body
                continue
            if t is Seq:
                for item in e.items[:-1]:
                    self.eval(item, env)
                e = e.items[-1]
                continue
            if t is Fun:
                return self.alloc(Obj(closure=(env, e.param, e.body)))
            if t is App:
                f = self.eval(e.fn, env)
                arg = self.eval(e.arg, env)
                return self.apply(f, arg)
            if t is Get:
                obj = self.eval(e.obj, env)
                key = self.eval(e.key, env)
                return self.get(obj, _key(key))
            if t is Put:
                obj = self.eval(e.obj, env)
                key = self.eval(e.key, env)
                val = self.eval(e.value, env)
                return self.put(obj, _key(key), val)
            if t is New:
                proto = self.eval(e.proto, env)
                return self.alloc(Obj(proto=proto))
            if t is Permit:
                v = self.eval(e.body, env)
                return self.permit(e.contract, v)
            raise LambdaJError(f"cannot evaluate {e!r}")

    def permit(self, contract: Contract, v):
        if self.mode == "none" or not isinstance(v, Loc):
            return v
        if self.reduce:
            contract = reduce_handler(contract)
        return self._wrap(v, PathTrie.epsilon(), contract)

    def _wrap(self, target: Loc, trie: PathTrie, contract: Contract) -> Loc:
        s = self.heap[target.ix]
        if self.merge and isinstance(s, Proxy):
            return self.alloc(Proxy(s.target, trie.union(s.trie), conj(contract, s.contract)))
        return self.alloc(Proxy(target, trie, contract))

    # -- application -------------------------------------------------------------

    def apply(self, f, arg):
        while True:
            if not isinstance(f, Loc):
                raise LambdaJError(f"cannot call {render_value(f)}")
            s = self.heap[f.ix]
            if isinstance(s, Proxy):
                if isinstance(arg, Loc):
                    arg = self._wrap(arg, PathTrie.epsilon(), s.contract)
                f = s.target
                continue
            if s.closure is None:
                raise LambdaJError(f"{render_value(f)} is not a function")
            env, param, body = s.closure
            return self.eval(body, {**env, param: arg})

    # -- property access -----------------------------------------------------------

    def _extend(self, trie: PathTrie, key: str) -> PathTrie:
        return trie.append(key) if self.log else trie

    def _violation(self, kind, trie, key, contract):
        if not self.log:
            trie = PathTrie.epsilon().append(key)
        entry = Entry(kind, trie, contract)
        self._record(entry)
        if self.mode == "strict":
            raise ContractViolation(entry)

    def get(self, obj, key: str):
        if not isinstance(obj, Loc):
            raise LambdaJError(f"cannot read property {key!r} of {render_value(obj)}")
        s = self.heap[obj.ix]
        if isinstance(s, Proxy):
            return self._proxy_get(s, key)
        while True:
            if key in s.props:
                return s.props[key]
            proto = s.proto
            if not isinstance(proto, Loc):
                return UNDEFINED
            s = self.heap[proto.ix]
            if isinstance(s, Proxy):
                return self._proxy_get(s, key)

    def _proxy_get(self, s: Proxy, key: str):
        d = derive_prop(s.contract, key)
        trie = self._extend(s.trie, key)
        if any(emp(k) for k in conjuncts(d)):
            self._violation(READ_VIOLATION, trie, key, s.contract)
            if self.mode == "protector":
                return UNDEFINED
        elif self.log:
            self._record(Entry(READ, trie))
        v = self.get(s.target, key)
        if isinstance(v, Loc):
            return self._wrap(v, trie, reduce_handler(d) if self.reduce else d)
        return v

    def put(self, obj, key: str, v):
        if not isinstance(obj, Loc):
            raise LambdaJError(f"cannot write property {key!r} of {render_value(obj)}")
        s = self.heap[obj.ix]
        if not isinstance(s, Proxy):
            s.props[key] = v
            return v
        trie = self._extend(s.trie, key)
        if derive_prop(s.contract, key).nullable:
            if self.log:
                self._record(Entry(WRITE, trie))
        else:
            self._violation(WRITE_VIOLATION, trie, key, s.contract)
            if self.mode == "protector":
                return v
        return self.put(s.target, key, v)


# -- rendering -----------------------------------------------------------------


def render_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Undefined):
        return "undefined"
    if isinstance(v, Null):
        return "null"
    if isinstance(v, str):
        import json

        return json.dumps(v, ensure_ascii=False)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Loc):
        return f"<location {v.ix}>"
    return repr(v)


def deep_render(interp: Interpreter, v, unwrap: bool = True):
    """A comparable snapshot of ``v`` and everything reachable from it.

    Objects become dicts; shared or cyclic objects are numbered in visit
    order so snapshots from different heaps line up.  With ``unwrap`` set,
    proxies are looked through, which makes contracted and uncontracted runs
    comparable.
    """
    ids: dict = {}

    def go(x):
        if not isinstance(x, Loc):
            return ("const", render_value(x))
        s = interp.heap[x.ix]
        if isinstance(s, Proxy):
            if unwrap:
                return go(s.target)
            return ("proxy", go(s.target))
        if x.ix in ids:
            return ("ref", ids[x.ix])
        ids[x.ix] = len(ids)
        props = tuple((k, go(val)) for k, val in s.props.items())
        return ("obj", ids[x.ix], s.closure is not None, go(s.proto) if isinstance(s.proto, Loc) else render_value(s.proto), props)

    return go(v)


def run_source(src: str, mode: str = "strict", **options):
    """Parse and evaluate ``src``; returns ``(interpreter, value)``.

    A :class:`ContractViolation` raised in strict mode propagates with the
    interpreter attached as ``exc.interpreter``.
    """
    expr = parse_program(src)
    interp = Interpreter(mode, **options)
    try:
        value = interp.eval(expr, {})
    except LambdaJError as exc:
        exc.interpreter = interp
        raise
    return interp, value


if sys.getrecursionlimit() < 20_000:
    sys.setrecursionlimit(20_000)
