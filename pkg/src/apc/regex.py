"""Character-level regular expressions over bytes, decided by derivatives.

Property names are matched as UTF-8 byte strings.  A pattern is compiled to a
*full-match* expression: unanchored branch ends are padded with ``.*`` over
the whole byte alphabet, so ``/^get.+/`` denotes "begins with get" exactly as
a host-language ``test`` would.

The node algebra also carries intersection and complement, which is what
makes literal containment (``L(c) <= L(r)`` iff ``L(c) & ~L(r)`` is empty)
and literal intersection cheap to express.
"""

from __future__ import annotations

import threading

__all__ = [
    "CharRegex",
    "Pattern",
    "RegexSyntaxError",
    "StateBudgetExceeded",
    "EMPTY",
    "EPS",
    "ANY",
    "ANYSTAR",
    "chars",
    "cat",
    "alt",
    "star",
    "inter",
    "complement",
    "literal_bytes",
    "derive",
    "matches",
    "is_empty",
    "find_witness",
    "compile_pattern",
    "STATE_BUDGET",
]

STATE_BUDGET = 10_000

FULL_MASK = (1 << 256) - 1

_EMPTY, _EPS, _SET, _CAT, _STAR, _ALT, _AND, _NOT = range(8)


class RegexSyntaxError(ValueError):
    def __init__(self, message: str, source: str, pos: int):
        super().__init__(f"{message} at position {pos} in /{source}/")
        self.source = source
        self.pos = pos


class StateBudgetExceeded(RuntimeError):
    pass


class CharRegex:
    """An interned regex node; compare with ``is``."""

    __slots__ = ("kind", "mask", "args", "nullable", "uid", "_deriv", "_classes")

    def __init__(self, kind, mask, args, nullable, uid):
        self.kind = kind
        self.mask = mask
        self.args = args
        self.nullable = nullable
        self.uid = uid
        self._deriv = None
        self._classes = None

    def __repr__(self):
        return f"CharRegex({_show(self)})"

    def __reduce__(self):
        raise TypeError("CharRegex nodes are interned and not picklable")


_table: dict = {}
_lock = threading.Lock()


def _intern(kind, mask, args, nullable):
    key = (kind, mask, args)
    node = _table.get(key)
    if node is None:
        with _lock:
            node = _table.get(key)
            if node is None:
                node = CharRegex(kind, mask, args, nullable, len(_table))
                _table[key] = node
    return node


EMPTY = _intern(_EMPTY, 0, (), False)
EPS = _intern(_EPS, 0, (), True)


def chars(mask: int) -> CharRegex:
    """Single byte drawn from ``mask`` (bit i set = byte i allowed)."""
    if mask == 0:
        return EMPTY
    return _intern(_SET, mask & FULL_MASK, (), False)


ANY = chars(FULL_MASK)
ANYSTAR = _intern(_STAR, 0, (ANY,), True)


def cat(a: CharRegex, b: CharRegex) -> CharRegex:
    if a is EMPTY or b is EMPTY:
        return EMPTY
    if a is EPS:
        return b
    if b is EPS:
        return a
    if a.kind == _CAT:
        return cat(a.args[0], cat(a.args[1], b))
    return _intern(_CAT, 0, (a, b), a.nullable and b.nullable)


def star(a: CharRegex) -> CharRegex:
    if a is EMPTY or a is EPS:
        return EPS
    if a.kind == _STAR:
        return a
    return _intern(_STAR, 0, (a,), True)


def _flatten(kind, nodes):
    out = []
    for n in nodes:
        if n.kind == kind:
            out.extend(n.args)
        else:
            out.append(n)
    return out


def alt(*nodes: CharRegex) -> CharRegex:
    parts = set()
    mask = 0
    for n in _flatten(_ALT, nodes):
        if n is EMPTY:
            continue
        if n is ANYSTAR:
            return ANYSTAR
        if n.kind == _SET:
            mask |= n.mask
        else:
            parts.add(n)
    if mask:
        parts.add(chars(mask))
    if not parts:
        return EMPTY
    if len(parts) == 1:
        return parts.pop()
    args = tuple(sorted(parts, key=lambda n: n.uid))
    return _intern(_ALT, 0, args, any(n.nullable for n in args))


def inter(*nodes: CharRegex) -> CharRegex:
    parts = set()
    mask = None
    for n in _flatten(_AND, nodes):
        if n is EMPTY:
            return EMPTY
        if n is ANYSTAR:
            continue
        if n.kind == _SET:
            mask = n.mask if mask is None else mask & n.mask
        else:
            parts.add(n)
    if mask is not None:
        if mask == 0:
            return EMPTY
        parts.add(chars(mask))
    if not parts:
        return ANYSTAR
    if len(parts) == 1:
        return parts.pop()
    args = tuple(sorted(parts, key=lambda n: n.uid))
    return _intern(_AND, 0, args, all(n.nullable for n in args))


def complement(a: CharRegex) -> CharRegex:
    if a.kind == _NOT:
        return a.args[0]
    if a is EMPTY:
        return ANYSTAR
    if a is ANYSTAR:
        return EMPTY
    return _intern(_NOT, 0, (a,), not a.nullable)


def literal_bytes(data: bytes) -> CharRegex:
    node = EPS
    for byte in reversed(data):
        node = cat(chars(1 << byte), node)
    return node


# -- derivatives -------------------------------------------------------------


def _derive_uncached(r: CharRegex, byte: int) -> CharRegex:
    k = r.kind
    if k == _SET:
        return EPS if (r.mask >> byte) & 1 else EMPTY
    if k == _EMPTY or k == _EPS:
        return EMPTY
    if k == _CAT:
        head, tail = r.args
        d = cat(derive(head, byte), tail)
        if head.nullable:
            return alt(d, derive(tail, byte))
        return d
    if k == _STAR:
        return cat(derive(r.args[0], byte), r)
    if k == _ALT:
        return alt(*(derive(a, byte) for a in r.args))
    if k == _AND:
        return inter(*(derive(a, byte) for a in r.args))
    return complement(derive(r.args[0], byte))


def derive(r: CharRegex, byte: int) -> CharRegex:
    table = r._deriv
    if table is None:
        table = r._deriv = [None] * 256
    d = table[byte]
    if d is None:
        d = table[byte] = _derive_uncached(r, byte)
    return d


def _refine(left, right):
    out = []
    for p in left:
        for q in right:
            m = p & q
            if m:
                out.append(m)
    return out


def classes(r: CharRegex) -> list:
    """Partition of the byte alphabet; bytes in one block share a derivative."""
    if r._classes is not None:
        return r._classes
    k = r.kind
    if k == _SET:
        out = [m for m in (r.mask, FULL_MASK & ~r.mask) if m]
    elif k == _EMPTY or k == _EPS:
        out = [FULL_MASK]
    elif k == _CAT:
        out = classes(r.args[0])
        if r.args[0].nullable:
            out = _refine(out, classes(r.args[1]))
    elif k == _STAR or k == _NOT:
        out = classes(r.args[0])
    else:
        out = [FULL_MASK]
        for a in r.args:
            out = _refine(out, classes(a))
    r._classes = out
    return out


def _lowest_byte(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def matches(r: CharRegex, data: bytes) -> bool:
    for byte in data:
        r = derive(r, byte)
        if r is EMPTY:
            return False
    return r.nullable


def find_witness(r: CharRegex, budget: int = STATE_BUDGET):
    """Shortest byte string in ``L(r)``, or ``None`` when the language is empty.

    Raises :class:`StateBudgetExceeded` when more than ``budget`` derivative
    states would have to be explored.
    """
    if r.nullable:
        return b""
    seen = {r}
    frontier = [(r, b"")]
    while frontier:
        nxt = []
        for state, prefix in frontier:
            for block in classes(state):
                byte = _lowest_byte(block)
                d = derive(state, byte)
                if d is EMPTY or d in seen:
                    continue
                word = prefix + bytes((byte,))
                if d.nullable:
                    return word
                seen.add(d)
                if len(seen) > budget:
                    raise StateBudgetExceeded(f"more than {budget} states")
                nxt.append((d, word))
        frontier = nxt
    return None


def is_empty(r: CharRegex, budget: int = STATE_BUDGET) -> bool:
    """Exact emptiness; propagates :class:`StateBudgetExceeded`."""
    return find_witness(r, budget) is None


# -- pattern syntax ----------------------------------------------------------

_DIGIT = sum(1 << b for b in range(ord("0"), ord("9") + 1))
_WORD = _DIGIT | sum(1 << b for b in range(ord("a"), ord("z") + 1)) \
    | sum(1 << b for b in range(ord("A"), ord("Z") + 1)) | (1 << ord("_"))
_SPACE = sum(1 << ord(c) for c in " \t\n\r\f\v")
_DOT = FULL_MASK & ~(1 << ord("\n"))

_CLASS_ESCAPES = {
    "d": _DIGIT, "D": FULL_MASK & ~_DIGIT,
    "w": _WORD, "W": FULL_MASK & ~_WORD,
    "s": _SPACE, "S": FULL_MASK & ~_SPACE,
}
_CHAR_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "f": "\f", "v": "\v", "0": "\0"}


class _Parser:
    def __init__(self, source: str):
        self.src = source
        self.pos = 0

    def error(self, message, pos=None):
        return RegexSyntaxError(message, self.src, self.pos if pos is None else pos)

    def peek(self):
        return self.src[self.pos] if self.pos < len(self.src) else None

    def take(self):
        ch = self.peek()
        if ch is None:
            raise self.error("unexpected end of pattern")
        self.pos += 1
        return ch

    def parse_top(self) -> CharRegex:
        branches = [self.parse_branch(top=True)]
        while self.peek() == "|":
            self.pos += 1
            branches.append(self.parse_branch(top=True))
        if self.pos != len(self.src):
            raise self.error("unbalanced ')'")
        return alt(*branches)

    def parse_alt(self) -> CharRegex:
        branches = [self.parse_branch(top=False)]
        while self.peek() == "|":
            self.pos += 1
            branches.append(self.parse_branch(top=False))
        return alt(*branches)

    def parse_branch(self, top: bool) -> CharRegex:
        anchored_start = anchored_end = False
        if self.peek() == "^":
            if not top:
                raise self.error("anchors are only supported at the ends of top-level branches")
            anchored_start = True
            self.pos += 1
        items = []
        while True:
            ch = self.peek()
            if ch is None or ch == "|" or ch == ")":
                break
            if ch == "$":
                end = self.pos + 1
                if not top or not (end == len(self.src) or self.src[end] == "|"):
                    raise self.error("anchors are only supported at the ends of top-level branches")
                anchored_end = True
                self.pos += 1
                break
            items.append(self.parse_repeat())
        node = EPS
        for item in reversed(items):
            node = cat(item, node)
        if top:
            if not anchored_start:
                node = cat(ANYSTAR, node)
            if not anchored_end:
                node = cat(node, ANYSTAR)
        return node

    def parse_repeat(self) -> CharRegex:
        start = self.pos
        node = self.parse_atom()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                node = star(node)
            elif ch == "+":
                self.pos += 1
                node = cat(node, star(node))
            elif ch == "?":
                self.pos += 1
                node = alt(EPS, node)
            elif ch == "{" and self._looks_like_count():
                node = self.parse_count(node)
            else:
                break
            if self.peek() == "?":  # lazy modifier, no effect on the language
                self.pos += 1
            if self.peek() in ("*", "+") and self.pos > start:
                raise self.error("nothing to repeat")
        return node

    def _looks_like_count(self):
        j = self.src.find("}", self.pos)
        if j < 0:
            return False
        body = self.src[self.pos + 1:j]
        lo, _, hi = body.partition(",")
        return lo.isdigit() and (hi == "" or hi.isdigit())

    def parse_count(self, node):
        j = self.src.index("}", self.pos)
        body = self.src[self.pos + 1:j]
        self.pos = j + 1
        lo_s, comma, hi_s = body.partition(",")
        lo = int(lo_s)
        hi = lo if not comma else (int(hi_s) if hi_s else None)
        if hi is not None and hi < lo:
            raise self.error("numbers out of order in {} quantifier")
        if max(lo, hi or 0) > 1000:
            raise self.error("repetition count too large")
        out = EPS
        for _ in range(lo):
            out = cat(out, node)
        if hi is None:
            return cat(out, star(node))
        optional = alt(EPS, node)
        for _ in range(hi - lo):
            out = cat(out, optional)
        return out

    def parse_atom(self) -> CharRegex:
        pos = self.pos
        ch = self.take()
        if ch == "(":
            if self.src.startswith("?:", self.pos):
                self.pos += 2
            elif self.peek() == "?":
                raise self.error("lookaround groups are not supported")
            inner = self.parse_alt()
            if self.peek() != ")":
                raise self.error("missing ')'", pos)
            self.pos += 1
            return inner
        if ch == ".":
            return chars(_DOT)
        if ch == "[":
            return self.parse_class()
        if ch == "\\":
            return self.parse_escape()
        if ch in "*+?":
            raise self.error("nothing to repeat", pos)
        if ch in "^$":
            raise self.error("anchors are only supported at the ends of top-level branches", pos)
        if ch == ")":
            raise self.error("unbalanced ')'", pos)
        return literal_bytes(ch.encode("utf-8"))

    def parse_escape(self) -> CharRegex:
        pos = self.pos - 1
        ch = self.take()
        if ch in _CLASS_ESCAPES:
            return chars(_CLASS_ESCAPES[ch])
        if ch in _CHAR_ESCAPES:
            return literal_bytes(_CHAR_ESCAPES[ch].encode())
        if ch == "x":
            digits = self.src[self.pos:self.pos + 2]
            if len(digits) != 2 or any(c not in "0123456789abcdefABCDEF" for c in digits):
                raise self.error("bad \\x escape", pos)
            self.pos += 2
            return chars(1 << int(digits, 16))
        if ch.isalnum():
            raise self.error(f"unsupported escape \\{ch}", pos)
        return literal_bytes(ch.encode("utf-8"))

    def _class_char(self):
        """One class member: ('mask', int) or ('char', str)."""
        ch = self.take()
        if ch != "\\":
            return "char", ch
        esc = self.take()
        if esc in _CLASS_ESCAPES:
            return "mask", _CLASS_ESCAPES[esc]
        if esc in _CHAR_ESCAPES:
            return "char", _CHAR_ESCAPES[esc]
        if esc == "x":
            digits = self.src[self.pos:self.pos + 2]
            self.pos += 2
            try:
                return "char", chr(int(digits, 16))
            except ValueError:
                raise self.error("bad \\x escape") from None
        if esc.isalnum():
            raise self.error(f"unsupported escape \\{esc}")
        return "char", esc

    def parse_class(self) -> CharRegex:
        start = self.pos - 1
        negated = self.peek() == "^"
        if negated:
            self.pos += 1
        mask = 0
        multibyte = []
        first = True
        while True:
            ch = self.peek()
            if ch is None:
                raise self.error("unterminated character class", start)
            if ch == "]" and not first:
                self.pos += 1
                break
            first = False
            kind, value = self._class_char()
            if kind == "char" and self.peek() == "-" and self.src[self.pos + 1:self.pos + 2] not in ("]", ""):
                self.pos += 1
                kind2, hi = self._class_char()
                if kind2 != "char":
                    raise self.error("bad character range")
                if ord(value) > 127 or ord(hi) > 127:
                    raise self.error("non-ASCII ranges are not supported")
                if ord(hi) < ord(value):
                    raise self.error("character range out of order")
                for b in range(ord(value), ord(hi) + 1):
                    mask |= 1 << b
            elif kind == "mask":
                mask |= value
            else:
                encoded = value.encode("utf-8")
                if len(encoded) == 1:
                    mask |= 1 << encoded[0]
                else:
                    multibyte.append(encoded)
        if negated:
            if multibyte:
                raise self.error("non-ASCII characters in negated classes are not supported", start)
            return chars(FULL_MASK & ~mask)
        return alt(chars(mask), *(literal_bytes(m) for m in multibyte))


class Pattern:
    """A compiled slash-delimited pattern: its source text and full-match language."""

    __slots__ = ("source", "lang")

    def __init__(self, source: str, lang: CharRegex):
        self.source = source
        self.lang = lang

    def match(self, prop: str) -> bool:
        return matches(self.lang, prop.encode("utf-8"))

    def __repr__(self):
        return f"Pattern(/{self.source}/)"


_pattern_cache: dict = {}


def compile_pattern(source: str) -> Pattern:
    pat = _pattern_cache.get(source)
    if pat is None:
        pat = _pattern_cache[source] = Pattern(source, _Parser(source).parse_top())
    return pat


def exact(name: str) -> Pattern:
    """Pattern matching exactly the property ``name``."""
    key = ("exact", name)
    pat = _pattern_cache.get(key)
    if pat is None:
        pat = _pattern_cache[key] = Pattern(name, literal_bytes(name.encode("utf-8")))
    return pat


def _show(r: CharRegex) -> str:
    k = r.kind
    if k == _EMPTY:
        return "∅"
    if k == _EPS:
        return "ε"
    if k == _SET:
        if r.mask == FULL_MASK:
            return "ANY"
        bits = [b for b in range(256) if (r.mask >> b) & 1]
        if len(bits) == 1:
            return repr(chr(bits[0]))
        return f"[{len(bits)} bytes]"
    if k == _CAT:
        return f"{_show(r.args[0])}·{_show(r.args[1])}"
    if k == _STAR:
        return f"({_show(r.args[0])})*"
    if k == _ALT:
        return "(" + "|".join(_show(a) for a in r.args) + ")"
    if k == _AND:
        return "(" + "&".join(_show(a) for a in r.args) + ")"
    return f"~({_show(r.args[0])})"
