"""Run reports: what a program read, wrote and violated.

A report is plain data so the JSON form round-trips exactly; the text form
is one line per access, in the order the accesses happened.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from typing import Optional

from .interp import (
    READ,
    READ_VIOLATION,
    WRITE,
    ContractViolation,
    Interpreter,
    LambdaJError,
    Loc,
    Proxy,
    render_value,
)
from .program import ProgramSyntaxError, parse_program
from .syntax import pretty
from .trie import PathTrie, render_path

__all__ = [
    "SCHEMA_VERSION",
    "EXIT_OK",
    "EXIT_ERROR",
    "EXIT_VIOLATION",
    "Report",
    "run_program",
    "render_json",
    "render_text",
    "report_from_json",
]

SCHEMA_VERSION = 1
EXIT_OK, EXIT_ERROR, EXIT_VIOLATION = 0, 1, 2


@dataclass
class Report:
    mode: str
    result: Optional[str] = None
    reads: list = field(default_factory=list)
    writes: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    trie_stats: dict = field(default_factory=lambda: {"node_count": 0, "path_count": 0, "char_count": 0})
    wall_time_ms: float = 0.0
    error: Optional[dict] = None
    schema_version: int = SCHEMA_VERSION

    @property
    def exit_code(self) -> int:
        if self.error is None:
            return EXIT_OK
        return EXIT_VIOLATION if self.error["type"] == "contract_violation" else EXIT_ERROR

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["error"] is None:
            del d["error"]
        return d


def _describe(interp: Interpreter, v) -> str:
    if not isinstance(v, Loc):
        return render_value(v)
    s = interp.storable(interp.unwrap(v))
    kind = "function" if s.closure is not None else "object"
    if isinstance(interp.storable(v), Proxy):
        return f"<contracted {kind}>"
    return f"<{kind}>"


def _collect(interp: Interpreter, report: Report):
    reads, writes = {}, {}
    tries = PathTrie.empty()
    for entry in interp.monitor:
        tries = tries.union(entry.trie)
        paths = [render_path(p) for p in entry.trie.flatten()]
        if entry.kind == READ:
            reads.update(dict.fromkeys(paths))
        elif entry.kind == WRITE:
            writes.update(dict.fromkeys(paths))
        else:
            kind = "read" if entry.kind == READ_VIOLATION else "write"
            source = pretty(entry.contract)
            for p in paths:
                report.violations.append({"kind": kind, "path": p, "contract": source})
    report.reads = list(reads)
    report.writes = list(writes)
    report.trie_stats = tries.stats()


def run_program(src: str, mode: str = "strict", *, log: bool = True, merge: bool = True) -> Report:
    """Parse and run ``src``; errors end up in ``Report.error``, never raised."""
    report = Report(mode=mode)
    start = time.perf_counter()
    try:
        expr = parse_program(src)
    except ProgramSyntaxError as exc:
        report.error = {"type": "syntax_error", "message": str(exc)}
        return report
    interp = Interpreter(mode, log=log, merge=merge)
    try:
        value = interp.eval(expr, {})
        report.result = _describe(interp, value)
    except ContractViolation as exc:
        report.error = {"type": "contract_violation", "message": str(exc)}
    except (LambdaJError, RecursionError) as exc:
        report.error = {"type": "runtime_error", "message": str(exc) or type(exc).__name__}
    report.wall_time_ms = round((time.perf_counter() - start) * 1000, 3)
    _collect(interp, report)
    return report


def render_json(report) -> str:
    d = report.to_dict() if isinstance(report, Report) else report
    return json.dumps(d, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def report_from_json(text: str) -> Report:
    d = json.loads(text)
    if d.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported report schema version {d.get('schema_version')!r}")
    return Report(**d)


def render_text(report: Report) -> str:
    lines = [f"MODE {report.mode}"]
    lines += [f"READ {p}" for p in report.reads]
    lines += [f"WRITE {p}" for p in report.writes]
    lines += [f"VIOLATION {v['kind']} {v['path']} CONTRACT {v['contract']}" for v in report.violations]
    s = report.trie_stats
    lines.append(f"TRIE nodes={s['node_count']} paths={s['path_count']} chars={s['char_count']}")
    if report.result is not None:
        lines.append(f"RESULT {report.result}")
    if report.error is not None:
        lines.append(f"ERROR {report.error['type']}: {report.error['message']}")
    lines.append(f"TIME {report.wall_time_ms} ms")
    return "\n".join(lines) + "\n"
