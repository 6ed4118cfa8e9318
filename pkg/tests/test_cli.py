import json
import pathlib
import subprocess
import sys

import pytest

from apc.cli import main
from apc.report import render_json, render_text, report_from_json, run_program

PROGRAMS = pathlib.Path(__file__).resolve().parent.parent / "programs"


def apc(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_read_only_example_per_mode(capsys):
    path = str(PROGRAMS / "read_only.lj")
    code, out, _ = apc(capsys, "run", path, "--mode", "observer")
    assert code == 0
    assert [l for l in out.splitlines() if l.startswith("VIOLATION")] == ["VIOLATION write a.b CONTRACT b.@"]
    code, _, err = apc(capsys, "run", path, "--mode", "strict")
    assert code == 2 and "violates contract" in err
    code, out, _ = apc(capsys, "run", path, "--mode", "protector")
    assert code == 0 and "RESULT 3" in out


def test_report_lists_paths_in_occurrence_order():
    r = run_program('let x = permit "a.b" in {a:{b:3}, b:{b:5}} in let y = x.a in y.b; y.b = 3')
    assert r.reads == ["a", "a.b"] and r.writes == ["a.b"] and r.violations == []
    assert r.trie_stats == {"node_count": 2, "path_count": 2, "char_count": 2}


def test_empty_program_has_empty_monitor():
    r = run_program("undefined")
    assert r.result == "undefined" and r.reads == r.writes == r.violations == [] and r.exit_code == 0


def test_json_roundtrip(capsys):
    for f in sorted(PROGRAMS.glob("*.lj")):
        for mode in ("strict", "observer", "protector"):
            text = render_json(run_program(f.read_text(), mode))
            again = report_from_json(text)
            assert render_json(again) == text
            assert json.loads(text)["schema_version"] == 1
            assert render_text(again) == render_text(report_from_json(text))


def test_exit_codes_for_corpus(capsys):
    for f in sorted(PROGRAMS.glob("*.lj")):
        for mode in ("strict", "observer", "protector"):
            report = run_program(f.read_text(), mode)
            code, out, _ = apc(capsys, "run", str(f), "--mode", mode, "--format", "json")
            assert code == report.exit_code
            data = json.loads(out)
            if code == 2:
                assert mode == "strict" and data["error"]["type"] == "contract_violation"
            elif code == 1:
                assert data["error"]["type"] in ("runtime_error", "syntax_error")
            else:
                assert "error" not in data


def test_errors(capsys, tmp_path):
    bad = tmp_path / "bad.lj"
    bad.write_text("let x =")
    code, out, err = apc(capsys, "run", str(bad))
    assert code == 1 and "syntax_error" in out
    code, out, _ = apc(capsys, "run", str(bad), "--format", "json")
    assert code == 1 and json.loads(out)["error"]["type"] == "syntax_error"
    code, _, err = apc(capsys, "run", str(tmp_path / "missing.lj"))
    assert code == 1 and "cannot read" in err
    code, _, err = apc(capsys, "reduce", "a+")
    assert code == 1 and "a+" in err
    with pytest.raises(SystemExit) as info:
        main(["run"])
    assert info.value.code == 1


def test_no_log(capsys):
    code, out, _ = apc(capsys, "run", str(PROGRAMS / "read_write.lj"), "--no-log", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["reads"] == [] and data["writes"] == []


@pytest.mark.parametrize(
    "argv, expected",
    [(("contains", "a", "?"), "true"), (("contains", "?", "a"), "false"), (("derive", "a*.a*", "a"), "a*+a*.a*"),
     (("derive", "a*.a*", "a", "--reduce"), "a*"), (("derive", "a.@", "a.@"), "e"), (("derive", "a.b", ""), "a.b"),
     (("reduce", "(e+b)&b.@"), "(e+b)&b.@"), (("reduce", "a*+a*.a*"), "a*"), (("nullable", "a*"), "true"),
     (("nullable", "a.@"), "false")],
)
def test_algebra_commands(capsys, argv, expected):
    code, out, _ = apc(capsys, *argv)
    assert code == 0 and out == expected + "\n"


def test_bench_command(capsys):
    code, out, _ = apc(capsys, "bench", "--suite", "derive", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 60


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "apc", "nullable", "e"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "true\n"
