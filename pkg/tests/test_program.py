import pytest

from apc.program import (
    NULL,
    UNDEFINED,
    App,
    Const,
    Get,
    Let,
    Permit,
    ProgramSyntaxError,
    Put,
    Seq,
    Var,
    parse_program,
)
from apc.syntax import parse_contract


def test_core_forms():
    assert parse_program("x.a") == Get(Var("x"), Const("a"))
    assert parse_program("x['a'] = 1") == Put(Var("x"), Const("a"), Const(1))
    assert parse_program("f()") == App(Var("f"), Const(UNDEFINED))
    assert parse_program("-2.5") == Const(-2.5)
    assert parse_program("null") == Const(NULL)


def test_numeric_properties():
    assert parse_program("x.0.1") == Get(Get(Var("x"), Const("0")), Const("1"))
    assert parse_program("x.10") == Get(Var("x"), Const("10"))


def test_let_and_sequence_bind_as_far_as_possible():
    e = parse_program("let x = 1 in x; x")
    assert isinstance(e, Let) and isinstance(e.body, Seq)
    assert parse_program("(1; 2)") == Seq((Const(1), Const(2)))


def test_permit_parses_its_contract():
    e = parse_program('permit "a.b" in x')
    assert e == Permit("a.b", parse_contract("a.b"), Var("x"))


def test_object_and_array_literals_desugar_to_writes():
    e = parse_program("[7]")
    assert isinstance(e, Let)
    keys = [item.key.value for item in e.body.items if isinstance(item, Put)]
    assert keys == ["0", "length"]


def test_comments_and_strings():
    assert parse_program("// note\n'it\\'s' // trailing") == Const("it's")
    assert parse_program('"a\\nb"') == Const("a\nb")


@pytest.mark.parametrize(
    "bad",
    ["", "let x = 1", "x.", "1 = 2", "permit a in x", 'permit "a+" in x', "{a 1}", "fun x {1}", "#", "x[1"],
)
def test_syntax_errors(bad):
    with pytest.raises(ProgramSyntaxError):
        parse_program(bad)


def test_error_positions():
    with pytest.raises(ProgramSyntaxError) as info:
        parse_program("let x = 1 in\n  x.")
    assert (info.value.line, info.value.col) == (2, 5)
