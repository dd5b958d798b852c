import pytest

from rbmod import GF, ScalarDomainError, ScalarSyntaxError
from rbmod.grammar import format_rows, parse_row, parse_rows, parse_scalar


@pytest.mark.parametrize("text,expected", [
    ("t^-2*(1+t)/(1-t)", "t^-2*(1 + t)/(1 - t)"),
    ("  1 / 2 ", "1/2"),
    ("-t^2 + 3/4*t", "t*(3/4 - t)"),
    ("(t^-1)^3", "t^-3"),
    ("t^+2", "t^2"),
    ("-(1+t)", "-1 - t"),
    ("2*-t", "-2*t"),
])
def test_accepted_forms(text, expected):
    assert str(parse_scalar(text)) == expected


@pytest.mark.parametrize("text,pos", [("1 + ", 4), ("t^", 2), ("2 $ 3", 2), ("(1+t", 4), ("1 2", 2)])
def test_syntax_errors_carry_positions(text, pos):
    with pytest.raises(ScalarSyntaxError) as info:
        parse_scalar(text)
    assert info.value.position == pos


def test_zero_denominator_is_domain_error():
    with pytest.raises(ScalarDomainError):
        parse_scalar("1/0")
    with pytest.raises(ScalarDomainError):
        parse_scalar("1/(t-t)")
    with pytest.raises(ScalarDomainError):
        parse_scalar("1/7", GF(7))


def test_rows():
    rows = parse_rows("t, 0; 0, 1")
    assert [[str(x) for x in r] for r in rows] == [["t", "0"], ["0", "1"]]
    assert parse_rows("  ") == []
    assert format_rows(rows) == "t, 0; 0, 1"
    with pytest.raises(ScalarSyntaxError):
        parse_rows("1, 2; 3")


def test_row_error_offset():
    with pytest.raises(ScalarSyntaxError) as info:
        parse_row("1, t^")
    assert info.value.position == 5


def test_prime_field_parse():
    assert parse_scalar("8*t", GF(7)) == parse_scalar("t", GF(7))
    assert parse_scalar("1/2", GF(7)) == parse_scalar("4", GF(7))
