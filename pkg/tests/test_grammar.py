import pytest

from antinorm.errors import ParameterError
from antinorm.grammar import Call, format_number, parse_call, parse_expr


def test_nested_calls_and_arithmetic():
    node = parse_expr("qlift(q=0.5, inner=kyfan_anti(k=2))")
    assert node == Call("qlift", (), {"q": 0.5, "inner": Call("kyfan_anti", (), {"k": 2})})
    assert parse_call("pow(1/3)") == ("pow", (1 / 3,), {})
    assert parse_expr("poly(0, 1, -0.5, 2**2)").args == (0, 1, -0.5, 4)
    assert parse_expr("w((1, 2, 3))").args == ((1, 2, 3),)
    assert parse_expr("trace") == Call("trace")


@pytest.mark.parametrize("bad", ["f(", "a.b(1)", "f(**k)", "1/0", "__import__('os')()", "f(x=lambda: 1)"])
def test_rejects_bad_input(bad):
    with pytest.raises(ParameterError):
        parse_expr(bad)


def test_bare_number_is_not_a_call():
    with pytest.raises(ParameterError):
        parse_call("3")


def test_format_number():
    assert format_number(2) == "2"
    assert format_number(2.0) == "2"
    assert format_number(0.5) == "0.5"
