import pytest

from conftest import INPUTS
from mfpx.errors import EmptyPolynomial, ParseError, UnknownVariable
from mfpx.polynomials import Poly, parse_ode, parse_polynomial, parse_raw, parse_system

INTRO_SUPPORTS = [
    {(1, 0, 0, 0, 0, 0, 0), (0, 0, 0, 0, 1, 1, 0), (0, 0, 0, 0, 0, 0, 1), (0,) * 7},
    {(0, 1, 0, 0, 0, 0, 0), (0, 0, 0, 0, 1, 0, 1), (0, 0, 0, 0, 0, 1, 0), (0,) * 7},
    {(0, 0, 1, 0, 0, 0, 0), (0, 0, 0, 0, 1, 0, 1), (0, 0, 0, 0, 1, 0, 0), (0,) * 7},
    {(0, 0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 3, 0, 0), (0, 0, 0, 0, 0, 5, 0), (0, 0, 0, 0, 0, 0, 7)},
]


def test_intro_system_supports():
    system = parse_system((INPUTS / "ex_intro.txt").read_text())
    assert system.keep_vars == ("x0", "x1", "x2", "x3")
    assert system.elim_vars == ("y1", "y2", "y3")
    assert [set(s) for s in system.supports()] == INTRO_SUPPORTS


def test_constant_and_laurent():
    assert parse_polynomial("1", ["x"]).support == {(0,)}
    assert parse_polynomial("x^-2*y + 3", ["x", "y"]).support == {(-2, 1), (0, 0)}
    assert parse_polynomial("x^(-1) * x", ["x"]).support == {(0,)}


def test_arithmetic_is_exact():
    p = parse_polynomial("(x + y)^2 - x^2 - y^2", ["x", "y"])
    assert p.terms == {(1, 1): 2}
    assert p.diff(0).terms == {(0, 1): 2}
    q = parse_polynomial("-3*x^2*y + 2", ["x", "y"])
    assert q.to_str(["x", "y"]) in ("-3*x^2*y + 2", "2 - 3*x^2*y")


def test_generic_polys_never_cancel():
    x = Poly.variable(1, 0, generic=True)
    assert not (x - x).is_zero()
    assert Poly.dense(2, 2).support == {(i, j) for i in range(3) for j in range(3) if i + j <= 2}


@pytest.mark.parametrize("text, cls, line, column", [
    ("keep x\neliminate y\nf = x +* y\ng = y", ParseError, 3, 8),
    ("keep x\neliminate y\nf = z + 1\ng = y", UnknownVariable, 3, 5),
    ("keep x\neliminate y\nf = x - x\ng = y", EmptyPolynomial, 3, 4),
    ("keep x\neliminate y\nf = (x + 1\ng = y", ParseError, 3, 11),
    ("keep x\nf = x", ParseError, 2, 1),
])
def test_parse_errors_carry_position(text, cls, line, column):
    with pytest.raises(cls) as info:
        parse_system(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert f"line {line}, column {column}" in str(info.value)


def test_comments_are_ignored():
    system = parse_system("# header\nkeep x  # kept\neliminate y\nf = x - y # one\ng = y^2 + 1\n")
    assert [set(s) for s in system.supports()] == [{(1, 0), (0, 1)}, {(0, 2), (0, 0)}]


def test_raw_format():
    raw = parse_raw((INPUTS / "triangles_2_3.txt").read_text())
    assert (raw.n, raw.k, len(raw.sets)) == (2, 1, 2)
    assert len(raw.sets[0]) == 6 and len(raw.sets[1]) == 10
    with pytest.raises(ParseError, match="unterminated point"):
        parse_raw("dim 2 split 1\npolytope 0: (0,0) (1,0\n")
    with pytest.raises(ParseError, match="3 coordinates"):
        parse_raw("dim 2 split 1\npolytope 0: (0,0)\npolytope 1: (1,2,3)\n")


def test_ode_format():
    names, g = parse_ode((INPUTS / "exdyn.txt").read_text())
    assert names == ("x1", "x2")
    assert g[0].terms == {(2, 0): 1, (1, 1): 1, (0, 2): 1, (0, 0): 1}
    assert g[1].terms == {(0, 1): 1}
    with pytest.raises(ParseError, match="no equation for x2"):
        parse_ode("vars x1 x2\nx1' = x2\n")
    with pytest.raises(UnknownVariable):
        parse_ode("vars x1\nx3' = x1\n")
