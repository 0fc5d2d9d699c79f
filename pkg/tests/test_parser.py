import pytest
from hypothesis import given, settings, strategies as st

from ncqm.weyl import ParseError, UnknownIdentifier, parse_binding, parse_operator_expression, render
from ncqm.weyl.algebra import P1, P2, X1, X2, NCPolynomial
from ncqm.weyl.coeffs import I, CoeffField
from ncqm.weyl.parser import tokenize

HBAR = CoeffField.symbol("hbar")
ETA = CoeffField.symbol("eta")
XI = CoeffField.symbol("xi")


def parse(text, **kw):
    return parse_operator_expression(text, **kw)


def test_canonical_commutator():
    assert parse("comm(x1, p1)") == NCPolynomial.scalar(I * HBAR)


def test_mixed_commutator_vanishes():
    assert render(parse("comm(x1,p2)")) == "0"


def test_momentum_commutator_is_xi_squared_eta():
    assert parse("comm(tp1,tp2)") == NCPolynomial.scalar(I * XI * XI * ETA)


def test_bose_condition_binding_kills_creation_commutator():
    name, value = parse_binding("theta=eta/(mu*omega)^2")
    assert name == "theta"
    assert parse("comm(a1d,a2d)", bindings={name: value}).is_zero()


def test_precedence_and_unary_minus():
    assert parse("-x1 + 2*p1^2") == -X1 + 2 * P1 * P1
    assert parse("-(x1 - x2)") == X2 - X1


def test_rational_literal():
    assert parse("3/4*x1") == X1 * CoeffField.const(3) / 4


def test_order_of_factors_matters():
    assert parse("p1*x1") == X1 * P1 - NCPolynomial.scalar(I * HBAR)
    assert parse("x2*p2") == X2 * P2


def test_whitespace_is_ignored():
    assert parse("  comm( x1 ,p1 ) ") == parse("comm(x1,p1)")


@pytest.mark.parametrize(
    "text, position",
    [("comm(x1,", 8), ("x1 +", 4), ("(x1", 3), ("x1 ^ p1", 5), ("x1 $ p1", 3), ("x1 p1", 3)],
)
def test_parse_errors_report_position(text, position):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position == position
    caret = info.value.caret().splitlines()
    assert caret[0] == text
    assert caret[1].index("^") == position


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifier) as info:
        parse("x3 + x1")
    assert info.value.position == 0


def test_division_by_operator_rejected():
    with pytest.raises(ParseError):
        parse("x1 / p1")


def test_binding_requires_known_parameter():
    with pytest.raises(ParseError):
        parse_binding("zeta=1")
    with pytest.raises(ParseError):
        parse_binding("eta=x1")


def test_tokenize_positions():
    toks = tokenize("comm(x1, p1)")
    assert [t.pos for t in toks] == [0, 4, 5, 7, 9, 11, 12]
    assert toks[-1].kind == "eof"


gens = st.sampled_from(["x1", "x2", "p1", "p2"])


@st.composite
def expressions(draw, depth=2):
    if depth == 0:
        return draw(st.one_of(gens, st.integers(0, 5).map(str)))
    a = draw(expressions(depth=depth - 1))
    b = draw(expressions(depth=depth - 1))
    return draw(st.sampled_from([f"({a})+({b})", f"({a})*({b})", f"comm({a},{b})", f"-({a})"]))


@settings(max_examples=40)
@given(expressions())
def test_parse_agrees_with_direct_construction(text):
    env = {"x1": X1, "x2": X2, "p1": P1, "p2": P2, "comm": lambda a, b: a * b - b * a}
    expected = eval(text.replace("^", "**"), {"__builtins__": {}}, env)  # grammar is a subset of Python here
    expected = NCPolynomial.coerce(expected)
    assert parse(text) == expected
