import pytest
from hypothesis import given, strategies as st

from ririg.parsing import ParseError, format_equation, format_term, \
    parse_equation, parse_term
from ririg.terms import Const, Imp, Join, ModalApp, Prod, Var


def test_atoms():
    assert parse_term("v0") == Var(0)
    assert parse_term("v12") == Var(12)
    assert parse_term("0") == Const(0)
    assert parse_term("bot") == Const(0)
    assert parse_term("1") == Const(1)
    assert parse_term("top") == Imp(Const(0), Const(0))


def test_modal_application():
    assert parse_term("m1(v0 | v1)") == ModalApp("m1", Join(Var(0), Var(1)))
    assert parse_term("m1(m1(v0))") == ModalApp("m1", ModalApp("m1", Var(0)))


def test_precedence():
    assert parse_term("v0 -> v1 -> v2") == Imp(Var(0), Imp(Var(1), Var(2)))
    assert parse_term("v0 * v1 | v2") == Join(Prod(Var(0), Var(1)), Var(2))
    assert parse_term("v0 | v1 -> v2") == Imp(Join(Var(0), Var(1)), Var(2))
    assert parse_term("m1(v0) * v1") == Prod(ModalApp("m1", Var(0)), Var(1))
    assert parse_term("(v0 -> v1) -> v2") == Imp(Imp(Var(0), Var(1)), Var(2))


def test_errors_carry_position():
    with pytest.raises(ParseError) as e:
        parse_term("v0 -> ")
    assert e.value.position == 6
    with pytest.raises(ParseError):
        parse_term("v0 v1")
    with pytest.raises(ParseError):
        parse_term("(v0 -> v1")
    with pytest.raises(ParseError):
        parse_term("m1(v0")
    with pytest.raises(ParseError):
        parse_term("?")


def test_parse_equation():
    eq = parse_equation("v0 = 1")
    assert eq.lhs == Var(0) and eq.rhs == Const(1)
    assert format_equation(eq) == "v0 = 1"
    with pytest.raises(ParseError):
        parse_equation("v0")
    with pytest.raises(ParseError):
        parse_equation("v0 = v1 = v2")


def terms(max_depth=3):
    leaves = st.one_of(
        st.integers(0, 3).map(Var),
        st.sampled_from([Const(0), Const(1)]))
    return st.recursive(
        leaves,
        lambda inner: st.one_of(
            st.tuples(inner, inner).map(lambda p: Join(*p)),
            st.tuples(inner, inner).map(lambda p: Prod(*p)),
            st.tuples(inner, inner).map(lambda p: Imp(*p)),
            inner.map(lambda t: ModalApp("m1", t))),
        max_leaves=8)


@given(terms())
def test_format_parse_roundtrip(t):
    assert parse_term(format_term(t)) == t
