"""
Tests for term parsing, evaluation and identity checking.
"""

import pytest

from semirings.core.terms import (
    Identity,
    One,
    Prod,
    Sum,
    Var,
    Zero,
    check_identity,
    eval_term,
    parse_identity,
    parse_term,
)
from semirings.errors import TermSyntaxError, UnboundVariable
from semirings.salgebra.builtins import BOOL, C3, NSTAR, Z2, Z3


def test_coefficients_expand_to_sums():
    assert parse_term("2x") == Sum(Var("x"), Var("x"))
    assert parse_term("3") == Sum(Sum(One(), One()), One())
    assert parse_term("0") == Zero()


def test_powers_expand_to_products():
    assert parse_term("x^2") == Prod(Var("x"), Var("x"))
    assert parse_term("x^0") == One()


def test_juxtaposition_and_star_agree():
    assert parse_term("x y") == parse_term("x*y")
    assert parse_term("2(x+y)") == Sum(Sum(Var("x"), Var("y")), Sum(Var("x"), Var("y")))


def test_identity_variables_in_order_of_occurrence():
    identity = parse_identity("y + x = x + y")
    assert identity.variables == ("y", "x")
    assert str(identity) == "y+x=x+y"


def test_undeclared_variables_are_rejected():
    with pytest.raises(ValueError):
        Identity(Var("x"), One(), ())


def test_syntax_errors_carry_position():
    with pytest.raises(TermSyntaxError) as info:
        parse_identity("1 + = x")
    assert info.value.position == 4
    with pytest.raises(TermSyntaxError):
        parse_term("x $ y")
    with pytest.raises(TermSyntaxError):
        parse_term("x^y")


def test_unbound_variable():
    with pytest.raises(UnboundVariable) as info:
        eval_term(Z2, parse_term("x + y"), {"x": 1})
    assert info.value.variable == "y"


def test_eval_uses_the_tables():
    assert eval_term(NSTAR, parse_term("1+1"), {}) == 2
    assert eval_term(NSTAR, parse_term("1+1+1"), {}) == 1
    assert eval_term(Z3, parse_term("2x+1"), {"x": 1}) == 0


def test_star_identities():
    star = [parse_identity("1+2x=1"), parse_identity("x^2=x")]
    for algebra in (Z2, BOOL, NSTAR, C3):
        assert all(check_identity(algebra, identity) for identity in star)
    result = check_identity(Z3, star[0])
    assert not result
    assert result.counterexample is not None


def test_idempotent_addition_counterexample():
    result = check_identity(Z2, parse_identity("x+x=x"))
    assert not result.holds
    assert result.counterexample == {"x": 1}


def test_closed_identity_needs_no_assignment():
    assert check_identity(BOOL, parse_identity("1+1=1"))
    assert not check_identity(Z2, parse_identity("1+1=1"))
