import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fgh import generators
from fgh.semantics import eval_term
from fgh.syntax import (
    Add, BForall, Eq, Exists, Less, Mul, Numeral, One, ParseError, Var, Zero,
    expand_numeral, free_vars, numeral, numeral_value, parse_formula, render,
    substitute_numeral,
)


def test_parse_square_four():
    f = parse_formula("E x. x * x = 1 + 1 + 1 + 1")
    assert isinstance(f, Exists) and f.var == "x"
    assert f.body.left == Mul(Var("x"), Var("x"))
    assert eval_term(f.body.right) == 4


def test_parse_bounded_prefix():
    f = parse_formula("A y < z. E x. x = y + 1")
    assert f == BForall("y", Var("z"), Exists("x", Eq(Var("x"), Add(Var("y"), One()))))


def test_parse_error_offset():
    with pytest.raises(ParseError) as e:
        parse_formula("E x <")
    assert e.value.offset == 5


def test_render_atoms():
    assert render(Eq(Zero(), Zero())) == "0 = 0"
    assert render(Exists("x", Less(Var("x"), One()))) == "E x. (x < 1)"


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32))
def test_render_parse_round_trip(seed):
    f = generators.any_formula(generators.rng_from(seed))
    assert parse_formula(render(f)) == f


def test_substitute_numeral_examples():
    assert substitute_numeral(parse_formula("x < 1"), "x", 0) == Less(Zero(), One())
    assert substitute_numeral(parse_formula("E x. x = y"), "y", 2) == parse_formula("E x. x = 2")
    f = parse_formula("E x. x = 0")
    assert substitute_numeral(f, "x", 5) == f


def test_free_vars_examples():
    assert free_vars(parse_formula("E x. x = y")) == {"y"}
    assert free_vars(parse_formula("0 = 0")) == frozenset()
    assert free_vars(BForall("y", Var("z"), Less(Var("y"), Var("x")))) == {"z", "x"}


def test_bound_variable_cannot_occur_in_its_bound():
    with pytest.raises(ValueError):
        BForall("y", Var("y"), Eq(Var("y"), Zero()))


def test_numeral_small_cases():
    assert numeral(0) == Zero()
    assert numeral(1) == One()
    assert numeral(5) == Numeral(5)
    two = Add(One(), One())
    assert expand_numeral(5) == Add(Mul(two, Mul(two, One())), One())
    assert eval_term(expand_numeral(5)) == 5


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**6))
def test_numeral_evaluates_to_value(k):
    assert eval_term(numeral(k)) == k
    assert eval_term(expand_numeral(k)) == k
    assert numeral_value(numeral(k)) == k
