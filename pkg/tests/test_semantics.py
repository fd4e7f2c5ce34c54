import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fgh import coding, generators
from fgh.semantics import (
    FALSE, TRUE, UNKNOWN, CodeError, EvalError, eval_delta0, eval_term,
    eval_with_fuel, true_sigma,
)
from fgh.syntax import TrueN, numeral, parse_formula, parse_term


def v(text, fuel):
    return eval_with_fuel(parse_formula(text), fuel).value


def test_eval_term_examples():
    assert eval_term(parse_term("exp(1 + 1 + 1)")) == 8
    assert eval_term(parse_term("0 + 1 * 1")) == 1
    assert eval_term(parse_term("x * y + 1"), {"x": 3, "y": 4}) == 13


def test_unbound_variable_is_an_error():
    with pytest.raises(EvalError):
        eval_term(parse_term("x + 1"))


def test_code_function_outside_domain():
    with pytest.raises(CodeError):
        eval_term(parse_term("neg(5)"))


def test_delta0_examples():
    assert eval_delta0(parse_formula("A x < 5. E y < 6. (x < y)")) is True
    assert eval_delta0(parse_formula("E x < 3. (x * x = 5)")) is False
    assert eval_delta0(parse_formula("1 < exp(1)")) is True


def test_fuel_verdicts():
    assert v("E x. (x * x = 4)", 10) is TRUE
    assert v("E x. (x * x = 2)", 100) is UNKNOWN
    assert v("A x. (x < x + 1)", 10) is UNKNOWN
    assert v("A x. (x = 0)", 10) is FALSE


def test_fuel_is_reported():
    r = eval_with_fuel(parse_formula("E x. (x * x = 4)"), 10)
    assert 0 < r.fuel_used <= 10
    assert r.to_json()["verdict"] == "True"


def test_true_sigma_examples():
    assert true_sigma(parse_formula("E x. (x = 0)"), 0, 1).value is TRUE
    assert true_sigma(parse_formula("E x. (x = x + 1)"), 0, 50).value is UNKNOWN


def test_truen_decodes_its_argument():
    code = coding.encode(parse_formula("E x. (x = 0)"))
    assert eval_with_fuel(TrueN(1, numeral(code)), 10).value is TRUE


def test_kleene_tables():
    assert (TRUE & UNKNOWN) is UNKNOWN and (FALSE & UNKNOWN) is FALSE
    assert (TRUE | UNKNOWN) is TRUE and (FALSE | UNKNOWN) is UNKNOWN
    assert ~UNKNOWN is UNKNOWN and ~TRUE is FALSE


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_certified_verdicts_agree_with_delta0(seed):
    rng = generators.rng_from(seed)
    f = generators.delta0(rng, [], depth=3)
    assert eval_with_fuel(f, 64).value is (TRUE if eval_delta0(f) else FALSE)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_more_fuel_never_flips(seed):
    f = generators.sigma1_sentence(generators.rng_from(seed))
    lo, hi = eval_with_fuel(f, 4).value, eval_with_fuel(f, 256).value
    if lo is not UNKNOWN:
        assert hi is lo
