import hashlib
from importlib import resources

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fgh import coding, generators
from fgh.semantics import eval_term
from fgh.syntax import parse_formula, parse_term, substitute_numeral

# Any edit to the shipped encoding table is a breaking change.
LOCK_SHA256 = "0ff5910f97ee21cd51b7aae32ef9504759146105c88ea8184b65d3e99784e333"


def enc(text):
    return coding.encode(parse_formula(text))


def test_lock_file_unchanged():
    data = resources.files("fgh").joinpath("encoding.lock").read_bytes()
    assert hashlib.sha256(data).hexdigest() == LOCK_SHA256


def test_golden_codes():
    for text, code in coding.load_lock()["golden"].items():
        assert enc(text) == code
        assert coding.decode(code) == parse_formula(text)


def test_zero_equals_zero():
    assert enc("0 = 0") == 17891585
    assert coding.decode(enc("0 = 0")) == parse_formula("0 = 0")


@pytest.mark.parametrize("bad", [0, 1, 2, 17891584, 10**40])
def test_decode_rejects_non_codes(bad):
    with pytest.raises(coding.DecodeError):
        coding.decode(bad)


def test_sub_num_examples():
    x = coding.var_code("x")
    y = coding.var_code("y")
    assert coding.sub_num(enc("x < 1"), x, 0) == enc("0 < 1")
    assert coding.sub_num(enc("E x. x = y"), y, 2) == enc("E x. x = 2")
    assert coding.sub_num(enc("0 = 0"), x, 7) == enc("0 = 0")


def test_sub_inside_terms_evaluates():
    t = parse_term("sub(n, m, 3)")
    env = {"n": enc("x < 1"), "m": coding.var_code("x")}
    assert eval_term(t, env) == enc("3 < 1")


def test_code_functions():
    a, b = enc("0 = 0"), enc("0 = 1")
    assert coding.neg_code(a) == enc("~(0 = 0)")
    assert coding.imp_code(a, b) == enc("(0 = 0) -> (0 = 1)")
    assert coding.all_code(coding.var_code("x"), enc("x = x")) == enc("A x. (x = x)")


@settings(max_examples=400, deadline=None)
@given(st.integers(0, 2**32))
def test_round_trip(seed):
    f = generators.any_formula(generators.rng_from(seed))
    assert coding.decode(coding.encode(f)) == f


@settings(max_examples=400, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(["x", "y", "z", "w"]), st.integers(0, 2**70))
def test_sub_num_commutes_with_substitution(seed, v, n):
    f = generators.any_formula(generators.rng_from(seed))
    assert coding.sub_num(coding.encode(f), coding.var_code(v), n) == \
        coding.encode(substitute_numeral(f, v, n))


def test_sequence_examples():
    assert coding.seq_len(coding.seq_encode([])) == 0
    s = coding.seq_encode([enc("0 = 0")])
    assert coding.seq_at(s, 0) == enc("0 = 0")


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(0, 2**90), max_size=8))
def test_sequence_round_trip(items):
    c = coding.seq_encode(items)
    assert coding.is_seq(c)
    assert coding.seq_decode(c) == items
    assert coding.seq_len(c) == len(items)
    assert [coding.seq_at(c, i) for i in range(len(items))] == items


def test_sequence_index_out_of_range():
    with pytest.raises((IndexError, coding.DecodeError)):
        coding.seq_at(coding.seq_encode([1, 2]), 2)
