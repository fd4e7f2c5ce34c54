import pytest

from fgh.hierarchy import (
    DELTA0, Pi, Sigma, Sigma1Class, SigmaB, SigmaBang, classify, is_delta0,
    is_in_class, leq, memberships, nnf, parse_class,
)
from fgh.syntax import parse_formula

# (formula, least class), derived by hand from the grammar before the classifier ran
TABLE = [
    ("0 = 0", DELTA0),
    ("A x < 5. E y < 6. (x < y)", DELTA0),
    ("~(E x < y. (x * x = y))", DELTA0),
    ("E x. (x * x = 4)", SigmaBang(1)),
    ("E w. A y < w. E x < w. (y + x = w)", SigmaBang(1)),
    ("A x. (x < x + 1)", Pi(1)),
    ("~(E x. (x = 0))", Pi(1)),
    ("E x. E y. (x = y)", Sigma(1)),
    ("(E x. (x = 0)) & (E y. (y = 1))", Sigma(1)),
    ("(E x. (x = 0)) -> (0 = 1)", Pi(1)),
    ("A y < z. E x. (x = y + 1)", SigmaB(1)),
    ("E u. A y < u. E x. (x = y + 1)", Sigma1Class(1)),
    ("A x. E y. (x < y)", Pi(2)),
    ("E x. A y. (x < y)", SigmaBang(2)),
    ("E x. E z. A y. (x < y + z)", Sigma(2)),
    ("(A x. E y. (x < y)) | (E x. A y. (y < x))", Sigma(3)),
    ("E p. Proof[toyEA](p, v)", SigmaBang(1)),
    ("TrueN[2](v)", Sigma(2)),
    ("~TrueN[2](v)", Pi(2)),
    ("E p. OProof[toyEA,1](p, v)", Sigma1Class(2)),
]


@pytest.mark.parametrize("text,expected", TABLE)
def test_hand_table(text, expected):
    assert classify(parse_formula(text)) == expected


def test_square_is_also_sigma1():
    f = parse_formula("E x. (x * x = 4)")
    assert is_in_class(f, Sigma(1)) and is_in_class(f, SigmaBang(1))


def test_sigma1_in_pi2():
    assert is_in_class(parse_formula("E x. x = 0"), Pi(2))


def test_forall_exists_not_sigma1():
    assert not is_in_class(parse_formula("A x. E y. y = x"), Sigma(1))


def test_delta0_sentence_not_bang():
    f = parse_formula("A x < 3. (x < 4)")
    assert is_delta0(f)
    assert is_in_class(f, Sigma(1))
    assert not is_in_class(f, SigmaBang(1))


def test_class_order():
    assert leq(SigmaBang(1), Sigma(1))
    assert leq(Sigma(1), SigmaB(1))
    assert leq(SigmaB(1), Sigma1Class(1))
    assert leq(Sigma(1), Pi(2)) and leq(Pi(1), Sigma(2))
    assert not leq(Sigma(2), Sigma1Class(1))
    # no collection: nested bounded quantifiers stack alternations
    assert not leq(SigmaB(1), Sigma(3)) and not leq(Sigma1Class(1), Sigma(2))


def test_parse_class_round_trip():
    for c in (DELTA0, Sigma(3), Pi(1), SigmaBang(2), SigmaB(4), Sigma1Class(2)):
        assert parse_class(str(c)) == c
    with pytest.raises(ValueError):
        parse_class("Sigma(0)")


def test_nnf_preserves_class():
    for text, expected in TABLE:
        f = parse_formula(text)
        assert classify(nnf(f)) == expected


def test_memberships_upward_closed():
    ms = memberships(parse_formula("E x. (x = 0)"))
    assert "Sigma(1)" in ms and "Pi(2)" in ms and "Delta0" not in ms
