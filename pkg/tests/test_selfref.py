import hashlib

import pytest

from fgh import coding
from fgh.hierarchy import Sigma1Class, classify, is_in_class
from fgh.provability import at_code, box_formula, oracle_box_formula
from fgh.selfref import (
    BoxMaker, and_combinator, dense_between, diagonal_fixpoint, diagonal_instance,
    dual_fixpoint_leq, dual_fixpoint_not_less, fgh_fixpoint, or_combinator,
    rosser_sentence, sentence_fixpoint, wc_leq, wc_less,
)
from fgh.semantics import FALSE, TRUE, UNKNOWN, eval_term, eval_with_fuel
from fgh.syntax import (
    And, Exists, NegCode, Not, Or, ProofP, Var, parse_formula, render,
    subformulas,
)

SIGMA = parse_formula("E x. (x = 0)")


def f(text):
    return parse_formula(text)


def val(g, fuel=10):
    return eval_with_fuel(g, fuel).value


def digest(g):
    return hashlib.sha256(render(g).encode()).hexdigest()[:16]


def self_code(rho):
    """Value of the code that a sentence fixpoint computes for itself."""
    u = eval_term(rho.body.left.right)
    inner = rho.body.right.body.left.right
    return coding.sub_num(u, eval_term(inner.v), eval_term(inner.w))


# witness comparison


def test_wc_examples():
    assert val(wc_less(f("E x. x = 1"), f("E x. x = 2"))) is TRUE
    assert val(wc_leq(f("E x. x = 2"), f("E x. x = 1"))) is FALSE
    assert val(wc_leq(f("E x. x = 1"), f("E x. x = 1"))) is TRUE


def test_wc_shape():
    g = wc_leq(f("E x. x = 1"), f("E y. y = 2"))
    assert isinstance(g, Exists)
    assert is_in_class(g, Sigma1Class(1))


def test_wc_fresh_names_avoid_capture():
    a, b = f("E y. (y = 3)"), f("E x. (x = 2)")
    assert val(wc_less(a, b)) is FALSE
    assert val(wc_less(b, a)) is TRUE


def test_wc_normalize_wraps_non_exists():
    g = wc_leq(f("0 = 0"), f("E x. x = 0"), normalize=True)
    assert val(g) is TRUE
    with pytest.raises(ValueError):
        wc_leq(f("0 = 0"), f("E x. x = 0"))


# diagonal lemma


def test_diagonal_ignoring_x():
    phi = diagonal_fixpoint(f("y = 0"))
    assert val(diagonal_instance(phi, 0)) is TRUE
    assert val(diagonal_instance(phi, 1)) is FALSE


@pytest.mark.parametrize("psi,expected", [("x = x", TRUE), ("~(x = x)", FALSE)])
def test_diagonal_constant(psi, expected):
    phi = diagonal_fixpoint(f(psi))
    for k in range(11):
        assert val(diagonal_instance(phi, k)) is expected


def test_diagonal_sees_own_code():
    phi = diagonal_fixpoint(f("x < y + 1000"))
    inst = diagonal_instance(phi, 3)
    assert val(inst, 100) is FALSE
    big = diagonal_fixpoint(f("1000 < x"))
    assert val(diagonal_instance(big, 0), 100) is TRUE


def test_sentence_fixpoint_computes_own_code():
    rho = sentence_fixpoint(f("E p. Proof[toyEA](p, x)"))
    assert self_code(rho) == coding.encode(rho)


# Rosser and FGH


def test_rosser_structure():
    rho = rosser_sentence("toyEA")
    assert is_in_class(rho, Sigma1Class(1))
    assert self_code(rho) == coding.encode(rho)
    args = [g.f for g in subformulas(rho) if isinstance(g, ProofP)]
    assert len(args) == 2
    z = next(a for a in args if isinstance(a, Var))
    assert NegCode(z) in args
    assert digest(rho) == "8ad793385d37f498"


def test_rosser_not_certified():
    assert eval_with_fuel(rosser_sentence("toyEA"), 10_000).value is UNKNOWN


def test_fgh_true_sigma():
    rho = fgh_fixpoint(SIGMA, BoxMaker("toyEA", 0))
    assert val(rho, 100) is TRUE
    assert self_code(rho) == coding.encode(rho)


def test_fgh_classes():
    assert is_in_class(fgh_fixpoint(SIGMA, BoxMaker("toyEA", -1)), Sigma1Class(1))
    assert is_in_class(fgh_fixpoint(SIGMA, BoxMaker("toyEA", 0)), Sigma1Class(1))
    assert is_in_class(fgh_fixpoint(SIGMA, BoxMaker("toyEA", 1)), Sigma1Class(2))


def test_fgh_false_sigma_unknown():
    rho = fgh_fixpoint(f("E x. (x = x + 1)"), BoxMaker("toyEA", 0))
    assert eval_with_fuel(rho, 10_000).value is UNKNOWN


def test_fgh_rejects_bad_sigma():
    with pytest.raises(ValueError):
        fgh_fixpoint(f("A x. x = x"), BoxMaker("toyEA", 0))
    with pytest.raises(ValueError):
        fgh_fixpoint(f("E x. x = y"), BoxMaker("toyEA", 0))


# dual fixpoints


def test_dual_leq():
    rho = dual_fixpoint_leq(SIGMA, "toyEA")
    assert is_in_class(rho, Sigma1Class(1))
    assert self_code(rho) == coding.encode(rho)
    assert digest(rho) == "796bcc2c8526a779"


def test_dual_not_less():
    rho = dual_fixpoint_not_less(SIGMA, "toyEA")
    assert isinstance(rho, Not)
    chi = rho.body
    assert self_code(chi) == coding.encode(chi)
    assert digest(rho) == "1df8f56071014821"


# combinators and density


def test_or_combinator_classes():
    for n, psi in ((0, "0 = 0"), (1, "0 = 1"), (2, "0 = 1")):
        oc = or_combinator(f("0 = 0"), f(psi), n, "toyEA")
        assert is_in_class(oc.sigma, Sigma1Class(n + 1))
        assert is_in_class(oc.rho, Sigma1Class(n + 1))


def test_or_combinator_golden():
    oc = or_combinator(f("0 = 0"), f("0 = 0"), 0, "toyEA")
    assert digest(oc.sigma) == "d82df196503d4c54"
    assert digest(oc.rho) == "04ce1d8c77df0733"
    assert oc.box_rho == at_code(oracle_box_formula("toyEA", 0), oc.rho)


def test_and_combinator():
    a, b = f("0 = 0"), f("1 = 1")
    assert and_combinator(a, b, 1, "toyEA") == at_code(oracle_box_formula("toyEA", 1), And(a, b))


def test_dense_between_template():
    s0, s2 = f("E x. (x = x + 1)"), f("E x. (x = 3)")
    d = dense_between(s0, s2, "toyEA")
    assert isinstance(d, Or) and d.left == s0
    assert isinstance(d.right, And) and d.right.right == s2
    assert is_in_class(d, Sigma1Class(1))


def test_dense_between_lower_true():
    d = dense_between(SIGMA, f("E x. (x = 3)"), "toyEA")
    assert val(d) is TRUE


def test_box_vs_oracle_level_minus_one():
    assert BoxMaker("toyEA", -1).formula() == box_formula("toyEA")
    assert classify(BoxMaker("toyEA", 2).formula()) == Sigma1Class(3)
