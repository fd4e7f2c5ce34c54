import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fgh import generators
from fgh.frames import cross_check, strict_orders
from fgh.glp import (
    BOT, Atom, Box, KripkeModel, MImp, ModalLine, ModalParseError, ModalProof,
    gl_decide, glp_check_proof, glp_diagnose, load_modal_proof, mparse, mrender,
    msubst, necessitate, realize, refutes,
)
from fgh.hierarchy import Pi, Sigma, is_in_class
from fgh.provability import at_code, box_formula, boxbox_formula
from fgh.syntax import BOT as FALSUM
from fgh.syntax import Implies, parse_formula


def one_line(kind, text):
    return ModalProof((ModalLine(kind, mparse(text)),))


# parsing


def test_parse_render_round_trip():
    for text in ("[0]p -> [1]p", "<2>p -> [3]<2>p", "[]([]p -> p) -> []p", "~bot & (p | q)"):
        f = mparse(text)
        assert mparse(mrender(f)) == f


def test_diamond_is_negated_box():
    assert mparse("<1>p") == mparse("~[1]~p")


def test_parse_error():
    with pytest.raises(ModalParseError):
        mparse("[0 p")


# GLP proofs


def test_mono_schema():
    assert glp_check_proof(one_line("mono", "[3]p -> [4]p"))


def test_neg_schema():
    assert glp_check_proof(one_line("neg", "<2>p -> [3]<2>p"))


def test_wrong_direction_rejected():
    assert not glp_check_proof(one_line("mono", "[4]p -> [3]p"))


def test_k_and_lob():
    assert glp_check_proof(one_line("k", "[1](p -> q) -> ([1]p -> [1]q)"))
    assert glp_check_proof(one_line("lob", "[2]([2]p -> p) -> [2]p"))
    assert not glp_check_proof(one_line("lob", "[2]([1]p -> p) -> [2]p"))


def test_mp_and_nec():
    p = ModalProof((
        ModalLine("taut", mparse("p -> p")),
        ModalLine("nec", mparse("[0](p -> p)"), (0,), 0),
        ModalLine("mono", mparse("[0](p -> p) -> [1](p -> p)")),
        ModalLine("mp", mparse("[1](p -> p)"), (1, 2)),
    ))
    assert glp_check_proof(p)
    assert glp_check_proof(necessitate(p, 5))
    bad = ModalProof(p.lines[:3] + (ModalLine("mp", mparse("[1](p -> p)"), (2, 1)),))
    assert glp_diagnose(bad) == ["line 3: cited lines do not fit modus ponens"]


def test_load_both_formats():
    p = one_line("mono", "[0]p -> [1]p")
    as_list = json.dumps(p.to_json())
    as_lines = "\n".join(json.dumps(d) for d in p.to_json())
    assert load_modal_proof(as_list) == p == load_modal_proof(as_lines)
    with pytest.raises(ValueError):
        load_modal_proof('[{"kind": "magic", "formula": "p"}]')


# GL decision


def test_lob_valid():
    assert gl_decide(mparse("[]([]p -> p) -> []p")).valid


def test_reflexivity_invalid():
    r = gl_decide(mparse("[]p -> p"))
    assert not r.valid
    m = r.countermodel
    assert m.size == 1 and not m.rel and "p" not in m.val[0]


def test_four_valid():
    assert gl_decide(mparse("[]p -> [][]p")).valid


def test_countermodels_are_gl_frames():
    for text in ("[]p | []~p", "<>p -> []<>p", "[][]bot -> []bot", "<>T -> <>[]bot".replace("T", "~bot")):
        r = gl_decide(mparse(text))
        if not r.valid:
            m = r.countermodel
            assert m.is_transitive() and m.is_irreflexive()
            assert refutes(m, mparse(text))


def test_second_incompleteness_shape():
    assert not gl_decide(mparse("~[]bot")).valid
    assert gl_decide(mparse("<>~bot -> ~[]<>~bot")).valid


def test_multiple_levels_rejected():
    with pytest.raises(ValueError):
        gl_decide(mparse("[0]p -> [1]p"))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_decide_matches_small_models(seed):
    f = generators.modal_formula(generators.rng_from(seed), depth=3, max_level=0)
    r = gl_decide(f)
    if not r.valid:
        assert refutes(r.countermodel, f)
        return
    for k in range(1, 4):
        for rel in strict_orders(k):
            for bits in itertools.product([(), ("p",), ("q",), ("p", "q")], repeat=k):
                m = KripkeModel(k, rel, tuple(frozenset(b) for b in bits))
                assert all(m.holds(f, w) for w in range(k))


def test_strict_order_counts():
    assert [len(strict_orders(k)) for k in range(1, 5)] == [1, 2, 5, 16]


def test_cross_check_tight_bound():
    # modal depth is below the size, and depth d needs at most d + 1 worlds
    res = cross_check(max_size=4, max_worlds=4)
    assert res["valid_with_countermodel"] == []
    assert res["invalid_without_small_countermodel"] == []


def test_cross_check_misses_need_bigger_frames():
    res = cross_check(max_size=5, max_worlds=3)
    assert res["valid_with_countermodel"] == []
    for f in res["invalid_without_small_countermodel"]:
        m = gl_decide(f).countermodel
        assert m.size > 3 and refutes(m, f)


def test_kripke_model_json():
    m = KripkeModel(2, frozenset({(0, 1)}), (frozenset(), frozenset({"p"})))
    assert m.holds(mparse("[]p"), 0) and not m.holds(mparse("p"), 0)
    assert m.to_json()["relation"] == [[0, 1]]


# realization


def test_realize_base_case():
    s = parse_formula("0 = 0")
    assert realize(mparse("[0]p"), "toyEA", {"p": s}) == at_code(box_formula("toyEA"), s)


def test_realize_bot():
    assert realize(BOT, "toyEA", {}) == FALSUM


def test_realize_levels_use_boxbox():
    s = parse_formula("0 = 1")
    g = realize(mparse("[1]p"), "toyEA", {"p": s})
    assert g == at_code(boxbox_formula("toyEA", 1), s)


def test_realize_mono_instance_classes():
    s = parse_formula("0 = 0")
    for n in range(3):
        g = realize(Box(n, Atom("p")), "toyEA", {"p": s})
        h = realize(Box(n + 1, Atom("p")), "toyEA", {"p": s})
        inst = realize(MImp(Box(n, Atom("p")), Box(n + 1, Atom("p"))), "toyEA", {"p": s})
        assert inst == Implies(g, h)
        # [n] is Sigma(n+1) and <n> is Pi(n+1)
        assert is_in_class(g, Sigma(n + 1)) and is_in_class(h, Sigma(n + 2))
        assert is_in_class(realize(mparse(f"<{n}>p"), "toyEA", {"p": s}), Pi(n + 1))
        assert is_in_class(inst, Sigma(n + 2))


def test_realize_substitution_commutes():
    f = mparse("[0](p -> [1]p)")
    g = mparse("q & [0]q")
    asg = {"p": parse_formula("0 = 1"), "q": parse_formula("E x. (x = 0)")}
    lhs = realize(msubst(f, "p", g), "toyEA", asg)
    rhs = realize(f, "toyEA", {**asg, "p": realize(g, "toyEA", asg)})
    assert lhs == rhs


def test_realize_needs_sentences():
    with pytest.raises(ValueError):
        realize(mparse("p"), "toyEA", {"p": parse_formula("x = 0")})
    with pytest.raises(ValueError):
        realize(mparse("p & q"), "toyEA", {"p": parse_formula("0 = 0")})
