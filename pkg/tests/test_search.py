import pytest

from fgh.provability import check_proof
from fgh.search import bounded_search, search_stats
from fgh.selfref import BoxMaker, fgh_fixpoint
from fgh.suites import SEARCH_GOALS
from fgh.syntax import parse_formula


def f(text):
    return parse_formula(text)


def test_identity_tiny_budget():
    p = bounded_search("pure", f("(0 = 1) -> (0 = 1)"), 5)
    assert p is not None and p.conclusion == f("(0 = 1) -> (0 = 1)")


def test_falsum_not_found():
    r = search_stats("toyEA", f("0 = 1"), 10_000)
    assert not r["found"] and r["proof"] is None
    assert r["spent"] <= 10_000


@pytest.mark.parametrize("goal", SEARCH_GOALS)
def test_found_proofs_recheck(goal):
    p = bounded_search("toyEA", f(goal), 10_000)
    assert p is not None
    assert check_proof("toyEA", p) and p.conclusion == f(goal)


def test_deterministic():
    g = f("E x. ((x = (1 + 1)) & (A y < x. (y = y)))")
    assert bounded_search("toyEA", g, 10_000) == bounded_search("toyEA", g, 10_000)


def test_budget_limits_search():
    g = f("E x. ((x = (1 + 1)) & (A y < x. (y = y)))")
    assert bounded_search("toyEA", g, 1) is None


def test_fgh_fixpoint_found():
    rho = fgh_fixpoint(f("E x. (x = 0)"), BoxMaker("toyEA", 0))
    p = bounded_search("toyEA", rho, 100_000)
    assert p is not None and check_proof("toyEA", p) and p.conclusion == rho
