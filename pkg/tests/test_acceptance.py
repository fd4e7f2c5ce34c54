"""Acceptance criteria 1 to 9 at full size.

Each test prints one line ``criterion N: PASS|FAIL  detail`` and then asserts.
Run standalone with ``python3 tests/test_acceptance.py`` for the summary only.
"""

import hashlib
import sys
from importlib import resources

import pytest

from fgh.search import bounded_search
from fgh.suites import run_suite
from fgh.syntax import parse_formula

LINES = []


def announce(capsys, n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    LINES.append(line)
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    return ok


def c1(capsys=None):
    r = run_suite("wc-laws", samples=5000, fuel=64)
    rate = r.metrics["certified_rate"]
    ok = rate >= 0.95 and r.failed == 0 and r.seconds < 60
    return announce(capsys, 1, ok, f"wc-laws certified={rate:.3f} violations={r.failed} {r.seconds:.1f}s")


def c2(capsys=None):
    r = run_suite("wc-closure", samples=500, levels=(0, 1, 2))
    return announce(capsys, 2, r.ok, f"wc-closure in-class={r.passed} out-of-class={r.failed} "
                    f"first={r.counterexamples[:1]}")


def c3(capsys=None):
    r = run_suite("diagonal", samples=200, max_k=8, fuel=1000)
    ok = r.ok and r.seconds < 60
    return announce(capsys, 3, ok, f"diagonal instances={r.metrics['instances']} "
                    f"certain={r.metrics['certain']} mismatches={r.failed} {r.seconds:.1f}s")


LOCK_SHA256 = "0ff5910f97ee21cd51b7aae32ef9504759146105c88ea8184b65d3e99784e333"


def c4(capsys=None):
    r = run_suite("coding", samples=1000)
    data = resources.files("fgh").joinpath("encoding.lock").read_bytes()
    same = hashlib.sha256(data).hexdigest() == LOCK_SHA256
    return announce(capsys, 4, r.ok and same, f"coding cases={r.passed} failures={r.failed} "
                    f"golden={r.checks['golden encoding.lock']} lock-unchanged={same}")


def c5(capsys=None):
    r = run_suite("proofs", budget=10_000)
    bot = bounded_search("toyEA", parse_formula("0 = 1"), 10_000)
    ok = r.ok and bot is None
    return announce(capsys, 5, ok, f"proofs corpus={r.metrics['corpus']} passed={r.passed} "
                    f"failed={r.failed} search(0=1)={'NotFound' if bot is None else 'Found'}")


def c6(capsys=None):
    r = run_suite("oracle", samples=100)
    return announce(capsys, 6, r.ok, f"oracle checks={r.passed} failures={r.failed}")


def c7(capsys=None):
    r = run_suite("predicates", max_level=3)
    classes = ", ".join(f"{row[0]}[{row[1]}]={row[2]}" for row in r.rows)
    return announce(capsys, 7, r.ok, f"predicates failures={r.failed} {classes}")


def c8(capsys=None):
    r = run_suite("fgh", fuel=1000, budget=100_000)
    ok = r.ok and r.seconds < 120
    rows = "; ".join(f"level {row[0]}: {row[1]}, proof {row[2]}" for row in r.rows)
    return announce(capsys, 8, ok, f"fgh {rows} {r.seconds:.1f}s")


def c9(capsys=None):
    r = run_suite("glp", max_size=6, max_worlds=4, realize_cases=200)
    missed = r.metrics["needs_more_worlds"]
    return announce(capsys, 9, r.ok, f"glp formulas={r.metrics['formulas']} "
                    f"disagreements={r.failed} needs_more_worlds={missed}")


CRITERIA = [c1, c2, c3, c4, c5, c6, c7, c8, c9]


@pytest.mark.parametrize("crit", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 10)])
def test_criterion(crit, capsys):
    assert crit(capsys)


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
