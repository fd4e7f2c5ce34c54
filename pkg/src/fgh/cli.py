"""Command-line front end: ``fgh <subcommand> ...``.

Output is one JSON document on stdout (``--pretty`` indents it).  Exit codes:
0 ok, 1 domain error or failed check, 2 usage error.
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys

from . import coding
from .glp import ModalParseError, gl_decide, glp_check_proof, glp_diagnose, load_modal_proof, mparse, realize
from .hierarchy import classify, memberships
from .provability import (
    box_formula, boxbox_formula, boxbox_old_formula, check, get_theory, load_proof,
    omega_box_formula, oracle_box_formula,
)
from .search import search_stats
from .selfref import (
    BoxMaker, dense_between, dual_fixpoint_leq, dual_fixpoint_not_less, fgh_fixpoint,
    rosser_sentence,
)
from .semantics import eval_with_fuel
from .syntax import ParseError, parse_formula, render

SCHEMA_VERSION = 1


class DomainError(Exception):
    """A well-formed request the library cannot satisfy."""


def _formula(text: str):
    try:
        return parse_formula(text)
    except ParseError as e:
        raise DomainError(f"cannot parse formula: {e}") from None


def _constructed(f) -> dict:
    return {"formula": render(f), "class": str(classify(f)), "code": str(coding.encode(f))}


# --------------------------------------------------------------------------
# Subcommands; each returns (ok, payload)


def cmd_classify(a):
    f = _formula(a.formula)
    return True, {"least_class": str(classify(f)), "memberships": memberships(f)}


def cmd_eval(a):
    return True, eval_with_fuel(_formula(a.formula), a.fuel).to_json()


def cmd_encode(a):
    f = _formula(a.formula)
    return True, {"formula": render(f), "code": str(coding.encode(f))}


def cmd_decode(a):
    try:
        return True, {"formula": render(coding.decode_any(a.code))}
    except coding.DecodeError as e:
        raise DomainError(str(e)) from None


def cmd_rosser(a):
    return True, _constructed(rosser_sentence(a.theory))


def cmd_fgh_fixpoint(a):
    return True, _constructed(fgh_fixpoint(_formula(a.sigma), BoxMaker(a.theory, a.level)))


def cmd_dual(a):
    build = dual_fixpoint_leq if a.kind == "leq" else dual_fixpoint_not_less
    return True, _constructed(build(_formula(a.sigma), a.theory))


def cmd_dense(a):
    return True, _constructed(dense_between(_formula(a.lower), _formula(a.upper), a.theory))


def cmd_check_proof(a):
    try:
        p = load_proof(a.proof)
    except (OSError, ValueError, KeyError) as e:
        raise DomainError(f"cannot load proof: {e}") from None
    rep = check(a.theory, p, a.level, a.fuel)
    return rep.ok, {**rep.to_json(), "lines": len(p), "conclusion": render(p.conclusion)}


def cmd_search(a):
    st = search_stats(a.theory, _formula(a.goal), a.budget)
    out = {"result": "Found" if st["found"] else "NotFound", "spent": st["spent"]}
    if st["found"]:
        out["proof"] = [ln.to_json() for ln in st["proof"].lines]
    return True, out


PREDICATES = {
    "box": lambda T, n: box_formula(T),
    "oracle-box": oracle_box_formula,
    "boxbox": boxbox_formula,
    "boxbox-old": boxbox_old_formula,
    "omega-box": omega_box_formula,
}


def cmd_predicate(a):
    f = PREDICATES[a.kind](a.theory, a.level)
    return True, {"predicate": a.kind, "level": a.level, "formula": render(f), "class": str(classify(f))}


def _modal(text):
    try:
        return mparse(text)
    except ModalParseError as e:
        raise DomainError(f"cannot parse modal formula: {e}") from None


def cmd_gl_decide(a):
    return True, gl_decide(_modal(a.formula)).to_json()


def cmd_glp_check(a):
    try:
        with open(a.proof) as fh:
            p = load_modal_proof(fh.read())
    except (OSError, ValueError, KeyError) as e:
        raise DomainError(f"cannot load modal proof: {e}") from None
    ok = glp_check_proof(p)
    return ok, {"verdict": "Valid" if ok else "Invalid", "lines": len(p.lines), "diagnostics": glp_diagnose(p)}


def cmd_glp_realize(a):
    asg = {}
    for item in a.assign:
        name, sep, text = item.partition("=")
        if not sep or not name.strip():
            raise DomainError(f"bad assignment {item!r}; expected atom=formula")
        asg[name.strip()] = _formula(text)
    f = realize(_modal(a.formula), a.theory, asg)
    return True, {"formula": render(f), "class": str(classify(f))}


def cmd_suite(a):
    from .suites import SUITES, default_seed, run_suite
    if a.name not in SUITES:
        raise DomainError(f"unknown suite {a.name!r}; known: {', '.join(sorted(SUITES))}")
    params = inspect.signature(SUITES[a.name]).parameters
    kwargs = {}
    if "seed" in params:
        kwargs["seed"] = a.seed if a.seed is not None else default_seed()
    if a.samples is not None:
        kwargs["samples"] = a.samples
    try:
        res = run_suite(a.name, **kwargs)
    except TypeError:
        raise DomainError(f"suite {a.name} does not take these options") from None
    out = {**res.to_json(), "seed": kwargs.get("seed")}
    if a.report:
        from .report import write_report
        out["report"] = [str(p) for p in write_report(res, a.report)]
    return res.ok, out


# --------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fgh", description=__doc__.splitlines()[0])
    ap.add_argument("--pretty", action="store_true", help="indented output")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        return p

    def theory(p):
        p.add_argument("--theory", default="toyEA")

    p = add("classify", cmd_classify, help="least class of a formula")
    p.add_argument("formula")
    p = add("eval", cmd_eval, help="fuel-bounded truth value of a sentence")
    p.add_argument("formula")
    p.add_argument("--fuel", type=int, default=1000)
    p = add("encode", cmd_encode, help="code of a formula")
    p.add_argument("formula")
    p = add("decode", cmd_decode, help="formula of a code")
    p.add_argument("code", type=int)
    theory(add("rosser", cmd_rosser, help="Rosser sentence"))
    p = add("fgh-fixpoint", cmd_fgh_fixpoint, help="rho equivalent to sigma <= box rho")
    p.add_argument("--sigma", required=True)
    p.add_argument("--level", type=int, default=-1, help="-1 for plain provability")
    theory(p)
    p = add("dual", cmd_dual, help="dual fixpoints")
    p.add_argument("kind", choices=["leq", "notless"])
    p.add_argument("--sigma", required=True)
    theory(p)
    p = add("dense", cmd_dense, help="sentence strictly between two Sigma_1 sentences")
    p.add_argument("--lower", required=True)
    p.add_argument("--upper", required=True)
    theory(p)
    p = add("check-proof", cmd_check_proof, help="check a JSON-lines proof")
    p.add_argument("proof")
    p.add_argument("--level", type=int, default=-1)
    p.add_argument("--fuel", type=int, default=1000)
    theory(p)
    p = add("search", cmd_search, help="bounded proof search")
    p.add_argument("--goal", required=True)
    p.add_argument("--budget", type=int, default=10_000)
    theory(p)
    p = add("predicate", cmd_predicate, help="provability predicates")
    p.add_argument("kind", choices=sorted(PREDICATES))
    p.add_argument("--level", type=int, default=0)
    theory(p)

    gl = add("gl", None, help="modal logic GL").add_subparsers(dest="gl_command", required=True)
    p = gl.add_parser("decide")
    p.set_defaults(fn=cmd_gl_decide)
    p.add_argument("formula")

    glp = add("glp", None, help="polymodal logic GLP").add_subparsers(dest="glp_command", required=True)
    p = glp.add_parser("check")
    p.set_defaults(fn=cmd_glp_check)
    p.add_argument("proof")
    p = glp.add_parser("realize")
    p.set_defaults(fn=cmd_glp_realize)
    p.add_argument("formula")
    p.add_argument("--assign", action="append", default=[], metavar="ATOM=FORMULA")
    theory(p)

    p = add("suite", cmd_suite, help="run a bundled property suite")
    p.add_argument("name")
    p.add_argument("--seed", type=int, default=None, help="default: FGH_SEED or 20260101")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--report", metavar="DIR", help="write CSV, PNG and JSON here")
    return ap


def dispatch(argv) -> tuple:
    """Run one command; return (exit code, output document)."""
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as e:
        return (2 if e.code else 0), None
    try:
        if a.command in ("rosser", "fgh-fixpoint", "dual", "dense", "check-proof", "search",
                         "predicate") or getattr(a, "glp_command", None) == "realize":
            get_theory(a.theory)
        ok, payload = a.fn(a)
    except (DomainError, ValueError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        return 1, {"status": "error", "schema_version": SCHEMA_VERSION, "diagnostics": [str(msg)]}
    return (0 if ok else 1), {"status": "ok" if ok else "error",
                              "schema_version": SCHEMA_VERSION, "payload": payload}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    pretty = "--pretty" in argv
    code, doc = dispatch([x for x in argv if x != "--pretty"])
    if doc is not None:
        print(json.dumps(doc, indent=2 if pretty else None, default=str))
    return code


if __name__ == "__main__":
    sys.exit(main())
