"""Bundled property suites, shared by ``fgh suite`` and the acceptance tests.

Each suite returns a :class:`SuiteResult` with pass/fail counts, a few
counterexamples and table rows for the report writer.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from importlib import resources

from . import coding, generators
from .frames import cross_check
from .glp import (
    Box, MImp, ModalLine, ModalProof, Dia, glp_check_proof,
    mrender, msubst, necessitate, realize,
)
from .hierarchy import (
    Pi, Sigma, Sigma1Class, SigmaBang, classify, is_in_class,
)
from .provability import (
    Proof, ProofLine, axiom, check, check_oracle_proof, check_proof,
    deduction_extract, dual, mp, oracle, oracle_box_formula,
    box_formula, boxbox_formula, omega_box_formula, reassemble, taut,
)
from .search import bounded_search
from .selfref import (
    BoxMaker, diagonal_fixpoint, diagonal_instance, fgh_fixpoint, wc_leq,
    wc_less,
)
from .semantics import FALSE, TRUE, UNKNOWN, Truth, eval_with_fuel
from .syntax import (
    BOT, And, Exists, Forall, Implies, Less, Not, Var, free_vars,
    numeral, parse_formula, render, substitute_numeral,
)


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    checks: dict = field(default_factory=dict)
    metrics: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    columns: tuple = ()
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.failed == 0 and all(self.checks.values())

    def fail(self, what, limit: int = 10):
        self.failed += 1
        if len(self.counterexamples) < limit:
            self.counterexamples.append(what)

    def to_json(self) -> dict:
        return {"suite": self.name, "ok": self.ok, "passed": self.passed,
                "failed": self.failed, "checks": self.checks, "metrics": self.metrics,
                "counterexamples": self.counterexamples, "seconds": round(self.seconds, 3)}


def default_seed() -> int:
    env = os.environ.get("FGH_SEED")
    return int(env) if env else generators.DEFAULT_SEED


def _imp(a: Truth, b: Truth) -> Truth:
    return ~a | b


# --------------------------------------------------------------------------
# Witness comparison laws

LAWS = {
    1: "(A<B) -> (A<=B)",
    2: "(A<B) & (B<=C) -> (A<C)",
    3: "(A<=B) & (B<C) -> (A<C)",
    4: "(A<=B) & (B<=C) -> (A<=C)",
    5: "(A<=B) -> ~(B<A)",
    6: "(A<B) -> ~(B<=A)",
    7: "((B<=B) | (A<=A)) -> ((A<=B) | (B<A))",
    8: "(A<=B) -> A",
    9: "A & ~B -> (A<B)",
    10: "A & ~(A<=B) -> B",
}


def law_values(v: dict) -> dict:
    """Kleene value of each law from the verdicts of its constituents."""
    return {
        1: _imp(v["A<B"], v["A<=B"]),
        2: _imp(v["A<B"] & v["B<=C"], v["A<C"]),
        3: _imp(v["A<=B"] & v["B<C"], v["A<C"]),
        4: _imp(v["A<=B"] & v["B<=C"], v["A<=C"]),
        5: _imp(v["A<=B"], ~v["B<A"]),
        6: _imp(v["A<B"], ~v["B<=A"]),
        7: _imp(v["B<=B"] | v["A<=A"], v["A<=B"] | v["B<A"]),
        8: _imp(v["A<=B"], v["A"]),
        9: _imp(v["A"] & ~v["B"], v["A<B"]),
        10: _imp(v["A"] & ~v["A<=B"], v["B"]),
    }


def wc_instance(A, B, C) -> dict:
    return {
        "A": A, "B": B, "C": C,
        "A<B": wc_less(A, B), "A<=B": wc_leq(A, B), "B<=C": wc_leq(B, C),
        "B<C": wc_less(B, C), "A<C": wc_less(A, C), "A<=C": wc_leq(A, C),
        "B<A": wc_less(B, A), "B<=A": wc_leq(B, A), "B<=B": wc_leq(B, B),
        "A<=A": wc_leq(A, A),
    }


def suite_wc_laws(samples: int = 5000, fuel: int = 64, seed=None) -> SuiteResult:
    rng = generators.rng_from(default_seed() if seed is None else seed)
    res = SuiteResult("wc-laws", columns=("law", "statement", "certified", "true", "violations"))
    certified_instances = 0
    per_law = {k: [0, 0, 0] for k in LAWS}
    for _ in range(samples):
        A, B, C = (generators.sigma1_sentence(rng) for _ in range(3))
        sents = wc_instance(A, B, C)
        v = {k: eval_with_fuel(s, fuel).value for k, s in sents.items()}
        if UNKNOWN not in v.values():
            certified_instances += 1
        for k, val in law_values(v).items():
            if val is not UNKNOWN:
                per_law[k][0] += 1
            if val is TRUE:
                per_law[k][1] += 1
            if val is FALSE:
                per_law[k][2] += 1
                res.fail({"law": k, "A": render(A), "B": render(B), "C": render(C)})
            else:
                res.passed += 1
    rate = certified_instances / samples if samples else 0.0
    res.metrics = {"samples": samples, "fuel": fuel, "certified_rate": rate}
    res.checks = {"certified_rate>=0.95": rate >= 0.95}
    res.rows = [(k, LAWS[k], *per_law[k]) for k in LAWS]
    return res


def suite_wc_closure(samples: int = 500, seed=None, levels=(0, 1, 2)) -> SuiteResult:
    """Witness comparisons of Sigma1Class(n+1) sentences stay in the class."""
    rng = generators.rng_from(default_seed() if seed is None else seed)
    res = SuiteResult("wc-closure", columns=("n", "family", "samples", "in_class", "outside"))
    restricted_ok = True
    for n in levels:
        for family, closed in (("general", False), ("negation-closed", True)):
            inside = 0
            for _ in range(samples):
                C = generators.sigma_n1_1(rng, n, "x", closed)
                D = generators.sigma_n1_1(rng, n, "x", closed)
                good = all(is_in_class(w, Sigma1Class(n + 1)) for w in (wc_leq(C, D), wc_less(C, D)))
                inside += good
                if family == "general":
                    if good:
                        res.passed += 1
                    else:
                        res.fail({"n": n, "C": render(C), "D": render(D),
                                  "leq_class": str(classify(wc_leq(C, D)))})
                elif not good:
                    restricted_ok = False
            res.rows.append((n, family, samples, inside, samples - inside))
    res.metrics = {"samples_per_level": samples, "levels": list(levels)}
    res.checks = {"negation-closed family in class": restricted_ok}
    return res


def suite_diagonal(samples: int = 200, max_k: int = 8, fuel: int = 1000, seed=None) -> SuiteResult:
    rng = generators.rng_from(default_seed() if seed is None else seed)
    res = SuiteResult("diagonal", columns=("k", "certain", "agree", "mismatch"))
    stats = {k: [0, 0, 0] for k in range(max_k + 1)}
    for _ in range(samples):
        psi = generators.diagonal_matrix(rng)
        phi = diagonal_fixpoint(psi)
        for k in range(max_k + 1):
            inst = diagonal_instance(phi, k)
            lhs = eval_with_fuel(inst, fuel).value
            rhs_f = substitute_numeral(substitute_numeral(psi, "x", coding.encode(inst)), "y", k)
            rhs = eval_with_fuel(rhs_f, fuel).value
            if lhs.certain and rhs.certain:
                stats[k][0] += 1
                if lhs is rhs:
                    stats[k][1] += 1
                    res.passed += 1
                else:
                    stats[k][2] += 1
                    res.fail({"psi": render(psi), "k": k, "phi": str(lhs), "psi_at_code": str(rhs)})
    res.rows = [(k, *stats[k]) for k in stats]
    certain = sum(s[0] for s in stats.values())
    res.metrics = {"samples": samples, "instances": samples * (max_k + 1), "certain": certain}
    return res


def _golden_ok() -> tuple:
    lock = coding.load_lock()
    bad = [s for s, c in lock["golden"].items() if coding.encode(parse_formula(s)) != c]
    return not bad, bad


def suite_coding(samples: int = 1000, seed=None) -> SuiteResult:
    rng = generators.rng_from(default_seed() if seed is None else seed)
    res = SuiteResult("coding", columns=("property", "cases", "failures"))
    counts = {"round-trip": [0, 0], "sub commutation": [0, 0], "sequence round-trip": [0, 0]}
    for _ in range(samples):
        f = generators.any_formula(rng)
        ok = coding.decode(coding.encode(f)) == f
        counts["round-trip"][0] += 1
        if ok:
            res.passed += 1
        else:
            counts["round-trip"][1] += 1
            res.fail({"round-trip": render(f)})
    for _ in range(samples):
        f = generators.any_formula(rng)
        fv = sorted(free_vars(f))
        v = rng.choice(fv) if fv and rng.random() < 0.8 else rng.choice(["x", "y", "z"])
        w = rng.choice([rng.randint(0, 20), rng.getrandbits(64)])
        ok = coding.sub_num(coding.encode(f), coding.var_code(v), w) == \
            coding.encode(substitute_numeral(f, v, w))
        counts["sub commutation"][0] += 1
        if ok:
            res.passed += 1
        else:
            counts["sub commutation"][1] += 1
            res.fail({"sub": render(f), "var": v, "value": w})
    for _ in range(samples):
        items = [rng.getrandbits(rng.randint(1, 80)) for _ in range(rng.randint(0, 6))]
        c = coding.seq_encode(items)
        ok = (coding.seq_decode(c) == items and coding.seq_len(c) == len(items)
              and all(coding.seq_at(c, i) == x for i, x in enumerate(items)))
        counts["sequence round-trip"][0] += 1
        if ok:
            res.passed += 1
        else:
            counts["sequence round-trip"][1] += 1
            res.fail({"seq": items})
    golden, bad = _golden_ok()
    res.checks = {"golden encoding.lock": golden}
    if bad:
        res.counterexamples.append({"golden_mismatch": bad})
    res.rows = [(k, *v) for k, v in counts.items()]
    return res


# --------------------------------------------------------------------------
# Proofs


def load_corpus() -> list:
    """(name, theory, proof) for every bundled proof."""
    base = resources.files(__package__).joinpath("corpus")
    index = json.loads(base.joinpath("index.json").read_text())
    return [(name, th, Proof.from_jsonl(base.joinpath(f"{name}.jsonl").read_text()))
            for name, th in sorted(index.items())]


def corrupt(p: Proof, k: int) -> Proof:
    """One broken line: variant k picks the line and the kind of damage."""
    lines = list(p.lines)
    i = k % len(lines)
    ln = lines[i]
    mode = (k // len(lines)) % 3 if len(lines) > 1 else k % 2
    if mode == 0:
        bad = ProofLine(ln.kind, And(ln.formula, BOT), ln.refs, ln.level, ln.var)
    elif mode == 1:
        bad = ProofLine(ln.kind, Not(ln.formula), ln.refs, ln.level, ln.var)
    else:
        bad = ProofLine("mp", ln.formula, (i, i))
    lines[i] = bad
    return Proof(tuple(lines))


SEARCH_GOALS = [
    "(a = b) -> (a = b)",
    "E x. (x = 0)",
    "A q. ~(q < 0)",
    "A y < 0. (y = 1)",
    "~((0 + 1) = 0)",
    "E x. ((x = (1 + 1)) & (A y < x. (y = y)))",
    "(0 = 0) | (0 = 1)",
    "A x. (x = x)",
]


def suite_proofs(budget: int = 10_000, seed=None) -> SuiteResult:
    res = SuiteResult("proofs", columns=("item", "kind", "expected", "observed"))
    corpus = load_corpus()
    for name, th, p in corpus:
        ok = check_proof(th, p)
        res.rows.append((name, "corpus", "accept", "accept" if ok else "reject"))
        if ok:
            res.passed += 1
        else:
            res.fail({"corpus_rejected": name, "diagnostics": check(th, p).diagnostics})
    for k in range(20):
        name, th, p = corpus[k % len(corpus)]
        bad = corrupt(p, k)
        ok = check_proof(th, bad)
        res.rows.append((f"{name}#{k}", "corruption", "reject", "accept" if ok else "reject"))
        if ok:
            res.fail({"corruption_accepted": name, "variant": k})
        else:
            res.passed += 1
    contradiction = bounded_search("toyEA", BOT, budget)
    res.rows.append(("0 = 1", "search", "not found", "found" if contradiction else "not found"))
    if contradiction is None:
        res.passed += 1
    else:
        res.fail({"found_contradiction": contradiction.to_jsonl()})
    found = 0
    for g in SEARCH_GOALS:
        p = bounded_search("toyEA", parse_formula(g), budget)
        if p is None:
            res.rows.append((g, "search", "recheck", "not found"))
            continue
        found += 1
        ok = check_proof("toyEA", p) and p.conclusion == parse_formula(g)
        res.rows.append((g, "search", "recheck", "accept" if ok else "reject"))
        if ok:
            res.passed += 1
        else:
            res.fail({"search_proof_rejected": g})
    res.metrics = {"corpus": len(corpus), "corruptions": 20, "budget": budget,
                   "search_goals": len(SEARCH_GOALS), "found": found}
    res.checks = {"corpus>=20": len(corpus) >= 20}
    return res


def _true_sigma_sentence(rng, level: int, fuel: int):
    """A Sigma1Class(level+1) sentence certified True at this fuel."""
    while True:
        s = generators.sigma1_sentence(rng)
        if level >= 1:
            c = rng.randint(1, 6)
            body = s.body
            s = Exists(s.var, And(body.left, Forall(
                "t", Implies(Less(Var("t"), numeral(c)),
                             generators.delta0(rng, [s.var, "t"], depth=1)))))
        if eval_with_fuel(s, fuel).value is TRUE:
            return s


def random_oracle_proof(rng, n: int, fuel: int) -> Proof:
    """An [n]-proof mixing oracle lines, axioms, tautologies, MP and Gen."""
    lines = []
    k = rng.randint(1, 3)
    pis = []
    for _ in range(k):
        m = rng.randint(0, n)
        s = _true_sigma_sentence(rng, m, fuel)
        pis.append(s)
        lines.append(oracle(s, m))
    if rng.random() < 0.5:
        ax = parse_formula(rng.choice(["A x. ~((x + 1) = 0)", "A x. ~(x < 0)", "exp(0) = 1"]))
        lines.append(axiom(ax))
        pis.append(ax)
    conj = pis[0]
    at = 0
    for j in range(1, len(pis)):
        new = And(conj, pis[j])
        t = len(lines)
        lines.append(taut(Implies(conj, Implies(pis[j], new))))
        lines.append(mp(Implies(pis[j], new), at, t))
        lines.append(mp(new, j, t + 1))
        conj, at = new, len(lines) - 1
    if rng.random() < 0.5:
        g = Forall("g", conj)
        lines.append(ProofLine("gen", g, (at,), None, "g"))
        lines.append(axiom(Implies(g, conj)))
        lines.append(mp(conj, len(lines) - 2, len(lines) - 1))
    return Proof(tuple(lines))


def suite_oracle(samples: int = 100, fuel: int = 64, seed=None) -> SuiteResult:
    rng = generators.rng_from(default_seed() if seed is None else seed)
    res = SuiteResult("oracle", columns=("property", "cases", "holds", "fails"))
    mono = [0, 0, 0]
    rt = [0, 0, 0]
    for i in range(samples):
        n = i % 3
        p = random_oracle_proof(rng, n, fuel)
        v = check_oracle_proof("toyEA", n, p, fuel).value
        if v is TRUE:
            mono[0] += 1
            up = check_oracle_proof("toyEA", n + 1, p, fuel).value
            if up is TRUE:
                mono[1] += 1
                res.passed += 1
            else:
                mono[2] += 1
                res.fail({"monotonicity": p.to_jsonl(), "level": n})
            rt[0] += 1
            f, q = deduction_extract("toyEA", n, p, fuel)
            back = reassemble("toyEA", n, f, q)
            ok = (check_proof("toyEA", q) and back.conclusion == p.conclusion
                  and check_oracle_proof("toyEA", n, back, fuel).value is TRUE)
            if ok:
                rt[1] += 1
                res.passed += 1
            else:
                rt[2] += 1
                res.fail({"round_trip": p.to_jsonl(), "level": n})
        else:
            res.fail({"generated_proof_not_accepted": p.to_jsonl(), "level": n})
    res.rows = [("monotonicity", *mono), ("deduction round-trip", *rt)]
    res.metrics = {"samples": samples, "fuel": fuel}
    return res


# --------------------------------------------------------------------------
# Predicates, FGH, GLP


def suite_predicates(max_level: int = 3, theory: str = "toyEA") -> SuiteResult:
    res = SuiteResult("predicates", columns=("predicate", "n", "class", "bound", "holds"))

    def record(name, n, f, bound, exact=False):
        c = classify(f)
        ok = (c == bound) if exact else is_in_class(f, bound)
        res.rows.append((name, n, str(c), ("= " if exact else "<= ") + str(bound), ok))
        if ok:
            res.passed += 1
        else:
            res.fail({"predicate": name, "n": n, "class": str(c), "bound": str(bound)})

    record("box", 0, box_formula(theory), SigmaBang(1), exact=True)
    for n in range(max_level + 1):
        record("oracle-box", n, oracle_box_formula(theory, n), Sigma1Class(n + 1))
        record("dual boxbox", n, dual(boxbox_formula(theory, n)), Pi(n + 1))
        record("omega-box", n, omega_box_formula(theory, n), Sigma(2 * n + 1))
    return res


def suite_fgh(fuel: int = 1000, budget: int = 100_000, theory: str = "toyEA") -> SuiteResult:
    res = SuiteResult("fgh", columns=("level", "verdict", "proof_found", "proof_lines", "class"))
    sigma = parse_formula("E x. (x = 0)")
    for level in (-1, 0):
        rho = fgh_fixpoint(sigma, BoxMaker(theory, level))
        v = eval_with_fuel(rho, fuel).value
        proof = bounded_search(theory, rho, budget)
        res.rows.append((level, str(v), proof is not None,
                         len(proof) if proof else 0, str(classify(rho))))
        if v is TRUE and proof is not None and check_proof(theory, proof):
            res.passed += 1
        else:
            res.fail({"level": level, "verdict": str(v), "found": proof is not None})
    res.metrics = {"fuel": fuel, "budget": budget}
    return res


def glp_schema_proofs(rng, max_level: int = 5) -> list:
    """One-line proofs of GL and GLP axiom instances."""
    out = []
    for n in range(max_level + 1):
        a = generators.modal_formula(rng, depth=2, max_level=max_level)
        b = generators.modal_formula(rng, depth=2, max_level=max_level)
        out.append(("k", n, MImp(Box(n, MImp(a, b)), MImp(Box(n, a), Box(n, b)))))
        out.append(("lob", n, MImp(Box(n, MImp(Box(n, a), a)), Box(n, a))))
        out.append(("mono", n, MImp(Box(n, a), Box(n + 1, a))))
        out.append(("neg", n, MImp(Dia(n, a), Box(n + 1, Dia(n, a)))))
    return out


def suite_glp(max_size: int = 6, max_worlds: int = 4, realize_cases: int = 200, seed=None) -> SuiteResult:
    rng = generators.rng_from(default_seed() if seed is None else seed)
    res = SuiteResult("glp", columns=("part", "cases", "failures"))
    cc = cross_check(max_size, max_worlds)
    unsound, missed = cc["valid_with_countermodel"], cc["invalid_without_small_countermodel"]
    res.passed += cc["formulas"] - len(unsound) - len(missed)
    for f in unsound:
        res.fail({"valid_but_countermodel": mrender(f)})
    for f in missed:
        res.fail({"invalid_but_no_countermodel_within_bound": mrender(f)})
    res.rows.append(("gl_decide vs frames", cc["formulas"], len(unsound) + len(missed)))
    schema_fail = 0
    schemas = glp_schema_proofs(rng)
    for kind, n, f in schemas:
        p = ModalProof((ModalLine(kind, f),))
        ok = glp_check_proof(p) and glp_check_proof(necessitate(p, n))
        if ok:
            res.passed += 1
        else:
            schema_fail += 1
            res.fail({"schema_rejected": kind, "level": n, "formula": mrender(f)})
    wrong = ModalProof((ModalLine("mono", MImp(Box(4, generators.modal_formula(rng)),
                                               Box(3, generators.modal_formula(rng)))),))
    if glp_check_proof(wrong):
        schema_fail += 1
        res.fail({"wrong_direction_accepted": mrender(wrong.conclusion)})
    res.rows.append(("schema instances", len(schemas) + 1, schema_fail))
    rfail = 0
    sentences = [parse_formula(s) for s in ("0 = 0", "0 = 1", "E x. (x = 0)", "A x. (x = x)")]
    for _ in range(realize_cases):
        f = generators.modal_formula(rng, depth=3, max_level=2)
        g = generators.modal_formula(rng, atoms=("q",), depth=2, max_level=2)
        asg = {"p": rng.choice(sentences), "q": rng.choice(sentences)}
        lhs = realize(msubst(f, "p", g), "toyEA", asg)
        rhs = realize(f, "toyEA", {**asg, "p": realize(g, "toyEA", asg)})
        if lhs == rhs:
            res.passed += 1
        else:
            rfail += 1
            res.fail({"realize": mrender(f), "sub": mrender(g)})
    res.rows.append(("realize substitution", realize_cases, rfail))
    res.metrics = {"formulas": cc["formulas"], "valid": cc["valid"], "frames": cc["frames"],
                   "needs_more_worlds": [mrender(f) for f in missed]}
    return res


SUITES = {
    "wc-laws": suite_wc_laws,
    "wc-closure": suite_wc_closure,
    "diagonal": suite_diagonal,
    "coding": suite_coding,
    "proofs": suite_proofs,
    "oracle": suite_oracle,
    "predicates": suite_predicates,
    "fgh": suite_fgh,
    "glp": suite_glp,
}


def run_suite(name: str, **kwargs) -> SuiteResult:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; known: {sorted(SUITES)}") from None
    t = time.perf_counter()
    res = fn(**kwargs)
    res.seconds = time.perf_counter() - t
    return res
