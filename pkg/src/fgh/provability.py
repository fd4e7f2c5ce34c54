"""Theories, Hilbert proofs, the proof checker and oracle provability.

A proof is a list of lines, each carrying its formula:

* ``axiom``  an axiom of the theory or a logical axiom,
* ``taut``   a propositional tautology,
* ``oracle`` a true Sigma1Class(m+1) sentence (only in [n]-proofs, m <= n),
* ``mp``     refs (i, j) with line j equal to ``line_i -> formula``,
* ``gen``    ref i and a variable x, formula ``A x. line_i``.

Level -1 means plain provability: oracle lines are rejected.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from . import coding
from .coding import DecodeError
from .hierarchy import Sigma1Class, is_delta0, is_in_class
from .logic import is_tautology, logical_axiom
from .semantics import FALSE, TRUE, UNKNOWN, Truth, Verdict, true_sigma
from .syntax import (
    Add, AllCode, And, Exists, Forall, Formula, ImpCode, Implies, NegCode, Not,
    One, OProofP, Or, ProofP, SubApp, Var, Zero, conjunction, disjunction,
    free_vars, parse_formula, render, size, substitute,
)

KINDS = ("axiom", "taut", "oracle", "mp", "gen")


# --------------------------------------------------------------------------
# Theories


@dataclass(frozen=True)
class TheorySpec:
    name: str
    axioms: tuple = ()
    induction_cap: int = 0
    description: str = ""

    def is_axiom(self, f: Formula) -> str | None:
        """Reason f is an axiom (``theory``, ``induction`` or a logical schema)."""
        if f in self._axiom_set:
            return "theory"
        if self.induction_cap and is_induction_instance(f, self.induction_cap):
            return "induction"
        return logical_axiom(f)

    @property
    def _axiom_set(self) -> frozenset:
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(self.axioms)
            object.__setattr__(self, "_cached_set", s)
        return s


def is_induction_instance(f: Formula, cap: int) -> bool:
    """Universal closure of phi(0) & A x.(phi(x) -> phi(x+1)) -> A x. phi(x)."""
    while isinstance(f, Forall) and not _induction_shape(f):
        f = f.body
    if not _induction_shape(f):
        return False
    concl = f.right
    x, phi = concl.var, concl.body
    base, step = f.left.left, f.left.right
    if size(phi) > cap or not is_delta0(phi):
        return False
    return (base == substitute(phi, x, Zero())
            and step == Forall(x, Implies(phi, substitute(phi, x, Add(Var(x), One())))))


def _induction_shape(f) -> bool:
    return (isinstance(f, Implies) and isinstance(f.right, Forall)
            and isinstance(f.left, And) and isinstance(f.left.right, Forall))


def _toy_ea_axioms() -> tuple:
    src = [
        "A x. ~((x + 1) = 0)",
        "A x. (A y. (((x + 1) = (y + 1)) -> (x = y)))",
        "A x. ((x + 0) = x)",
        "A x. (A y. ((x + (y + 1)) = ((x + y) + 1)))",
        "A x. ((x * 0) = 0)",
        "A x. (A y. ((x * (y + 1)) = ((x * y) + x)))",
        "exp(0) = 1",
        "A x. (exp((x + 1)) = (exp(x) + exp(x)))",
        "A x. ~(x < 0)",
        "A x. (A y. ((x < (y + 1)) -> ((x < y) | (x = y))))",
        "A x. (A y. (((x < y) | (x = y)) -> (x < (y + 1))))",
    ]
    return tuple(parse_formula(s) for s in src)


PURE = TheorySpec("pure", (), 0, "first-order logic with identity only")
TOY_EA = TheorySpec("toyEA", _toy_ea_axioms(), 24,
                    "defining axioms of 0, 1, +, *, exp, < and small Delta0 induction")

_REGISTRY: dict[str, TheorySpec] = {PURE.name: PURE, TOY_EA.name: TOY_EA}


def get_theory(name: str | TheorySpec) -> TheorySpec:
    if isinstance(name, TheorySpec):
        return name
    try:
        return _REGISTRY[name]
    except KeyError:
        raise ValueError(f"unknown theory {name!r}; known: {sorted(_REGISTRY)}") from None


def register(theory: TheorySpec) -> TheorySpec:
    old = _REGISTRY.get(theory.name)
    if old is not None and old != theory:
        raise ValueError(f"theory name {theory.name!r} already taken")
    _REGISTRY[theory.name] = theory
    return theory


def extend(base: str | TheorySpec, sentences) -> TheorySpec:
    """Base theory plus finitely many sentences, registered under a stable name."""
    base = get_theory(base)
    extra = tuple(sentences)
    for s in extra:
        if free_vars(s):
            raise ValueError(f"extension axioms must be sentences: {render(s)}")
    digest = hashlib.sha256("\n".join(render(s) for s in extra).encode()).hexdigest()[:10]
    return register(TheorySpec(f"{base.name}+{digest}", base.axioms + extra,
                               base.induction_cap, f"{base.name} plus {len(extra)} axioms"))


# --------------------------------------------------------------------------
# Proofs


@dataclass(frozen=True)
class ProofLine:
    kind: str
    formula: Formula
    refs: tuple = ()
    level: int | None = None
    var: str | None = None

    def to_json(self) -> dict:
        d = {"kind": self.kind, "formula": render(self.formula), "refs": list(self.refs)}
        if self.level is not None:
            d["level"] = self.level
        if self.var is not None:
            d["var"] = self.var
        return d

    @classmethod
    def from_json(cls, d: dict) -> "ProofLine":
        kind = d.get("kind")
        if kind not in KINDS:
            raise ValueError(f"unknown line kind {kind!r}")
        return cls(kind, parse_formula(d["formula"]), tuple(int(r) for r in d.get("refs", ())),
                   d.get("level"), d.get("var"))


def axiom(f):
    return ProofLine("axiom", f)


def taut(f):
    return ProofLine("taut", f)


def oracle(f, level):
    return ProofLine("oracle", f, (), level)


def mp(f, i, j):
    return ProofLine("mp", f, (i, j))


def gen(f, i, var):
    return ProofLine("gen", f, (i,), None, var)


@dataclass(frozen=True)
class Proof:
    lines: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.lines))

    @property
    def conclusion(self) -> Formula:
        if not self.lines:
            raise ValueError("empty proof")
        return self.lines[-1].formula

    def __len__(self):
        return len(self.lines)

    def oracle_sentences(self) -> list:
        out = []
        for ln in self.lines:
            if ln.kind == "oracle" and ln.formula not in out:
                out.append(ln.formula)
        return out

    def to_jsonl(self) -> str:
        return "".join(json.dumps(ln.to_json()) + "\n" for ln in self.lines)

    @classmethod
    def from_jsonl(cls, text: str) -> "Proof":
        lines = []
        for k, raw in enumerate(text.splitlines()):
            if raw.strip():
                try:
                    lines.append(ProofLine.from_json(json.loads(raw)))
                except (ValueError, KeyError, TypeError) as e:
                    raise ValueError(f"line {k + 1}: {e}") from e
        return cls(tuple(lines))


def load_proof(path) -> Proof:
    with open(path) as fh:
        return Proof.from_jsonl(fh.read())


_KIND_NUM = {k: i for i, k in enumerate(KINDS)}


def proof_code(p: Proof) -> int:
    """Sequence code of line codes ``[kind, formula, extras...]``."""
    items = []
    for ln in p.lines:
        row = [_KIND_NUM[ln.kind], coding.encode(ln.formula)]
        if ln.kind == "oracle":
            row.append(ln.level)
        elif ln.kind == "mp":
            row += list(ln.refs)
        elif ln.kind == "gen":
            row += [ln.refs[0], coding.var_code(ln.var)]
        items.append(coding.seq_encode(row))
    return coding.seq_encode(items)


def proof_from_code(c: int) -> Proof:
    lines = []
    for item in coding.seq_decode(c):
        row = coding.seq_decode(item)
        if len(row) < 2 or row[0] >= len(KINDS):
            raise DecodeError("bad proof line")
        kind, f = KINDS[row[0]], coding.decode(row[1])
        extra = row[2:]
        want = {"oracle": 1, "mp": 2, "gen": 2}.get(kind, 0)
        if len(extra) != want:
            raise DecodeError("bad proof line arity")
        if kind == "oracle":
            lines.append(oracle(f, extra[0]))
        elif kind == "mp":
            lines.append(mp(f, extra[0], extra[1]))
        elif kind == "gen":
            v = coding.decode_term(extra[1])
            if not isinstance(v, Var):
                raise DecodeError("gen variable is not a variable code")
            lines.append(gen(f, extra[0], v.name))
        else:
            lines.append(ProofLine(kind, f))
    return Proof(tuple(lines))


# --------------------------------------------------------------------------
# Checking


@dataclass
class CheckReport:
    value: Truth
    diagnostics: list
    fuel_used: int = 0

    @property
    def ok(self) -> bool:
        return self.value is TRUE

    def to_json(self) -> dict:
        return {"verdict": str(self.value), "fuel_used": self.fuel_used,
                "diagnostics": self.diagnostics}


def _check_line(T: TheorySpec, lines, k: int, n: int, fuel: int):
    ln = lines[k]
    f = ln.formula
    if ln.kind == "axiom":
        return (TRUE, None, 0) if T.is_axiom(f) else (FALSE, "not an axiom", 0)
    if ln.kind == "taut":
        return (TRUE, None, 0) if is_tautology(f) else (FALSE, "not a tautology", 0)
    if ln.kind == "mp":
        if len(ln.refs) != 2 or not all(0 <= r < k for r in ln.refs):
            return FALSE, "mp must cite two earlier lines", 0
        i, j = ln.refs
        if lines[j].formula != Implies(lines[i].formula, f):
            return FALSE, f"line {j} is not line {i} -> this line", 0
        return TRUE, None, 0
    if ln.kind == "gen":
        if len(ln.refs) != 1 or not 0 <= ln.refs[0] < k or ln.var is None:
            return FALSE, "gen must cite one earlier line and a variable", 0
        if f != Forall(ln.var, lines[ln.refs[0]].formula):
            return FALSE, "not the generalization of the cited line", 0
        return TRUE, None, 0
    if ln.kind == "oracle":
        m = ln.level
        if n < 0:
            return FALSE, "oracle lines are not allowed in plain proofs", 0
        if m is None or m < 0 or m > n:
            return FALSE, f"oracle level {m} exceeds {n}", 0
        if free_vars(f) or not is_in_class(f, Sigma1Class(m + 1)):
            return FALSE, f"not a Sigma1Class({m + 1}) sentence", 0
        v = true_sigma(f, m, fuel)
        if v.value is FALSE:
            return FALSE, "oracle sentence is false", v.fuel_used
        if v.value is UNKNOWN:
            return UNKNOWN, "oracle sentence not certified at this fuel", v.fuel_used
        return TRUE, None, v.fuel_used
    return FALSE, f"unknown line kind {ln.kind!r}", 0


def check(T, p: Proof, n: int = -1, fuel: int = 0) -> CheckReport:
    """Line-by-line check with diagnostics; level -1 is plain provability."""
    T = get_theory(T)
    if not p.lines:
        return CheckReport(FALSE, ["empty proof"])
    value, diags, used = TRUE, [], 0
    for k in range(len(p.lines)):
        r, msg, u = _check_line(T, p.lines, k, n, fuel)
        used = max(used, u)
        if msg:
            diags.append(f"line {k}: {msg}")
        if r is FALSE:
            value = FALSE
        elif r is UNKNOWN and value is TRUE:
            value = UNKNOWN
    return CheckReport(value, diags, used)


def check_proof(T, p: Proof) -> bool:
    return check(T, p).ok


def check_oracle_proof(T, n: int, p: Proof, fuel: int) -> Verdict:
    r = check(T, p, n, fuel)
    return Verdict(r.value, r.fuel_used)


# --------------------------------------------------------------------------
# Oracle sentences as hypotheses


class _Builder:
    def __init__(self):
        self.lines = []

    def add(self, line: ProofLine) -> int:
        self.lines.append(line)
        return len(self.lines) - 1

    def mp(self, i: int, j: int) -> int:
        g = self.lines[j].formula
        return self.add(mp(g.right, i, j))


def deduction_extract(T, n: int, p: Proof, fuel: int):
    """Split an [n]-proof of phi into its oracle sentences and a plain proof.

    Returns ``(f, q)`` where f is the sequence code of the distinct oracle
    sentences pi_0..pi_k and q proves ``(pi_0 & ... & pi_k) -> phi`` without
    oracle lines (the empty conjunction is ``0 = 0``).
    """
    T = get_theory(T)
    if check_oracle_proof(T, n, p, fuel).value is not TRUE:
        raise ValueError("deduction_extract needs an oracle proof accepted at this fuel")
    pis = p.oracle_sentences()
    h = conjunction(pis)
    b = _Builder()
    at = {}
    for k, ln in enumerate(p.lines):
        a = ln.formula
        goal = Implies(h, a)
        if ln.kind == "axiom":
            i = b.add(axiom(a))
            j = b.add(taut(Implies(a, goal)))
            at[k] = b.mp(i, j)
        elif ln.kind in ("taut", "oracle"):
            at[k] = b.add(taut(goal))
        elif ln.kind == "mp":
            i, j = ln.refs
            ha, hab = b.lines[at[i]].formula, b.lines[at[j]].formula
            t = b.add(taut(Implies(ha, Implies(hab, goal))))
            at[k] = b.mp(at[j], b.mp(at[i], t))
        else:
            x = ln.var
            body = b.lines[at[ln.refs[0]]].formula
            g = b.add(gen(Forall(x, body), at[ln.refs[0]], x))
            q3 = b.add(axiom(Implies(Forall(x, body), goal)))
            at[k] = b.mp(g, q3)
    codes = [coding.encode(s) for s in pis]
    return coding.seq_encode(codes), Proof(tuple(b.lines))


def oracle_level(f: Formula) -> int:
    """Least m with f in Sigma1Class(m + 1)."""
    m = 0
    while not is_in_class(f, Sigma1Class(m + 1)):
        m += 1
    return m


def reassemble(T, n: int, f_code: int, q: Proof) -> Proof:
    """Inverse direction: oracle lines for the sentences in f plus q give phi."""
    T = get_theory(T)
    pis = [coding.decode(c) for c in coding.seq_decode(f_code)]
    h = conjunction(pis)
    concl = q.conclusion
    if not isinstance(concl, Implies) or concl.left != h:
        raise ValueError("q must conclude (conjunction of f) -> phi")
    b = _Builder()
    hyp = []
    for s in pis:
        m = oracle_level(s)
        if m > n:
            raise ValueError(f"oracle sentence needs level {m} > {n}")
        hyp.append(b.add(oracle(s, m)))
    if pis:
        chain = h
        for s in reversed(pis):
            chain = Implies(s, chain)
        k = b.add(taut(chain))
        for i in hyp:
            k = b.mp(i, k)
    else:
        k = b.add(axiom(h))
    off = len(b.lines)
    for ln in q.lines:
        refs = tuple(r + off for r in ln.refs)
        b.add(ProofLine(ln.kind, ln.formula, refs, ln.level, ln.var))
    b.mp(k, len(b.lines) - 1)
    return Proof(tuple(b.lines))


# --------------------------------------------------------------------------
# Provability predicates as formulas with the free variable v


def box_formula(T, v: str = "v") -> Formula:
    """E p. Proof[T](p, v)."""
    T = get_theory(T)
    p = "p" if v != "p" else "q"
    return Exists(p, ProofP(T.name, Var(p), Var(v)))


def oracle_box_formula(T, n: int, v: str = "v") -> Formula:
    """E p. OProof[T,n](p, v); level -1 is the plain box."""
    T = get_theory(T)
    if n < 0:
        return box_formula(T, v)
    p = "p" if v != "p" else "q"
    return Exists(p, OProofP(T.name, n, Var(p), Var(v)))


def dual(box: Formula, v: str = "v") -> Formula:
    """The consistency form ~box(neg(v))."""
    return Not(substitute(box, v, NegCode(Var(v))))


def at_code(pred: Formula, f: Formula, v: str = "v") -> Formula:
    """pred with v replaced by the numeral of the code of f."""
    return substitute(pred, v, coding.quote(f))


def _boxbox(T, n: int, v: str, old: bool) -> Formula:
    box = box_formula(T, v)
    if n == 0:
        return box
    w, w0 = "w", "w0"
    parts = []
    for m in ([n - 1] if old else range(n)):
        d_m = dual(_boxbox(T, m, "v", old), "v")
        template = substitute(d_m, "v", Var(w0))
        inner = ImpCode(SubApp(coding.quote(template), coding.quote(Var(w0)), Var(w)), Var(v))
        parts.append(And(substitute(d_m, "v", Var(w)), substitute(box, v, inner)))
    return Or(box, Exists(w, disjunction(parts)))


def boxbox_formula(T, n: int, v: str = "v") -> Formula:
    """Provability with consistency hypotheses of every lower level."""
    if v in ("w", "w0"):
        raise ValueError("v must differ from the internal names w, w0")
    return _boxbox(T, n, v, old=False)


def boxbox_old_formula(T, n: int, v: str = "v") -> Formula:
    """The variant that only uses level n-1 consistency hypotheses."""
    if v in ("w", "w0"):
        raise ValueError("v must differ from the internal names w, w0")
    return _boxbox(T, n, v, old=True)


def omega_box_formula(T, n: int, v: str = "v") -> Formula:
    """At most n nested uses of the omega rule."""
    box = box_formula(T, v)
    if n == 0:
        return box
    if v in ("x", "s"):
        raise ValueError("v must differ from the internal names x, s")
    lower = omega_box_formula(T, n - 1, v)
    xc = coding.quote(Var("x"))
    inst = substitute(lower, v, SubApp(Var("s"), xc, Var("x")))
    concl = substitute(box, v, ImpCode(AllCode(xc, Var("s")), Var(v)))
    return Exists("s", And(Forall("x", inst), concl))
