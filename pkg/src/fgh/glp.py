"""Polymodal provability logic: syntax, proof checking, a GL decision
procedure with certified countermodels, and the arithmetical realization."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache

# --------------------------------------------------------------------------
# Syntax


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class MNot:
    body: object


@dataclass(frozen=True)
class MAnd:
    left: object
    right: object


@dataclass(frozen=True)
class MOr:
    left: object
    right: object


@dataclass(frozen=True)
class MImp:
    left: object
    right: object


@dataclass(frozen=True)
class Box:
    level: int
    body: object

    def __post_init__(self):
        if not isinstance(self.level, int) or self.level < 0:
            raise ValueError("modal levels are naturals")


BOT = Bot()


def Dia(level: int, body) -> MNot:
    """<n>A, always stored as ~[n]~A."""
    return MNot(Box(level, MNot(body)))


def is_dia(f):
    return (isinstance(f, MNot) and isinstance(f.body, Box)
            and isinstance(f.body.body, MNot))


_BIN = {MAnd: "&", MOr: "|", MImp: "->"}


def mrender(f) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Bot):
        return "bot"
    if is_dia(f):
        return f"<{f.body.level}>{_wrap(f.body.body.body)}"
    if isinstance(f, MNot):
        return f"~{_wrap(f.body)}"
    if isinstance(f, Box):
        return f"[{f.level}]{_wrap(f.body)}"
    return f"{_wrap(f.left)} {_BIN[type(f)]} {_wrap(f.right)}"


def _wrap(f) -> str:
    s = mrender(f)
    return f"({s})" if isinstance(f, (MAnd, MOr, MImp)) else s


def msize(f) -> int:
    if isinstance(f, (Atom, Bot)):
        return 1
    if isinstance(f, (MNot, Box)):
        return 1 + msize(f.body)
    return 1 + msize(f.left) + msize(f.right)


def matoms(f) -> frozenset:
    if isinstance(f, Atom):
        return frozenset([f.name])
    if isinstance(f, Bot):
        return frozenset()
    if isinstance(f, (MNot, Box)):
        return matoms(f.body)
    return matoms(f.left) | matoms(f.right)


def levels(f) -> frozenset:
    if isinstance(f, (Atom, Bot)):
        return frozenset()
    if isinstance(f, Box):
        return frozenset([f.level]) | levels(f.body)
    if isinstance(f, MNot):
        return levels(f.body)
    return levels(f.left) | levels(f.right)


def msubst(f, p: str, g):
    if isinstance(f, Atom):
        return g if f.name == p else f
    if isinstance(f, Bot):
        return f
    if isinstance(f, MNot):
        return MNot(msubst(f.body, p, g))
    if isinstance(f, Box):
        return Box(f.level, msubst(f.body, p, g))
    return type(f)(msubst(f.left, p, g), msubst(f.right, p, g))


class ModalParseError(ValueError):
    def __init__(self, msg, offset):
        super().__init__(f"{msg} at offset {offset}")
        self.offset = offset


_TOKEN = re.compile(r"\s*(?:(\[\d*\])|(<\d*>)|(->)|([~&|()])|([A-Za-z_][A-Za-z0-9_]*))")
_UNI = {"□": "[]", "◇": "<>", "¬": "~", "∧": "&", "∨": "|", "→": "->", "⊥": "bot"}


def mparse(text: str):
    """Parse ``[n]``, ``<n>`` (``[]`` and ``<>`` mean level 0), ``~ & | ->``, atoms, ``bot``."""
    for k, v in _UNI.items():
        text = text.replace(k, v)
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ModalParseError(f"unexpected character {text[pos:].lstrip()[0]!r}", pos)
        toks.append((m.group(m.lastindex), m.start(m.lastindex), m.lastindex))
        pos = m.end()
    toks.append(("", len(text), 0))
    i = 0

    def peek():
        return toks[i]

    def take(want=None):
        nonlocal i
        tok = toks[i]
        if want is not None and tok[0] != want:
            raise ModalParseError(f"expected {want!r}", tok[1])
        i += 1
        return tok

    def imp():
        a = disj()
        if peek()[0] == "->":
            take()
            return MImp(a, imp())
        return a

    def disj():
        a = conj()
        while peek()[0] == "|":
            take()
            a = MOr(a, conj())
        return a

    def conj():
        a = unary()
        while peek()[0] == "&":
            take()
            a = MAnd(a, unary())
        return a

    def unary():
        tok, off, kind = peek()
        if tok == "~":
            take()
            return MNot(unary())
        if kind in (1, 2):
            take()
            n = int(tok[1:-1] or 0)
            body = unary()
            return Box(n, body) if kind == 1 else Dia(n, body)
        if tok == "(":
            take()
            a = imp()
            take(")")
            return a
        if kind == 5:
            take()
            return BOT if tok == "bot" else Atom(tok)
        raise ModalParseError("unexpected end of input" if not tok else f"unexpected {tok!r}", off)

    f = imp()
    if peek()[0]:
        raise ModalParseError(f"unexpected {peek()[0]!r}", peek()[1])
    return f


# --------------------------------------------------------------------------
# Propositional skeleton


def mtautology(f) -> bool:
    atoms: dict = {}

    def collect(g):
        if isinstance(g, MNot):
            collect(g.body)
        elif isinstance(g, (MAnd, MOr, MImp)):
            collect(g.left)
            collect(g.right)
        elif not isinstance(g, Bot) and g not in atoms:
            atoms[g] = len(atoms)

    collect(f)
    k = len(atoms)
    if k > 16:
        return False
    for row in range(1 << k):
        def val(g):
            if isinstance(g, Bot):
                return False
            if isinstance(g, MNot):
                return not val(g.body)
            if isinstance(g, MAnd):
                return val(g.left) and val(g.right)
            if isinstance(g, MOr):
                return val(g.left) or val(g.right)
            if isinstance(g, MImp):
                return (not val(g.left)) or val(g.right)
            return bool(row >> atoms[g] & 1)
        if not val(f):
            return False
    return True


# --------------------------------------------------------------------------
# Proofs

MODAL_KINDS = ("taut", "k", "lob", "mono", "neg", "mp", "nec")


@dataclass(frozen=True)
class ModalLine:
    kind: str
    formula: object
    refs: tuple = ()
    level: int | None = None

    def to_json(self) -> dict:
        d = {"kind": self.kind, "formula": mrender(self.formula), "refs": list(self.refs)}
        if self.level is not None:
            d["level"] = self.level
        return d


@dataclass(frozen=True)
class ModalProof:
    lines: tuple = field(default_factory=tuple)

    @property
    def conclusion(self):
        return self.lines[-1].formula

    def to_json(self) -> list:
        return [ln.to_json() for ln in self.lines]


def load_modal_proof(text: str) -> ModalProof:
    """A JSON list of lines or JSON lines, one object per line."""
    text = text.strip()
    rows = json.loads(text) if text.startswith("[") else [
        json.loads(r) for r in text.splitlines() if r.strip()]
    lines = []
    for d in rows:
        if d.get("kind") not in MODAL_KINDS:
            raise ValueError(f"unknown modal line kind {d.get('kind')!r}")
        lines.append(ModalLine(d["kind"], mparse(d["formula"]),
                               tuple(int(r) for r in d.get("refs", ())), d.get("level")))
    return ModalProof(tuple(lines))


def modal_axiom(f) -> str | None:
    """Which GLP axiom schema f instantiates, if any."""
    if not isinstance(f, MImp):
        return None
    a, b = f.left, f.right
    # [n](A -> B) -> ([n]A -> [n]B)
    if (isinstance(a, Box) and isinstance(a.body, MImp) and isinstance(b, MImp)
            and b.left == Box(a.level, a.body.left) and b.right == Box(a.level, a.body.right)):
        return "k"
    # [n]([n]A -> A) -> [n]A
    if (isinstance(b, Box) and a == Box(b.level, MImp(b, b.body))):
        return "lob"
    # [n]A -> [n+1]A
    if isinstance(a, Box) and isinstance(b, Box) and b.level == a.level + 1 and a.body == b.body:
        return "mono"
    # <n>A -> [n+1]<n>A
    if is_dia(a) and b == Box(a.body.level + 1, a):
        return "neg"
    return None


def glp_diagnose(p: ModalProof) -> list:
    """Per-line problems; empty means the proof is correct."""
    out = []
    if not p.lines:
        return ["empty proof"]
    for k, ln in enumerate(p.lines):
        f = ln.formula
        err = None
        if ln.kind == "taut":
            err = None if mtautology(f) else "not a tautology"
        elif ln.kind in ("k", "lob", "mono", "neg"):
            err = None if modal_axiom(f) == ln.kind else f"not an instance of {ln.kind}"
        elif ln.kind == "mp":
            if len(ln.refs) != 2 or not all(0 <= r < k for r in ln.refs):
                err = "mp must cite two earlier lines"
            elif p.lines[ln.refs[1]].formula != MImp(p.lines[ln.refs[0]].formula, f):
                err = "cited lines do not fit modus ponens"
        elif ln.kind == "nec":
            if len(ln.refs) != 1 or not 0 <= ln.refs[0] < k:
                err = "nec must cite one earlier line"
            elif ln.level is None or f != Box(ln.level, p.lines[ln.refs[0]].formula):
                err = "not the necessitation of the cited line"
        else:
            err = f"unknown kind {ln.kind!r}"
        if err:
            out.append(f"line {k}: {err}")
    return out


def glp_check_proof(p: ModalProof) -> bool:
    return not glp_diagnose(p)


def necessitate(p: ModalProof, n: int) -> ModalProof:
    """p extended by one necessitation step at level n."""
    last = len(p.lines) - 1
    return ModalProof(p.lines + (ModalLine("nec", Box(n, p.conclusion), (last,), n),))


# --------------------------------------------------------------------------
# Kripke models


@dataclass(frozen=True)
class KripkeModel:
    """Worlds 0..size-1, a relation and the atoms true at each world."""

    size: int
    rel: frozenset
    val: tuple

    def successors(self, w):
        return [v for v in range(self.size) if (w, v) in self.rel]

    def is_transitive(self) -> bool:
        return all((a, d) in self.rel for (a, b) in self.rel for (c, d) in self.rel if b == c)

    def is_irreflexive(self) -> bool:
        return all(a != b for a, b in self.rel)

    def holds(self, f, w: int) -> bool:
        if isinstance(f, Atom):
            return f.name in self.val[w]
        if isinstance(f, Bot):
            return False
        if isinstance(f, MNot):
            return not self.holds(f.body, w)
        if isinstance(f, MAnd):
            return self.holds(f.left, w) and self.holds(f.right, w)
        if isinstance(f, MOr):
            return self.holds(f.left, w) or self.holds(f.right, w)
        if isinstance(f, MImp):
            return (not self.holds(f.left, w)) or self.holds(f.right, w)
        return all(self.holds(f.body, v) for v in self.successors(w))

    def to_json(self) -> dict:
        return {"worlds": self.size, "relation": sorted(map(list, self.rel)),
                "valuation": {str(w): sorted(self.val[w]) for w in range(self.size)}}


def refutes(m: KripkeModel, f, root: int = 0) -> bool:
    """m is a transitive irreflexive model where f fails at root."""
    return m.is_transitive() and m.is_irreflexive() and not m.holds(f, root)


# --------------------------------------------------------------------------
# GL decision by sequent search


@dataclass(frozen=True)
class GLResult:
    valid: bool
    countermodel: KripkeModel | None = None

    def to_json(self) -> dict:
        d = {"verdict": "Valid" if self.valid else "Invalid"}
        if self.countermodel is not None:
            d["countermodel"] = self.countermodel.to_json()
        return d


class _Tree:
    __slots__ = ("atoms", "kids")

    def __init__(self, atoms, kids):
        self.atoms, self.kids = atoms, kids


@lru_cache(maxsize=100000)
def _refute(gamma: frozenset, delta: frozenset):
    """None if gamma => delta is GL-provable, else a countermodel tree."""
    if BOT in gamma or gamma & delta:
        return None
    for f in gamma:
        if isinstance(f, MNot):
            return _refute(gamma - {f}, delta | {f.body})
        if isinstance(f, MAnd):
            return _refute((gamma - {f}) | {f.left, f.right}, delta)
        if isinstance(f, MOr):
            rest = gamma - {f}
            return _refute(rest | {f.left}, delta) or _refute(rest | {f.right}, delta)
        if isinstance(f, MImp):
            rest = gamma - {f}
            return _refute(rest, delta | {f.left}) or _refute(rest | {f.right}, delta)
    for f in delta:
        if isinstance(f, MNot):
            return _refute(gamma | {f.body}, delta - {f})
        if isinstance(f, MAnd):
            rest = delta - {f}
            return _refute(gamma, rest | {f.left}) or _refute(gamma, rest | {f.right})
        if isinstance(f, MOr):
            return _refute(gamma, (delta - {f}) | {f.left, f.right})
        if isinstance(f, MImp):
            return _refute(gamma | {f.left}, (delta - {f}) | {f.right})
    # gamma and delta hold only atoms and boxes
    boxed = [g for g in gamma if isinstance(g, Box)]
    base = frozenset(boxed) | frozenset(g.body for g in boxed)
    kids = []
    for b in sorted((d for d in delta if isinstance(d, Box)), key=mrender):
        sub = _refute(base | {b}, frozenset([b.body]))
        if sub is None:
            return None
        kids.append(sub)
    return _Tree(frozenset(g.name for g in gamma if isinstance(g, Atom)), tuple(kids))


def _model_of(tree: _Tree) -> KripkeModel:
    vals, rel = [], set()

    def build(t):
        w = len(vals)
        vals.append(t.atoms)
        below = []
        for k in t.kids:
            below += build(k)
        rel.update((w, v) for v in below)
        return [w] + below

    build(tree)
    return KripkeModel(len(vals), frozenset(rel), tuple(vals))


def gl_decide(f) -> GLResult:
    """Validity in GL for formulas using a single modality level."""
    if len(levels(f)) > 1:
        raise ValueError("gl_decide handles one modality level only")
    tree = _refute(frozenset(), frozenset([f]))
    if tree is None:
        return GLResult(True)
    m = _model_of(tree)
    if not refutes(m, f):
        raise AssertionError("countermodel failed verification")
    return GLResult(False, m)


# --------------------------------------------------------------------------
# Arithmetical realization


@lru_cache(maxsize=64)
def _boxbox(theory: str, n: int):
    from .provability import boxbox_formula
    return boxbox_formula(theory, n)


def realize(f, T, assignment: dict):
    """Atoms by the assignment, [n] as the level-n recursive provability."""
    from .provability import at_code, get_theory
    from .syntax import BOT as FALSUM
    from .syntax import And, Implies, Not, Or, free_vars

    T = get_theory(T)
    missing = matoms(f) - set(assignment)
    if missing:
        raise ValueError(f"assignment misses atoms {sorted(missing)}")
    for k, s in assignment.items():
        if free_vars(s):
            raise ValueError(f"assigned formula for {k} is not a sentence")

    def go(g):
        if isinstance(g, Atom):
            return assignment[g.name]
        if isinstance(g, Bot):
            return FALSUM
        if isinstance(g, MNot):
            return Not(go(g.body))
        if isinstance(g, MAnd):
            return And(go(g.left), go(g.right))
        if isinstance(g, MOr):
            return Or(go(g.left), go(g.right))
        if isinstance(g, MImp):
            return Implies(go(g.left), go(g.right))
        return at_code(_boxbox(T.name, g.level), go(g.body))

    return go(f)
