"""Syntax-directed classification into the arithmetical hierarchy.

Classes are ``Delta0``, ``Sigma(n)``, ``Pi(n)``, ``SigmaBang(n)`` (a single
unbounded existential over a Pi(n-1) matrix), ``SigmaB(n)`` (boolean and
bounded-quantifier closure of Sigma(n)) and ``Sigma1Class(n)`` (an unbounded
existential over a SigmaB(n) matrix, closed under & and | since unbounded
existentials can be pulled out of them).

Negations are pushed to the atoms before classifying.  For the plain
Sigma/Pi grammar a bounded quantifier over a non-Delta0 body counts as the
corresponding unbounded quantifier.

Semantic predicates get fixed levels: ``Proof`` and the code functions are
Delta0, ``TrueN[k]`` is Sigma(k) (its negation Pi(k)), and ``OProof[T,n]``
sits in SigmaB(n+1) with either polarity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .syntax import (
    And, BExists, BForall, Eq, Exists, Forall, Formula, Implies, Less, Not,
    OProofP, Or, ProofP, TrueN,
)

KINDS = ("Delta0", "SigmaBang", "Sigma", "Pi", "SigmaB", "Sigma1Class")
_RANK = {k: i for i, k in enumerate(KINDS)}


@dataclass(frozen=True, order=False)
class FormulaClass:
    kind: str
    n: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown class kind {self.kind!r}")
        if self.kind == "Delta0":
            if self.n != 0:
                raise ValueError("Delta0 takes no level")
        elif self.n < 1:
            raise ValueError(f"{self.kind} needs a level n >= 1")

    def __str__(self):
        return "Delta0" if self.kind == "Delta0" else f"{self.kind}({self.n})"

    def __le__(self, other: "FormulaClass") -> bool:
        return leq(self, other)


DELTA0 = FormulaClass("Delta0")


def Sigma(n: int) -> FormulaClass:
    return FormulaClass("Sigma", n)


def Pi(n: int) -> FormulaClass:
    return FormulaClass("Pi", n)


def SigmaBang(n: int) -> FormulaClass:
    return FormulaClass("SigmaBang", n)


def SigmaB(n: int) -> FormulaClass:
    return FormulaClass("SigmaB", n)


def Sigma1Class(n: int) -> FormulaClass:
    return FormulaClass("Sigma1Class", n)


def parse_class(text: str) -> FormulaClass:
    text = text.strip()
    if text == "Delta0":
        return DELTA0
    m = re.fullmatch(r"(\w+)\((\d+)\)", text)
    if not m:
        raise ValueError(f"cannot parse class {text!r}")
    return FormulaClass(m.group(1), int(m.group(2)))


def leq(a: FormulaClass, b: FormulaClass) -> bool:
    """The inclusion order of the class lattice."""
    if a == b:
        return True
    if a.kind == "Delta0":
        return b.kind != "SigmaBang"
    if b.kind in ("Delta0", "SigmaBang"):
        return False
    if a.kind in ("Sigma", "SigmaBang"):
        if b.kind == "Pi":
            return b.n > a.n
        return b.n >= a.n
    if a.kind == "Pi":
        return b.n > a.n
    if a.kind == "SigmaB":
        return b.kind in ("SigmaB", "Sigma1Class") and b.n >= a.n
    return b.kind == "Sigma1Class" and b.n >= a.n


# --------------------------------------------------------------------------
# Negation normal form


def nnf(f: Formula, negate: bool = False) -> Formula:
    """Push negations to atoms; implications become disjunctions."""
    if isinstance(f, Not):
        return nnf(f.body, not negate)
    if isinstance(f, Implies):
        return nnf(Or(Not(f.left), f.right), negate)
    if isinstance(f, (And, Or)):
        cls = f.__class__
        if negate:
            cls = Or if cls is And else And
        return cls(nnf(f.left, negate), nnf(f.right, negate))
    if isinstance(f, (Exists, Forall)):
        cls = f.__class__
        if negate:
            cls = Forall if cls is Exists else Exists
        return cls(f.var, nnf(f.body, negate))
    if isinstance(f, (BExists, BForall)):
        cls = f.__class__
        if negate:
            cls = BForall if cls is BExists else BExists
        return cls(f.var, f.bound, nnf(f.body, negate))
    return Not(f) if negate else f


# --------------------------------------------------------------------------
# Levels


@dataclass(frozen=True)
class _Info:
    d0: bool
    sig: int
    pi: int
    bang: int | None
    sb: int
    s1: int | None


def _norm(sig: int, pi: int) -> tuple[int, int]:
    return min(sig, pi + 1), min(pi, sig + 1)


def _make(d0: bool, sig: int, pi: int, bang=None, structural_sb=None, s1=None) -> _Info:
    if d0:
        return _Info(True, 0, 0, None, 1, None)
    sig, pi = _norm(sig, pi)
    sb = max(1, sig)
    if structural_sb is not None:
        sb = min(sb, structural_sb)
    return _Info(False, sig, pi, bang, sb, s1)


def _literal(atom: Formula, negated: bool) -> _Info:
    if isinstance(atom, (Less, Eq, ProofP)):
        return _make(True, 0, 0)
    if isinstance(atom, TrueN):
        k = atom.level
        if k == 0:
            return _make(True, 0, 0)
        return _make(False, k + 1, k) if negated else _make(False, k, k + 1)
    if isinstance(atom, OProofP):
        n = atom.level
        sig, pi = (n + 2, n + 3) if negated else (n + 3, n + 2)
        return _make(False, sig, pi, structural_sb=n + 1)
    raise TypeError(f"not an atom: {atom!r}")


def _s1_level(i: _Info) -> int:
    return i.sb if i.s1 is None else min(i.sb, i.s1)


@lru_cache(maxsize=65536)
def _info(f: Formula) -> _Info:
    # f is in negation normal form
    if isinstance(f, Not):
        return _literal(f.body, True)
    if isinstance(f, (And, Or)):
        a, b = _info(f.left), _info(f.right)
        if a.d0 and b.d0:
            return _make(True, 0, 0)
        s1 = None
        if a.s1 is not None or b.s1 is not None:
            # unbounded existentials move out of & and | without collection
            s1 = max(_s1_level(a), _s1_level(b))
        return _make(False, max(a.sig, b.sig), max(a.pi, b.pi),
                     structural_sb=max(a.sb, b.sb), s1=s1)
    if isinstance(f, Exists):
        g = _info(f.body)
        sig = max(1, g.sig)
        return _make(False, sig, sig + 1, bang=max(1, g.pi + 1), s1=_s1_level(g))
    if isinstance(f, Forall):
        g = _info(f.body)
        pi = max(1, g.pi)
        return _make(False, pi + 1, pi)
    if isinstance(f, BExists):
        g = _info(f.body)
        if g.d0:
            return _make(True, 0, 0)
        sig = max(1, g.sig)
        return _make(False, sig, sig + 1, structural_sb=g.sb)
    if isinstance(f, BForall):
        g = _info(f.body)
        if g.d0:
            return _make(True, 0, 0)
        pi = max(1, g.pi)
        return _make(False, pi + 1, pi, structural_sb=g.sb)
    return _literal(f, False)


def native_classes(f: Formula) -> list[FormulaClass]:
    """Classes the grammar derives for f directly (before upward closure)."""
    i = _info(nnf(f))
    if i.d0:
        return [DELTA0]
    out = [Sigma(i.sig), Pi(i.pi), SigmaB(i.sb)]
    if i.bang is not None:
        out.append(SigmaBang(i.bang))
    if i.s1 is not None:
        out.append(Sigma1Class(i.s1))
    return out


def _key(c: FormulaClass):
    return (c.n, _RANK[c.kind])


def classify(f: Formula) -> FormulaClass:
    """Least derivable class; incomparable minima resolve by level, then kind."""
    natives = native_classes(f)
    minimal = [c for c in natives
               if not any(d != c and leq(d, c) for d in natives)]
    return min(minimal, key=_key)


def is_in_class(f: Formula, c: FormulaClass) -> bool:
    return any(leq(d, c) for d in native_classes(f))


def is_delta0(f: Formula) -> bool:
    return native_classes(f) == [DELTA0]


def memberships(f: Formula, max_level: int = 4) -> list[str]:
    """Every class up to ``max_level`` that contains f, as strings."""
    cands = [DELTA0] + [FormulaClass(k, n) for n in range(1, max_level + 1)
                        for k in KINDS[1:]]
    return [str(c) for c in cands if is_in_class(f, c)]
