"""The fixed Hilbert calculus for first-order logic with identity.

Rules are modus ponens and generalization.  Propositional reasoning is a
single line kind, checked by a truth table on the boolean skeleton (atoms and
quantified subformulas are opaque).  The logical axiom schemas are

* ``Q1``   A x. phi -> phi[x:=t]
* ``Q2``   phi[x:=t] -> E x. phi
* ``Q3``   A x. (phi -> psi) -> (phi -> A x. psi), x not free in phi
* ``Q4``   A x. (phi -> psi) -> ((E x. phi) -> psi), x not free in psi
* ``REFL`` t = t
* ``LEIB`` s = t -> (P -> P') for an atom P and P' obtained by replacing
  some occurrences of s by t
* ``BDEF`` the definitions of the bounded quantifiers, both directions.
"""

from __future__ import annotations

from functools import lru_cache

from .syntax import (
    And, BExists, BForall, Eq, Exists, Forall, Formula, Implies, Less, Not,
    Numeral, One, OProofP, Or, ProofP, Term, TrueN, Var, Zero, free_vars,
    substitute, term_children,
)

TAUT_MAX_ATOMS = 20


# --------------------------------------------------------------------------
# Tautologies


def skeleton_atoms(f: Formula, out: dict | None = None) -> dict:
    """Opaque parts of f (atoms and quantified subformulas) in first-seen order."""
    out = {} if out is None else out
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Not):
            stack.append(g.body)
        elif isinstance(g, (And, Or, Implies)):
            stack += [g.right, g.left]
        elif g not in out:
            out[g] = len(out)
    return out


@lru_cache(maxsize=16384)
def is_tautology(f: Formula) -> bool:
    """Truth-table check using one bit per valuation, packed into an int."""
    atoms = skeleton_atoms(f)
    k = len(atoms)
    if k > TAUT_MAX_ATOMS:
        return False
    rows = 1 << k
    mask = (1 << rows) - 1
    cols = []
    for i in range(k):
        # bit r of column i is bit i of the row number r
        block = (1 << (1 << i)) - 1
        pattern = 0
        period = 1 << (i + 1)
        for start in range(1 << i, rows, period):
            pattern |= block << start
        cols.append(pattern)

    def val(g):
        if isinstance(g, Not):
            return mask ^ val(g.body)
        if isinstance(g, And):
            return val(g.left) & val(g.right)
        if isinstance(g, Or):
            return val(g.left) | val(g.right)
        if isinstance(g, Implies):
            return (mask ^ val(g.left)) | val(g.right)
        return cols[atoms[g]]

    return val(f) == mask


# --------------------------------------------------------------------------
# Matching instances


class _NoMatch(Exception):
    pass


def _match_term(p: Term, t: Term, pvars: frozenset, bound: frozenset, env: dict) -> None:
    if isinstance(p, Var) and p.name in pvars and p.name not in bound:
        if p.name in env:
            if env[p.name] != t:
                raise _NoMatch
        else:
            env[p.name] = t
        return
    if type(p) is not type(t):
        raise _NoMatch
    if isinstance(p, (Zero, One)):
        return
    if isinstance(p, (Var, Numeral)):
        if p != t:
            raise _NoMatch
        return
    for a, b in zip(term_children(p), term_children(t)):
        _match_term(a, b, pvars, bound, env)


def _match(p: Formula, f: Formula, pvars: frozenset, bound: frozenset, env: dict) -> None:
    if type(p) is not type(f):
        raise _NoMatch
    if isinstance(p, (Less, Eq)):
        _match_term(p.left, f.left, pvars, bound, env)
        _match_term(p.right, f.right, pvars, bound, env)
    elif isinstance(p, TrueN):
        if p.level != f.level:
            raise _NoMatch
        _match_term(p.arg, f.arg, pvars, bound, env)
    elif isinstance(p, (ProofP, OProofP)):
        if p.theory != f.theory or getattr(p, "level", None) != getattr(f, "level", None):
            raise _NoMatch
        _match_term(p.p, f.p, pvars, bound, env)
        _match_term(p.f, f.f, pvars, bound, env)
    elif isinstance(p, Not):
        _match(p.body, f.body, pvars, bound, env)
    elif isinstance(p, (And, Or, Implies)):
        _match(p.left, f.left, pvars, bound, env)
        _match(p.right, f.right, pvars, bound, env)
    else:
        if p.var != f.var:
            raise _NoMatch
        if isinstance(p, (BForall, BExists)):
            _match_term(p.bound, f.bound, pvars, bound, env)
        _match(p.body, f.body, pvars, bound | {p.var}, env)


def match_instance(pattern: Formula, pvars, target: Formula) -> dict | None:
    """Terms for the free ``pvars`` of pattern that turn it into target.

    Variables that do not occur free in pattern are left out of the result.
    The answer is verified by substitution, so a returned dict is always right.
    """
    pvars = frozenset(pvars) & free_vars(pattern)
    env: dict = {}
    try:
        _match(pattern, target, pvars, frozenset(), env)
    except _NoMatch:
        return None
    g = pattern
    for v, t in env.items():
        g = substitute(g, v, t)
    return env if g == target else None


def is_instance(phi: Formula, x: str, target: Formula) -> bool:
    """target is phi[x:=t] for some term t."""
    if x not in free_vars(phi):
        return phi == target
    return match_instance(phi, {x}, target) is not None


# --------------------------------------------------------------------------
# Logical axioms


def _leib_term(a: Term, b: Term, s: Term, t: Term) -> bool:
    if a == b:
        return True
    if a == s and b == t:
        return True
    if type(a) is not type(b) or isinstance(a, (Zero, One, Var, Numeral)):
        return False
    return all(_leib_term(x, y, s, t) for x, y in zip(term_children(a), term_children(b)))


def _leibniz(s: Term, t: Term, a: Formula, b: Formula) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, (Less, Eq)):
        return _leib_term(a.left, b.left, s, t) and _leib_term(a.right, b.right, s, t)
    if isinstance(a, TrueN):
        return a.level == b.level and _leib_term(a.arg, b.arg, s, t)
    if isinstance(a, (ProofP, OProofP)):
        return (a.theory == b.theory and getattr(a, "level", None) == getattr(b, "level", None)
                and _leib_term(a.p, b.p, s, t) and _leib_term(a.f, b.f, s, t))
    return False


def _bdef(a: Formula, b: Formula) -> bool:
    for x, y in ((a, b), (b, a)):
        if isinstance(x, BForall) and y == Forall(x.var, Implies(Less(Var(x.var), x.bound), x.body)):
            return True
        if isinstance(x, BExists) and y == Exists(x.var, And(Less(Var(x.var), x.bound), x.body)):
            return True
    return False


def logical_axiom(f: Formula) -> str | None:
    """Name of the logical schema f instantiates, or None."""
    if isinstance(f, Eq):
        return "REFL" if f.left == f.right else None
    if not isinstance(f, Implies):
        return None
    a, b = f.left, f.right
    if isinstance(a, Forall) and is_instance(a.body, a.var, b):
        return "Q1"
    if isinstance(b, Exists) and is_instance(b.body, b.var, a):
        return "Q2"
    if isinstance(a, Forall) and isinstance(a.body, Implies) and isinstance(b, Implies):
        x, phi, psi = a.var, a.body.left, a.body.right
        if b.left == phi and b.right == Forall(x, psi) and x not in free_vars(phi):
            return "Q3"
        if b.left == Exists(x, phi) and b.right == psi and x not in free_vars(psi):
            return "Q4"
    if isinstance(a, Eq) and isinstance(b, Implies) and _leibniz(a.left, a.right, b.left, b.right):
        return "LEIB"
    if _bdef(a, b):
        return "BDEF"
    return None
