"""Random formulas for the property suites.

All generators take a ``random.Random`` so suites are reproducible from a seed.
"""

from __future__ import annotations

import random

from . import coding
from .glp import BOT as MBOT
from .glp import Atom, Box, MAnd, MImp, MNot, MOr
from .syntax import (
    Add, AllCode, And, BExists, BForall, Eq, Exists, Exp, Forall, ImpCode,
    Implies, Less, Mul, NegCode, Not, One, OProofP, Or, ProofP, SubApp, TrueN,
    Var, Zero, numeral,
)

DEFAULT_SEED = 20260101


def rng_from(seed=None) -> random.Random:
    return random.Random(DEFAULT_SEED if seed is None else seed)


# --------------------------------------------------------------------------
# Arithmetic


def small_term(rng, xs, coef: int = 8) -> object:
    """a*x + b with a, b <= coef, or a variable, or a constant."""
    r = rng.random()
    if not xs or r < 0.25:
        return numeral(rng.randint(0, coef))
    x = Var(rng.choice(xs))
    if r < 0.5:
        return x
    a, b = rng.randint(1, coef), rng.randint(0, coef)
    t = x if a == 1 else Mul(numeral(a), x)
    return t if b == 0 else Add(t, numeral(b))


def delta0(rng, xs, depth: int = 2, coef: int = 8):
    """A Delta0 formula over the variables xs; bounds are variables or small numerals."""
    if depth <= 0 or rng.random() < 0.3:
        a, b = small_term(rng, xs, coef), small_term(rng, xs, coef)
        return Eq(a, b) if rng.random() < 0.5 else Less(a, b)
    r = rng.random()
    if r < 0.2:
        return Not(delta0(rng, xs, depth - 1, coef))
    if r < 0.7:
        op = rng.choice([And, Or, Implies])
        return op(delta0(rng, xs, depth - 1, coef), delta0(rng, xs, depth - 1, coef))
    y = f"b{depth}"
    bound = Var(rng.choice(xs)) if xs and rng.random() < 0.6 else numeral(rng.randint(0, 4))
    q = BForall if rng.random() < 0.5 else BExists
    return q(y, bound, delta0(rng, list(xs) + [y], depth - 1, coef))


def sigma1_sentence(rng, coef: int = 8, x: str = "x"):
    """E x. (guard(x) & R(x)) with a guard that bounds the witness."""
    r = rng.random()
    c = rng.randint(0, coef)
    if r < 0.4:
        guard = Less(Var(x), numeral(c))
    elif r < 0.7:
        a, b = rng.randint(1, coef), rng.randint(0, coef)
        guard = Eq(Add(Mul(numeral(a), Var(x)), numeral(b)), numeral(rng.randint(0, 3 * coef)))
    else:
        guard = Eq(Var(x), numeral(c))
    body = delta0(rng, [x], depth=2, coef=coef)
    if rng.random() < 0.5:
        body = Or(body, delta0(rng, [x], depth=1, coef=coef))
    return Exists(x, And(guard, body))


def diagonal_matrix(rng):
    """A Delta0 psi(x, y) in which x (a large code) never bounds a quantifier."""
    def atom():
        r = rng.random()
        if r < 0.3:
            return Less(Var("x"), Add(Var("y"), numeral(rng.randint(0, 8))))
        if r < 0.45:
            return Eq(Var("x"), numeral(rng.randint(0, 8)))
        if r < 0.6:
            return Less(numeral(rng.randint(0, 8)), Var("x"))
        return delta0(rng, ["y"], depth=1)

    def build(d):
        if d == 0 or rng.random() < 0.3:
            return atom()
        r = rng.random()
        if r < 0.2:
            return Not(build(d - 1))
        if r < 0.8:
            return rng.choice([And, Or, Implies])(build(d - 1), build(d - 1))
        q = BForall if rng.random() < 0.5 else BExists
        return q("b", Var("y"), And(Less(Var("b"), numeral(9)), build(d - 1)))

    return build(3)


# --------------------------------------------------------------------------
# Hierarchy samples


def sigma_piece(rng, n: int, xs, closed_under_negation: bool = False):
    """A Sigma(n+1) formula over xs drawn from the natural shapes of the level.

    With ``closed_under_negation`` only pieces whose negation stays in
    SigmaB(n+1) are drawn (Delta0 matrices and oracle proof atoms).
    """
    if closed_under_negation:
        if rng.random() < 0.6:
            return delta0(rng, xs, depth=1)
        return OProofP("toyEA", n, Var(rng.choice(xs)), numeral(coding.encode(Eq(Zero(), Zero()))))
    r = rng.random()
    if r < 0.3:
        return delta0(rng, xs, depth=1)
    if r < 0.5:
        return TrueN(n + 1, Var(rng.choice(xs)))
    if r < 0.7:
        return OProofP("toyEA", n, Var(rng.choice(xs)), numeral(coding.encode(Eq(Zero(), Zero()))))
    z = f"e{n}"
    inner = delta0(rng, list(xs) + [z], depth=1)
    for k in range(n):
        w = f"u{k}"
        inner = Forall(w, inner) if (n - k) % 2 == 1 else Exists(w, inner)
    return Exists(z, inner)


def sigma_b(rng, n: int, xs, depth: int = 2, closed_under_negation: bool = False):
    """Closure of Sigma(n+1) pieces under &, | and bounded quantifiers."""
    if depth <= 0 or rng.random() < 0.35:
        return sigma_piece(rng, n, xs, closed_under_negation)
    r = rng.random()
    if r < 0.6:
        op = And if rng.random() < 0.5 else Or
        return op(sigma_b(rng, n, xs, depth - 1, closed_under_negation),
                  sigma_b(rng, n, xs, depth - 1, closed_under_negation))
    y = f"c{depth}"
    q = BForall if rng.random() < 0.5 else BExists
    return q(y, Var(rng.choice(xs)),
             sigma_b(rng, n, list(xs) + [y], depth - 1, closed_under_negation))


def sigma_n1_1(rng, n: int, x: str = "x", closed_under_negation: bool = False):
    """A sentence E x. phi with phi in SigmaB(n+1)."""
    return Exists(x, sigma_b(rng, n, [x], 2, closed_under_negation))


# --------------------------------------------------------------------------
# Arbitrary syntax (coding round trips)


def any_term(rng, xs, depth: int = 3):
    if depth <= 0 or rng.random() < 0.3:
        r = rng.random()
        if r < 0.3 and xs:
            return Var(rng.choice(xs))
        if r < 0.5:
            return Zero()
        if r < 0.6:
            return One()
        return numeral(rng.choice([rng.randint(2, 50), rng.getrandbits(rng.randint(8, 200)) + 2]))
    op = rng.choice([Add, Mul, Exp, SubApp, NegCode, ImpCode, AllCode])
    if op is Exp or op is NegCode:
        return op(any_term(rng, xs, depth - 1))
    if op is SubApp:
        return SubApp(*(any_term(rng, xs, depth - 1) for _ in range(3)))
    return op(any_term(rng, xs, depth - 1), any_term(rng, xs, depth - 1))


_NAMES = ["x", "y", "z", "w", "v1", "foo"]


def any_formula(rng, depth: int = 4, xs=None):
    xs = list(xs) if xs is not None else rng.sample(_NAMES, 2)
    if depth <= 0 or rng.random() < 0.2:
        r = rng.random()
        if r < 0.35:
            return Eq(any_term(rng, xs, 2), any_term(rng, xs, 2))
        if r < 0.7:
            return Less(any_term(rng, xs, 2), any_term(rng, xs, 2))
        if r < 0.8:
            return TrueN(rng.randint(0, 3), any_term(rng, xs, 1))
        if r < 0.9:
            return ProofP(rng.choice(["toyEA", "pure"]), any_term(rng, xs, 1), any_term(rng, xs, 1))
        return OProofP("toyEA", rng.randint(0, 3), any_term(rng, xs, 1), any_term(rng, xs, 1))
    r = rng.random()
    if r < 0.15:
        return Not(any_formula(rng, depth - 1, xs))
    if r < 0.55:
        op = rng.choice([And, Or, Implies])
        return op(any_formula(rng, depth - 1, xs), any_formula(rng, depth - 1, xs))
    v = rng.choice(_NAMES)
    if r < 0.8:
        q = rng.choice([Forall, Exists])
        return q(v, any_formula(rng, depth - 1, xs + [v]))
    bound = any_term(rng, [x for x in xs if x != v], 1)
    q = rng.choice([BForall, BExists])
    return q(v, bound, any_formula(rng, depth - 1, xs + [v]))


# --------------------------------------------------------------------------
# Modal formulas


def modal_formula(rng, atoms=("p", "q"), depth: int = 3, max_level: int = 3):
    if depth <= 0 or rng.random() < 0.25:
        return MBOT if rng.random() < 0.1 else Atom(rng.choice(atoms))
    r = rng.random()
    if r < 0.15:
        return MNot(modal_formula(rng, atoms, depth - 1, max_level))
    if r < 0.45:
        return Box(rng.randint(0, max_level), modal_formula(rng, atoms, depth - 1, max_level))
    op = rng.choice([MAnd, MOr, MImp])
    return op(modal_formula(rng, atoms, depth - 1, max_level),
              modal_formula(rng, atoms, depth - 1, max_level))
