"""Witness comparisons, the dynamic diagonal lemma and the named fixpoints."""

from __future__ import annotations

from dataclasses import dataclass

from . import coding
from .hierarchy import Sigma1Class, is_in_class
from .provability import (
    at_code, box_formula, extend, get_theory, oracle_box_formula,
)
from .syntax import (
    Add, And, BForall, Eq, Exists, Formula, NegCode, Not, One, Or, SubApp, Var,
    Zero,
    all_vars, free_vars, fresh_var, numeral, substitute,
)


# --------------------------------------------------------------------------
# Witness comparison


def _exists_shape(f: Formula, normalize: bool, avoid) -> Exists:
    if isinstance(f, Exists):
        return f
    if not normalize:
        raise ValueError("witness comparison needs E-shaped formulas "
                         "(pass normalize=True to wrap a dummy witness)")
    d = fresh_var("d", set(avoid) | all_vars(f))
    return Exists(d, And(Eq(Var(d), Var(d)), f))


def _wc(a: Formula, b: Formula, strict: bool, normalize: bool) -> Formula:
    avoid = all_vars(a) | all_vars(b)
    a = _exists_shape(a, normalize, avoid)
    b = _exists_shape(b, normalize, avoid)
    avoid = all_vars(a) | all_vars(b)
    x = fresh_var("x", avoid)
    y = fresh_var("y", avoid | {x})
    left = substitute(a.body, a.var, Var(x))
    right = Not(substitute(b.body, b.var, Var(y)))
    bound = Add(Var(x), One()) if strict else Var(x)
    return Exists(x, And(left, BForall(y, bound, right)))


def wc_leq(a: Formula, b: Formula, normalize: bool = False) -> Formula:
    """a <= b: a has a witness and no smaller number witnesses b."""
    return _wc(a, b, strict=False, normalize=normalize)


def wc_less(a: Formula, b: Formula, normalize: bool = False) -> Formula:
    """a < b: a has a witness and no number up to it witnesses b."""
    return _wc(a, b, strict=True, normalize=normalize)


# --------------------------------------------------------------------------
# Diagonalization


def diagonal_fixpoint(psi: Formula, x: str = "x", y: str = "y") -> Formula:
    """phi(y) with phi(k) equivalent to psi(code of phi(k), k).

    The outer layer is the standard diagonal over the template
    ``E z. (z = sub(x, 'y', y) & psi(x/z, y))``.
    """
    extra = free_vars(psi) - {x, y}
    if extra:
        raise ValueError(f"unexpected free variables {sorted(extra)}")
    avoid = all_vars(psi) | {x, y}
    u = fresh_var("u", avoid)
    z = fresh_var("z", avoid | {u})
    body = Exists(z, And(Eq(Var(z), SubApp(Var(u), coding.quote(Var(y)), Var(y))),
                         substitute(psi, x, Var(z))))
    delta = Exists(u, And(Eq(Var(u), SubApp(Var(x), coding.quote(Var(x)), Var(x))), body))
    return substitute(delta, x, numeral(coding.encode(delta)))


def sentence_fixpoint(psi: Formula, x: str = "x") -> Formula:
    """A sentence phi equivalent to psi(code of phi)."""
    extra = free_vars(psi) - {x}
    if extra:
        raise ValueError(f"unexpected free variables {sorted(extra)}")
    y = fresh_var("y", all_vars(psi) | {x})
    return substitute(diagonal_fixpoint(psi, x, y), y, Zero())


def diagonal_instance(phi: Formula, k: int, y: str = "y") -> Formula:
    return substitute(phi, y, numeral(k))


# --------------------------------------------------------------------------
# Named fixpoints


def _neg_box(pred: Formula, arg) -> Formula:
    return substitute(pred, "v", NegCode(arg))


def rosser_sentence(T) -> Formula:
    """rho equivalent to (box ~rho <= box rho)."""
    box = box_formula(T)
    x = Var("x")
    psi = wc_leq(_neg_box(box, x), substitute(box, "v", x))
    return sentence_fixpoint(psi)


@dataclass(frozen=True)
class BoxMaker:
    """Provability at a level: -1 is plain provability, n >= 0 is [n]."""

    theory: str
    level: int = -1

    def formula(self, v: str = "v") -> Formula:
        return oracle_box_formula(self.theory, self.level, v)

    def at(self, t) -> Formula:
        return substitute(self.formula(), "v", t)

    @property
    def sigma_class(self):
        return Sigma1Class(max(self.level, 0) + 1)


def fgh_fixpoint(sigma: Formula, maker: BoxMaker) -> Formula:
    """rho equivalent to (sigma <= box rho) for the given provability level."""
    if not isinstance(sigma, Exists) or free_vars(sigma):
        raise ValueError("sigma must be an E-shaped sentence")
    if not is_in_class(sigma, maker.sigma_class):
        raise ValueError(f"sigma is not in {maker.sigma_class}")
    psi = wc_leq(sigma, maker.at(Var("x")))
    return sentence_fixpoint(psi)


def _sigma1(sigma: Formula):
    if not isinstance(sigma, Exists) or free_vars(sigma):
        raise ValueError("sigma must be an E-shaped sentence")
    if not is_in_class(sigma, Sigma1Class(1)):
        raise ValueError("sigma must be in Sigma1Class(1)")


def dual_fixpoint_leq(sigma: Formula, T) -> Formula:
    """rho equivalent to (box ~rho <= sigma)."""
    _sigma1(sigma)
    x = Var("x")
    return sentence_fixpoint(wc_leq(_neg_box(box_formula(T), x), sigma))


def dual_fixpoint_not_less(sigma: Formula, T) -> Formula:
    """rho equivalent to ~(box rho < sigma).

    Built as ~chi for the fixpoint chi of (box ~chi < sigma); since ~chi is
    rho, the code of ~chi is exactly the code of rho.
    """
    _sigma1(sigma)
    x = Var("x")
    chi = sentence_fixpoint(wc_less(_neg_box(box_formula(T), x), sigma))
    return Not(chi)


@dataclass(frozen=True)
class OrCombination:
    sigma: Formula
    rho: Formula
    box_rho: Formula


def or_combinator(phi: Formula, psi: Formula, n: int, T) -> OrCombination:
    """sigma := E p. ([n] via p proves phi or psi), its FGH fixpoint and [n]rho."""
    T = get_theory(T)
    pred = oracle_box_formula(T, n, "v")
    p = pred.var
    left = at_code(pred.body, phi)
    right = at_code(pred.body, psi)
    sigma = Exists(p, Or(left, right))
    maker = BoxMaker(T.name, n)
    rho = fgh_fixpoint(sigma, maker)
    return OrCombination(sigma, rho, at_code(maker.formula(), rho))


def and_combinator(phi: Formula, psi: Formula, n: int, T) -> Formula:
    """[n](phi & psi)."""
    return at_code(oracle_box_formula(T, n), And(phi, psi))


def dense_between(sigma0: Formula, sigma2: Formula, T) -> Formula:
    """sigma0 | (rho & sigma2) with rho the Rosser sentence of T + ~sigma0 + sigma2."""
    for s in (sigma0, sigma2):
        if free_vars(s) or not is_in_class(s, Sigma1Class(1)):
            raise ValueError("both bounds must be Sigma_1 sentences")
    ext = extend(T, [Not(sigma0), sigma2])
    return Or(sigma0, And(rosser_sentence(ext), sigma2))
