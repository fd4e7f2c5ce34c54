"""Truth over the natural numbers.

Delta0 formulas are decided exactly.  Unbounded quantifiers are handled by a
search over witness values ``0..fuel`` that only commits to a verdict when it
is certain:

* an existential is True once a witness is found and False only when a sound
  static bound shows that no witness can exceed a value already searched;
* universals are dual (a counterexample gives False);
* ``E z. (z = t & ...)`` has exactly one candidate witness, the value of t,
  so it is evaluated directly.

Everything else is Unknown.  Connectives use strong Kleene logic, so True and
False verdicts never change when the fuel grows.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from . import coding
from .coding import DecodeError
from .hierarchy import Sigma, Sigma1Class, is_delta0, is_in_class
from .syntax import (
    Add, AllCode, And, BExists, BForall, Eq, Exists, Exp, Forall, Formula,
    ImpCode, Implies, Less, Mul, NegCode, Not, Numeral, One, OProofP, Or,
    ProofP, SubApp, Term, TrueN, Var, Zero, free_vars, term_vars,
)

EXP_LIMIT = 1 << 24


class EvalError(ValueError):
    """A term could not be evaluated (unbound variable or oversized exp)."""


class CodeError(EvalError):
    """A code function was applied to arguments that are not codes."""


class Truth(enum.Enum):
    TRUE = "True"
    FALSE = "False"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value

    @property
    def certain(self) -> bool:
        return self is not Truth.UNKNOWN

    def __invert__(self):
        if self is Truth.TRUE:
            return Truth.FALSE
        if self is Truth.FALSE:
            return Truth.TRUE
        return self

    def __and__(self, other):
        if Truth.FALSE in (self, other):
            return Truth.FALSE
        if Truth.UNKNOWN in (self, other):
            return Truth.UNKNOWN
        return Truth.TRUE

    def __or__(self, other):
        if Truth.TRUE in (self, other):
            return Truth.TRUE
        if Truth.UNKNOWN in (self, other):
            return Truth.UNKNOWN
        return Truth.FALSE

    @classmethod
    def of(cls, b: bool) -> "Truth":
        return cls.TRUE if b else cls.FALSE


TRUE, FALSE, UNKNOWN = Truth.TRUE, Truth.FALSE, Truth.UNKNOWN


@dataclass(frozen=True)
class Verdict:
    value: Truth
    fuel_used: int = 0

    @property
    def certain(self) -> bool:
        return self.value.certain

    def to_json(self) -> dict:
        return {"verdict": str(self.value), "fuel_used": self.fuel_used}


# --------------------------------------------------------------------------
# Terms


@lru_cache(maxsize=8192)
def _code_fn(name: str, args: tuple) -> int:
    try:
        if name == "sub":
            return coding.sub_num(*args)
        if name == "neg":
            return coding.neg_code(*args)
        if name == "imp":
            return coding.imp_code(*args)
        return coding.all_code(*args)
    except DecodeError as e:
        raise CodeError(str(e)) from e


def eval_term(t: Term, env: dict | None = None) -> int:
    """Standard value of t over the naturals; exp(x) = 2**x."""
    env = env or {}
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise EvalError(f"unbound variable {t.name}") from None
    if isinstance(t, Zero):
        return 0
    if isinstance(t, One):
        return 1
    if isinstance(t, Numeral):
        return t.value
    if isinstance(t, Add):
        return eval_term(t.left, env) + eval_term(t.right, env)
    if isinstance(t, Mul):
        return eval_term(t.left, env) * eval_term(t.right, env)
    if isinstance(t, Exp):
        x = eval_term(t.arg, env)
        if x > EXP_LIMIT:
            raise EvalError(f"exp argument {x} exceeds the supported size")
        return 1 << x
    if isinstance(t, SubApp):
        return _code_fn("sub", (eval_term(t.u, env), eval_term(t.v, env), eval_term(t.w, env)))
    if isinstance(t, NegCode):
        return _code_fn("neg", (eval_term(t.arg, env),))
    if isinstance(t, ImpCode):
        return _code_fn("imp", (eval_term(t.left, env), eval_term(t.right, env)))
    if isinstance(t, AllCode):
        return _code_fn("all", (eval_term(t.var, env), eval_term(t.body, env)))
    raise TypeError(f"not a term: {t!r}")


# --------------------------------------------------------------------------
# Static witness bounds


def _grows(t: Term, x: str) -> bool:
    """t(x) >= x for every value of x and of the other variables."""
    if isinstance(t, Var):
        return t.name == x
    if isinstance(t, Add):
        return _grows(t.left, x) or _grows(t.right, x)
    if isinstance(t, Mul):
        return ((_grows(t.left, x) and _positive(t.right))
                or (_grows(t.right, x) and _positive(t.left)))
    if isinstance(t, Exp):
        return _grows(t.arg, x)
    return False


def _positive(t: Term) -> bool:
    if isinstance(t, (One, Numeral, Exp)):
        return True
    if isinstance(t, Add):
        return _positive(t.left) or _positive(t.right)
    if isinstance(t, Mul):
        return _positive(t.left) and _positive(t.right)
    return False


def _lub(a, b):
    return None if a is None or b is None else max(a, b)


def _glb(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


# --------------------------------------------------------------------------
# Evaluator


class Evaluator:
    """Fuel-bounded three-valued evaluation; one instance per query."""

    def __init__(self, fuel: int, witnesses=()):
        self.fuel = fuel
        self.witnesses = tuple(sorted(set(w for w in witnesses if 0 <= w <= fuel)))
        self.fuel_used = 0
        self._active: set = set()
        self._proofs: dict = {}

    def value(self, t: Term, env: dict) -> int:
        return eval_term(t, env)

    def _closed_value(self, t: Term, env: dict):
        try:
            return eval_term(t, env)
        except CodeError:
            return None

    # bounds -----------------------------------------------------------------
    def bound(self, f: Formula, x: str, env: dict, positive: bool = True):
        """An upper bound on the x making f (or its negation) true, or None.

        A result of -1 means no value of x qualifies.
        """
        if isinstance(f, Not):
            return self.bound(f.body, x, env, not positive)
        if isinstance(f, And):
            a = self.bound(f.left, x, env, positive)
            b = self.bound(f.right, x, env, positive)
            return _glb(a, b) if positive else _lub(a, b)
        if isinstance(f, Or):
            a = self.bound(f.left, x, env, positive)
            b = self.bound(f.right, x, env, positive)
            return _lub(a, b) if positive else _glb(a, b)
        if isinstance(f, Implies):
            return self.bound(Or(Not(f.left), f.right), x, env, positive)
        if isinstance(f, Eq) and positive:
            for a, b in ((f.left, f.right), (f.right, f.left)):
                if x not in term_vars(b) and _grows(a, x):
                    v = self._closed_value(b, env)
                    return -1 if v is None else v
            return None
        if isinstance(f, Less):
            lo, hi = (f.left, f.right) if positive else (f.right, f.left)
            if x in term_vars(hi) or not _grows(lo, x):
                return None
            v = self._closed_value(hi, env)
            if v is None:
                return -1
            # positive: x <= lo < hi; negative: x <= lo <= hi
            return v - 1 if positive else v
        if isinstance(f, (BExists, BForall)):
            universal = isinstance(f, BForall) == positive
            if x in term_vars(f.bound):
                return self._growing_bound(f, x, env, positive, universal)
            try:
                n = eval_term(f.bound, env)
            except EvalError:
                return None
            if universal:
                if n == 0:
                    return None
                return self.bound(f.body, x, {**env, f.var: 0}, positive)
            if n == 0:
                return -1
            if n > 64:
                return None
            out = -1
            for y in range(n):
                out = _lub(out, self.bound(f.body, x, {**env, f.var: y}, positive))
                if out is None:
                    return None
            return out
        return None

    def _growing_bound(self, f, x, env, positive, universal):
        # A y < t(x). g(y) with t(x) >= x fails once t(x) exceeds a refuting y
        if not universal or not _grows(f.bound, x) or x in free_vars(f.body):
            return None
        want = FALSE if positive else TRUE
        for y in range(self.fuel + 1):
            r = self.ev(f.body, {**env, f.var: y})
            if r is want:
                return y
        return None

    # formulas ---------------------------------------------------------------
    def ev(self, f: Formula, env: dict) -> Truth:
        if isinstance(f, (Eq, Less)):
            try:
                a = eval_term(f.left, env)
                b = eval_term(f.right, env)
            except CodeError:
                return FALSE
            return Truth.of(a == b if isinstance(f, Eq) else a < b)
        if isinstance(f, Not):
            return ~self.ev(f.body, env)
        if isinstance(f, And):
            a = self.ev(f.left, env)
            if a is FALSE:
                return FALSE
            return a & self.ev(f.right, env)
        if isinstance(f, Or):
            a = self.ev(f.left, env)
            if a is TRUE:
                return TRUE
            return a | self.ev(f.right, env)
        if isinstance(f, Implies):
            a = self.ev(f.left, env)
            if a is FALSE:
                return TRUE
            return ~a | self.ev(f.right, env)
        if isinstance(f, (BExists, BForall)):
            n = eval_term(f.bound, env)
            acc = FALSE if isinstance(f, BExists) else TRUE
            stop = TRUE if isinstance(f, BExists) else FALSE
            for y in range(n):
                r = self.ev(f.body, {**env, f.var: y})
                if r is stop:
                    return stop
                if r is UNKNOWN:
                    acc = UNKNOWN
            return acc
        if isinstance(f, Exists):
            return self._search(f, env, existential=True)
        if isinstance(f, Forall):
            return self._search(f, env, existential=False)
        if isinstance(f, TrueN):
            return self._truen(f, env)
        if isinstance(f, ProofP):
            return self._proofp(f, env)
        if isinstance(f, OProofP):
            return self._oproofp(f, env)
        raise TypeError(f"not a formula: {f!r}")

    def _defined_witness(self, f, existential: bool):
        x, g = f.var, f.body
        if existential:
            eq = g.left if isinstance(g, And) else g
        elif isinstance(g, Implies):
            eq = g.left
        elif isinstance(g, Or) and isinstance(g.left, Not):
            eq = g.left.body
        else:
            return None
        if not isinstance(eq, Eq):
            return None
        for a, b in ((eq.left, eq.right), (eq.right, eq.left)):
            if a == Var(x) and x not in term_vars(b):
                return b
        return None

    def _search(self, f, env, existential: bool) -> Truth:
        x, g = f.var, f.body
        hit = TRUE if existential else FALSE
        miss = ~hit
        t = self._defined_witness(f, existential)
        if t is not None:
            try:
                v = eval_term(t, env)
            except CodeError:
                return miss
            return self.ev(g, {**env, x: v})
        for w in self.witnesses:
            if self.ev(g, {**env, x: w}) is hit:
                return hit
        b = self.bound(g, x, env, positive=existential)
        limit = self.fuel if b is None else min(self.fuel, b)
        unknown = False
        for v in range(limit + 1):
            r = self.ev(g, {**env, x: v})
            if r is hit:
                self.fuel_used = max(self.fuel_used, v)
                return hit
            if r is UNKNOWN:
                unknown = True
        self.fuel_used = max(self.fuel_used, limit)
        if b is not None and b <= self.fuel and not unknown:
            return miss
        return UNKNOWN

    def _truen(self, f: TrueN, env) -> Truth:
        try:
            c = eval_term(f.arg, env)
            s = coding.decode(c)
        except (CodeError, DecodeError):
            return FALSE
        if free_vars(s):
            return FALSE
        ok = is_delta0(s) if f.level == 0 else is_in_class(s, Sigma(f.level))
        if not ok:
            return FALSE
        key = ("truen", c)
        if key in self._active:
            return UNKNOWN
        self._active.add(key)
        try:
            return self.ev(s, {})
        finally:
            self._active.discard(key)

    def _proof(self, p: int):
        from .provability import proof_from_code

        if p not in self._proofs:
            try:
                self._proofs[p] = proof_from_code(p)
            except (DecodeError, ValueError):
                self._proofs[p] = None
        return self._proofs[p]

    def _proofp(self, f: ProofP, env) -> Truth:
        from .provability import check_proof, get_theory

        try:
            p = eval_term(f.p, env)
            c = eval_term(f.f, env)
        except CodeError:
            return FALSE
        proof = self._proof(p)
        if proof is None or not proof.lines or coding.encode(proof.conclusion) != c:
            return FALSE
        return Truth.of(check_proof(get_theory(f.theory), proof))

    def _oproofp(self, f: OProofP, env) -> Truth:
        from .provability import check_oracle_proof, get_theory

        try:
            p = eval_term(f.p, env)
            c = eval_term(f.f, env)
        except CodeError:
            return FALSE
        proof = self._proof(p)
        if proof is None or not proof.lines or coding.encode(proof.conclusion) != c:
            return FALSE
        key = ("oproof", f.theory, f.level, p)
        if key in self._active:
            return UNKNOWN
        self._active.add(key)
        try:
            return check_oracle_proof(get_theory(f.theory), f.level, proof, self.fuel).value
        finally:
            self._active.discard(key)


# --------------------------------------------------------------------------
# Public entry points


def eval_with_fuel(f: Formula, fuel: int, witnesses=()) -> Verdict:
    """Three-valued truth of a sentence with unbounded searches up to ``fuel``.

    ``witnesses`` are extra candidate values (at most ``fuel``) tried before
    the linear search; they never change a certain verdict.
    """
    if free_vars(f):
        raise ValueError(f"not a sentence: free variables {sorted(free_vars(f))}")
    ev = Evaluator(fuel, witnesses)
    r = ev.ev(f, {})
    return Verdict(r, ev.fuel_used)


def eval_formula(f: Formula, env: dict, fuel: int, witnesses=()) -> Truth:
    missing = free_vars(f) - set(env)
    if missing:
        raise EvalError(f"environment misses {sorted(missing)}")
    return Evaluator(fuel, witnesses).ev(f, dict(env))


def eval_delta0(f: Formula, env: dict | None = None) -> bool:
    """Exact truth value of a Delta0 formula."""
    env = dict(env or {})
    if not is_delta0(f):
        raise ValueError("eval_delta0 needs a Delta0 formula")
    missing = free_vars(f) - set(env)
    if missing:
        raise EvalError(f"environment misses {sorted(missing)}")
    r = Evaluator(0).ev(f, env)
    if not r.certain:
        raise EvalError("Delta0 evaluation did not settle")
    return r is TRUE


def true_sigma(f: Formula, n: int, fuel: int, witnesses=()) -> Verdict:
    """The partial truth predicate for Sigma_{n+1} sentences."""
    if not is_in_class(f, Sigma1Class(n + 1)):
        raise ValueError(f"not a Sigma1Class({n + 1}) formula")
    return eval_with_fuel(f, fuel, witnesses)
