"""Budgeted backward-chaining proof search.

Each call to the goal solver costs one unit of budget.  For a goal the
strategies are tried in a fixed order, so the result is deterministic:

1. tautology, axiom of the theory or logical axiom;
2. instance of a universally quantified theory axiom (Q1 chain);
3. ``E x. phi``: witnesses from the defining equation ``x = t``, then closed
   subterms of phi, then 0 (Q2);
4. ``A & B``: both halves; ``A | B``: either half; ``~~A``: A;
5. ``A x. phi``: phi, then generalization;
6. bounded quantifiers through their defining unbounded forms;
7. ``A -> B``: B, or ~A.

Every proof returned has been re-checked by the checker; failure is the
normal result :data:`NOT_FOUND`.
"""

from __future__ import annotations

from .logic import is_tautology, match_instance
from .provability import (
    Proof, ProofLine, axiom, check_proof, gen, get_theory, mp, taut,
)
from .syntax import (
    And, BExists, BForall, Eq, Exists, Forall, Formula, Implies, Less, Not, Or,
    ATOMS, Var, Zero, atom_terms, free_vars, subformulas, substitute,
    term_children, term_vars,
)

NOT_FOUND = None
MAX_DEPTH = 40


class _OutOfBudget(Exception):
    pass


class _Node:
    """A derivation tree; lines are emitted once per distinct formula."""

    __slots__ = ("kind", "formula", "kids", "var")

    def __init__(self, kind, formula, kids=(), var=None):
        self.kind, self.formula, self.kids, self.var = kind, formula, kids, var


def _mp(premise: _Node, implication: _Node) -> _Node:
    return _Node("mp", implication.formula.right, (premise, implication))


def _via_taut(premises, goal) -> _Node:
    """goal from premises p1..pk and the tautology p1 -> ... -> pk -> goal."""
    chain = goal
    for p in reversed(premises):
        chain = Implies(p.formula, chain)
    node = _Node("taut", chain)
    for p in premises:
        node = _mp(p, node)
    return node


def _linearize(root: _Node) -> Proof:
    lines: list[ProofLine] = []
    index: dict = {}

    def emit(n: _Node) -> int:
        key = n.formula
        if key in index:
            return index[key]
        refs = tuple(emit(k) for k in n.kids)
        if n.kind == "mp":
            line = mp(n.formula, refs[0], refs[1])
        elif n.kind == "gen":
            line = gen(n.formula, refs[0], n.var)
        elif n.kind == "axiom":
            line = axiom(n.formula)
        else:
            line = taut(n.formula)
        lines.append(line)
        index[key] = len(lines) - 1
        return index[key]

    emit(root)
    return Proof(tuple(lines))


def _closed_subterms(f: Formula):
    seen = []
    for g in subformulas(f):
        if not isinstance(g, ATOMS):
            continue
        stack = list(atom_terms(g))
        while stack:
            t = stack.pop()
            if not term_vars(t) and t not in seen:
                seen.append(t)
            stack.extend(term_children(t))
    return seen


class _Solver:
    def __init__(self, T, budget: int):
        self.T = T
        self.budget = budget
        self.spent = 0
        self.failed: set = set()
        self.active: set = set()

    def tick(self):
        self.spent += 1
        if self.spent > self.budget:
            raise _OutOfBudget

    def solve(self, goal: Formula, depth: int = 0):
        if goal in self.failed or goal in self.active or depth > MAX_DEPTH:
            return None
        self.tick()
        self.active.add(goal)
        try:
            r = self._solve(goal, depth + 1)
        finally:
            self.active.discard(goal)
        if r is None:
            self.failed.add(goal)
        return r

    def _solve(self, goal, d):
        if is_tautology(goal):
            return _Node("taut", goal)
        if self.T.is_axiom(goal):
            return _Node("axiom", goal)
        r = self._axiom_instance(goal)
        if r is not None:
            return r
        if isinstance(goal, Exists):
            return self._exists(goal, d)
        if isinstance(goal, And):
            a = self.solve(goal.left, d)
            b = a and self.solve(goal.right, d)
            return b and _via_taut([a, b], goal)
        if isinstance(goal, Or):
            for side in (goal.left, goal.right):
                a = self.solve(side, d)
                if a is not None:
                    return _via_taut([a], goal)
            return None
        if isinstance(goal, Not) and isinstance(goal.body, Not):
            a = self.solve(goal.body.body, d)
            return a and _via_taut([a], goal)
        if isinstance(goal, Forall):
            a = self.solve(goal.body, d)
            return a and _Node("gen", goal, (a,), goal.var)
        if isinstance(goal, BForall):
            y = goal.var
            unb = Forall(y, Implies(Less(Var(y), goal.bound), goal.body))
            a = self.solve(unb, d)
            return a and _mp(a, _Node("axiom", Implies(unb, goal)))
        if isinstance(goal, BExists):
            y = goal.var
            unb = Exists(y, And(Less(Var(y), goal.bound), goal.body))
            a = self.solve(unb, d)
            return a and _mp(a, _Node("axiom", Implies(unb, goal)))
        if isinstance(goal, Implies):
            b = self.solve(goal.right, d)
            if b is not None:
                return _via_taut([b], goal)
            a = self.solve(Not(goal.left), d)
            return a and _via_taut([a], goal)
        return None

    def _axiom_instance(self, goal):
        for ax in self.T.axioms:
            if not isinstance(ax, Forall):
                continue
            prefix, body = [], ax
            while isinstance(body, Forall):
                prefix.append(body.var)
                body = body.body
            env = match_instance(body, set(prefix), goal)
            if env is None:
                continue
            node = _Node("axiom", ax)
            cur = ax
            for x in prefix:
                nxt = substitute(cur.body, x, env.get(x, Var(x)))
                node = _mp(node, _Node("axiom", Implies(cur, nxt)))
                cur = nxt
            if cur == goal:
                return node
        return None

    def _exists(self, goal: Exists, d):
        x, phi = goal.var, goal.body
        cands = []
        eq = phi.left if isinstance(phi, And) else phi
        if isinstance(eq, Eq):
            for a, b in ((eq.left, eq.right), (eq.right, eq.left)):
                if a == Var(x) and x not in term_vars(b):
                    cands.append(b)
        for t in _closed_subterms(phi) + [Zero()]:
            if t not in cands:
                cands.append(t)
        fv = free_vars(goal)
        for t in cands:
            if term_vars(t) - fv:
                continue
            inst = substitute(phi, x, t)
            a = self.solve(inst, d)
            if a is not None:
                return _mp(a, _Node("axiom", Implies(inst, goal)))
        return None


def search_stats(T, goal: Formula, budget: int) -> dict:
    """Search result together with the budget spent."""
    T = get_theory(T)
    s = _Solver(T, budget)
    try:
        root = s.solve(goal)
    except (_OutOfBudget, RecursionError):
        root = None
    proof = None
    if root is not None:
        proof = _linearize(root)
        if not check_proof(T, proof):
            proof = None
    return {"found": proof is not None, "spent": min(s.spent, budget), "proof": proof}


def bounded_search(T, goal: Formula, budget: int):
    """A checked proof of goal found within ``budget`` goal expansions, or None."""
    return search_stats(T, goal, budget)["proof"]
