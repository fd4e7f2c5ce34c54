"""Abstract syntax, parser, printer and substitution for arithmetic formulas.

The object language is first-order arithmetic over ``0, 1, exp, +, *, <, =``
with bounded quantifiers as primitive nodes.  A few semantic symbols extend
the vocabulary conservatively: the code functions ``sub``, ``neg``, ``imp``,
``all`` and the predicates ``TrueN``, ``Proof`` and ``OProof``.

Surface syntax (ASCII; a few Unicode connectives are accepted on input)::

    E x. x * x = 4
    A y < z. E x. x = y + 1
    ~(x = 0) & (x < 1) -> TrueN[1](sub(u, v, w))
    Proof[toyEA](p, 12345)

``render`` is fully parenthesized and ``parse_formula(render(f)) == f``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator, Union


# --------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not _IDENT.fullmatch(self.name) or self.name in RESERVED:
            raise ValueError(f"bad variable name {self.name!r}")


@dataclass(frozen=True)
class Numeral:
    """The binary numeral of ``value`` (for ``value >= 2``).

    Stands for the term ``(1+1)*q`` or ``(1+1)*q + 1`` built from the numeral
    ``q`` of ``value // 2``; :meth:`expand` returns that term explicitly.
    Use :func:`numeral` to build numerals for arbitrary naturals.
    """

    value: int

    def __post_init__(self):
        if self.value < 2:
            raise ValueError("Numeral nodes are reserved for values >= 2; use numeral()")

    def expand(self) -> "Term":
        return expand_numeral(self.value)


@dataclass(frozen=True)
class Exp:
    arg: "Term"


@dataclass(frozen=True)
class Add:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class SubApp:
    """sub(u, v, w): code of the result of substituting the numeral of w
    for the variable coded by v in the formula coded by u."""

    u: "Term"
    v: "Term"
    w: "Term"


@dataclass(frozen=True)
class NegCode:
    """neg(u): code of the negation of the formula coded by u."""

    arg: "Term"


@dataclass(frozen=True)
class ImpCode:
    """imp(u, w): code of the implication between the formulas coded by u, w."""

    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class AllCode:
    """all(v, u): code of the universal closure over variable v of formula u."""

    var: "Term"
    body: "Term"


Term = Union[Zero, One, Var, Numeral, Exp, Add, Mul, SubApp, NegCode, ImpCode, AllCode]
CODE_FUNCTIONS = (SubApp, NegCode, ImpCode, AllCode)


# --------------------------------------------------------------------------
# Formulas


@dataclass(frozen=True)
class Less:
    left: Term
    right: Term


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class TrueN:
    """Partial truth predicate: the argument codes a true Sigma_level sentence."""

    level: int
    arg: Term


@dataclass(frozen=True)
class ProofP:
    """p codes a proof in ``theory`` of the formula coded by f."""

    theory: str
    p: Term
    f: Term


@dataclass(frozen=True)
class OProofP:
    """p codes a proof in ``theory`` plus true Sigma_{level+1} oracle sentences."""

    theory: str
    level: int
    p: Term
    f: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


def _check_bound(node) -> None:
    if node.var in term_vars(node.bound):
        raise ValueError(f"bound term of a bounded quantifier contains {node.var!r}")


@dataclass(frozen=True)
class BForall:
    var: str
    bound: Term
    body: "Formula"

    def __post_init__(self):
        _check_bound(self)


@dataclass(frozen=True)
class BExists:
    var: str
    bound: Term
    body: "Formula"

    def __post_init__(self):
        _check_bound(self)


Formula = Union[Less, Eq, TrueN, ProofP, OProofP, Not, And, Or, Implies,
                Forall, Exists, BForall, BExists]
ATOMS = (Less, Eq, TrueN, ProofP, OProofP)
QUANTIFIERS = (Forall, Exists, BForall, BExists)
BINARY = (And, Or, Implies)

TOP = Eq(Zero(), Zero())
BOT = Eq(Zero(), One())


# --------------------------------------------------------------------------
# Numerals


def numeral(n: int) -> Term:
    """Closed term denoting ``n``: ``0``, ``1`` or a binary :class:`Numeral`."""
    if n < 0:
        raise ValueError("numerals denote naturals")
    if n == 0:
        return Zero()
    if n == 1:
        return One()
    return Numeral(n)


def expand_numeral(n: int) -> Term:
    """The binary numeral of n spelled out in 0, 1, + and *."""
    if n == 0:
        return Zero()
    bits = bin(n)[3:]
    two = Add(One(), One())
    t: Term = One()
    for b in bits:
        t = Mul(two, t)
        if b == "1":
            t = Add(t, One())
    return t


def numeral_value(t: Term) -> int | None:
    if isinstance(t, Zero):
        return 0
    if isinstance(t, One):
        return 1
    if isinstance(t, Numeral):
        return t.value
    return None


# --------------------------------------------------------------------------
# Traversal


def term_children(t: Term) -> tuple:
    if isinstance(t, (Zero, One, Var, Numeral)):
        return ()
    if isinstance(t, (Exp, NegCode)):
        return (t.arg,)
    if isinstance(t, (Add, Mul, ImpCode)):
        return (t.left, t.right)
    if isinstance(t, SubApp):
        return (t.u, t.v, t.w)
    if isinstance(t, AllCode):
        return (t.var, t.body)
    raise TypeError(f"not a term: {t!r}")


def term_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    out: set[str] = set()
    stack = list(term_children(t))
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            out.add(s.name)
        else:
            stack.extend(term_children(s))
    return frozenset(out)


def atom_terms(f: Formula) -> tuple:
    if isinstance(f, (Less, Eq)):
        return (f.left, f.right)
    if isinstance(f, TrueN):
        return (f.arg,)
    if isinstance(f, (ProofP, OProofP)):
        return (f.p, f.f)
    raise TypeError(f"not an atom: {f!r}")


def free_vars(f: Formula) -> frozenset[str]:
    """Exact set of free variables; bound terms count as free positions."""
    if isinstance(f, ATOMS):
        return frozenset().union(*(term_vars(t) for t in atom_terms(f)))
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, BINARY):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (Forall, Exists)):
        return free_vars(f.body) - {f.var}
    if isinstance(f, (BForall, BExists)):
        return term_vars(f.bound) | (free_vars(f.body) - {f.var})
    raise TypeError(f"not a formula: {f!r}")


def all_vars(f: Formula) -> frozenset[str]:
    """Every variable name occurring in f, bound or free."""
    if isinstance(f, ATOMS):
        return frozenset().union(*(term_vars(t) for t in atom_terms(f)))
    if isinstance(f, Not):
        return all_vars(f.body)
    if isinstance(f, BINARY):
        return all_vars(f.left) | all_vars(f.right)
    if isinstance(f, (Forall, Exists)):
        return all_vars(f.body) | {f.var}
    return term_vars(f.bound) | all_vars(f.body) | {f.var}


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.body)
    elif isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, QUANTIFIERS):
        yield from subformulas(f.body)


def size(f: Formula) -> int:
    """Number of formula nodes (terms count as part of their atom)."""
    return sum(1 for _ in subformulas(f))


def fresh_var(base: str, avoid) -> str:
    base = base.rstrip("0123456789") or "v"
    if base in RESERVED:
        base = base.lower() + "_"
    if base not in avoid:
        return base
    for i in itertools.count(1):
        name = f"{base}{i}"
        if name not in avoid:
            return name


# --------------------------------------------------------------------------
# Substitution


def subst_term(t: Term, v: str, s: Term) -> Term:
    if isinstance(t, Var):
        return s if t.name == v else t
    if isinstance(t, (Zero, One, Numeral)):
        return t
    if v not in term_vars(t):
        return t
    kids = [subst_term(c, v, s) for c in term_children(t)]
    return type(t)(*kids)


def substitute(f: Formula, v: str, s: Term) -> Formula:
    """Capture-avoiding replacement of the free occurrences of v by s."""
    if v not in free_vars(f):
        return f
    if isinstance(f, (Less, Eq)):
        return type(f)(subst_term(f.left, v, s), subst_term(f.right, v, s))
    if isinstance(f, TrueN):
        return TrueN(f.level, subst_term(f.arg, v, s))
    if isinstance(f, ProofP):
        return ProofP(f.theory, subst_term(f.p, v, s), subst_term(f.f, v, s))
    if isinstance(f, OProofP):
        return OProofP(f.theory, f.level, subst_term(f.p, v, s), subst_term(f.f, v, s))
    if isinstance(f, Not):
        return Not(substitute(f.body, v, s))
    if isinstance(f, BINARY):
        return type(f)(substitute(f.left, v, s), substitute(f.right, v, s))
    sv = term_vars(s)
    var, body = f.var, f.body
    if var in sv:
        new = fresh_var(var, sv | all_vars(body) | {v})
        body = substitute(body, var, Var(new))
        var = new
    if isinstance(f, (Forall, Exists)):
        return type(f)(var, substitute(body, v, s))
    return type(f)(var, subst_term(f.bound, v, s), substitute(body, v, s))


def substitute_numeral(f: Formula, v: str, n: int) -> Formula:
    """Replace the free occurrences of v by the numeral of n."""
    return substitute(f, v, numeral(n))


def rename_bound(f: Formula, new: str) -> Formula:
    """Rename the variable bound by the outer quantifier of f."""
    if not isinstance(f, QUANTIFIERS):
        raise TypeError("not a quantified formula")
    if new == f.var:
        return f
    body = substitute(f.body, f.var, Var(new))
    if isinstance(f, (Forall, Exists)):
        return type(f)(new, body)
    return type(f)(new, f.bound, body)


def conjunction(parts) -> Formula:
    """Right-nested conjunction; the empty conjunction is ``0 = 0``."""
    parts = list(parts)
    if not parts:
        return TOP
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


def disjunction(parts) -> Formula:
    parts = list(parts)
    if not parts:
        return BOT
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Or(p, out)
    return out


# --------------------------------------------------------------------------
# Printing


def render_term(t: Term) -> str:
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Numeral):
        return str(t.value)
    if isinstance(t, Exp):
        return f"exp({render_term(t.arg)})"
    if isinstance(t, Add):
        return f"({render_term(t.left)} + {render_term(t.right)})"
    if isinstance(t, Mul):
        return f"({render_term(t.left)} * {render_term(t.right)})"
    if isinstance(t, SubApp):
        return f"sub({render_term(t.u)}, {render_term(t.v)}, {render_term(t.w)})"
    if isinstance(t, NegCode):
        return f"neg({render_term(t.arg)})"
    if isinstance(t, ImpCode):
        return f"imp({render_term(t.left)}, {render_term(t.right)})"
    if isinstance(t, AllCode):
        return f"all({render_term(t.var)}, {render_term(t.body)})"
    raise TypeError(f"not a term: {t!r}")


_BINOP = {And: "&", Or: "|", Implies: "->"}


def render(f: Formula) -> str:
    """Deterministic, fully parenthesized ASCII rendering."""
    if isinstance(f, Eq):
        return f"{render_term(f.left)} = {render_term(f.right)}"
    if isinstance(f, Less):
        return f"{render_term(f.left)} < {render_term(f.right)}"
    if isinstance(f, TrueN):
        return f"TrueN[{f.level}]({render_term(f.arg)})"
    if isinstance(f, ProofP):
        return f"Proof[{f.theory}]({render_term(f.p)}, {render_term(f.f)})"
    if isinstance(f, OProofP):
        return f"OProof[{f.theory},{f.level}]({render_term(f.p)}, {render_term(f.f)})"
    if isinstance(f, Not):
        return f"~({render(f.body)})"
    if isinstance(f, BINARY):
        return f"({render(f.left)}) {_BINOP[type(f)]} ({render(f.right)})"
    q = "E" if isinstance(f, (Exists, BExists)) else "A"
    if isinstance(f, (Forall, Exists)):
        return f"{q} {f.var}. ({render(f.body)})"
    return f"{q} {f.var} < {render_term(f.bound)}. ({render(f.body)})"


# --------------------------------------------------------------------------
# Parsing

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_THEORY = re.compile(r"[A-Za-z_][A-Za-z0-9_+.\-]*")
RESERVED = frozenset({"E", "A", "exp", "sub", "neg", "imp", "all", "TrueN", "Proof", "OProof"})
_UNICODE = {"∃": "E ", "∀": "A ", "¬": "~", "∧": "&", "∨": "|", "→": "->", "·": "*", "×": "*"}


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class ParseResult:
    formula: Formula
    unbound: frozenset = field(default_factory=frozenset)

    @property
    def warnings(self) -> list[str]:
        return [f"unbound variable {v}" for v in sorted(self.unbound)]


class _Parser:
    def __init__(self, text: str):
        self.s = text
        self.i = 0

    def error(self, msg: str, at: int | None = None):
        raise ParseError(msg, self.i if at is None else at)

    def ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self, tok: str) -> bool:
        self.ws()
        return self.s.startswith(tok, self.i)

    def eat(self, tok: str) -> bool:
        if self.peek(tok):
            self.i += len(tok)
            return True
        return False

    def expect(self, tok: str):
        if not self.eat(tok):
            self.error(f"expected {tok!r}")

    def word(self) -> str | None:
        self.ws()
        m = _IDENT.match(self.s, self.i)
        return m.group(0) if m else None

    def ident(self) -> str:
        w = self.word()
        if w is None or w in RESERVED:
            self.error("expected a variable name")
        self.i += len(w)
        return w

    def nat(self) -> int:
        self.ws()
        m = re.compile(r"\d+").match(self.s, self.i)
        if not m:
            self.error("expected a natural number")
        self.i = m.end()
        return int(m.group(0))

    # formulas
    def formula(self) -> Formula:
        left = self.disj()
        if self.eat("->"):
            return Implies(left, self.formula())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.eat("|"):
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.eat("&"):
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.eat("~"):
            return Not(self.unary())
        w = self.word()
        if w in ("E", "A"):
            self.i += 1
            var = self.ident()
            bound = None
            if self.eat("<"):
                start = self.i
                bound = self.term()
                if var in term_vars(bound):
                    self.error("bound term contains the quantified variable", start)
            self.expect(".")
            body = self.formula()
            if bound is None:
                return (Exists if w == "E" else Forall)(var, body)
            return (BExists if w == "E" else BForall)(var, bound, body)
        return self.atom()

    def atom(self) -> Formula:
        w = self.word()
        if w == "TrueN":
            self.i += len(w)
            self.expect("[")
            level = self.nat()
            self.expect("]")
            self.expect("(")
            arg = self.term()
            self.expect(")")
            return TrueN(level, arg)
        if w in ("Proof", "OProof"):
            self.i += len(w)
            self.expect("[")
            self.ws()
            m = _THEORY.match(self.s, self.i)
            if not m:
                self.error("expected a theory name")
            self.i = m.end()
            level = None
            if w == "OProof":
                self.expect(",")
                level = self.nat()
            self.expect("]")
            self.expect("(")
            p = self.term()
            self.expect(",")
            g = self.term()
            self.expect(")")
            if w == "Proof":
                return ProofP(m.group(0), p, g)
            return OProofP(m.group(0), level, p, g)
        start = self.i
        try:
            left = self.term()
            if self.eat("="):
                return Eq(left, self.term())
            if self.eat("<"):
                return Less(left, self.term())
            self.error("expected '=' or '<'")
        except ParseError as first:
            self.i = start
            if not self.peek("("):
                raise
            try:
                self.expect("(")
                f = self.formula()
                self.expect(")")
                return f
            except ParseError as second:
                raise max(first, second, key=lambda e: e.offset)

    # terms
    def term(self) -> Term:
        t = self.product()
        while self.peek("+"):
            self.i += 1
            t = Add(t, self.product())
        return t

    def product(self) -> Term:
        t = self.primary()
        while self.eat("*"):
            t = Mul(t, self.primary())
        return t

    def primary(self) -> Term:
        self.ws()
        if self.i >= len(self.s):
            self.error("unexpected end of input")
        c = self.s[self.i]
        if c.isdigit():
            return numeral(self.nat())
        if c == "(":
            self.i += 1
            t = self.term()
            self.expect(")")
            return t
        w = self.word()
        if w == "exp":
            self.i += 3
            return Exp(self.primary())
        if w in ("sub", "neg", "imp", "all"):
            self.i += len(w)
            self.expect("(")
            args = [self.term()]
            while self.eat(","):
                args.append(self.term())
            self.expect(")")
            arity = {"sub": 3, "neg": 1, "imp": 2, "all": 2}[w]
            if len(args) != arity:
                self.error(f"{w} takes {arity} arguments")
            cls = {"sub": SubApp, "neg": NegCode, "imp": ImpCode, "all": AllCode}[w]
            return cls(*args)
        if w is not None and w not in RESERVED:
            self.i += len(w)
            return Var(w)
        self.error("expected a term")


def _normalize_unicode(text: str) -> str:
    for k, v in _UNICODE.items():
        text = text.replace(k, v)
    return text


def parse_with_info(text: str) -> ParseResult:
    """Parse a formula and report its free variables as warnings."""
    p = _Parser(_normalize_unicode(text))
    f = p.formula()
    p.ws()
    if p.i != len(p.s):
        p.error("unexpected trailing input")
    return ParseResult(f, free_vars(f))


def parse_formula(text: str) -> Formula:
    return parse_with_info(text).formula


def parse_term(text: str) -> Term:
    p = _Parser(_normalize_unicode(text))
    t = p.term()
    p.ws()
    if p.i != len(p.s):
        p.error("unexpected trailing input")
    return t
