"""Goedel numbering, sequence codes and the substitution function ``sub``.

Codes are prefix (Polish) byte strings read as big-endian naturals behind a
sentinel byte.  The tag table is loaded from ``encoding.lock``; changing that
file changes every code and is a breaking change.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .syntax import (
    Add, AllCode, And, BExists, BForall, Eq, Exists, Exp, Forall, ImpCode,
    Implies, Less, Mul, NegCode, Not, Numeral, One, OProofP, Or, ProofP,
    SubApp, TrueN, Var, Zero, Formula, Term, numeral, substitute_numeral,
)


class DecodeError(ValueError):
    """Raised when a natural number is not a code of the requested kind."""


def load_lock() -> dict:
    with resources.files(__package__).joinpath("encoding.lock").open() as fh:
        return json.load(fh)


_LOCK = load_lock()
SENTINEL: int = _LOCK["sentinel"]
TAGS: dict[str, int] = dict(_LOCK["tags"])
_BY_BYTE = {v: k for k, v in TAGS.items()}
END = TAGS["END"]

_LEAF = {Zero: "ZERO", One: "ONE"}
_UNARY_T = {Exp: "EXP", NegCode: "NEG"}
_BINARY_T = {Add: "ADD", Mul: "MUL", ImpCode: "IMP", AllCode: "ALL"}
_BINARY_F = {And: "AND", Or: "OR", Implies: "IMPLIES"}
_QUANT = {Forall: "FORALL", Exists: "EXISTS"}
_BQUANT = {BForall: "BFORALL", BExists: "BEXISTS"}
_CLS = {name: cls for table in (_LEAF, _UNARY_T, _BINARY_T, _BINARY_F, _QUANT, _BQUANT)
        for cls, name in table.items()}


def _string(out: bytearray, s: str) -> None:
    out += s.encode("ascii")
    out.append(END)


def _emit(out: bytearray, node) -> None:
    # explicit stack: prefix order, children pushed in reverse
    stack = [node]
    while stack:
        x = stack.pop()
        if isinstance(x, str):
            _string(out, x)
            continue
        t = type(x)
        if t in _LEAF:
            out.append(TAGS[_LEAF[t]])
        elif t is Var:
            out.append(TAGS["VAR"])
            _string(out, x.name)
        elif t is Numeral:
            out.append(TAGS["NUM"])
            _string(out, format(x.value, "x"))
        elif t in _UNARY_T:
            out.append(TAGS[_UNARY_T[t]])
            stack.append(x.arg)
        elif t in _BINARY_T:
            out.append(TAGS[_BINARY_T[t]])
            a, b = (x.var, x.body) if t is AllCode else (x.left, x.right)
            stack += [b, a]
        elif t is SubApp:
            out.append(TAGS["SUB"])
            stack += [x.w, x.v, x.u]
        elif t is Less or t is Eq:
            out.append(TAGS["LESS" if t is Less else "EQ"])
            stack += [x.right, x.left]
        elif t is TrueN:
            out.append(TAGS["TRUEN"])
            _string(out, str(x.level))
            stack.append(x.arg)
        elif t is ProofP:
            out.append(TAGS["PROOF"])
            _string(out, x.theory)
            stack += [x.f, x.p]
        elif t is OProofP:
            out.append(TAGS["OPROOF"])
            _string(out, x.theory)
            _string(out, str(x.level))
            stack += [x.f, x.p]
        elif t is Not:
            out.append(TAGS["NOT"])
            stack.append(x.body)
        elif t in _BINARY_F:
            out.append(TAGS[_BINARY_F[t]])
            stack += [x.right, x.left]
        elif t in _QUANT:
            out.append(TAGS[_QUANT[t]])
            _string(out, x.var)
            stack.append(x.body)
        elif t in _BQUANT:
            out.append(TAGS[_BQUANT[t]])
            _string(out, x.var)
            stack += [x.body, x.bound]
        else:
            raise TypeError(f"cannot encode {x!r}")


def encode(f: Formula | Term) -> int:
    """Goedel number of a formula or term."""
    out = bytearray([SENTINEL])
    _emit(out, f)
    return int.from_bytes(out, "big")


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.i = 0

    def byte(self) -> int:
        if self.i >= len(self.data):
            raise DecodeError("truncated code")
        b = self.data[self.i]
        self.i += 1
        return b

    def string(self) -> str:
        j = self.data.find(bytes([END]), self.i)
        if j < 0:
            raise DecodeError("unterminated string")
        raw = self.data[self.i:j]
        self.i = j + 1
        try:
            return raw.decode("ascii")
        except UnicodeDecodeError as e:
            raise DecodeError("non-ascii string") from e

    def nat(self) -> int:
        s = self.string()
        if not s.isdigit() or (len(s) > 1 and s[0] == "0"):
            raise DecodeError("bad level")
        return int(s)

    def term(self) -> Term:
        name = _BY_BYTE.get(self.byte())
        try:
            if name in ("ZERO", "ONE"):
                return _CLS[name]()
            if name == "VAR":
                return Var(self.string())
            if name == "NUM":
                s = self.string()
                if not s or s[0] == "0" or any(c not in "0123456789abcdef" for c in s):
                    raise DecodeError("bad numeral")
                return Numeral(int(s, 16))
            if name in ("EXP", "NEG"):
                return _CLS[name](self.term())
            if name in ("ADD", "MUL", "IMP", "ALL"):
                a = self.term()
                return _CLS[name](a, self.term())
            if name == "SUB":
                u = self.term()
                v = self.term()
                return SubApp(u, v, self.term())
        except ValueError as e:
            if isinstance(e, DecodeError):
                raise
            raise DecodeError(str(e)) from e
        raise DecodeError("expected a term tag")

    def formula(self) -> Formula:
        name = _BY_BYTE.get(self.byte())
        try:
            if name in ("LESS", "EQ"):
                a = self.term()
                return (Less if name == "LESS" else Eq)(a, self.term())
            if name == "TRUEN":
                level = self.nat()
                return TrueN(level, self.term())
            if name == "PROOF":
                th = self.string()
                p = self.term()
                return ProofP(th, p, self.term())
            if name == "OPROOF":
                th = self.string()
                level = self.nat()
                p = self.term()
                return OProofP(th, level, p, self.term())
            if name == "NOT":
                return Not(self.formula())
            if name in ("AND", "OR", "IMPLIES"):
                a = self.formula()
                return _CLS[name](a, self.formula())
            if name in ("FORALL", "EXISTS"):
                v = self.string()
                Var(v)
                return _CLS[name](v, self.formula())
            if name in ("BFORALL", "BEXISTS"):
                v = self.string()
                Var(v)
                bound = self.term()
                return _CLS[name](v, bound, self.formula())
        except ValueError as e:
            if isinstance(e, DecodeError):
                raise
            raise DecodeError(str(e)) from e
        raise DecodeError("expected a formula tag")


def _payload(g: int) -> bytes:
    if g <= 0:
        raise DecodeError(f"{g} is not a code")
    raw = g.to_bytes((g.bit_length() + 7) // 8, "big")
    if raw[0] != SENTINEL or len(raw) < 2:
        raise DecodeError(f"{g} is not a code")
    return raw[1:]


@lru_cache(maxsize=4096)
def decode(g: int) -> Formula:
    """Inverse of :func:`encode` on formula codes."""
    r = _Reader(_payload(g))
    f = r.formula()
    if r.i != len(r.data):
        raise DecodeError("trailing bytes after formula")
    return f


def decode_term(g: int) -> Term:
    r = _Reader(_payload(g))
    t = r.term()
    if r.i != len(r.data):
        raise DecodeError("trailing bytes after term")
    return t


def decode_any(g: int) -> Formula | Term:
    try:
        return decode(g)
    except DecodeError:
        return decode_term(g)


def is_formula_code(g: int) -> bool:
    try:
        decode(g)
    except DecodeError:
        return False
    return True


# --------------------------------------------------------------------------
# Substitution and other code functions


def var_code(name: str) -> int:
    return encode(Var(name))


def sub_num(u: int, v: int, w: int) -> int:
    """Code of the result of putting the numeral of w for variable v in formula u."""
    f = decode(u)
    var = decode_term(v)
    if not isinstance(var, Var):
        raise DecodeError(f"{v} does not code a variable")
    return encode(substitute_numeral(f, var.name, w))


def neg_code(u: int) -> int:
    return encode(Not(decode(u)))


def imp_code(u: int, w: int) -> int:
    return encode(Implies(decode(u), decode(w)))


def all_code(v: int, u: int) -> int:
    var = decode_term(v)
    if not isinstance(var, Var):
        raise DecodeError(f"{v} does not code a variable")
    return encode(Forall(var.name, decode(u)))


def quote(f: Formula | Term) -> Term:
    """The numeral of the code of f, i.e. the object-language name of f."""
    return numeral(encode(f))


# --------------------------------------------------------------------------
# Finite sequences


def seq_encode(items) -> int:
    """Sequence code: Elias-gamma blocks for x+1 behind a leading 1 bit."""
    bits = ["1"]
    for x in items:
        if x < 0:
            raise ValueError("sequence elements are naturals")
        b = bin(x + 1)[2:]
        bits.append("0" * (len(b) - 1))
        bits.append(b)
    return int("".join(bits), 2)


def seq_decode(c: int) -> list[int]:
    if c < 1:
        raise DecodeError(f"{c} is not a sequence code")
    s = bin(c)[3:]
    out = []
    i = 0
    n = len(s)
    while i < n:
        k = 0
        while i < n and s[i] == "0":
            k += 1
            i += 1
        if i + k + 1 > n:
            raise DecodeError(f"{c} is not a sequence code")
        out.append(int(s[i:i + k + 1], 2) - 1)
        i += k + 1
    return out


def is_seq(c: int) -> bool:
    """The FinSeq recognizer."""
    try:
        seq_decode(c)
    except DecodeError:
        return False
    return True


def seq_len(c: int) -> int:
    return len(seq_decode(c))


def seq_at(c: int, i: int) -> int:
    items = seq_decode(c)
    if not 0 <= i < len(items):
        raise IndexError(f"index {i} out of range for a sequence of length {len(items)}")
    return items[i]
