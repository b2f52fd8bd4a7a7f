"""Ordinals below epsilon_0 in Cantor normal form.

An ordinal is stored as a tuple of ``(exponent, coefficient)`` terms with
strictly decreasing exponents, each exponent itself an :class:`Ordinal`.
Because the representation is canonical, structural equality is ordinal
equality and the dataclass-generated ``__eq__``/``__hash__`` can be used
directly.

    >>> w = OMEGA
    >>> str(ONE + w), str(w + ONE)
    ('w', 'w + 1')
    >>> str(from_nat(2) * w), str(w * 2)
    ('w', 'w*2')
"""

from __future__ import annotations

import enum
import functools
import re
from dataclasses import dataclass
from typing import Any, Callable, Iterable

from .errors import FuelExhausted, LoadError

__all__ = [
    "Ordinal", "OrdinalKind", "Cmp", "ZERO", "ONE", "OMEGA",
    "from_nat", "compare", "add", "mul", "pow", "sup_list", "classify",
    "recurse_omega", "parse", "DEFAULT_FUEL",
]

DEFAULT_FUEL = 1_000_000


class Cmp(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


class OrdinalKind(enum.Enum):
    ZERO = "zero"
    SUCCESSOR = "successor"
    LIMIT = "limit"


@functools.total_ordering
@dataclass(frozen=True, eq=True)
class Ordinal:
    terms: tuple = ()

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        prev = None
        for term in terms:
            if len(term) != 2:
                raise TypeError(f"term must be (exponent, coefficient), got {term!r}")
            e, c = term
            if not isinstance(e, Ordinal):
                raise TypeError(f"exponent must be an Ordinal, got {type(e).__name__}")
            if isinstance(c, bool) or not isinstance(c, int) or c < 1:
                raise ValueError(f"coefficient must be a positive int, got {c!r}")
            if prev is not None and _cmp(prev, e) <= 0:
                raise ValueError("exponents must be strictly decreasing")
            prev = e

    # canonical construction that skips validation; only for internal use on
    # term tuples already known to be well-formed
    @classmethod
    def _raw(cls, terms: tuple) -> "Ordinal":
        obj = object.__new__(cls)
        object.__setattr__(obj, "terms", terms)
        return obj

    def __lt__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return _cmp(self, other) < 0

    def __add__(self, other):
        return add(self, _coerce(other))

    def __radd__(self, other):
        return add(_coerce(other), self)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    def __rmul__(self, other):
        return mul(_coerce(other), self)

    def __pow__(self, other):
        return pow(self, _coerce(other))

    def __rpow__(self, other):
        return pow(_coerce(other), self)

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0].terms)

    def to_int(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is not a natural number")
        return self.terms[0][1] if self.terms else 0

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if not e.terms:
                parts.append(str(c))
                continue
            if e == ONE:
                s = "w"
            elif e.is_finite or e == OMEGA:
                s = f"w^{e}"
            else:
                s = f"w^({e})"
            parts.append(s if c == 1 else f"{s}*{c}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Ordinal({self})"


def _coerce(x: Any) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return from_nat(x)
    raise TypeError(f"cannot use {type(x).__name__} as an ordinal")


def _check(*xs):
    for x in xs:
        if not isinstance(x, Ordinal):
            raise TypeError(f"expected an Ordinal, got {type(x).__name__}")


def from_nat(n: int) -> Ordinal:
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ValueError(f"expected a nonnegative int, got {n!r}")
    return Ordinal._raw(((ZERO, n),)) if n else ZERO


ZERO = Ordinal._raw(())
ONE = Ordinal._raw(((ZERO, 1),))
OMEGA = Ordinal._raw(((ONE, 1),))


def _cmp(a: Ordinal, b: Ordinal) -> int:
    if a is b:
        return 0
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        k = _cmp(ea, eb)
        if k:
            return k
        if ca != cb:
            return -1 if ca < cb else 1
    return (len(a.terms) > len(b.terms)) - (len(a.terms) < len(b.terms))


def compare(a: Ordinal, b: Ordinal) -> Cmp:
    _check(a, b)
    return Cmp(_cmp(a, b))


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    _check(a, b)
    if not b.terms:
        return a
    lead, lead_c = b.terms[0]
    kept = []
    for e, c in a.terms:
        k = _cmp(e, lead)
        if k > 0:
            kept.append((e, c))
        elif k == 0:
            kept.append((e, c + lead_c))
            return Ordinal._raw(tuple(kept) + b.terms[1:])
        else:
            break
    return Ordinal._raw(tuple(kept) + b.terms)


def mul(a: Ordinal, b: Ordinal) -> Ordinal:
    _check(a, b)
    if not a.terms or not b.terms:
        return ZERO
    e1, c1 = a.terms[0]
    result = ZERO
    # left distributivity over the terms of b
    for f, d in b.terms:
        if f.terms:
            part = Ordinal._raw(((add(e1, f), d),))
        else:
            part = Ordinal._raw(((e1, c1 * d),) + a.terms[1:])
        result = add(result, part)
    return result


def _exp_after_one(e: Ordinal) -> Ordinal:
    """The g with 1 + g = e, for e >= 1."""
    if e.is_finite:
        return from_nat(e.to_int() - 1)
    return e


def _pow_nat(a: Ordinal, k: int) -> Ordinal:
    result, base = ONE, a
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def pow(a: Ordinal, b: Ordinal) -> Ordinal:
    _check(a, b)
    if not b.terms:
        return ONE
    if not a.terms:
        return ZERO
    if a == ONE:
        return ONE
    # b = b_inf + k with b_inf a limit (or 0) and k finite
    last_e, last_c = b.terms[-1]
    if last_e.terms:
        infinite, k = b.terms, 0
    else:
        infinite, k = b.terms[:-1], last_c
    if a.is_finite:
        n = a.to_int()
        if not infinite:
            return from_nat(n ** k)
        # n^(w*g) = w^g
        gamma = Ordinal._raw(tuple((_exp_after_one(e), c) for e, c in infinite))
        return mul(Ordinal._raw(((gamma, 1),)), from_nat(n ** k))
    if not infinite:
        return _pow_nat(a, k)
    # a^lambda = w^(e1*lambda) for infinite a and limit lambda
    e1 = a.terms[0][0]
    head = Ordinal._raw(((mul(e1, Ordinal._raw(infinite)), 1),))
    return mul(head, _pow_nat(a, k))


def sup_list(xs: Iterable[Ordinal]) -> Ordinal:
    best = ZERO
    for x in xs:
        if _cmp(x, best) > 0:
            best = x
    return best


def classify(a: Ordinal) -> OrdinalKind:
    if not a.terms:
        return OrdinalKind.ZERO
    if not a.terms[-1][0].terms:
        return OrdinalKind.SUCCESSOR
    return OrdinalKind.LIMIT


def recurse_omega(init: Any, step: Callable[[int, Any], Any], n: int,
                  fuel: int = DEFAULT_FUEL) -> list:
    """Values ``G(0..n)`` of the recursion ``G(0)=init, G(i+1)=step(i, G(i))``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > fuel:
        raise FuelExhausted(f"{n} recursion stages requested, fuel is {fuel}")
    out = [init]
    for i in range(n):
        out.append(step(i, out[-1]))
    return out


# --- expression grammar ---------------------------------------------------
#   expr   := term ('+' term)*
#   term   := factor ('*' factor)*
#   factor := atom ('^' factor)?
#   atom   := NAT | 'w' | '(' expr ')'

_TOKEN = re.compile(r"\s*(?:(\d+)|([wWω])|([-+*^()])|(\S))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        num, omega, op, bad = m.groups()
        if bad is not None or op == "-":
            raise LoadError(f"unexpected character {(bad or op)!r} at column {m.start(4 if bad else 3)}")
        tokens.append(("num", int(num)) if num else ("w", None) if omega else ("op", op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, op):
        if self.peek() == ("op", op):
            self.i += 1
            return True
        return False

    def expr(self):
        val = self.term()
        while self.take("+"):
            val = add(val, self.term())
        return val

    def term(self):
        val = self.factor()
        while self.take("*"):
            val = mul(val, self.factor())
        return val

    def factor(self):
        base = self.atom()
        if self.take("^"):
            return pow(base, self.factor())
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.i += 1
            return from_nat(val)
        if kind == "w":
            self.i += 1
            return OMEGA
        if self.take("("):
            val = self.expr()
            if not self.take(")"):
                raise LoadError("missing ')'")
            return val
        raise LoadError("unexpected end of expression" if kind is None else f"unexpected token {val!r}")


def parse(text: str) -> Ordinal:
    """Evaluate an ordinal expression such as ``"w^2*3 + w + 5"``."""
    p = _Parser(text)
    if not p.tokens:
        raise LoadError("empty expression")
    val = p.expr()
    if p.i != len(p.tokens):
        raise LoadError(f"trailing input at token {p.i}")
    return val
