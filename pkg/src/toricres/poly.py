"""Sparse polynomials in x, y, z with rational coefficients, plus a parser.

Grammar (whitespace ignored)::

    poly   := ['+'|'-'] term (('+'|'-') term)*
    term   := coeff ['*'] factor (['*'] factor)* | coeff | factor (['*'] factor)*
    coeff  := integer ['/' integer]
    factor := ('x'|'y'|'z') ['^' integer]
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

Exp = tuple[int, int, int]
VARS = "xyz"


class ParseError(ValueError):
    def __init__(self, msg: str, position: int):
        super().__init__(f"{msg} at position {position}")
        self.position = position


@dataclass(frozen=True, eq=False)
class SupportPoly:
    """Polynomial as a map from exponent triples to nonzero rationals."""

    terms: Mapping[Exp, Fraction]

    def __post_init__(self):
        clean: dict[Exp, Fraction] = {}
        for e, c in dict(self.terms).items():
            e = tuple(int(k) for k in e)
            if len(e) != 3 or any(k < 0 for k in e):
                raise ValueError(f"bad exponent {e}")
            c = Fraction(c)
            if c != 0:
                clean[e] = clean.get(e, Fraction(0)) + c
                if clean[e] == 0:
                    del clean[e]
        object.__setattr__(self, "terms", MappingProxyType(dict(sorted(clean.items()))))

    @classmethod
    def monomial(cls, e: Sequence[int], c=1) -> "SupportPoly":
        return cls({tuple(e): Fraction(c)})

    @property
    def support(self) -> list[Exp]:
        return list(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, SupportPoly):
            return NotImplemented
        return dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "SupportPoly") -> "SupportPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return SupportPoly(out)

    def __neg__(self) -> "SupportPoly":
        return SupportPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "SupportPoly") -> "SupportPoly":
        return self + (-other)

    def __mul__(self, other) -> "SupportPoly":
        if not isinstance(other, SupportPoly):
            return SupportPoly({e: c * Fraction(other) for e, c in self.terms.items()})
        out: dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, 0) + c1 * c2
        return SupportPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SupportPoly":
        out = SupportPoly({(0, 0, 0): 1})
        for _ in range(k):
            out = out * self
        return out

    def restrict(self, exps: Iterable[Exp]) -> "SupportPoly":
        keep = set(exps)
        return SupportPoly({e: c for e, c in self.terms.items() if e in keep})

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"SupportPoly({format_poly(self)!r})"


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(g: SupportPoly) -> str:
    """Canonical text form, readable back by ``parse_poly``."""
    if not g.terms:
        return "0"
    parts = []
    for e in sorted(g.terms, reverse=True):
        c = g.terms[e]
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = "*".join(
            v if k == 1 else f"{v}^{k}" for v, k in zip(VARS, e) if k > 0
        )
        if not mono:
            body = _fmt_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(a)}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def skip(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def integer(self) -> int:
        self.skip()
        start = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if start == self.i:
            raise ParseError("expected an integer", start)
        return int(self.text[start : self.i])

    def factor(self, exp: list[int]):
        ch = self.peek()
        pos = self.i
        if ch in VARS and ch:
            self.i += 1
            k = 1
            if self.peek() == "^":
                self.i += 1
                kpos = self.i
                k = self.integer()
                if k < 1:
                    raise ParseError("exponent must be positive", kpos)
            exp[VARS.index(ch)] += k
        elif ch.isalpha():
            raise ParseError(f"unknown variable {ch!r}", pos)
        else:
            raise ParseError("expected x, y or z", pos)

    def term(self) -> tuple[Exp, Fraction]:
        exp = [0, 0, 0]
        coeff = Fraction(1)
        ch = self.peek()
        if ch.isdigit():
            coeff = Fraction(self.integer())
            if self.peek() == "/":
                self.i += 1
                dpos = self.i
                d = self.integer()
                if d == 0:
                    raise ParseError("zero denominator", dpos)
                coeff /= d
            if self.peek() == "*":
                self.i += 1
                self.factor(exp)
            elif self.peek().isalpha():
                self.factor(exp)
            else:
                return (0, 0, 0), coeff
        else:
            self.factor(exp)
        while True:
            ch = self.peek()
            if ch == "*":
                self.i += 1
                self.factor(exp)
            elif ch.isalpha():
                self.factor(exp)
            else:
                break
        return tuple(exp), coeff  # type: ignore[return-value]

    def parse(self) -> SupportPoly:
        terms: dict[Exp, Fraction] = {}
        sign = 1
        ch = self.peek()
        if ch in "+-" and ch:
            sign = -1 if ch == "-" else 1
            self.i += 1
        if not self.peek():
            raise ParseError("empty polynomial", self.i)
        while True:
            e, c = self.term()
            terms[e] = terms.get(e, 0) + sign * c
            ch = self.peek()
            if not ch:
                break
            if ch not in "+-":
                raise ParseError(f"unexpected {ch!r}", self.i)
            sign = -1 if ch == "-" else 1
            self.i += 1
        return SupportPoly(terms)


def parse_poly(text: str) -> SupportPoly:
    """Parse a polynomial in x, y, z; raises ParseError with a position."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# univariate helpers over Q (coefficient lists, lowest degree first)


def upoly_trim(a: Sequence[Fraction]) -> list[Fraction]:
    a = [Fraction(c) for c in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def upoly_deriv(a: Sequence[Fraction]) -> list[Fraction]:
    return upoly_trim([k * c for k, c in enumerate(a)][1:])


def upoly_rem(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a, b = upoly_trim(a), upoly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    while len(a) >= len(b):
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a = upoly_trim(a)
    return a


def upoly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    """Monic gcd (the zero polynomial is returned as [])."""
    a, b = upoly_trim(a), upoly_trim(b)
    while b:
        a, b = b, upoly_rem(a, b)
    if not a:
        return []
    return [c / a[-1] for c in a]


def is_squarefree(a: Sequence[Fraction]) -> bool:
    a = upoly_trim(a)
    if not a:
        return False
    return len(upoly_gcd(a, upoly_deriv(a))) <= 1
