"""Truncated bivariate power series in s, t over the rationals.

A series knows its coefficients for every exponent of total degree below
``trunc``; everything at or above the frontier is unknown, not zero.
``trunc = math.inf`` marks an exact (polynomial) series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Union

Exp2 = tuple[int, int]
Trunc = Union[int, float]
Weight = tuple[Fraction, Fraction]


class OrderUndetermined(ArithmeticError):
    """The requested order depends on coefficients beyond the truncation."""

    def __init__(self, msg: str = "order not determined at this truncation"):
        super().__init__(msg)


@dataclass(frozen=True, eq=False)
class TruncSeries2:
    terms: Mapping[Exp2, Fraction]
    trunc: Trunc = math.inf

    def __post_init__(self):
        t = self.trunc
        if t != math.inf:
            if int(t) != t or t < 0:
                raise ValueError(f"truncation must be a nonnegative integer or inf, got {t}")
            t = int(t)
        clean: dict[Exp2, Fraction] = {}
        for e, c in dict(self.terms).items():
            e = (int(e[0]), int(e[1]))
            if e[0] < 0 or e[1] < 0:
                raise ValueError(f"bad exponent {e}")
            c = Fraction(c)
            if c != 0 and e[0] + e[1] < t:
                clean[e] = clean.get(e, Fraction(0)) + c
                if clean[e] == 0:
                    del clean[e]
        object.__setattr__(self, "trunc", t)
        object.__setattr__(self, "terms", MappingProxyType(dict(sorted(clean.items()))))

    @classmethod
    def zero(cls, trunc: Trunc = math.inf) -> "TruncSeries2":
        return cls({}, trunc)

    @classmethod
    def monomial(cls, e1: int, e2: int, c=1, trunc: Trunc = math.inf) -> "TruncSeries2":
        return cls({(e1, e2): Fraction(c)}, trunc)

    @property
    def exact(self) -> bool:
        return self.trunc == math.inf

    def is_zero_to_trunc(self) -> bool:
        return not self.terms

    def ord_total(self) -> Trunc:
        """Least total degree of a known term; the truncation if none is known."""
        if not self.terms:
            return self.trunc
        return min(a + b for a, b in self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries2):
            return NotImplemented
        return self.trunc == other.trunc and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((frozenset(self.terms.items()), self.trunc))

    def __add__(self, other: "TruncSeries2") -> "TruncSeries2":
        return add(self, other)

    def __neg__(self) -> "TruncSeries2":
        return scale(-1, self)

    def __sub__(self, other: "TruncSeries2") -> "TruncSeries2":
        return add(self, scale(-1, other))

    def __mul__(self, other) -> "TruncSeries2":
        if isinstance(other, TruncSeries2):
            return mul(self, other)
        return scale(other, self)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TruncSeries2":
        out = TruncSeries2.monomial(0, 0)
        for _ in range(k):
            out = mul(out, self)
        return out

    def __str__(self) -> str:
        body = _fmt(self.terms)
        if self.exact:
            return body
        return f"{body} + O({self.trunc})" if self.terms else f"O({self.trunc})"

    def __repr__(self) -> str:
        return f"TruncSeries2({self!s})"


def _fmt(terms: Mapping[Exp2, Fraction]) -> str:
    if not terms:
        return "0"
    out = ""
    for (a, b), c in sorted(terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
        mono = "*".join(
            v if k == 1 else f"{v}^{k}" for v, k in (("s", a), ("t", b)) if k
        )
        mag = abs(c)
        coef = "" if mag == 1 and mono else str(mag)
        piece = f"{coef}*{mono}" if coef and mono else coef or mono
        sign = "-" if c < 0 else "+"
        out = f"{'-' if sign == '-' else ''}{piece}" if not out else f"{out} {sign} {piece}"
    return out


def add(a: TruncSeries2, b: TruncSeries2) -> TruncSeries2:
    out = dict(a.terms)
    for e, c in b.terms.items():
        out[e] = out.get(e, 0) + c
    return TruncSeries2(out, min(a.trunc, b.trunc))


def scale(c, a: TruncSeries2) -> TruncSeries2:
    c = Fraction(c)
    return TruncSeries2({e: c * k for e, k in a.terms.items()}, a.trunc)


def mul(a: TruncSeries2, b: TruncSeries2) -> TruncSeries2:
    """Product; only the coefficients both factors determine are kept."""
    trunc = min(a.trunc + b.ord_total(), b.trunc + a.ord_total())
    out: dict[Exp2, Fraction] = {}
    for (a1, a2), c1 in a.terms.items():
        for (b1, b2), c2 in b.terms.items():
            if a1 + a2 + b1 + b2 >= trunc:
                continue
            e = (a1 + b1, a2 + b2)
            out[e] = out.get(e, 0) + c1 * c2
    return TruncSeries2(out, trunc)


def _weight(v) -> Weight:
    w = (Fraction(v[0]), Fraction(v[1]))
    if w[0] <= 0 or w[1] <= 0:
        raise ValueError("weight must be positive in both entries")
    return w


def _frontier(a: TruncSeries2, w: Weight) -> Union[Fraction, float]:
    # smallest weighted degree an unknown term could have
    return math.inf if a.exact else min(w) * a.trunc


def v_order(a: TruncSeries2, v) -> Fraction:
    """Least v-weighted degree over the support, certified against the frontier."""
    w = _weight(v)
    if not a.terms:
        raise OrderUndetermined()
    m = min(w[0] * e1 + w[1] * e2 for e1, e2 in a.terms)
    if m > _frontier(a, w):
        raise OrderUndetermined()
    return m


def v_part(a: TruncSeries2, v) -> TruncSeries2:
    """Sum of the terms of least v-weighted degree, as an exact polynomial."""
    w = _weight(v)
    m = v_order(a, v)
    if m >= _frontier(a, w):
        raise OrderUndetermined()
    return TruncSeries2({e: c for e, c in a.terms.items() if w[0] * e[0] + w[1] * e[1] == m})


def t_order(a: TruncSeries2) -> int:
    """Least t-exponent.  Unknown terms may be pure powers of s, so only an
    exact series or a known t-free term certifies it."""
    if not a.terms:
        raise OrderUndetermined()
    m = min(e2 for _, e2 in a.terms)
    if m > 0 and not a.exact:
        raise OrderUndetermined()
    return m


def leading_term(a: TruncSeries2) -> tuple[Exp2, Fraction]:
    """Known term of least total degree, ties broken by exponent; it is
    certifiably nonzero and no unknown term can precede it in that order."""
    if not a.terms:
        raise OrderUndetermined("no known nonzero term")
    e = min(a.terms, key=lambda e: (e[0] + e[1], e))
    return e, a.terms[e]
