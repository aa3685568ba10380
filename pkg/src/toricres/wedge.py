"""Wedges on a surface, their order vectors, and the lattice hull Γ.

A wedge is given by three truncated series in (s, t), the pullbacks of
x, y and z.  Its order vector η collects their t-orders.  For B_{p,q} the
possible positions of (η_x, η_z) relative to an order vector μ are
controlled by the lattice hull of the cone spanned by (0, 1) and
(μ_x, μ_z), which is built and minimised here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .lattice import Cone, Vec, det2, hilbert_basis_2d
from .newton import newton_fan
from .poly import SupportPoly
from .resolution import SurfaceSpec, mu_candidates
from .series import OrderUndetermined, TruncSeries2, leading_term, mul, t_order, v_order

Point2 = tuple[int, int]


@dataclass(frozen=True)
class Wedge:
    """Pullbacks of x, y, z along a map Spec K[[s, t]] -> surface."""

    wx: TruncSeries2
    wy: TruncSeries2
    wz: TruncSeries2

    def __post_init__(self):
        for name, c in zip("xyz", self.components):
            if c.is_zero_to_trunc():
                raise ValueError(f"component {name} has no known nonzero term")
            if any(e2 == 0 for _, e2 in c.terms):
                raise ValueError(f"component {name} has t-order 0; wedges must send the origin to the origin")

    @property
    def components(self) -> tuple[TruncSeries2, TruncSeries2, TruncSeries2]:
        return (self.wx, self.wy, self.wz)

    @property
    def trunc(self):
        return min(c.trunc for c in self.components)

    @property
    def eta(self) -> Vec:
        return wedge_orders(self)


def wedge_orders(w: Wedge) -> Vec:
    """(ord_t x, ord_t y, ord_t z); raises OrderUndetermined if any is uncertified."""
    return tuple(t_order(c) for c in w.components)  # type: ignore[return-value]


def substitute(f: SupportPoly, w: Wedge) -> TruncSeries2:
    """f(wx, wy, wz) as a truncated series."""
    powers: list[dict[int, TruncSeries2]] = [{0: TruncSeries2.monomial(0, 0)} for _ in range(3)]

    def pw(i: int, k: int) -> TruncSeries2:
        cache = powers[i]
        if k not in cache:
            cache[k] = mul(pw(i, k - 1), w.components[i])
        return cache[k]

    out = TruncSeries2.zero()
    for (a, b, c), coeff in f.terms.items():
        out = out + mul(mul(pw(0, a), pw(1, b)), pw(2, c)) * coeff
    return out


@dataclass(frozen=True)
class RelationResult:
    status: str  # "zero", "nonzero" or "inconclusive"
    residual: TruncSeries2
    leading: Optional[tuple[tuple[int, int], Fraction]] = None
    detail: str = ""

    @property
    def is_zero(self) -> bool:
        return self.status == "zero"


def check_relation(f: SupportPoly, w: Wedge, depth: int = 12) -> RelationResult:
    """Substitute ``w`` into ``f``; zero to ``depth``, or the leading nonzero term.

    The leading term is the known term of least total degree (ties by
    exponent), which unknown higher-degree terms can never displace.
    """
    r = substitute(f, w)
    if r.terms:
        lead = leading_term(r)
        return RelationResult("nonzero", r, lead, f"leading term {_fmt_term(*lead)}")
    if r.trunc >= depth:
        return RelationResult("zero", r, None, "zero to truncation")
    return RelationResult("inconclusive", r, None, f"inconclusive at depth {depth}")


def _fmt_term(e: tuple[int, int], c: Fraction) -> str:
    return str(TruncSeries2({e: c}))


def eta_skeleton_check(f: SupportPoly, eta: Sequence[int]) -> tuple[bool, Optional[tuple[Vec, Vec]]]:
    """Whether ``eta`` lies on a wall of the Newton fan of ``f``, and which wall."""
    eta = tuple(eta)
    if len(eta) != 3 or min(eta) <= 0:
        raise ValueError("eta must be a positive integer triple")
    fan = newton_fan(f)
    for w in fan.walls:
        c = fan.cone(w)
        if c.contains(eta):
            return True, c.rays  # type: ignore[return-value]
    return False, None


# ---------------------------------------------------------------------------
# the hull Γ


@dataclass(frozen=True)
class GammaHull:
    """Lattice points of the compact faces of conv((τ' ∩ Z^2) minus 0),
    τ' = <(0,1), anchor>, listed from (0,1) to the anchor."""

    anchor: Point2
    slope_pair: tuple[int, int]
    vertices: tuple[Point2, ...]

    def faces(self) -> list[tuple[Point2, Point2]]:
        """Maximal compact faces as (start, end) pairs."""
        corners = [self.vertices[0]]
        for a, b, c in zip(self.vertices, self.vertices[1:], self.vertices[2:]):
            if det2((b[0] - a[0], b[1] - a[1]), (c[0] - b[0], c[1] - b[1])) != 0:
                corners.append(b)
        corners.append(self.vertices[-1])
        return list(zip(corners, corners[1:]))

    def slopes(self) -> list[Fraction]:
        return [Fraction(b[1] - a[1], b[0] - a[0]) for a, b in self.faces()]


def _check_pq(p: int, q: int):
    if gcd(p, q) != 1 or not p > q >= 3:
        raise ValueError("need coprime p > q >= 3")


def gamma_hull(mu: Sequence[int], pq: Sequence[int]) -> GammaHull:
    """Hull Γ anchored at ``mu`` = (μ_x, μ_z) for the slope pair (p, q)."""
    p, q = pq
    _check_pq(p, q)
    mu = (int(mu[0]), int(mu[1]))
    if mu[0] <= 0 or mu[1] <= 0 or gcd(*mu) != 1:
        raise ValueError(f"anchor {mu} must be a primitive positive vector")
    if p * mu[1] - q * mu[0] < 0:
        raise ValueError(f"anchor {mu} lies outside the cone <(0,1),({p},{q})>")
    if mu not in hilbert_basis_2d(Cone(((0, 1), (p, q)))):
        raise ValueError(f"anchor {mu} is not on the hull of <(0,1),({p},{q})>")
    chain = hilbert_basis_2d(Cone(((0, 1), mu)))
    h = GammaHull(mu, (p, q), tuple(chain))  # type: ignore[arg-type]
    for a, b in zip(chain, chain[1:]):
        if not (b[0] > a[0] and b[1] >= a[1]):
            raise AssertionError(f"hull not monotone at {a}, {b}")
    for s in h.slopes():
        if not (0 <= s < Fraction(q, p)):
            raise AssertionError(f"face slope {s} outside [0, {q}/{p})")
    return h


@dataclass(frozen=True)
class GammaMin:
    point: Point2
    value: int
    on_ray: bool  # the minimum is attained along the whole ray through (p, q)


def gamma_min(h: GammaHull) -> GammaMin:
    """Minimise p*v - q*u over the hull."""
    p, q = h.slope_pair
    if h.anchor == (p, q):
        return GammaMin((p, q), 0, True)
    best = min(h.vertices, key=lambda pt: (p * pt[1] - q * pt[0], pt))
    return GammaMin(best, p * best[1] - q * best[0], False)


def gamma_member(pt: Sequence[int], h: GammaHull) -> bool:
    """Whether ``pt`` lies in the unbounded hull Γ (faces included)."""
    u, v = pt
    mx, mz = h.anchor
    if u < 0 or mx * v - mz * u < 0:
        return False
    for a, b in h.faces():
        # outward from the origin means det(b - a, pt - a) >= 0 for this orientation
        if det2((b[0] - a[0], b[1] - a[1]), (u - a[0], v - a[1])) < 0:
            return False
    return True


# ---------------------------------------------------------------------------
# order gaps


def _ceiling(s: SurfaceSpec) -> Vec:
    if s.family == "bpq":
        return (s.p - 1, s.p - 1, s.q - 1)
    if s.family == "e6":
        return (4, 2, 2)
    if s.family == "e7":
        return (6, 4, 3)
    if s.family == "dn":
        return (s.n - 2, s.n - 3, 1)
    raise ValueError("order gap ceilings exist only for the built-in families")


@dataclass(frozen=True)
class OrderGap:
    gaps: Vec
    ceiling: Vec
    witness_u: Optional[int] = None

    @property
    def within(self) -> bool:
        return all(g <= c for g, c in zip(self.gaps, self.ceiling))


def weight_witness(w: Wedge) -> int:
    """An integer u so large that, for v = (u, 1), the v-order of each
    component is its t-order on s = 0: one more than every known t-degree."""
    return 1 + max(e2 for c in w.components for _, e2 in c.terms)


def nu_witness(c: TruncSeries2, u: int) -> Fraction:
    """v-order of ``c`` for the witness weight v = (u, 1)."""
    return v_order(c, (u, 1))


def order_gap_bounds(s: SurfaceSpec, mu: Sequence[int], eta: Sequence[int], wedge: Optional[Wedge] = None) -> OrderGap:
    """μ - η with the family ceiling, plus the witness weight when a wedge is given."""
    mu, eta = tuple(mu), tuple(eta)
    if mu not in mu_candidates(s):
        raise ValueError(f"{mu} is not a mu-candidate of {s.name}")
    if len(eta) != 3 or min(eta) <= 0:
        raise ValueError("eta must be a positive integer triple")
    if any(e > m for e, m in zip(eta, mu)):
        raise ValueError(f"eta {eta} exceeds mu {mu}")
    gaps = tuple(m - e for m, e in zip(mu, eta))
    u = weight_witness(wedge) if wedge is not None else None
    return OrderGap(gaps, _ceiling(s), u)  # type: ignore[arg-type]

