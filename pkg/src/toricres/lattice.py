"""Exact integer lattice tools.

Vectors are plain tuples of Python ints, so every computation is exact and
unbounded.  Cones are given by primitive ray generators.  Hilbert bases are
computed for 2-dimensional cones (in the saturated lattice of their plane)
and for simplicial 3-dimensional cones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations, product
from math import gcd
from typing import Iterable, Sequence

Vec = tuple[int, ...]


# ---------------------------------------------------------------------------
# vector helpers


def vec(v: Iterable[int]) -> Vec:
    out = tuple(int(c) for c in v)
    if len(out) not in (2, 3):
        raise ValueError(f"lattice vectors have dimension 2 or 3, got {len(out)}")
    return out


def gcd_all(v: Iterable[int]) -> int:
    return reduce(gcd, v, 0)


def primitive(v: Sequence[int]) -> Vec:
    """Divide ``v`` by the gcd of its coordinates."""
    g = gcd_all(v)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(c // g for c in v)


def is_primitive(v: Sequence[int]) -> bool:
    return gcd_all(v) == 1


def dot(a: Sequence[int], b: Sequence[int]):
    return sum(x * y for x, y in zip(a, b))


def add(a: Sequence[int], b: Sequence[int]) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def scale(k: int, a: Sequence[int]) -> Vec:
    return tuple(k * x for x in a)


def cross(a: Sequence[int], b: Sequence[int]) -> Vec:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def det2(a: Sequence[int], b: Sequence[int]) -> int:
    return a[0] * b[1] - a[1] * b[0]


def det3(a: Sequence[int], b: Sequence[int], c: Sequence[int]) -> int:
    return dot(a, cross(b, c))


def is_zero(v: Sequence[int]) -> bool:
    return all(c == 0 for c in v)


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals, by fraction-free elimination."""
    m = [list(r) for r in rows if not is_zero(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f, g = m[i][col], m[r][col]
                m[i] = [g * x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def hnf_rows(rows: Sequence[Sequence[int]]) -> list[Vec]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns the nonzero rows: echelon form, positive pivots, entries above
    each pivot reduced into ``[0, pivot)``.
    """
    m = [list(r) for r in rows]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        # euclid on the column below row r
        while True:
            nz = [i for i in range(r, len(m)) if m[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(m[i][col]))
            m[r], m[piv] = m[piv], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][col] != 0:
                    f = m[i][col] // m[r][col]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
                    if m[i][col] != 0:
                        done = False
            if done:
                break
        if r < len(m) and m[r][col] != 0:
            if m[r][col] < 0:
                m[r] = [-x for x in m[r]]
            for i in range(r):
                f = m[i][col] // m[r][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            r += 1
            if r == len(m):
                break
    return [tuple(row) for row in m[:r]]


def solve3(rays: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[Fraction, ...]:
    """Coefficients of ``v`` in the basis ``rays`` of Q^3 (Cramer)."""
    a, b, c = rays
    d = det3(a, b, c)
    if d == 0:
        raise ValueError("rays are linearly dependent")
    return (
        Fraction(det3(v, b, c), d),
        Fraction(det3(a, v, c), d),
        Fraction(det3(a, b, v), d),
    )


# ---------------------------------------------------------------------------
# cones


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone spanned by primitive, extremal rays.

    For 3-dimensional cones with more than three rays, the rays must be
    listed in cyclic order around the cone.
    """

    rays: tuple[Vec, ...]

    def __post_init__(self):
        rays = tuple(vec(r) for r in self.rays)
        object.__setattr__(self, "rays", rays)
        if not rays:
            raise ValueError("a cone needs at least one ray")
        if len({len(r) for r in rays}) != 1:
            raise ValueError("rays of mixed dimension")
        for r in rays:
            if not is_primitive(r):
                raise ValueError(f"ray {r} is not primitive")
        for a, b in combinations(rays, 2):
            if rank([a, b]) < 2:
                raise ValueError(f"rays {a} and {b} are proportional")
        d = self.intrinsic_dim
        if d == 2 and len(rays) != 2:
            raise ValueError("a 2-dimensional cone has exactly two extremal rays")
        if d == 3 and len(rays) > 3:
            for i, r in enumerate(rays):
                others = rays[:i] + rays[i + 1 :]
                if _in_cone_caratheodory(others, r):
                    raise ValueError(f"ray {r} is not extremal")
            if _cyclic_order(rays) is None:
                raise ValueError("rays of a non-simplicial cone must be in cyclic order")

    @property
    def ambient_dim(self) -> int:
        return len(self.rays[0])

    @property
    def intrinsic_dim(self) -> int:
        return rank(self.rays)

    @property
    def is_simplicial(self) -> bool:
        return len(self.rays) == self.intrinsic_dim

    def inner_normals(self) -> list[Vec]:
        """Primitive inward facet normals of a full-dimensional 3D cone."""
        if self.ambient_dim != 3 or self.intrinsic_dim != 3:
            raise ValueError("facet normals are only defined for 3D cones")
        k = len(self.rays)
        out = []
        for i in range(k):
            n = primitive(cross(self.rays[i], self.rays[(i + 1) % k]))
            if any(dot(n, r) < 0 for r in self.rays):
                n = tuple(-c for c in n)
            out.append(n)
        return out

    def contains(self, v: Sequence[int]) -> bool:
        v = tuple(v)
        rays = self.rays
        if len(v) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        d = self.intrinsic_dim
        if d == 1:
            r = rays[0]
            return rank([r, v]) <= 1 and dot(r, v) >= 0
        if d == 2:
            a, b = rays
            if self.ambient_dim == 2:
                s = det2(a, b)
                return det2(a, v) * s >= 0 and det2(v, b) * s >= 0
            n = cross(a, b)
            if dot(n, v) != 0:
                return False
            return dot(cross(a, v), n) >= 0 and dot(cross(v, b), n) >= 0
        return all(dot(n, v) >= 0 for n in self.inner_normals())

    def contains_in_interior(self, v: Sequence[int]) -> bool:
        if self.intrinsic_dim != 3:
            raise ValueError("interior test is for full-dimensional cones")
        return all(dot(n, v) > 0 for n in self.inner_normals())

    def __str__(self) -> str:
        return "<" + ", ".join(str(r) for r in self.rays) + ">"


def _in_cone_caratheodory(gens: Sequence[Vec], v: Vec) -> bool:
    """Is ``v`` a nonnegative combination of ``gens`` (all in Z^3)?"""
    for a in gens:
        if rank([a, v]) == 1 and dot(a, v) > 0:
            return True
    for a, b in combinations(gens, 2):
        if rank([a, b]) == 2 and Cone((a, b)).contains(v):
            return True
    for a, b, c in combinations(gens, 3):
        if det3(a, b, c) != 0 and all(x >= 0 for x in solve3((a, b, c), v)):
            return True
    return False


def _cyclic_order(rays: Sequence[Vec]) -> list[int] | None:
    """Check that consecutive rays span facets; return the index cycle."""
    k = len(rays)
    for i in range(k):
        a, b = rays[i], rays[(i + 1) % k]
        n = cross(a, b)
        signs = {(dot(n, r) > 0) - (dot(n, r) < 0) for r in rays} - {0}
        if len(signs) > 1:
            return None
    return list(range(k))


def cyclic_order(rays: Sequence[Sequence[int]]) -> list[Vec]:
    """Order the extremal rays of a pointed 3D cone cyclically."""
    rays = [vec(r) for r in rays]
    k = len(rays)
    if k <= 3:
        return rays
    adj: dict[int, list[int]] = {i: [] for i in range(k)}
    for i, j in combinations(range(k), 2):
        n = cross(rays[i], rays[j])
        signs = {(dot(n, r) > 0) - (dot(n, r) < 0) for r in rays} - {0}
        if len(signs) <= 1:
            adj[i].append(j)
            adj[j].append(i)
    order = [0]
    prev = None
    while len(order) < k:
        cur = order[-1]
        nxt = [j for j in sorted(adj[cur]) if j != prev and j not in order]
        if not nxt:
            raise ValueError("rays do not bound a pointed 3D cone")
        prev = cur
        order.append(nxt[0])
    return [rays[i] for i in order]


def determinant(c: Cone) -> int:
    """|det| of a full-dimensional simplicial cone."""
    if c.ambient_dim == 2:
        return abs(det2(*c.rays))
    if c.ambient_dim == 3 and len(c.rays) == 3:
        return abs(det3(*c.rays))
    raise ValueError("determinant needs a full-dimensional simplicial cone")


def is_regular(c: Cone) -> bool:
    """Do the rays of ``c`` extend to a basis of the saturated lattice of its span?"""
    d = c.intrinsic_dim
    if d == 1:
        return True
    if len(c.rays) != d:
        return False
    if d == c.ambient_dim:
        return determinant(c) == 1
    # 2D cone in Z^3: index in the saturation is the gcd of the 2x2 minors
    return gcd_all(cross(*c.rays)) == 1


def plane_lattice_basis(c: Cone) -> tuple[tuple[Vec, Vec], tuple[Vec, Vec]]:
    """Basis of Z^3 ∩ span(c) for a 2D cone, and the ray coordinates in it.

    The basis is the Hermite normal form of the saturated plane lattice, so
    it is canonical.
    """
    if c.ambient_dim != 3 or c.intrinsic_dim != 2:
        raise ValueError("plane_lattice_basis needs a 2-dimensional cone in Z^3")
    n = primitive(cross(*c.rays))
    a, b, cc = n
    # n is a unimodular row, so these generate its kernel
    gens = [(b, -a, 0), (cc, 0, -a), (0, cc, -b)]
    basis = hnf_rows(gens)
    assert len(basis) == 2
    b1, b2 = basis
    coords = tuple(_plane_coords(b1, b2, r) for r in c.rays)
    return (b1, b2), coords  # type: ignore[return-value]


def _plane_coords(b1: Vec, b2: Vec, r: Vec) -> Vec:
    # b1, b2 are HNF rows: b1 has its pivot where b2 vanishes
    j1 = next(i for i in range(3) if b1[i] != 0)
    j2 = next(i for i in range(3) if b2[i] != 0)
    alpha, rem = divmod(r[j1], b1[j1])
    if rem:
        raise ValueError("vector not in the plane lattice")
    beta, rem = divmod(r[j2] - alpha * b1[j2], b2[j2])
    if rem or add(scale(alpha, b1), scale(beta, b2)) != tuple(r):
        raise ValueError("vector not in the plane lattice")
    return (alpha, beta)


def _lift(b1: Vec, b2: Vec, uv: Vec) -> Vec:
    return add(scale(uv[0], b1), scale(uv[1], b2))


# ---------------------------------------------------------------------------
# Hilbert bases


def _hilbert_chain_plane(a: Vec, b: Vec) -> list[Vec]:
    """Hilbert basis of the 2D cone <a, b> in Z^2, ordered from a to b.

    The elements are the lattice points on the compact boundary of the
    convex hull of the nonzero lattice points of the cone.  Hull vertices
    all lie in the closed parallelogram spanned by a and b, so only that
    region is scanned.
    """
    s = det2(a, b)
    if s == 0:
        raise ValueError("degenerate cone: rays are proportional")
    sgn = 1 if s > 0 else -1
    xs = [0, a[0], b[0], a[0] + b[0]]
    ys = [0, a[1], b[1], a[1] + b[1]]
    pts = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            p = (x, y)
            if p == (0, 0):
                continue
            la = det2(p, b) * sgn  # s * lambda_a
            lb = det2(a, p) * sgn  # s * lambda_b
            if 0 <= la <= abs(s) and 0 <= lb <= abs(s):
                pts.append(p)

    # angular order from a towards b, nearest first on each ray
    def key(p):
        la = Fraction(det2(p, b) * sgn, abs(s))
        lb = Fraction(det2(a, p) * sgn, abs(s))
        return (lb / (la + lb), la + lb)

    pts.sort(key=key)
    chain: list[Vec] = []
    last_angle = None
    for p in pts:
        ang = key(p)[0]
        if ang == last_angle:
            continue
        last_angle = ang
        while len(chain) >= 2:
            e1 = sub(chain[-1], chain[-2])
            e2 = sub(p, chain[-1])
            if sgn * det2(e1, e2) >= 0:
                chain.pop()
            else:
                break
        chain.append(p)
    assert chain[0] == a and chain[-1] == b
    # fill in the lattice points along each hull edge
    out = [chain[0]]
    for u, w in zip(chain, chain[1:]):
        d = sub(w, u)
        g = gcd_all(d)
        step = tuple(c // g for c in d)
        for k in range(1, g + 1):
            out.append(add(u, scale(k, step)))
    return out


def hilbert_basis_2d(c: Cone) -> list[Vec]:
    """Hilbert basis of a 2D cone, as the chain from the first ray to the second."""
    if c.intrinsic_dim != 2:
        raise ValueError("hilbert_basis_2d needs a 2-dimensional cone")
    if c.ambient_dim == 2:
        return _hilbert_chain_plane(*c.rays)
    (b1, b2), (ca, cb) = plane_lattice_basis(c)
    return [_lift(b1, b2, uv) for uv in _hilbert_chain_plane(ca, cb)]


def chain_multiplicities(chain: Sequence[Sequence[int]]) -> list[int]:
    """The integers m_i with u_{i-1} + u_{i+1} = m_i u_i along a chain."""
    out = []
    for u0, u1, u2 in zip(chain, chain[1:], chain[2:]):
        s = add(u0, u2)
        j = next(i for i, c in enumerate(u1) if c != 0)
        m, rem = divmod(s[j], u1[j])
        if rem or scale(m, u1) != s:
            raise ValueError(f"{tuple(u1)} does not satisfy a chain relation")
        out.append(m)
    return out


def cone_hj_data(c: Cone) -> tuple[int, int]:
    """Normal form (d, k) of a 2D cone.

    With u0 the first ray and u1 the lattice point completing it to an
    oriented basis, the second ray is d*u1 - k*u0 with 0 <= k < d.  The
    cone's chain multiplicities are then the expansion of d/k.
    """
    if c.intrinsic_dim != 2:
        raise ValueError("cone_hj_data needs a 2-dimensional cone")
    if c.ambient_dim == 3:
        _, (a, b) = plane_lattice_basis(c)
    else:
        a, b = c.rays
    s = det2(a, b)
    sgn = 1 if s > 0 else -1
    d = abs(s)
    # w with det(a, w) = sgn, from the extended gcd of a
    g, x, y = _ext_gcd(a[0], a[1])
    assert g == 1
    # det(a, w) = a0*w1 - a1*w0; pick w = (-y, x) * sgn
    w = (-y * sgn, x * sgn)
    assert det2(a, w) == sgn
    alpha = Fraction(det2(b, w), sgn)
    assert alpha.denominator == 1
    k = (-int(alpha)) % d
    return d, k


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def parallelepiped_points(rays: Sequence[Vec]) -> list[Vec]:
    """Lattice points of the half-open fundamental parallelepiped of 3 rays."""
    rays = [vec(r) for r in rays]
    if det3(*rays) == 0:
        raise ValueError("rays are linearly dependent")
    h = hnf_rows(rays)
    diag = [h[i][i] for i in range(3)]
    out = []
    for x in product(*(range(d) for d in diag)):
        lam = solve3(rays, x)
        frac = [c - (c.numerator // c.denominator) for c in lam]
        p = [sum(f * r[i] for f, r in zip(frac, rays)) for i in range(3)]
        assert all(c.denominator == 1 for c in p)
        out.append(tuple(int(c) for c in p))
    return sorted(out)


def _reduce_generators(gens: Iterable[Vec], in_cone) -> list[Vec]:
    """Drop generators that are a generator plus a nonzero cone point."""
    gens = sorted(set(gens))
    keep = []
    for v in gens:
        reducible = any(
            h != v and in_cone(sub(v, h)) and not is_zero(sub(v, h)) for h in gens
        )
        if not reducible:
            keep.append(v)
    return keep


def hilbert_basis_3d(c: Cone) -> list[Vec]:
    """Hilbert basis of a simplicial 3D cone, sorted lexicographically."""
    if c.ambient_dim != 3 or c.intrinsic_dim != 3:
        raise ValueError("hilbert_basis_3d needs a full-dimensional cone in Z^3")
    if len(c.rays) != 3:
        raise ValueError("triangulate first")
    cands = set(c.rays) | {p for p in parallelepiped_points(c.rays) if not is_zero(p)}
    return _reduce_generators(cands, c.contains)


def hilbert_basis(c: Cone) -> list[Vec]:
    """Hilbert basis of any cone of dimension <= 3.

    Non-simplicial 3D cones are fanned out from their first ray; the union
    of the pieces' bases generates the semigroup and is then reduced.
    """
    d = c.intrinsic_dim
    if d == 1:
        return [c.rays[0]]
    if d == 2:
        return hilbert_basis_2d(c)
    if len(c.rays) == 3:
        return hilbert_basis_3d(c)
    rays = c.rays
    cands: set[Vec] = set()
    for i in range(1, len(rays) - 1):
        cands.update(hilbert_basis_3d(Cone((rays[0], rays[i], rays[i + 1]))))
    return _reduce_generators(cands, c.contains)


# ---------------------------------------------------------------------------
# Hirzebruch-Jung continued fractions


@dataclass(frozen=True)
class ContinuedFraction:
    """[m1; m2; ...; mk] = m1 - 1/[m2; ...; mk] with every term >= 2."""

    terms: tuple[int, ...]

    def __post_init__(self):
        terms = tuple(int(m) for m in self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise ValueError("empty continued fraction")
        if any(m < 2 for m in terms):
            raise ValueError("continued fraction terms must be >= 2")

    @property
    def value(self) -> Fraction:
        return hj_eval(self)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __str__(self) -> str:
        return "[" + ", ".join(str(m) for m in self.terms) + "]"


def hj_expand(a: int, b: int) -> ContinuedFraction:
    """Expand a/b (a > b >= 1, coprime) as a Hirzebruch-Jung continued fraction."""
    if not a > b >= 1:
        raise ValueError("hj_expand needs a > b >= 1")
    if gcd(a, b) != 1:
        raise ValueError("hj_expand needs coprime arguments")
    terms = []
    while b:
        m = -(-a // b)
        terms.append(m)
        a, b = b, m * b - a
    return ContinuedFraction(tuple(terms))


def hj_eval(cf: ContinuedFraction | Sequence[int]) -> Fraction:
    terms = cf.terms if isinstance(cf, ContinuedFraction) else tuple(cf)
    if not terms:
        raise ValueError("empty continued fraction")
    if any(m < 2 for m in terms):
        raise ValueError("continued fraction terms must be >= 2")
    x = Fraction(terms[-1])
    for m in reversed(terms[:-1]):
        x = m - 1 / x
    return x
