"""Resolution combinatorics of surfaces z^p + h_q(x,y), E6, E7 and D_n.

Exceptional curves correspond to the rays of the G-subdivision that lie on
the 2-skeleton of the Newton fan and have all coordinates positive.  A ray
inside a wall contributes as many curves as the lattice length of the
Newton-polyhedron edge dual to that wall; a facet normal contributes one.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .gsub import g_subdivide
from .lattice import Cone, Vec, chain_multiplicities, hilbert_basis_2d
from .newton import Fan, dual_edge_length, is_nondegenerate, newton_fan
from .poly import SupportPoly, is_squarefree, parse_poly

E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
FAMILIES = ("bpq", "e6", "e7", "dn", "custom")


@dataclass(frozen=True)
class SurfaceSpec:
    """A surface singularity given by its family and equation."""

    family: str
    equation: SupportPoly
    p: Optional[int] = None
    q: Optional[int] = None
    n: Optional[int] = None
    h: Optional[tuple[Fraction, ...]] = None

    @classmethod
    def bpq(cls, p: int, q: int, h: Optional[Sequence] = None) -> "SurfaceSpec":
        """z^p + h(x,y), with h given by its q+1 coefficients from x^q down to y^q."""
        if p < 2 or q < 2:
            raise ValueError("need p >= 2 and q >= 2")
        if gcd(p, q) != 1:
            raise ValueError("p and q must be coprime")
        coeffs = tuple(Fraction(c) for c in (h if h is not None else [1] + [0] * (q - 1) + [1]))
        if len(coeffs) != q + 1:
            raise ValueError(f"h needs {q + 1} coefficients")
        if coeffs[0] == 0:
            raise ValueError("y divides h")
        if coeffs[-1] == 0:
            raise ValueError("x divides h")
        # h(1, y) = sum c_i y^i, of full degree q since y^q appears
        if not is_squarefree(list(coeffs)):
            raise ValueError("h is not squarefree")
        terms = {(0, 0, p): Fraction(1)}
        for i, c in enumerate(coeffs):
            if c:
                terms[(q - i, i, 0)] = c
        return cls("bpq", SupportPoly(terms), p=p, q=q, h=coeffs)

    @classmethod
    def e6(cls) -> "SurfaceSpec":
        return cls("e6", parse_poly("x^2 + y^3 + z^4"))

    @classmethod
    def e7(cls) -> "SurfaceSpec":
        return cls("e7", parse_poly("x^2 + y^3 + y*z^3"))

    @classmethod
    def dn(cls, n: int) -> "SurfaceSpec":
        if n < 4:
            raise ValueError("D_n needs n >= 4")
        return cls("dn", parse_poly(f"x^2 + z*y^2 + z^{n - 1}"), n=n)

    @classmethod
    def custom(cls, g: SupportPoly | str) -> "SurfaceSpec":
        if isinstance(g, str):
            g = parse_poly(g)
        if g.is_zero():
            raise ValueError("the zero polynomial")
        return cls("custom", g)

    @property
    def name(self) -> str:
        if self.family == "bpq":
            return f"B_{self.p},{self.q}"
        if self.family == "dn":
            return f"D_{self.n}"
        return self.family.upper() if self.family != "custom" else str(self.equation)


@dataclass(frozen=True)
class GraphNode:
    id: int
    ray: Vec
    copies: int
    weight: Optional[int]
    essential: bool
    label: str


@dataclass(frozen=True)
class ResolutionGraph:
    """Weighted dual graph.  A node with ``copies`` > 1 stands for that many
    identical curves; an edge between two such nodes joins copy i to copy i,
    and an edge to a single-copy node joins it to every copy."""

    nodes: tuple[GraphNode, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def total_curves(self) -> int:
        return sum(n.copies for n in self.nodes)

    def node(self, i: int) -> GraphNode:
        return self.nodes[i]

    def expanded(self) -> tuple[list[tuple[str, Optional[int], bool]], list[tuple[int, int]]]:
        """One vertex per curve: (label, weight, essential) and index edges."""
        verts = []
        first = {}
        for nd in self.nodes:
            first[nd.id] = len(verts)
            for _ in range(nd.copies):
                verts.append((f"E{len(verts)}", nd.weight, nd.essential))
        edges = []
        for a, b in self.edges:
            ca, cb = self.nodes[a].copies, self.nodes[b].copies
            if ca == cb:
                edges.extend((first[a] + k, first[b] + k) for k in range(ca))
            elif ca == 1:
                edges.extend((first[a], first[b] + k) for k in range(cb))
            elif cb == 1:
                edges.extend((first[a] + k, first[b]) for k in range(ca))
            else:
                raise ValueError("edge between nodes with different copy counts")
        return verts, sorted(edges)

    def branches(self) -> list[list[GraphNode]]:
        """Chains hanging off node 0, listed from the centre outward."""
        adj: dict[int, list[int]] = {n.id: [] for n in self.nodes}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        out = []
        for start in sorted(adj[0]):
            chain, prev, cur = [], 0, start
            while True:
                chain.append(self.nodes[cur])
                nxt = [j for j in adj[cur] if j != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
            out.append(chain)
        return out


@dataclass(frozen=True)
class ConstellationCode:
    """Chart recursion data for z^p + h_q with p = n q + r."""

    p: int
    q: int
    n: int
    r: int
    code: str
    chain_length: int
    fiber_curves: Optional[int]
    residual: Optional[tuple[int, int]]


# ---------------------------------------------------------------------------


def _check_nondegenerate(s: SurfaceSpec):
    v = is_nondegenerate(s.equation)
    if v.status == "no":
        raise ValueError(f"degenerate equation: {v.witness}")


def _central_rays(fan: Fan) -> list[Vec]:
    return [r for r in fan.rays if min(r) > 0]


def exceptional_rays(s: SurfaceSpec) -> list[tuple[Vec, int]]:
    """Positive rays of the G-subdivision on the 2-skeleton, with curve counts."""
    _check_nondegenerate(s)
    fan = newton_fan(s.equation)
    sub = g_subdivide(fan)
    out = []
    for r, home in sorted(sub.ray_home.items()):
        if min(r) <= 0 or len(home) > 2:
            continue
        if len(home) == 1:
            out.append((r, 1))
        else:
            a, b = (fan.rays[i] for i in home)
            copies = dual_edge_length(s.equation, a, b)
            if copies is None:
                raise ValueError(f"wall {home} has no compact dual edge")
            out.append((r, copies))
    return out


def _central_weight(s: SurfaceSpec) -> Optional[int]:
    if s.family == "bpq":
        return -1 if s.p % s.q == 1 else None
    if s.family in ("e6", "e7", "dn"):
        return -2
    return None


def dual_graph(s: SurfaceSpec) -> ResolutionGraph:
    """Star-shaped weighted dual graph, centre first; all nodes marked essential."""
    _check_nondegenerate(s)
    fan = newton_fan(s.equation)
    centres = _central_rays(fan)
    if len(centres) != 1:
        raise ValueError("star-shaped inputs only")
    c = centres[0]
    ci = fan.ray_index(c)
    nodes = [GraphNode(0, c, 1, _central_weight(s), True, "E0")]
    edges = []
    for w in fan.walls:
        if ci not in w:
            continue
        other = fan.rays[w[0] if w[1] == ci else w[1]]
        chain = hilbert_basis_2d(Cone((other, c)))
        if len(chain) <= 2:
            continue
        ms = chain_multiplicities(chain)
        copies = dual_edge_length(s.equation, other, c)
        if copies is None:
            raise ValueError(f"wall through {other} has no compact dual edge")
        prev = 0
        # from the centre outward: u_{K-1}, ..., u_1
        for u, m in reversed(list(zip(chain[1:-1], ms))):
            nid = len(nodes)
            nodes.append(GraphNode(nid, u, copies, -m, True, f"E{nid}"))
            edges.append((prev, nid))
            prev = nid
    return ResolutionGraph(tuple(nodes), tuple(edges))


def essential_divisors(s: SurfaceSpec) -> ResolutionGraph:
    """Dual graph with essential flags: only the centre of B_{p,q}, p = 1 mod q, is not."""
    g = dual_graph(s)
    if s.family == "bpq" and s.p % s.q == 1:
        nodes = (replace(g.nodes[0], essential=False),) + g.nodes[1:]
        return ResolutionGraph(nodes, g.edges)
    return g


def _designated_walls(s: SurfaceSpec, c: Vec) -> list[Cone]:
    if s.family == "bpq":
        others = [E3]
    elif s.family == "e6":
        others = [E2, E3]
    elif s.family == "e7":
        others = [E1, (1, 2, 0), E3]
    elif s.family == "dn":
        others = [(1, 0, 2), E1 if s.n % 2 == 0 else E2]
    else:
        raise ValueError("mu candidates are only defined for the built-in families")
    return [Cone((o, c)) for o in others]


def mu_candidates(s: SurfaceSpec) -> set[Vec]:
    """Admissible order vectors: positive Hilbert basis members of the designated walls."""
    if s.family == "custom":
        raise ValueError("mu candidates are only defined for the built-in families")
    (c,) = _central_rays(newton_fan(s.equation))
    out = set()
    for w in _designated_walls(s, c):
        out.update(v for v in hilbert_basis_2d(w) if min(v) > 0)
    return out


def strict_transform_chart3(g: SupportPoly) -> SupportPoly:
    """Pull back along (x, y, z) -> (zx, zy, z) and divide by the largest power of z."""
    if (0, 0, 0) in g.terms:
        raise ValueError("polynomial does not vanish at the origin")
    if g.is_zero():
        return g
    moved = {(a, b, a + b + c): k for (a, b, c), k in g.terms.items()}
    m = min(e[2] for e in moved)
    return SupportPoly({(a, b, c - m): k for (a, b, c), k in moved.items()})


def constellation(p: int, q: int) -> ConstellationCode:
    """Division p = n q + r and the coding Q_j = Q_0(3^j) of the chart-3 chain."""
    if gcd(p, q) != 1:
        raise ValueError("p and q must be coprime")
    if not p > q >= 3:
        raise ValueError("need p > q >= 3")
    n, r = divmod(p, q)
    code = ", ".join(f"Q_{j} = Q_0({'3' * j})" for j in range(1, n))
    return ConstellationCode(
        p=p,
        q=q,
        n=n,
        r=r,
        code=code,
        chain_length=n - 1,
        fiber_curves=n * q if r == 1 else None,
        residual=(r, q) if r > 1 else None,
    )


def chart3_iterates(s: SurfaceSpec, steps: int) -> list[SupportPoly]:
    """The equation and its first ``steps`` chart-3 strict transforms."""
    out = [s.equation]
    for _ in range(steps):
        out.append(strict_transform_chart3(out[-1]))
    return out
