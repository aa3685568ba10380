"""G-regular subdivisions of fans in the positive octant.

Walls are refined canonically by their Hilbert chains.  Each maximal cone
is then triangulated using its (refined) boundary rays, and simplicial
pieces that are not unimodular are stellarly subdivided at Hilbert basis
elements of the original maximal cone until every piece has |det| = 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .lattice import Cone, Vec, det3, dot, hilbert_basis, hilbert_basis_2d, solve3
from .newton import Fan

log = logging.getLogger(__name__)


class GSubdivisionError(RuntimeError):
    """Raised when a cone cannot be refined with home-cone Hilbert basis rays."""

    def __init__(self, msg: str, cone: Sequence[Vec]):
        super().__init__(f"{msg}: {tuple(cone)}")
        self.cone = tuple(cone)


@dataclass(frozen=True)
class GSubdivision:
    """A refinement of ``original`` together with the home cone of each new ray.

    ``ray_home`` maps a refined ray to the ray indices (in ``original``) of
    the smallest original cone containing it, in the order used by
    ``original`` (cyclic for maximal cones).
    """

    original: Fan
    refined: Fan
    ray_home: Mapping[Vec, tuple[int, ...]] = field(default_factory=dict)


def subdivide_wall(c: Cone) -> list[Cone]:
    """Canonical regular subdivision of a 2D cone along its Hilbert chain."""
    if c.intrinsic_dim != 2:
        raise ValueError("subdivide_wall needs a 2-dimensional cone")
    chain = hilbert_basis_2d(c)
    return [Cone((a, b)) for a, b in zip(chain, chain[1:])]


def _oriented_chain(fan: Fan, chains: dict, i: int, j: int) -> list[Vec]:
    if (i, j) in chains:
        return chains[(i, j)]
    return chains[(j, i)][::-1]


def _ear_triangulate(poly: list[Vec]) -> list[tuple[Vec, Vec, Vec]]:
    """Triangulate a weakly convex cyclic list of rays, skipping flat ears."""
    poly = list(poly)
    tris = []
    while len(poly) > 3:
        best = None
        for k in range(len(poly)):
            a, b, c = poly[k - 1], poly[k], poly[(k + 1) % len(poly)]
            d = abs(det3(a, b, c))
            if d == 0:
                continue
            key = (d, b)
            if best is None or key < best[0]:
                best = (key, k)
        if best is None:
            raise GSubdivisionError("boundary rays are coplanar", poly)
        k = best[1]
        tris.append((poly[k - 1], poly[k], poly[(k + 1) % len(poly)]))
        del poly[k]
    if abs(det3(*poly)) == 0:
        raise GSubdivisionError("degenerate final triangle", poly)
    tris.append(tuple(poly))
    return tris


def _in_closed(tri: Sequence[Vec], v: Vec) -> bool:
    return all(x >= 0 for x in solve3(tri, v))


def _stellar(tri: tuple[Vec, Vec, Vec], h: Vec) -> list[tuple[Vec, Vec, Vec]]:
    out = []
    for k in range(3):
        t = list(tri)
        t[k] = h
        if det3(*t) != 0:
            out.append(tuple(t))
    return out


def _refine_cone(home: Cone, boundary: list[Vec]) -> list[tuple[Vec, Vec, Vec]]:
    hb = hilbert_basis(home)
    tris = _ear_triangulate(boundary)
    steps = 0
    while True:
        bad = [t for t in tris if abs(det3(*t)) > 1]
        if not bad:
            break
        # the worst cone first, ties by its rays
        sigma = max(bad, key=lambda t: (abs(det3(*t)), sorted(t)))
        cands = [h for h in hb if h not in sigma and _in_closed(sigma, h)]
        if not cands:
            raise GSubdivisionError("no Hilbert basis point of the home cone inside", sigma)
        best = None
        for h in cands:
            touched = [t for t in tris if _in_closed(t, h)]
            new = [s for t in touched for s in _stellar(t, h)]
            score = max(abs(det3(*s)) for s in new)
            if best is None or (score, h) < best[0]:
                best = ((score, h), h, touched, new)
        (_, h, touched, new) = best
        before = max(abs(det3(*t)) for t in touched)
        log.debug("stellar step %d at %s: multiplicity %d -> %d", steps, h, before, best[0][0])
        assert best[0][0] < before
        tris = [t for t in tris if t not in touched] + new
        steps += 1
    return tris


def _smallest_home(fan: Fan, v: Vec) -> tuple[int, ...]:
    if v in fan.rays:
        return (fan.rays.index(v),)
    for w in fan.walls:
        if fan.cone(w).contains(v):
            return tuple(sorted(w))
    for c in fan.max_cones:
        if fan.cone(c).contains(v):
            return tuple(c)
    raise ValueError(f"{v} lies outside the fan")


def g_subdivide(f: Fan) -> GSubdivision:
    """Refine ``f`` into unimodular cones using only Hilbert basis rays of home cones."""
    chains = {w: hilbert_basis_2d(f.cone(w)) for w in f.walls}
    cones = []
    for mc in f.max_cones:
        k = len(mc)
        boundary: list[Vec] = []
        for t in range(k):
            i, j = mc[t], mc[(t + 1) % k]
            boundary.extend(_oriented_chain(f, chains, i, j)[:-1])
        for tri in _refine_cone(f.cone(mc), boundary):
            cones.append(tri)
    refined = Fan.from_cones(cones)
    home = {r: _smallest_home(f, r) for r in refined.rays}
    return GSubdivision(f, refined, home)


def verify_g_property(s: GSubdivision) -> list[str]:
    """Check that ``s`` is a G-regular subdivision; return every violation found."""
    out: list[str] = []
    orig, ref = s.original, s.refined
    orig_cones = [orig.cone(c) for c in orig.max_cones]
    for r in orig.rays:
        if r not in ref.rays:
            out.append(f"original ray {r} missing from refinement")
    parts: dict[int, list[tuple[Vec, ...]]] = {i: [] for i in range(len(orig_cones))}
    for mc in ref.max_cones:
        rays = tuple(ref.rays[i] for i in mc)
        if len(rays) != 3:
            out.append(f"cone {rays} is not simplicial")
            continue
        d = abs(det3(*rays))
        if d != 1:
            out.append(f"cone {rays} has |det| = {d}")
        homes = [i for i, c in enumerate(orig_cones) if all(c.contains(r) for r in rays)]
        if not homes:
            out.append(f"cone {rays} is not contained in an original cone")
        else:
            parts[homes[0]].append(rays)
    for r in ref.rays:
        try:
            home = _smallest_home(orig, r)
        except ValueError:
            out.append(f"ray {r} lies outside the original fan")
            continue
        if s.ray_home and tuple(s.ray_home.get(r, ())) != home:
            out.append(f"ray {r} has wrong home {s.ray_home.get(r)}; expected {home}")
        hb = hilbert_basis(orig.cone(home))
        if r not in hb:
            out.append(f"ray {r} is not in the Hilbert basis of its home cone {orig.cone(home)}")
    for i, c in enumerate(orig_cones):
        out.extend(_tiling_violations(c, parts[i], ref.rays))
    return out


def _section_area(rays: Sequence[Vec]) -> Fraction:
    # area of the cross-section with x+y+z = 1, up to a constant factor
    a, b, c = rays
    return Fraction(abs(det3(a, b, c)), sum(a) * sum(b) * sum(c))


def _tiling_violations(home: Cone, tris: list[tuple[Vec, ...]], all_rays) -> list[str]:
    out = []
    rays = home.rays
    whole = sum((_section_area((rays[0], rays[i], rays[i + 1])) for i in range(1, len(rays) - 1)), Fraction(0))
    total = sum((_section_area(t) for t in tris), Fraction(0))
    if total != whole:
        out.append(f"pieces of {home} do not add up to it (area {total} vs {whole})")
    normals = {t: Cone(t).inner_normals() for t in tris}
    for x in range(len(tris)):
        for y in range(x + 1, len(tris)):
            s, t = tris[x], tris[y]
            sep = any(all(dot(n, r) <= 0 for r in t) for n in normals[s]) or any(
                all(dot(n, r) <= 0 for r in s) for n in normals[t]
            )
            if not sep:
                out.append(f"cones {s} and {t} overlap")
    for t in tris:
        for r in all_rays:
            if r not in t and _in_closed(t, r):
                out.append(f"ray {r} lies in cone {t} without being one of its rays")
    return out
