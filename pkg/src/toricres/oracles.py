"""Brute-force reference computations used to cross-check the fast paths.

Each oracle enumerates lattice points in an explicit bounding box and
shares no code with the algorithms it checks beyond cone membership.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

from .lattice import Cone, Vec, sub


def _box(rays: Sequence[Vec]) -> list[range]:
    # every Hilbert basis element lies in the zonotope sum of [0,1]*ray
    dims = len(rays[0])
    out = []
    for k in range(dims):
        lo = sum(min(0, r[k]) for r in rays)
        hi = sum(max(0, r[k]) for r in rays)
        out.append(range(lo, hi + 1))
    return out


def hilbert_basis_bruteforce(c: Cone) -> set[Vec]:
    """Irreducible nonzero lattice points of ``c``, by exhaustive search."""
    pts = [p for p in product(*_box(c.rays)) if any(p) and c.contains(p)]
    out = set()
    for x in pts:
        if not any(y != x and c.contains(sub(x, y)) for y in pts):
            out.add(x)
    return out


def _lower_hull(pts: list[tuple[int, int]]) -> list[tuple[int, int]]:
    pts = sorted(set(pts))
    hull: list[tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2:
            (ax, ay), (bx, by) = hull[-2], hull[-1]
            if (bx - ax) * (p[1] - ay) - (by - ay) * (p[0] - ax) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def gamma_hull_bruteforce(mu: tuple[int, int]) -> list[tuple[int, int]]:
    """Lattice points on the compact faces of the hull of the nonzero lattice
    points of <(0,1), mu>, from (0,1) to mu."""
    mx, mz = mu
    pts = [
        (u, v)
        for u in range(mx + 1)
        for v in range(mz + 1)
        if (u, v) != (0, 0) and mx * v - mz * u >= 0
    ]
    corners = _lower_hull(pts)
    start = corners.index((0, 1))
    corners = corners[start:]
    out = [corners[0]]
    for a, b in zip(corners, corners[1:]):
        out += [
            pt
            for pt in sorted(pts)
            if a[0] < pt[0] <= b[0] and (b[0] - a[0]) * (pt[1] - a[1]) == (b[1] - a[1]) * (pt[0] - a[0])
        ]
    return out


def gamma_min_bruteforce(mu: tuple[int, int], pq: tuple[int, int]) -> tuple[int, list[tuple[int, int]]]:
    """Minimum of p*v - q*u over the nonzero lattice points of <(0,1), mu>
    with coordinates at most 3p, and all points attaining it."""
    p, q = pq
    mx, mz = mu
    bound = 3 * p
    vals = {
        (u, v): p * v - q * u
        for u in range(bound + 1)
        for v in range(bound + 1)
        if (u, v) != (0, 0) and mx * v - mz * u >= 0
    }
    m = min(vals.values())
    return m, sorted(pt for pt, val in vals.items() if val == m)
