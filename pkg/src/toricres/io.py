"""JSON, DOT and plain-text renderings of fans, subdivisions, graphs and wedges.

All emitters are deterministic: keys and lists come out in a fixed order,
so identical inputs give byte-identical text.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any

from .gsub import GSubdivision
from .newton import Fan
from .resolution import GraphNode, ResolutionGraph
from .series import TruncSeries2
from .wedge import Wedge


def dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"))


# fans ----------------------------------------------------------------------


def fan_to_json(f: Fan) -> dict:
    return {
        "rays": [list(r) for r in f.rays],
        "max_cones": [list(c) for c in f.max_cones],
        "walls": [list(w) for w in f.walls],
    }


def fan_from_json(d: dict) -> Fan:
    return Fan(
        tuple(tuple(int(x) for x in r) for r in d["rays"]),
        tuple(tuple(int(i) for i in c) for c in d["max_cones"]),
        tuple((int(a), int(b)) for a, b in d["walls"]),
    )


def gsub_to_json(s: GSubdivision) -> dict:
    out = fan_to_json(s.refined)
    out["ray_home"] = [[list(r), list(s.ray_home[r])] for r in s.refined.rays]
    out["original"] = fan_to_json(s.original)
    return out


def gsub_from_json(d: dict) -> GSubdivision:
    home = {tuple(r): tuple(h) for r, h in d["ray_home"]}
    return GSubdivision(fan_from_json(d["original"]), fan_from_json(d), home)


# graphs ---------------------------------------------------------------------


def graph_to_json(g: ResolutionGraph) -> dict:
    return {
        "nodes": [
            {
                "id": n.id,
                "ray": list(n.ray),
                "copies": n.copies,
                "weight": n.weight,
                "essential": n.essential,
                "label": n.label,
            }
            for n in g.nodes
        ],
        "edges": [list(e) for e in g.edges],
    }


def graph_from_json(d: dict) -> ResolutionGraph:
    nodes = tuple(
        GraphNode(n["id"], tuple(n["ray"]), n["copies"], n["weight"], n["essential"], n["label"])
        for n in d["nodes"]
    )
    return ResolutionGraph(nodes, tuple((a, b) for a, b in d["edges"]))


def emit_dot(g: ResolutionGraph, name: str = "resolution") -> str:
    """DOT text with one vertex per exceptional curve; dashed when not essential."""
    verts, edges = g.expanded()
    lines = [f"graph {json.dumps(name)} {{"]
    for i, (label, weight, essential) in enumerate(verts):
        w = "?" if weight is None else str(weight)
        style = "" if essential else ", style=dashed"
        lines.append(f'  n{i} [label="{label} ({w})"{style}];')
    for a, b in edges:
        lines.append(f"  n{a} -- n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_table(g: ResolutionGraph) -> str:
    rows = [("id", "ray", "copies", "weight", "essential")]
    for n in g.nodes:
        rows.append((str(n.id), str(n.ray), str(n.copies), "?" if n.weight is None else str(n.weight), "yes" if n.essential else "no"))
    rows.append(("", "", "", "", ""))
    rows.append(("edges", " ".join(f"{a}-{b}" for a, b in g.edges), "", "", ""))
    return _table(rows)


def fan_table(f: Fan) -> str:
    rows = [("ray", "index")]
    rows += [(str(r), str(i)) for i, r in enumerate(f.rays)]
    rows.append(("", ""))
    rows.append(("cone", "rays"))
    rows += [("max", " ".join(str(f.rays[i]) for i in c)) for c in f.max_cones]
    rows += [("wall", " ".join(str(f.rays[i]) for i in w)) for w in f.walls]
    return _table(rows)


def _table(rows: list[tuple[str, ...]]) -> str:
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows) + "\n"


# wedges ---------------------------------------------------------------------


def _coeff_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def wedge_to_json(w: Wedge) -> dict:
    out: dict[str, Any] = {}
    for name, c in zip("xyz", w.components):
        out[name] = [[a, b, _coeff_str(k)] for (a, b), k in c.terms.items()]
    t = w.trunc
    out["trunc"] = None if t == math.inf else t
    return out


def wedge_from_json(d: dict) -> Wedge:
    """Parse ``{"x": [[e1, e2, "num/den"], ...], "y": ..., "z": ..., "trunc": N}``;
    a missing or null ``trunc`` means the series are exact polynomials."""
    if not isinstance(d, dict):
        raise ValueError("wedge JSON must be an object")
    t = d.get("trunc")
    trunc = math.inf if t is None else int(t)
    comps = []
    for name in "xyz":
        if name not in d:
            raise ValueError(f"wedge JSON lacks component {name!r}")
        terms: dict[tuple[int, int], Fraction] = {}
        for entry in d[name]:
            if len(entry) != 3:
                raise ValueError(f"bad term {entry!r} in component {name!r}")
            a, b, c = entry
            e = (int(a), int(b))
            terms[e] = terms.get(e, Fraction(0)) + Fraction(str(c))
        comps.append(TruncSeries2(terms, trunc))
    return Wedge(*comps)
