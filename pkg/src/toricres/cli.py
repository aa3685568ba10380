"""Command-line entry point.

Exit codes: 0 on success, 1 when a computation fails or a verification
claim fails, 2 for usage errors (bad flags or invalid surface data).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence, TextIO

from . import io
from .gsub import g_subdivide
from .lattice import Cone, hilbert_basis, hj_expand
from .newton import newton_fan
from .poly import parse_poly
from .resolution import SurfaceSpec, essential_divisors
from .verify import SUITES, VerifyConfig, verify
from .wedge import check_relation, eta_skeleton_check, gamma_hull, gamma_min, wedge_orders


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _int_list(text: str, sep: str = ",") -> list[int]:
    try:
        return [int(x) for x in text.split(sep)]
    except ValueError:
        raise UsageError(f"expected integers separated by {sep!r}, got {text!r}") from None


def _add_surface(p: argparse.ArgumentParser):
    p.add_argument("--surface", choices=["bpq", "e6", "e7", "dn", "custom"], required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--h", help="q+1 coefficients of h from x^q down to y^q, comma separated")
    p.add_argument("--poly", help="equation for --surface custom")


def _add_output(p: argparse.ArgumentParser, formats: Sequence[str]):
    p.add_argument("--format", choices=list(formats), default=formats[0])
    p.add_argument("--out", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="toricres", description="Toric resolution combinatorics of surface singularities.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("fan", help="Newton fan of a surface")
    _add_surface(p)
    _add_output(p, ["json", "text"])

    p = sub.add_parser("gsub", help="G-subdivision of the Newton fan")
    _add_surface(p)
    _add_output(p, ["json", "text"])

    p = sub.add_parser("resolve", help="weighted dual graph with essential flags")
    _add_surface(p)
    _add_output(p, ["json", "dot", "text"])

    p = sub.add_parser("hilbert", help="Hilbert basis of a cone")
    p.add_argument("--rays", required=True, help='rays as "a,b,c;d,e,f;..."')
    _add_output(p, ["json", "text"])

    p = sub.add_parser("contfrac", help="Hirzebruch-Jung expansion of a/b")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)

    p = sub.add_parser("gamma", help="lattice hull anchored at mu and its minimum")
    p.add_argument("--mu", required=True, help="mu_x,mu_z")
    p.add_argument("--pq", required=True, help="p,q")
    _add_output(p, ["json", "text"])

    p = sub.add_parser("wedge-check", help="substitute a wedge into an equation")
    p.add_argument("--poly", required=True)
    p.add_argument("--wedge", required=True, help="wedge JSON file")
    p.add_argument("--depth", type=int, default=12)
    _add_output(p, ["json", "text"])

    p = sub.add_parser("verify-paper", help="replay every stated result")
    p.add_argument("--suite", choices=["all", *SUITES], default="all")
    p.add_argument("--pmax", type=int, default=20)
    p.add_argument("--qmax", type=int, default=20)
    p.add_argument("--nmax", type=int, default=12)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    return parser


def surface_from_args(a: argparse.Namespace) -> SurfaceSpec:
    """Build the surface, turning invalid data into a usage error."""
    given = {k for k in ("p", "q", "n", "h", "poly") if getattr(a, k) is not None}
    allowed = {"bpq": {"p", "q", "h"}, "e6": set(), "e7": set(), "dn": {"n"}, "custom": {"poly"}}[a.surface]
    needed = {"bpq": {"p", "q"}, "e6": set(), "e7": set(), "dn": {"n"}, "custom": {"poly"}}[a.surface]
    if given - allowed:
        raise UsageError(f"--surface {a.surface} does not take {', '.join('--' + k for k in sorted(given - allowed))}")
    if needed - given:
        raise UsageError(f"--surface {a.surface} needs {', '.join('--' + k for k in sorted(needed - given))}")
    try:
        if a.surface == "bpq":
            h = None
            if a.h is not None:
                try:
                    h = [Fraction(x.strip()) for x in a.h.split(",")]
                except ValueError:
                    raise UsageError(f"bad --h {a.h!r}") from None
            return SurfaceSpec.bpq(a.p, a.q, h)
        if a.surface == "e6":
            return SurfaceSpec.e6()
        if a.surface == "e7":
            return SurfaceSpec.e7()
        if a.surface == "dn":
            return SurfaceSpec.dn(a.n)
        return SurfaceSpec.custom(a.poly)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _emit(text: str, a: argparse.Namespace, out: TextIO):
    if getattr(a, "out", None):
        with open(a.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)


def _json(obj) -> str:
    return io.dumps(obj) + "\n"


def _cmd(a: argparse.Namespace, out: TextIO) -> int:
    cmd = a.command
    if cmd in ("fan", "gsub", "resolve"):
        s = surface_from_args(a)
        if cmd == "fan":
            f = newton_fan(s.equation)
            _emit(_json(io.fan_to_json(f)) if a.format == "json" else io.fan_table(f), a, out)
        elif cmd == "gsub":
            g = g_subdivide(newton_fan(s.equation))
            _emit(_json(io.gsub_to_json(g)) if a.format == "json" else io.fan_table(g.refined), a, out)
        else:
            graph = essential_divisors(s)
            text = {
                "json": lambda: _json(io.graph_to_json(graph)),
                "dot": lambda: io.emit_dot(graph, s.name),
                "text": lambda: io.graph_table(graph),
            }[a.format]()
            _emit(text, a, out)
        return 0
    if cmd == "hilbert":
        rays = [tuple(_int_list(r)) for r in a.rays.split(";")]
        try:
            c = Cone(tuple(rays))
        except ValueError as e:
            raise UsageError(str(e)) from None
        hb = hilbert_basis(c)
        if a.format == "json":
            _emit(_json([list(v) for v in hb]), a, out)
        else:
            _emit("".join(f"{v}\n" for v in hb), a, out)
        return 0
    if cmd == "contfrac":
        try:
            cf = hj_expand(a.a, a.b)
        except ValueError as e:
            raise UsageError(str(e)) from None
        out.write(f"{cf}\n")
        return 0
    if cmd == "gamma":
        mu, pq = _int_list(a.mu), _int_list(a.pq)
        if len(mu) != 2 or len(pq) != 2:
            raise UsageError("--mu and --pq take two integers each")
        try:
            h = gamma_hull(mu, pq)
        except ValueError as e:
            raise UsageError(str(e)) from None
        m = gamma_min(h)
        data = {
            "anchor": list(h.anchor),
            "pq": list(h.slope_pair),
            "vertices": [list(v) for v in h.vertices],
            "slopes": [str(s) for s in h.slopes()],
            "min": {"point": list(m.point), "value": m.value, "on_ray": m.on_ray},
        }
        if a.format == "json":
            _emit(_json(data), a, out)
        else:
            lines = [f"vertices {' '.join(str(v) for v in h.vertices)}", f"slopes {' '.join(data['slopes'])}"]
            lines.append(f"min {m.value} at {m.point}" + (" (whole ray)" if m.on_ray else ""))
            _emit("\n".join(lines) + "\n", a, out)
        return 0
    if cmd == "wedge-check":
        try:
            f = parse_poly(a.poly)
            with open(a.wedge) as fh:
                w = io.wedge_from_json(json.load(fh))
        except (ValueError, OSError) as e:
            raise UsageError(str(e)) from None
        r = check_relation(f, w, a.depth)
        data = {"status": r.status, "detail": r.detail}
        if r.leading is not None:
            (e1, e2), c = r.leading
            data["leading"] = [e1, e2, str(c)]
        try:
            eta = wedge_orders(w)
            data["eta"] = list(eta)
            on, wall = eta_skeleton_check(f, eta)
            data["on_skeleton"] = on
            data["wall"] = [list(x) for x in wall] if wall else None
        except ArithmeticError as e:
            data["eta"] = None
            data["eta_detail"] = str(e)
        if a.format == "json":
            _emit(_json(data), a, out)
        else:
            _emit("".join(f"{k}: {v}\n" for k, v in data.items()), a, out)
        return 0 if r.status != "inconclusive" else 1
    if cmd == "verify-paper":
        try:
            cfg = VerifyConfig(suite=a.suite, pmax=a.pmax, qmax=a.qmax, nmax=a.nmax, jobs=a.jobs)
        except ValueError as e:
            raise UsageError(str(e)) from None
        rep = verify(cfg)
        _emit(rep.render(), a, out)
        return rep.exit_code
    raise UsageError(f"unknown command {cmd}")  # pragma: no cover


def run(argv: Optional[Sequence[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _cmd(args, out)
    except UsageError as e:
        err.write(f"{e}\n")
        return 2
    except SystemExit as e:  # --help
        return int(e.code or 0)
    except (ValueError, ArithmeticError, RuntimeError) as e:
        err.write(f"error: {e}\n")
        return 1


def main() -> None:
    sys.exit(run())
