"""Replay of the stated results as a list of checkable claims.

Every claim is a pure function of a ``VerifyConfig``; claims run in a
process pool when ``jobs > 1`` and the report is merged in claim order, so
the output does not depend on scheduling.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Iterator

from .gsub import g_subdivide, verify_g_property
from .lattice import (
    Cone,
    add,
    chain_multiplicities,
    cone_hj_data,
    hilbert_basis_2d,
    hj_eval,
    hj_expand,
    is_regular,
    scale,
)
from .newton import newton_fan
from .oracles import gamma_hull_bruteforce, gamma_min_bruteforce, hilbert_basis_bruteforce
from .poly import SupportPoly, parse_poly
from .resolution import SurfaceSpec, dual_graph, essential_divisors, mu_candidates, strict_transform_chart3
from .series import TruncSeries2, mul, v_order, v_part
from .wedge import Wedge, check_relation, eta_skeleton_check, gamma_hull, gamma_member, gamma_min, wedge_orders

E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
SUITES = ("fans", "graphs", "gamma", "wedges")


@dataclass(frozen=True)
class VerifyConfig:
    """Scope of a verification run."""

    suite: str = "all"
    pmax: int = 20
    qmax: int = 20
    nmax: int = 12
    hilbert_max: int = 12  # p, q and n bound for the brute-force Hilbert comparison
    cf_max: int = 200
    series_pairs: int = 200
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        if self.suite != "all" and self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}")
        if self.pmax < 4 or self.qmax < 3:
            raise ValueError("need pmax >= 4 and qmax >= 3")


@dataclass(frozen=True)
class ClaimResult:
    claim_id: str
    anchor: str
    status: str  # "pass", "fail" or "skipped"
    detail: str = ""


@dataclass
class VerificationReport:
    results: list[ClaimResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def render(self) -> str:
        lines = []
        for r in self.results:
            lines.append(f"{r.status.upper():7} {r.claim_id:24} {r.anchor}")
            if r.detail:
                lines.append(f"        {r.detail}")
        npass = sum(r.status == "pass" for r in self.results)
        nfail = sum(r.status == "fail" for r in self.results)
        nskip = sum(r.status == "skipped" for r in self.results)
        lines.append(f"{npass} passed, {nfail} failed, {nskip} skipped")
        return "\n".join(lines) + "\n"


class ClaimFailure(AssertionError):
    pass


def _require(cond: bool, msg: str):
    if not cond:
        raise ClaimFailure(msg)


# ---------------------------------------------------------------------------
# families


def bpq_pairs(pmax: int, qmax: int, qmin: int = 3) -> Iterator[tuple[int, int]]:
    """Coprime (p, q) with qmin <= q < p <= pmax and q <= qmax."""
    for p in range(qmin + 1, pmax + 1):
        for q in range(qmin, min(p - 1, qmax) + 1):
            if gcd(p, q) == 1:
                yield p, q


def all_bpq(bound: int) -> Iterator[tuple[int, int]]:
    """Every coprime (p, q) with 2 <= p, q <= bound."""
    for p in range(2, bound + 1):
        for q in range(2, bound + 1):
            if gcd(p, q) == 1:
                yield p, q


def family_specs(pmax: int, qmax: int, nmax: int) -> list[SurfaceSpec]:
    specs = [SurfaceSpec.bpq(p, q) for p, q in bpq_pairs(pmax, qmax)]
    specs += [SurfaceSpec.e6(), SurfaceSpec.e7()]
    specs += [SurfaceSpec.dn(n) for n in range(4, nmax + 1)]
    return specs


# ---------------------------------------------------------------------------
# claims


def claim_fan_tables(cfg: VerifyConfig) -> str:
    count = 0
    for p, q in bpq_pairs(cfg.pmax, cfg.qmax):
        c = (p, p, q)
        rays = set(newton_fan(SurfaceSpec.bpq(p, q).equation).rays)
        _require(rays == {E1, E2, E3, c}, f"B_{p},{q} rays {sorted(rays)}")
        _require(is_regular(Cone((E1, c))) and is_regular(Cone((E2, c))), f"B_{p},{q} side walls not regular")
        count += 1
    _require(set(newton_fan(SurfaceSpec.e6().equation).rays) == {E1, E2, E3, (6, 4, 3)}, "E6 rays")
    _require(set(newton_fan(SurfaceSpec.e7().equation).rays) == {E1, E2, E3, (1, 2, 0), (9, 6, 4)}, "E7 rays")
    for n in range(4, cfg.nmax + 1):
        rays = set(newton_fan(SurfaceSpec.dn(n).equation).rays)
        _require(rays == {E1, E2, E3, (1, 0, 2), (n - 1, n - 2, 2)}, f"D_{n} rays {sorted(rays)}")
    return f"{count} B_p,q fans, E6, E7, D_4..D_{cfg.nmax}"


def claim_contfrac(cfg: VerifyConfig) -> str:
    pairs = 0
    for a in range(2, cfg.cf_max + 1):
        for b in range(1, a):
            if gcd(a, b) == 1:
                _require(hj_eval(hj_expand(a, b)) == Fraction(a, b), f"{a}/{b}")
                pairs += 1
    for q in range(3, 8):
        for n in range(1, 6):
            p = n * q + 1
            cf = hj_expand(p, p - q).terms
            _require(cf == (2,) * (n - 1) + (q + 1,), f"{p}/{p - q} = {list(cf)}")
    return f"{pairs} pairs round-trip; nq+1 chains have n terms"


def _walls(spec: SurfaceSpec) -> list[Cone]:
    return newton_fan(spec.equation).wall_cones()


def claim_hilbert_oracle(cfg: VerifyConfig) -> str:
    specs = [SurfaceSpec.bpq(p, q) for p, q in all_bpq(cfg.hilbert_max)]
    specs += [SurfaceSpec.e6(), SurfaceSpec.e7()]
    specs += [SurfaceSpec.dn(n) for n in range(4, min(cfg.nmax, 10) + 1)]
    walls = 0
    for s in specs:
        for w in _walls(s):
            chain = hilbert_basis_2d(w)
            _require(set(chain) == hilbert_basis_bruteforce(w), f"{s.name} wall {w}")
            ms = chain_multiplicities(chain)
            if len(chain) > 2:
                # the chain relation m_i must match the continued fraction of the wall
                d, k = cone_hj_data(w)
                _require(ms == list(hj_expand(d, k).terms), f"{s.name} wall {w}: {ms} vs {d}/{k}")
            walls += 1
    return f"{walls} walls over {len(specs)} surfaces"


def _expected_mu(s: SurfaceSpec) -> set:
    if s.family == "e6":
        return {(2, 2, 1), (3, 2, 2), (4, 3, 2), (6, 4, 3)}
    if s.family == "e7":
        return {(3, 2, 2), (6, 4, 3), (9, 6, 4), (7, 5, 3), (5, 4, 2), (3, 3, 1), (5, 3, 2)}
    if s.family == "dn":
        n = s.n
        out = {(j, j - 1, 2) for j in range(2, n)}
        if n % 2 == 0:
            k = n // 2
            out |= {(k, k - 1, 1)}
        else:
            k = (n + 1) // 2
            out |= {(k - 1, k - 1, 1)}
        return out | {(n - 1, n - 2, 2)}
    raise ValueError(s.family)


def claim_mu_sets(cfg: VerifyConfig) -> str:
    for s in [SurfaceSpec.e6(), SurfaceSpec.e7()] + [SurfaceSpec.dn(n) for n in range(4, cfg.nmax + 1)]:
        got = mu_candidates(s)
        _require(got == _expected_mu(s), f"{s.name}: {sorted(got)}")
    count = 0
    for p, q in all_bpq(min(cfg.hilbert_max, 12)):
        s = SurfaceSpec.bpq(p, q)
        expected = {v for v in hilbert_basis_bruteforce(Cone((E3, (p, p, q)))) if min(v) > 0}
        _require(mu_candidates(s) == expected, f"{s.name}")
        count += 1
    return f"E6, E7, D_4..D_{cfg.nmax}, {count} B_p,q"


def claim_unit_member(cfg: VerifyConfig) -> str:
    count = 0
    for p, q in bpq_pairs(cfg.pmax, cfg.qmax):
        c = (p, p, q)
        _require((1, 1, 1) in hilbert_basis_2d(Cone((E3, c))), f"B_{p},{q}")
        _require(scale(p, (1, 1, 1)) == add(c, scale(p - q, E3)), f"B_{p},{q} identity")
        count += 1
    return f"{count} pairs"


def claim_gsub(cfg: VerifyConfig) -> str:
    specs = family_specs(cfg.pmax, cfg.qmax, cfg.nmax)
    for s in specs:
        v = verify_g_property(g_subdivide(newton_fan(s.equation)))
        _require(not v, f"{s.name}: {v[0] if v else ''}")
    return f"{len(specs)} fans"


def _expanded_tree(s: SurfaceSpec):
    g = essential_divisors(s)
    verts, edges = g.expanded()
    adj: dict[int, list[int]] = {i: [] for i in range(len(verts))}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    return g, verts, adj


def _arm_lengths(adj: dict[int, list[int]], centre: int) -> list[int]:
    out = []
    for start in adj[centre]:
        prev, cur, k = centre, start, 1
        while True:
            nxt = [j for j in adj[cur] if j != prev]
            if not nxt:
                break
            _require(len(nxt) == 1, "arm branches")
            prev, cur, k = cur, nxt[0], k + 1
        out.append(k)
    return sorted(out)


def _check_ade(s: SurfaceSpec, arms: list[int], total: int):
    g, verts, adj = _expanded_tree(s)
    _require(len(verts) == total, f"{s.name}: {len(verts)} curves")
    _require(sum(len(v) for v in adj.values()) == 2 * (total - 1), f"{s.name}: not a tree")
    _require(all(w == -2 for _, w, _ in verts), f"{s.name}: weights {[w for _, w, _ in verts]}")
    _require(all(e for _, _, e in verts), f"{s.name}: non-essential node")
    centres = [i for i, a in adj.items() if len(a) == 3]
    _require(len(centres) == 1, f"{s.name}: {len(centres)} trivalent nodes")
    _require(_arm_lengths(adj, centres[0]) == arms, f"{s.name}: arms {_arm_lengths(adj, centres[0])}")


def claim_graphs(cfg: VerifyConfig) -> str:
    count = 0
    for q in range(3, cfg.qmax + 1):
        for n in range(1, cfg.pmax):
            p = n * q + 1
            if p > cfg.pmax:
                break
            s = SurfaceSpec.bpq(p, q)
            g, verts, adj = _expanded_tree(s)
            _require(len(verts) == n * q + 1, f"{s.name}: {len(verts)} nodes")
            _require(verts[0][1] == -1 and not verts[0][2], f"{s.name}: centre {verts[0]}")
            _require(all(e for _, _, e in verts[1:]), f"{s.name}: non-essential branch node")
            branches = g.branches()
            want = [-m for m in reversed(hj_expand(p, p - q).terms)]
            _require(len(branches) == 1 and branches[0][0].copies == q, f"{s.name}: branch layout")
            _require([nd.weight for nd in branches[0]] == want, f"{s.name}: weights")
            _require(len(adj[0]) == q, f"{s.name}: centre degree {len(adj[0])}")
            count += 1
    _check_ade(SurfaceSpec.e6(), [1, 2, 2], 6)
    _check_ade(SurfaceSpec.e7(), [1, 2, 3], 7)
    for n in range(4, cfg.nmax + 1):
        _check_ade(SurfaceSpec.dn(n), [1, 1, n - 3], n)
    return f"{count} B_nq+1,q stars, E6, E7, D_4..D_{cfg.nmax}"


def claim_chart3(cfg: VerifyConfig) -> str:
    count = 0
    for p, q in bpq_pairs(cfg.pmax, cfg.qmax):
        s = SurfaceSpec.bpq(p, q)
        h = SupportPoly({e: c for e, c in s.equation.terms.items() if e[2] == 0})
        _require(strict_transform_chart3(s.equation) == h + SupportPoly.monomial((0, 0, p - q)), f"B_{p},{q}")
        if p % q == 1:
            g = s.equation
            for _ in range(p // q):
                g = strict_transform_chart3(g)
            _require(g == h + SupportPoly.monomial((0, 0, 1)), f"B_{p},{q} iterate")
        count += 1
    return f"{count} pairs"


def claim_gamma(cfg: VerifyConfig) -> str:
    hulls = 0
    for p, q in bpq_pairs(min(cfg.pmax, 12), min(cfg.qmax, 12)):
        for m in sorted(mu_candidates(SurfaceSpec.bpq(p, q))):
            mu = (m[0], m[2])
            h = gamma_hull(mu, (p, q))
            _require(list(h.vertices) == gamma_hull_bruteforce(mu), f"B_{p},{q} mu {mu}: hull")
            _require(all(0 <= s < Fraction(q, p) for s in h.slopes()), f"B_{p},{q} mu {mu}: slopes")
            gm = gamma_min(h)
            val, pts = gamma_min_bruteforce(mu, (p, q))
            _require(gm.value == val and gm.point in pts, f"B_{p},{q} mu {mu}: min")
            if mu == (p, q):
                _require(gm.on_ray and all(pt[0] * q == pt[1] * p for pt in pts), f"B_{p},{q}: ray")
            else:
                _require(not gm.on_ray and pts == [mu] and gm.point == mu, f"B_{p},{q} mu {mu}: anchor")
            _require(all(gamma_member(v, h) for v in h.vertices), f"B_{p},{q} mu {mu}: membership")
            hulls += 1
    return f"{hulls} hulls"


def _random_series(rng: random.Random) -> TruncSeries2:
    terms = {}
    for _ in range(rng.randint(1, 5)):
        e = (rng.randint(0, 4), rng.randint(0, 4))
        terms[e] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    if not any(terms.values()):
        terms[(0, 0)] = Fraction(1)
    return TruncSeries2(terms, rng.choice([rng.randint(9, 14), float("inf")]))


def constructed_wedge() -> Wedge:
    """An exact wedge on z^3 + x^2 - y^2 = 0: x - y = -t^3 (1+s)^3 and x + y = t^3."""
    one = TruncSeries2.monomial(0, 0)
    s, t = TruncSeries2.monomial(1, 0), TruncSeries2.monomial(0, 1)
    c = (one + s) ** 3
    half = Fraction(1, 2)
    return Wedge((one - c) * t**3 * half, (one + c) * t**3 * half, t**2 * (one + s))


def claim_series(cfg: VerifyConfig) -> str:
    rng = random.Random(cfg.seed)
    checked = 0
    while checked < cfg.series_pairs:
        a, b = _random_series(rng), _random_series(rng)
        v = (Fraction(rng.randint(1, 6), rng.randint(1, 4)), Fraction(rng.randint(1, 6), rng.randint(1, 4)))
        ab = mul(a, b)
        try:
            # the product truncation can hide an order both factors certify
            parts = [(v_order(x, v), v_part(x, v)) for x in (a, b, ab)]
        except ArithmeticError:
            continue
        (oa, pa), (ob, pb), (oab, pab) = parts
        _require(oab == oa + ob, f"order of {a} * {b} at {v}")
        _require(pab == mul(pa, pb), f"part of {a} * {b} at {v}")
        checked += 1
    f = parse_poly("z^3 + x^2 - y^2")
    w = constructed_wedge()
    r = check_relation(f, w)
    _require(r.is_zero, f"constructed wedge residual {r.detail}")
    eta = wedge_orders(w)
    _require(eta == (3, 3, 2), f"constructed wedge eta {eta}")
    _require(eta_skeleton_check(f, eta)[0], "eta off the 2-skeleton")
    t = TruncSeries2.monomial(0, 1)
    r = check_relation(SurfaceSpec.e6().equation, Wedge(t, t, t))
    _require(r.status == "nonzero" and r.leading == ((0, 2), Fraction(1)), f"E6 (t,t,t): {r.detail}")
    return f"{checked} random pairs, constructed wedge, E6 (t,t,t)"


@dataclass(frozen=True)
class Claim:
    claim_id: str
    suite: str
    anchor: str
    fn: Callable[[VerifyConfig], str]


CLAIMS: tuple[Claim, ...] = (
    Claim("1-fan-tables", "fans", "Newton fan rays; side walls of B_p,q regular", claim_fan_tables),
    Claim("2-contfrac", "fans", "continued fraction round trip; p=nq+1 chain shape", claim_contfrac),
    Claim("3-hilbert-oracle", "fans", "wall Hilbert bases equal brute force; chain relations", claim_hilbert_oracle),
    Claim("4-mu-candidates", "graphs", "order-vector candidate sets", claim_mu_sets),
    Claim("5-unit-vector", "fans", "(1,1,1) in the Hilbert basis of <e3,(p,p,q)>", claim_unit_member),
    Claim("6-g-subdivision", "fans", "G-subdivisions are unimodular with home Hilbert rays", claim_gsub),
    Claim("7-dual-graphs", "graphs", "dual graphs: B_nq+1,q stars and ADE shapes", claim_graphs),
    Claim("8-chart3", "graphs", "chart-3 strict transform lowers p by q", claim_chart3),
    Claim("9-gamma", "gamma", "hull slopes and linear minimum, against brute force", claim_gamma),
    Claim("10-series", "wedges", "v-order multiplicativity and wedge residuals", claim_series),
)


def run_claim(claim: Claim, cfg: VerifyConfig) -> ClaimResult:
    try:
        detail = claim.fn(cfg)
        return ClaimResult(claim.claim_id, claim.anchor, "pass", detail)
    except ClaimFailure as e:
        return ClaimResult(claim.claim_id, claim.anchor, "fail", str(e))
    except Exception as e:  # a crash inside a claim is a failure, not a harness error
        return ClaimResult(claim.claim_id, claim.anchor, "fail", f"{type(e).__name__}: {e}")


def _run_indexed(args: tuple[int, VerifyConfig]) -> ClaimResult:
    i, cfg = args
    return run_claim(CLAIMS[i], cfg)


def verify(cfg: VerifyConfig = VerifyConfig()) -> VerificationReport:
    selected = [i for i, c in enumerate(CLAIMS) if cfg.suite in ("all", c.suite)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            results = list(ex.map(_run_indexed, [(i, cfg) for i in selected]))
    else:
        results = [run_claim(CLAIMS[i], cfg) for i in selected]
    skipped = [
        ClaimResult(c.claim_id, c.anchor, "skipped", f"not in suite {cfg.suite}")
        for i, c in enumerate(CLAIMS)
        if i not in selected
    ]
    order = {c.claim_id: i for i, c in enumerate(CLAIMS)}
    return VerificationReport(sorted(results + skipped, key=lambda r: order[r.claim_id]))
