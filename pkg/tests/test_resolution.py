from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from toricres.lattice import add, hj_eval, hj_expand, scale
from toricres.poly import SupportPoly, parse_poly
from toricres.resolution import (
    SurfaceSpec,
    chart3_iterates,
    constellation,
    dual_graph,
    essential_divisors,
    exceptional_rays,
    mu_candidates,
    strict_transform_chart3,
)

coprime_pairs = st.tuples(st.integers(2, 13), st.integers(2, 13)).filter(lambda t: gcd(*t) == 1)


class TestSurfaceSpec:
    def test_bpq_equation(self):
        assert SurfaceSpec.bpq(5, 3).equation == parse_poly("z^5 + x^3 + y^3")
        assert SurfaceSpec.bpq(5, 3, [1, 0, -1, 1]).equation == parse_poly("z^5 + x^3 - x*y^2 + y^3")

    @pytest.mark.parametrize(
        "p,q,h,msg",
        [
            (6, 3, None, "coprime"),
            (1, 3, None, ">= 2"),
            (5, 3, [1, 0, 1], "coefficients"),
            (5, 3, [0, 1, 0, 1], "y divides"),
            (5, 3, [1, 1, 0, 0], "x divides"),
            (5, 3, [1, -2, 1, 0], "x divides"),
            (5, 2, [1, 2, 1], "squarefree"),
        ],
    )
    def test_bpq_validation(self, p, q, h, msg):
        with pytest.raises(ValueError, match=msg):
            SurfaceSpec.bpq(p, q, h)

    def test_named_families(self):
        assert SurfaceSpec.e7().equation == parse_poly("x^2 + y^3 + y*z^3")
        assert SurfaceSpec.dn(4).equation == parse_poly("x^2 + z*y^2 + z^3")
        with pytest.raises(ValueError):
            SurfaceSpec.dn(3)
        assert SurfaceSpec.custom("x^2+y^2+z^2").family == "custom"


class TestExceptionalRays:
    def test_b53(self):
        assert exceptional_rays(SurfaceSpec.bpq(5, 3)) == [((1, 1, 1), 3), ((3, 3, 2), 3), ((5, 5, 3), 1)]

    def test_e6(self):
        rays = dict(exceptional_rays(SurfaceSpec.e6()))
        assert rays == {(2, 2, 1): 2, (4, 3, 2): 2, (3, 2, 2): 1, (6, 4, 3): 1}
        assert sum(rays.values()) == 6

    def test_d4(self):
        assert dict(exceptional_rays(SurfaceSpec.dn(4))) == {(2, 1, 2): 1, (2, 1, 1): 2, (3, 2, 2): 1}

    def test_degenerate_rejected(self):
        with pytest.raises(ValueError, match="degenerate"):
            exceptional_rays(SurfaceSpec.custom("z^2 - 2*x*z + x^2 + y^3"))


class TestDualGraph:
    def test_b73_star(self):
        g = essential_divisors(SurfaceSpec.bpq(7, 3))
        assert g.total_curves == 7
        centre = g.nodes[0]
        assert centre.ray == (7, 7, 3) and centre.weight == -1 and not centre.essential
        [branch] = g.branches()
        assert [n.weight for n in branch] == [-4, -2]
        assert all(n.copies == 3 and n.essential for n in branch)
        verts, edges = g.expanded()
        assert len(verts) == 7 and len(edges) == 6
        assert sum(1 for e in edges if 0 in e) == 3

    def test_b53_all_essential(self):
        g = essential_divisors(SurfaceSpec.bpq(5, 3))
        assert all(n.essential for n in g.nodes)
        assert g.nodes[0].weight is None

    def test_d4_shape(self):
        verts, edges = dual_graph(SurfaceSpec.dn(4)).expanded()
        assert [w for _, w, _ in verts] == [-2] * 4
        assert sorted(edges) == [(0, 1), (0, 2), (0, 3)]

    def test_e6_shape(self):
        g = dual_graph(SurfaceSpec.e6())
        verts, _ = g.expanded()
        assert len(verts) == 6 and {w for _, w, _ in verts} == {-2}
        lengths = sorted(len(b) * b[0].copies for b in g.branches())
        assert lengths == [1, 4]  # one arm of length 1, two arms of length 2 folded into copies

    def test_custom_needs_star(self):
        with pytest.raises(ValueError, match="star-shaped inputs only"):
            dual_graph(SurfaceSpec.custom("x^5 + y^5 + z^5 + x*y*z"))  # three interior facets

    @given(coprime_pairs)
    def test_branch_weights_match_fraction(self, pq):
        p, q = pq
        assume(p > q)
        g = dual_graph(SurfaceSpec.bpq(p, q))
        [branch] = g.branches()
        ms = [-n.weight for n in reversed(branch)]
        assert hj_eval(ms) == Fraction(p, p - q)
        assert all(m >= 2 for m in ms)
        assert branch[0].copies == q
        # chain relation through the centre and out to e3
        rays = [(0, 0, 1)] + [n.ray for n in reversed(branch)] + [(p, p, q)]
        for (u0, u1, u2), m in zip(zip(rays, rays[1:], rays[2:]), ms):
            assert add(u0, u2) == scale(m, u1)

    @given(coprime_pairs)
    def test_essential_iff_p_one_mod_q(self, pq):
        p, q = pq
        g = essential_divisors(SurfaceSpec.bpq(p, q))
        assert any(not n.essential for n in g.nodes) == (p % q == 1)

    @pytest.mark.parametrize("n", range(4, 13))
    def test_dn_total(self, n):
        assert dual_graph(SurfaceSpec.dn(n)).total_curves == n

    def test_nq_plus_one_total(self):
        for q in range(3, 6):
            for n in range(1, 4):
                assert dual_graph(SurfaceSpec.bpq(n * q + 1, q)).total_curves == n * q + 1


class TestMuCandidates:
    def test_e6(self):
        assert mu_candidates(SurfaceSpec.e6()) == {(2, 2, 1), (3, 2, 2), (4, 3, 2), (6, 4, 3)}

    def test_e7(self):
        assert mu_candidates(SurfaceSpec.e7()) == {(3, 2, 2), (6, 4, 3), (9, 6, 4), (7, 5, 3), (5, 4, 2), (3, 3, 1), (5, 3, 2)}

    def test_d5(self):
        assert mu_candidates(SurfaceSpec.dn(5)) == {(2, 2, 1), (4, 3, 2), (2, 1, 2), (3, 2, 2)}

    def test_custom_rejected(self):
        with pytest.raises(ValueError, match="built-in families"):
            mu_candidates(SurfaceSpec.custom("x^2 + y^3 + z^5"))

    @pytest.mark.parametrize(
        "spec",
        [SurfaceSpec.bpq(5, 3), SurfaceSpec.bpq(11, 4), SurfaceSpec.e6(), SurfaceSpec.e7(), SurfaceSpec.dn(6), SurfaceSpec.dn(9)],
        ids=lambda s: s.name,
    )
    def test_inside_exceptional_rays(self, spec):
        rays = {r for r, _ in exceptional_rays(spec)}
        mus = mu_candidates(spec)
        assert mus <= rays
        assert all(min(m) > 0 for m in mus)


class TestChart3:
    def test_examples(self):
        assert strict_transform_chart3(parse_poly("z^5 + x^3 + y^3")) == parse_poly("z^2 + x^3 + y^3")
        assert chart3_iterates(SurfaceSpec.bpq(7, 3), 2)[-1] == parse_poly("z + x^3 + y^3")
        assert strict_transform_chart3(parse_poly("x")) == parse_poly("x")

    def test_unit_rejected(self):
        with pytest.raises(ValueError):
            strict_transform_chart3(parse_poly("1 + x"))

    @given(st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)).filter(any), st.integers(1, 5), min_size=1, max_size=5))
    def test_matches_substitution(self, terms):
        g = SupportPoly(terms)
        x, y, z = (SupportPoly.monomial(e) for e in [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        pulled = SupportPoly({})
        for (a, b, c), k in g.terms.items():
            pulled = pulled + (x * z) ** a * (y * z) ** b * z**c * k
        m = min(e[2] for e in pulled.terms)
        assert strict_transform_chart3(g) * z**m == pulled


class TestConstellation:
    def test_r_one(self):
        c = constellation(7, 3)
        assert (c.n, c.r, c.fiber_curves, c.chain_length) == (2, 1, 6, 1)
        assert c.code == "Q_1 = Q_0(3)"

    def test_residual(self):
        c = constellation(8, 3)
        assert (c.n, c.r, c.residual, c.fiber_curves) == (2, 2, (2, 3), None)

    def test_small(self):
        c = constellation(5, 3)
        assert (c.n, c.r, c.code) == (1, 2, "")

    def test_long_code(self):
        assert constellation(13, 4).code == "Q_1 = Q_0(3), Q_2 = Q_0(33)"

    @pytest.mark.parametrize("p,q", [(3, 5), (4, 2), (5, 2)])
    def test_rejects(self, p, q):
        with pytest.raises(ValueError):
            constellation(p, q)
