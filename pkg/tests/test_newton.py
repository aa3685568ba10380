import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toricres.lattice import Cone, dot
from toricres.newton import (
    PRIMES,
    dual_edge_length,
    face_poly,
    facet_normals,
    is_nondegenerate,
    newton_fan,
    newton_polyhedron,
    two_skeleton,
)
from toricres.poly import SupportPoly, parse_poly

E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


class TestPolyhedron:
    def test_bpq_single_facet(self):
        nb = newton_polyhedron(parse_poly("z^5 + x^3 + y^3"))
        assert set(nb.vertices) == {(3, 0, 0), (0, 3, 0), (0, 0, 5)}
        assert [f.normal for f in nb.facets] == [(5, 5, 3)]
        assert sorted(length for *_, length in nb.edges) == [1, 1, 3]

    def test_e6_normal(self):
        assert [f.normal for f in newton_polyhedron(parse_poly("x^2 + y^3 + z^4")).facets] == [(6, 4, 3)]

    def test_monomial(self):
        nb = newton_polyhedron(parse_poly("x^2"))
        assert nb.vertices == ((2, 0, 0),) and nb.edges == () and nb.facets == ()

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            newton_polyhedron(SupportPoly({}))


class TestFan:
    def test_b53(self):
        f = newton_fan(parse_poly("z^5 + x^3 + y^3"))
        assert set(f.rays) == {E1, E2, E3, (5, 5, 3)}
        assert len(f.max_cones) == 3
        assert len(two_skeleton(f)) == 6

    def test_e7(self):
        f = newton_fan(parse_poly("x^2 + y^3 + y*z^3"))
        assert set(f.rays) == {E1, E2, E3, (1, 2, 0), (9, 6, 4)}

    def test_d5(self):
        f = newton_fan(parse_poly("x^2 + z*y^2 + z^4"))
        assert set(f.rays) == {E1, E2, E3, (1, 0, 2), (4, 3, 2)}
        # one maximal cone is the quadrilateral at the vertex (0, 0, 4)
        assert sorted(len(c) for c in f.max_cones) == [3, 3, 4]

    def test_e6_wall(self):
        f = newton_fan(parse_poly("x^2 + y^3 + z^4"))
        assert Cone((E2, (6, 4, 3))) in two_skeleton(f)

    def test_trivial_fan(self):
        f = newton_fan(parse_poly("x^2"))
        assert f.max_cones == ((0, 1, 2),)
        assert len(two_skeleton(f)) == 3

    @pytest.mark.parametrize("text", ["z^5 + x^3 + y^3", "x^2 + y^3 + z^4", "x^2 + y^3 + y*z^3", "x^2 + z*y^2 + z^6", "x*y + y*z + z*x + x^5"])
    def test_cover_and_duality(self, text):
        g = parse_poly(text)
        f = newton_fan(g)
        cones = f.max_cone_objects()
        rng = random.Random(7)
        for _ in range(300):
            w = tuple(rng.randint(1, 40) for _ in range(3))
            homes = [c for c in cones if c.contains(w)]
            assert homes
            interior = [c for c in cones if c.contains_in_interior(w)]
            assert len(interior) <= 1
            if interior:
                # every interior weight of a cone sees the same vertex
                c = interior[0]
                assert face_poly(g, w) == face_poly(g, tuple(sum(r[k] for r in c.rays) for k in range(3)))

    def test_support_above_facets(self):
        rng = random.Random(3)
        for _ in range(40):
            pts = {tuple(rng.randint(0, 5) for _ in range(3)) for _ in range(rng.randint(1, 7))}
            g = SupportPoly({e: 1 for e in pts})
            for fct in newton_polyhedron(g).facets:
                assert all(dot(fct.normal, e) >= fct.value for e in pts)
            for n in facet_normals(g):
                assert min(n) >= 0


class TestFaces:
    @pytest.mark.parametrize(
        "w,expected",
        [((5, 5, 3), "z^5 + x^3 + y^3"), ((0, 0, 1), "x^3 + y^3")],
    )
    def test_bpq_faces(self, w, expected):
        assert face_poly(parse_poly("z^5 + x^3 + y^3"), w) == parse_poly(expected)

    def test_dn_face(self):
        assert face_poly(parse_poly("x^2 + z*y^2 + z^3"), (1, 0, 2)) == parse_poly("x^2 + z*y^2")

    def test_dual_edge_lengths(self):
        e6 = parse_poly("x^2 + y^3 + z^4")
        assert dual_edge_length(e6, E2, (6, 4, 3)) == 2
        assert dual_edge_length(e6, E1, (6, 4, 3)) == 1
        assert dual_edge_length(parse_poly("z^5 + x^3 + y^3"), E3, (5, 5, 3)) == 3
        assert dual_edge_length(e6, E1, E2) is None


class TestNondegeneracy:
    @pytest.mark.parametrize("text", ["z^5 + x^3 + y^3", "x^2 + y^3 + z^4", "x^2 + y^3 + y*z^3", "x^2 + z*y^2 + z^7", "z^7 + x^3 - 2*x*y^2 + y^3"])
    def test_yes(self, text):
        v = is_nondegenerate(parse_poly(text))
        assert v.status == "yes" and v

    def test_repeated_edge_factor(self):
        v = is_nondegenerate(parse_poly("z^2 - 2*x*z + x^2 + y^3"))
        assert v.status == "no"
        assert v.witness["face"] == "x^2 - 2*x*z + z^2"

    def test_facet_without_isolated_exponent(self):
        g = parse_poly("x^3 + y^3 + z^3 - 3*x*y*z")
        assert is_nondegenerate(g).status == "unknown"
        v = is_nondegenerate(g, "probabilistic")
        # singular at (1, 1, 1) on the torus; found for every prime
        assert v.status == "no"
        assert [h["p"] for h in v.witness["points"]] == list(PRIMES)

    def test_smooth_facet_stays_unknown(self):
        g = parse_poly("x^3 + y^3 + z^3 + 2*x*y*z")
        assert is_nondegenerate(g, "probabilistic").status == "unknown"

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            is_nondegenerate(parse_poly("x"), "fast")

    @given(st.integers(2, 12), st.integers(2, 12))
    def test_fermat_type_always_yes(self, p, q):
        g = SupportPoly({(0, 0, p): 1, (q, 0, 0): 1, (0, q, 0): Fraction(-1)})
        assert is_nondegenerate(g).status == "yes"
