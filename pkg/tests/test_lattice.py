from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from toricres.lattice import (
    Cone,
    ContinuedFraction,
    chain_multiplicities,
    cone_hj_data,
    cross,
    cyclic_order,
    det2,
    gcd_all,
    hilbert_basis,
    hilbert_basis_2d,
    hilbert_basis_3d,
    hj_eval,
    hj_expand,
    hnf_rows,
    is_regular,
    plane_lattice_basis,
    primitive,
)
from toricres.oracles import hilbert_basis_bruteforce

E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


class TestCone:
    def test_rejects_non_primitive_ray(self):
        with pytest.raises(ValueError, match="primitive"):
            Cone(((2, 0, 0), E2))

    def test_rejects_proportional_rays(self):
        with pytest.raises(ValueError, match="proportional"):
            Cone((E1, (1, 0, 0)))

    def test_rejects_redundant_ray(self):
        with pytest.raises(ValueError, match="extremal"):
            Cone((E1, E2, E3, (1, 1, 1)))

    def test_rejects_unordered_quadrilateral(self):
        with pytest.raises(ValueError, match="cyclic"):
            Cone((E2, (1, 0, 2), E3, (3, 2, 2)))

    def test_dimensions(self):
        assert Cone((E1,)).intrinsic_dim == 1
        assert Cone((E1, E2)).intrinsic_dim == 2
        c = Cone((E1, E2, E3))
        assert c.intrinsic_dim == 3 and c.is_simplicial

    def test_contains(self):
        w = Cone((E3, (5, 5, 3)))
        assert w.contains((1, 1, 1))
        assert not w.contains((1, 0, 1))
        assert not w.contains((-1, -1, -1))
        c = Cone((E1, E2, E3))
        assert c.contains((0, 0, 0)) and not c.contains_in_interior((1, 0, 1))


def test_cyclic_order_sorts_quadrilateral():
    rays = cyclic_order([E2, E3, (1, 0, 2), (3, 2, 2)])
    Cone(tuple(rays))  # valid order


def test_hnf_of_kernel_generators():
    assert hnf_rows([(1, -1, 0), (0, 0, -1), (0, 0, 1)]) == [(1, -1, 0), (0, 0, 1)]


class TestPlaneBasis:
    def test_example_from_wall(self):
        basis, coords = plane_lattice_basis(Cone((E3, (5, 5, 3))))
        assert basis == ((1, 1, 0), (0, 0, 1))
        assert coords == ((0, 1), (5, 3))

    @given(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6))
    def test_basis_spans_saturation(self, a, b, c, d, e, f):
        u, v = (a, b, c), (d, e, f)
        assume(any(u) and any(v) and any(cross(u, v)))
        cone = Cone((primitive(u), primitive(v)))
        (b1, b2), _ = plane_lattice_basis(cone)
        # the basis has primitive cross product, so it spans every lattice point of the plane
        assert gcd_all(cross(b1, b2)) == 1
        assert primitive(cross(b1, b2)) in (primitive(cross(u, v)), tuple(-x for x in primitive(cross(u, v))))


class TestRegularity:
    @pytest.mark.parametrize("p,q", [(5, 3), (7, 3), (7, 4), (11, 7)])
    def test_side_walls_regular(self, p, q):
        assert is_regular(Cone((E1, (p, p, q))))
        assert is_regular(Cone((E2, (p, p, q))))

    def test_non_regular_wall(self):
        assert not is_regular(Cone((E3, (5, 5, 3))))

    def test_3d(self):
        assert is_regular(Cone((E1, E2, E3)))
        assert not is_regular(Cone((E1, E2, (1, 1, 2))))


class TestHilbert2D:
    def test_b53_wall(self):
        assert hilbert_basis_2d(Cone((E3, (5, 5, 3)))) == [E3, (1, 1, 1), (3, 3, 2), (5, 5, 3)]

    def test_e7_wall_chain(self):
        assert hilbert_basis_2d(Cone(((1, 2, 0), (9, 6, 4)))) == [(1, 2, 0), (3, 3, 1), (5, 4, 2), (7, 5, 3), (9, 6, 4)]

    def test_plane_cone(self):
        assert hilbert_basis_2d(Cone(((0, 1), (5, 3)))) == [(0, 1), (1, 1), (3, 2), (5, 3)]

    def test_chain_multiplicities(self):
        chain = hilbert_basis_2d(Cone((E3, (7, 7, 3))))
        assert chain_multiplicities(chain) == [2, 4]
        assert cone_hj_data(Cone((E3, (7, 7, 3)))) == (7, 4)

    def test_regular_cone_has_no_interior(self):
        assert hilbert_basis_2d(Cone((E1, (5, 5, 3)))) == [E1, (5, 5, 3)]

    @given(st.integers(1, 15), st.integers(0, 14), st.integers(1, 15))
    def test_matches_bruteforce_and_hj(self, a, b, c):
        assume(b < a and gcd(a, b) == 1)
        cone = Cone((E3, primitive((a, b, c))))
        chain = hilbert_basis_2d(cone)
        assert set(chain) == hilbert_basis_bruteforce(cone)
        assert chain[0] == cone.rays[0] and chain[-1] == cone.rays[1]
        if len(chain) > 2:
            d, k = cone_hj_data(cone)
            assert chain_multiplicities(chain) == list(hj_expand(d, k).terms)
        # consecutive members span unimodular cones
        for u, v in zip(chain, chain[1:]):
            assert is_regular(Cone((u, v)))

    @given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9))
    def test_planar_chain_regular_steps(self, a, b, c, d):
        assume(det2((a, b), (c, d)) != 0 and gcd(a, b) == 1 and gcd(c, d) == 1)
        chain = hilbert_basis_2d(Cone(((a, b), (c, d))))
        for u, v in zip(chain, chain[1:]):
            assert abs(det2(u, v)) == 1


class TestHilbert3D:
    def test_simplicial_example(self):
        c = Cone((E1, E2, (1, 1, 2)))
        assert set(hilbert_basis_3d(c)) == {E1, E2, (1, 1, 1), (1, 1, 2)}

    def test_non_simplicial_needs_triangulation(self):
        c = Cone(tuple(cyclic_order([E2, E3, (1, 0, 2), (3, 2, 2)])))
        with pytest.raises(ValueError, match="triangulate"):
            hilbert_basis_3d(c)
        assert set(hilbert_basis(c)) == hilbert_basis_bruteforce(c)

    @given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)), min_size=3, max_size=3))
    def test_matches_bruteforce(self, rays):
        rays = [primitive(r) for r in rays if any(r)]
        assume(len(rays) == 3)
        try:
            c = Cone(tuple(rays))
        except ValueError:
            assume(False)
        assume(c.intrinsic_dim == 3)
        assert set(hilbert_basis(c)) == hilbert_basis_bruteforce(c)


class TestContinuedFractions:
    def test_example(self):
        assert str(hj_expand(7, 4)) == "[2, 4]"
        assert hj_expand(5, 2).terms == (3, 2)

    def test_rejects_short_terms(self):
        with pytest.raises(ValueError):
            ContinuedFraction((1, 3))
        with pytest.raises(ValueError):
            hj_expand(4, 2)
        with pytest.raises(ValueError):
            hj_expand(3, 5)

    @given(st.integers(2, 300), st.integers(1, 299))
    def test_round_trip(self, a, b):
        assume(b < a and gcd(a, b) == 1)
        cf = hj_expand(a, b)
        assert hj_eval(cf) == Fraction(a, b)
        assert all(m >= 2 for m in cf)

    @pytest.mark.parametrize("q", range(3, 8))
    @pytest.mark.parametrize("n", range(1, 6))
    def test_nq_plus_one_shape(self, n, q):
        p = n * q + 1
        assert hj_expand(p, p - q).terms == (2,) * (n - 1) + (q + 1,)
