import pytest

from toricres.gsub import GSubdivision, GSubdivisionError, g_subdivide, subdivide_wall, verify_g_property
from toricres.lattice import Cone, det3
from toricres.newton import Fan, newton_fan
from toricres.poly import parse_poly
from toricres.resolution import SurfaceSpec

E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def test_subdivide_wall():
    assert subdivide_wall(Cone((E3, (5, 5, 3)))) == [
        Cone((E3, (1, 1, 1))),
        Cone(((1, 1, 1), (3, 3, 2))),
        Cone(((3, 3, 2), (5, 5, 3))),
    ]
    assert subdivide_wall(Cone((E1, (5, 5, 3)))) == [Cone((E1, (5, 5, 3)))]
    assert [c.rays[1] for c in subdivide_wall(Cone((E2, (6, 4, 3))))] == [(2, 2, 1), (4, 3, 2), (6, 4, 3)]
    with pytest.raises(ValueError):
        subdivide_wall(Cone((E1, E2, E3)))


def _skeleton_positive_rays(s: GSubdivision) -> set:
    return {r for r, home in s.ray_home.items() if len(home) <= 2 and min(r) > 0}


def test_bpq_refinement():
    s = g_subdivide(newton_fan(parse_poly("z^5 + x^3 + y^3")))
    assert verify_g_property(s) == []
    on_skeleton = {r for r, home in s.ray_home.items() if len(home) <= 2}
    assert on_skeleton == {E1, E2, E3, (1, 1, 1), (3, 3, 2), (5, 5, 3)}


def test_e6_skeleton_rays():
    s = g_subdivide(newton_fan(SurfaceSpec.e6().equation))
    assert verify_g_property(s) == []
    assert _skeleton_positive_rays(s) == {(2, 2, 1), (4, 3, 2), (3, 2, 2), (6, 4, 3)}


def test_regular_fan_is_unchanged():
    f = newton_fan(parse_poly("x + y + z"))
    s = g_subdivide(f)
    assert s.refined == f
    trivial = newton_fan(parse_poly("x^2"))
    assert g_subdivide(trivial).refined == trivial


def test_idempotent():
    s = g_subdivide(newton_fan(SurfaceSpec.e7().equation))
    again = g_subdivide(s.refined)
    assert again.refined == s.refined


@pytest.mark.parametrize(
    "spec",
    [SurfaceSpec.bpq(p, q) for p, q in [(5, 3), (7, 3), (19, 7), (20, 19), (20, 3), (3, 5), (2, 9)]]
    + [SurfaceSpec.e6(), SurfaceSpec.e7(), SurfaceSpec.dn(4), SurfaceSpec.dn(12)],
    ids=lambda s: s.name,
)
def test_families_verify(spec):
    s = g_subdivide(newton_fan(spec.equation))
    assert verify_g_property(s) == []
    assert all(abs(det3(*s.refined.cone(c).rays)) == 1 for c in s.refined.max_cones)


def test_detects_decomposable_ray():
    octant = newton_fan(parse_poly("x^2"))
    # (1, 1, 2) is not a minimal generator of the octant, and the pieces are not unimodular
    bad = Fan.from_cones([(E1, E2, (1, 1, 2)), (E2, E3, (1, 1, 2)), (E3, E1, (1, 1, 2))])
    report = verify_g_property(GSubdivision(octant, bad, {}))
    assert any("not in the Hilbert basis" in v for v in report)
    assert any("|det| = 2" in v for v in report)


def test_detects_missing_piece():
    octant = newton_fan(parse_poly("x^2"))
    partial = Fan.from_cones([(E1, E2, (1, 1, 1)), (E2, E3, (1, 1, 1))])
    report = verify_g_property(GSubdivision(octant, partial, {}))
    assert any("do not add up" in v for v in report)


def test_error_names_cone():
    err = GSubdivisionError("stuck", [E1, E2])
    assert err.cone == (E1, E2) and "stuck" in str(err)
