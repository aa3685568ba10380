"""Exact toric resolution combinatorics for surface singularities.

Newton fans, Hilbert bases and G-regular subdivisions, resolution dual
graphs for z^p + h_q(x, y), E6, E7 and D_n, and the truncated-series and
lattice-hull tools used to study wedges on these surfaces.
"""

from .gsub import GSubdivision, GSubdivisionError, g_subdivide, subdivide_wall, verify_g_property
from .lattice import (
    Cone,
    ContinuedFraction,
    cone_hj_data,
    hilbert_basis,
    hilbert_basis_2d,
    hilbert_basis_3d,
    hj_eval,
    hj_expand,
    is_regular,
    plane_lattice_basis,
)
from .newton import Fan, dual_edge_length, face_poly, is_nondegenerate, newton_fan, newton_polyhedron, two_skeleton
from .poly import ParseError, SupportPoly, format_poly, parse_poly
from .resolution import (
    ConstellationCode,
    ResolutionGraph,
    SurfaceSpec,
    constellation,
    dual_graph,
    essential_divisors,
    exceptional_rays,
    mu_candidates,
    strict_transform_chart3,
)
from .series import OrderUndetermined, TruncSeries2, v_order, v_part
from .wedge import (
    GammaHull,
    Wedge,
    check_relation,
    eta_skeleton_check,
    gamma_hull,
    gamma_member,
    gamma_min,
    order_gap_bounds,
    wedge_orders,
)

__version__ = "0.1.0"
