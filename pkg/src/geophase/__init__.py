"""Coherent-state phases, symplectic areas and 2-cocycles on complex Grassmannians."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .grassmann import (
    GrassmannPoint,
    GroupElement,
    ManifoldSpec,
    TangentParam,
    act,
    b_to_z,
    compose_points,
    geodesic,
    geodesic_from_origin,
    pair_valid,
    random_group_element,
    random_point,
    section,
    z_to_b,
)
from .phases import (
    chordal_distance,
    kernel,
    normalized_overlap_phase,
    omega_at,
    triangle_area_closed,
    triangle_area_quadrature,
)
from .cocycles import (
    automorphy_J,
    block_product,
    cocycle_triple_report,
    dupont_cocycle,
    gauss_alpha,
    gauss_u,
    gw_cocycle,
    multiplicative_phase,
    phase_report,
)
from .rankone import RankOnePoint, rank1_area, rank1_phase
