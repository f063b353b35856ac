"""Geometric constants of finite-dimensional normed planes.

Norm families and unit-sphere sampling (:mod:`banachgeo.spaces`),
orthogonality relations (:mod:`banachgeo.orthogonality`), classical
moduli (:mod:`banachgeo.moduli`), the weighted Dunkl-Williams constant
family (:mod:`banachgeo.dw`), and a verification harness with CLI
(:mod:`banachgeo.harness`, ``banachgeo`` script).
"""

from .spaces import (
    Space,
    Lp,
    XMu,
    Polyhedral,
    MaxOf,
    UnitVector,
    SpaceError,
    DimensionError,
    as_vector,
    norm_eval,
    unit_vector,
    sphere_grid,
)
from .orthogonality import (
    OrthTolerance,
    angular_distance,
    min_along_line,
    is_birkhoff,
    is_isosceles,
    is_singer,
    birkhoff_partners,
    isosceles_radii,
)
from .moduli import (
    ConstantEstimate,
    delta,
    eps0,
    james_direct,
    james_via_delta,
    rho,
    rho_prime0,
    rect_constant,
)
from .dw import (
    Weights,
    DwResult,
    dw_objective,
    ms_objective,
    tform_objective,
    dw_general,
    dw_direct,
    dw_b,
    dw_b_direct,
    dw_s,
    dw_i,
    ms_b,
    psi_inf,
)
from .harness import (
    SpecError,
    parse_space_spec,
    space_to_spec,
    VerificationReport,
    Check,
    SweepRow,
    run_verify,
    sweep_mu,
    emit_report,
)

__version__ = "0.1.0"
