"""Support/radial oracles for convex and star bodies, planar shadows,
rotation fitting, and the verification pipelines built on them.

The package answers questions of the form "does every planar shadow of one
body fit, after a rotation inside its plane, into the matching shadow of
another body, and does the whole body follow suit?" with numeric
certificates at explicit tolerances.  Hot kernels run on a compiled
backend when available; set SHADOWFIT_PURE=1 to force the numpy reference
implementation and SHADOWFIT_THREADS to enable worker parallelism.
"""

from ._kernels import BACKEND as kernel_backend
from .bodies import (
    Ball,
    BodySpec,
    BumpSphere,
    ConvexBody,
    Cylinder,
    DilatedBody,
    DoubleCone,
    PolarOf,
    RotatedBody,
    StarBody,
    apply_rotation,
    convex_body,
    diameter_directions,
    dilate,
    format_body_spec,
    parse_body_spec,
    polar,
    radial,
    radial_lipschitz_bound,
    spec_dim,
    star_body,
    support,
    width,
)
from .casestudies import (
    BumpParams,
    CaseReport,
    CriticalAngles,
    build_bump_bodies,
    convexity_check,
    critical_angles,
    crosscheck_critical_angles,
    lune_width,
    quarter_tilt_check,
    rim_escape_witness,
    simplex_directions,
    strategy_margin,
    verify_bump_case,
    verify_cylinder_cone,
)
from .errors import (
    ConvexityFailure,
    DegenerateConfig,
    DomainError,
    HypothesisFailed,
    KindMismatch,
    NonConvexSupport,
    ShadowfitError,
    UnsupportedDimension,
    ZeroVector,
)
from .fitting import (
    FitConfig,
    FitResult,
    best_rotation_fit,
    congruent_up_to_rotation,
    containment_margin,
    refined_containment_margin,
    so3_fit_search,
)
from .geom import (
    PlaneFrame,
    Rotation,
    SphereGrid,
    frame_for,
    random_rotations,
    sphere_grid,
    sphere_surface_area,
    unit,
)
from .integrals import (
    VolumeReport,
    averaged_section_power,
    constant_width_check,
    kink_cosines,
    mean_support,
    surface_area_cauchy,
    volume,
    volume_comparison_report,
    volume_grid,
)
from .shadows import (
    Shadow2D,
    cone_section_rho,
    cone_tilt_section,
    cylinder_section_rho,
    cylinder_tilt_section,
    projection_shadow,
    rotated_shadow,
    section_shadow,
    shadow_area,
    tilted_frame,
    u0,
)

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "BodySpec",
    "BumpParams",
    "BumpSphere",
    "CaseReport",
    "ConvexBody",
    "ConvexityFailure",
    "CriticalAngles",
    "Cylinder",
    "DegenerateConfig",
    "DilatedBody",
    "DomainError",
    "DoubleCone",
    "FitConfig",
    "FitResult",
    "HypothesisFailed",
    "KindMismatch",
    "NonConvexSupport",
    "PlaneFrame",
    "PolarOf",
    "RotatedBody",
    "Rotation",
    "Shadow2D",
    "ShadowfitError",
    "SphereGrid",
    "StarBody",
    "UnsupportedDimension",
    "VolumeReport",
    "ZeroVector",
    "apply_rotation",
    "averaged_section_power",
    "best_rotation_fit",
    "build_bump_bodies",
    "cone_section_rho",
    "cone_tilt_section",
    "congruent_up_to_rotation",
    "constant_width_check",
    "containment_margin",
    "convex_body",
    "convexity_check",
    "critical_angles",
    "crosscheck_critical_angles",
    "cylinder_section_rho",
    "cylinder_tilt_section",
    "diameter_directions",
    "dilate",
    "format_body_spec",
    "frame_for",
    "kernel_backend",
    "kink_cosines",
    "lune_width",
    "mean_support",
    "parse_body_spec",
    "polar",
    "projection_shadow",
    "quarter_tilt_check",
    "radial",
    "radial_lipschitz_bound",
    "random_rotations",
    "refined_containment_margin",
    "rim_escape_witness",
    "rotated_shadow",
    "section_shadow",
    "shadow_area",
    "simplex_directions",
    "so3_fit_search",
    "spec_dim",
    "sphere_grid",
    "sphere_surface_area",
    "star_body",
    "strategy_margin",
    "support",
    "surface_area_cauchy",
    "tilted_frame",
    "u0",
    "unit",
    "verify_bump_case",
    "verify_cylinder_cone",
    "volume",
    "volume_comparison_report",
    "volume_grid",
    "width",
]
