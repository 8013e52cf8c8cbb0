"""polymax: maximum modulus of a complex polynomial over the unit disc.

A local maximum of |p| on the disc is exactly a point on the unit circle
pointing along its own Newton direction p/p'.  This package certifies such
points, finds them by fixed-point and Pseudo-Newton iterations backed by a
boundary scan, and renders the iterations' basins of attraction.
"""

from .poly import (
    ParseError,
    Polynomial,
    boundary_modulus,
    derivative,
    eval_derivatives,
    eval_poly,
    parse_complex,
    parse_polynomial,
    render_polynomial,
)
from .geometry import (
    DirectionClass,
    ModulusCone,
    OracleVerdict,
    classify_direction,
    compute_cone,
    sampled_direction_oracle,
)
from .stationarity import (
    SingularityError,
    SingularReason,
    StationarityCertificate,
    StepOutcome,
    basic_family_step,
    certify,
    fixed_point_map,
    newton_ratio,
    pseudo_newton_step,
    pseudo_polynomial,
    residual,
)
from .roots import RootSet, critical_points, find_roots
from .solver import (
    Method,
    NoCandidatesError,
    NormOptions,
    NormReport,
    OrbitOutcome,
    OrbitTrace,
    basic_family_orbit,
    bernstein_check,
    boundary_scan,
    compute_norm,
    dense_scan_oracle,
    fixed_point_orbit,
    golden_section_max,
    pseudo_newton_orbit,
)
from .basins import BasinImage, GridSpec, default_palette, render_basins, write_ppm

__version__ = "0.1.0"

__all__ = [
    "BasinImage", "DirectionClass", "GridSpec", "Method", "ModulusCone",
    "NoCandidatesError", "NormOptions", "NormReport", "OracleVerdict",
    "OrbitOutcome", "OrbitTrace", "ParseError", "Polynomial", "RootSet",
    "SingularReason", "SingularityError", "StationarityCertificate",
    "StepOutcome", "basic_family_orbit", "basic_family_step",
    "bernstein_check", "boundary_modulus", "boundary_scan", "certify",
    "classify_direction", "compute_cone", "compute_norm", "critical_points",
    "default_palette", "dense_scan_oracle", "derivative", "eval_derivatives",
    "eval_poly", "find_roots", "fixed_point_map", "fixed_point_orbit",
    "golden_section_max", "newton_ratio", "parse_complex", "parse_polynomial",
    "pseudo_newton_orbit", "pseudo_newton_step", "pseudo_polynomial",
    "render_basins", "render_polynomial", "residual", "sampled_direction_oracle",
    "write_ppm",
]
