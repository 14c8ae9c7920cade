"""Aggregation models on the integer lattice and their boundary measures.

The package grows clusters site by site (Eden, diffusion-limited, ballistic),
estimates the single-step attachment distributions those models induce on the
outer boundary, and fits radial growth statistics of the resulting records.
"""

from . import analysis, geometry, io, lattice, measures, models, streams
from .analysis import (
    BeurlingScan,
    BoundAudit,
    BoundCheck,
    ExponentFit,
    GrowthRecord,
    KestenCheck,
    beurling_scan,
    bound_audit,
    growth_exponent,
    kesten_bound_check,
    reference_dimensions,
    waiting_times,
)
from .errors import (
    ClusterFileError,
    LatticeAggError,
    SamplingError,
    SimulationError,
)
from .geometry import (
    DirectedLine,
    Traversal,
    crofton_constant,
    enclosing_ball,
    half_perimeter,
    sample_direction,
    sample_isotropic_line,
    sample_line_hitting_ball,
    traverse,
    unit_ball_volume,
)
from .lattice import (
    Cluster,
    is_connected,
    neighbors,
    outer_boundary,
    points_diameter,
    site_norm,
)
from .measures import (
    MeasureEstimate,
    ballistic_measure_mc,
    ballistic_measure_quadrature_2d,
    eden_measure,
    harmonic_measure_mc,
    line_outcome_weights,
    max_mass,
)
from .models import MODEL_KINDS, ModelConfig, run_simulation

__version__ = "0.1.0"

__all__ = [
    "BeurlingScan",
    "BoundAudit",
    "BoundCheck",
    "Cluster",
    "ClusterFileError",
    "DirectedLine",
    "ExponentFit",
    "GrowthRecord",
    "KestenCheck",
    "LatticeAggError",
    "MODEL_KINDS",
    "MeasureEstimate",
    "ModelConfig",
    "SamplingError",
    "SimulationError",
    "Traversal",
    "analysis",
    "ballistic_measure_mc",
    "ballistic_measure_quadrature_2d",
    "beurling_scan",
    "bound_audit",
    "crofton_constant",
    "eden_measure",
    "enclosing_ball",
    "geometry",
    "growth_exponent",
    "half_perimeter",
    "harmonic_measure_mc",
    "io",
    "is_connected",
    "kesten_bound_check",
    "lattice",
    "line_outcome_weights",
    "max_mass",
    "measures",
    "models",
    "neighbors",
    "outer_boundary",
    "points_diameter",
    "reference_dimensions",
    "run_simulation",
    "sample_direction",
    "sample_isotropic_line",
    "sample_line_hitting_ball",
    "site_norm",
    "streams",
    "traverse",
    "unit_ball_volume",
    "waiting_times",
]
