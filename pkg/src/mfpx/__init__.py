"""Exact mixed fiber polytopes and Newton polytopes of eliminants."""

from .errors import (
    ConfigDegenerate,
    EmptyPolynomial,
    MFPError,
    NonIntegralResult,
    OracleInconsistent,
    ParseError,
    RetriesExhausted,
    TieUnresolved,
    UnknownVariable,
)
from .geometry import Polytope, count_lattice_points, dual_description
from .oracle import PerturbedCovector, ProjectionSplit, fiber_reduce, mfp_support_value, mfp_vertex
from .reconstruction import MFPOracle, PolytopeOracle, detect_affine_hull, reconstruct
from .subdivision import (
    Cell,
    PointConfiguration,
    Subdivision,
    WeightVector,
    coherent_subdivision,
    fine_mixed_refinement,
    is_valid_subdivision,
)
from .verification import minkowski_integral_vertex, mfp_vertex_reference

__version__ = "0.1.0"
