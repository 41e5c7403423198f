"""Space-filling parametrizations of graph-directed self-affine sets."""

from .addressing import (
    BoundaryData,
    ChainReport,
    check_chain_condition,
    head_tail,
    highest_walk,
    lowest_walk,
    project,
)
from .corpus import builtin, builtin_path
from .export import export_curve
from .parametrize import (
    CurveApproximation,
    HolderEstimate,
    Parametrization,
    holder_constant_bound,
)
from .pseudonorm import (
    PseudoNormEvaluator,
    comparability_check,
    omega_diameter,
    pseudo_norm,
    pseudo_norm_evaluator,
    quasi_triangle_beta,
)
from .recording import RecordingSystem, address_of, address_pair, build_recording
from .specfile import expand_substitution, parse_spec, spec_dict, write_spec
from .spectral import (
    PerronData,
    build_perron_data,
    cylinder_measure,
    dimension,
    markov_weights,
    perron,
)
from .system import (
    Edge,
    OrderedGifs,
    Walk,
    associated_matrix,
    build_gifs,
    enumerate_walks,
    is_primitive,
    walk_affine_map,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryData", "ChainReport", "CurveApproximation", "Edge",
    "HolderEstimate", "OrderedGifs", "Parametrization", "PerronData",
    "PseudoNormEvaluator", "RecordingSystem", "Walk",
    "address_of", "address_pair", "associated_matrix", "build_gifs",
    "build_perron_data", "build_recording", "builtin", "builtin_path",
    "check_chain_condition", "comparability_check", "cylinder_measure",
    "dimension", "enumerate_walks", "expand_substitution", "export_curve",
    "head_tail", "highest_walk", "holder_constant_bound", "is_primitive",
    "lowest_walk", "markov_weights", "omega_diameter", "parse_spec",
    "perron", "project", "pseudo_norm", "pseudo_norm_evaluator",
    "quasi_triangle_beta", "spec_dict", "walk_affine_map", "write_spec",
]
