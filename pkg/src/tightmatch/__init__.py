"""Toolkit for 2-edge-coloured k-uniform hypergraphs: components, density
cleaning, blueprints, tightly connected matchings, exact constrained
fractional matchings, and extremal-colouring certificates."""

from .errors import (
    ContractError,
    ParameterError,
    ParseError,
    ReductionFailed,
    VerificationFailure,
)
from .hypercore import (
    Colour,
    ColouredKGraph,
    EdgeSubset,
    TightComponent,
    canonical_edge,
    component_of,
    degree,
    delete_vertices,
    induced_subgraph,
    link,
    loose_components,
    shadow,
    swap_colours,
    tight_components,
    tight_walk,
)
from .density import (
    CascadeReport,
    ConsequencesReport,
    DensityParams,
    DensityReport,
    assert_dense_consequences,
    cascade_clean,
    dense_subgraph,
    is_dense,
)
from .blueprint import (
    Blueprint,
    PlusGraph,
    audit_bp1,
    audit_bp2,
    build_blueprint,
    find_bridge,
    mono_spanning_subgraph,
    plus_graph,
    reduce_components,
    shadow_pivot,
)
from .matching import (
    Matching,
    MatchingBundle,
    PipelineParams,
    PipelineTrace,
    Violation,
    four_matchings_k5,
    greedy_component_matching,
    two_matchings_k4,
    verify_bundle,
    verify_matching,
)
from .fracmatch import (
    FractionalMatching,
    MuResult,
    max_constrained_fractional_matching,
    mu_any,
    mu_red_blue,
    support_enumeration_optimum,
)
from .extremal import (
    CycleWitness,
    HypothesisError,
    PartitionCertificate,
    extremal_colouring,
    extremal_structure,
    naive_two_cycle_partition,
    parity_colouring,
    partition_inequality_check,
    recognize_extremal,
    tight_cycle_on,
    verify_two_cycle_partition,
)
from .generate import RandomModel, random_colouring, random_path_cycle_instance
from .experiment import ExperimentConfig, run_experiment
from . import serialize

__version__ = "0.1.0"
