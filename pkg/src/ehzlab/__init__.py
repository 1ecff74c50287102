"""Exact capacity of convex polytopes, feedback arc sets of bipartite
tournaments, and the reduction connecting them."""

from .capacity import (
    CapacityResult,
    WeightMatrix,
    capacity_at_uniform_multiplier,
    capacity_simplex,
    capacity_upper_bound,
    decide_capacity_leq,
    max_order_sum,
    order_sum,
    symplectic_form,
    symplectic_matrix,
    weight_matrix,
    weighted_order_sum,
)
from .digraph import (
    ArcFamily,
    BipartiteTournament,
    DirectedMultigraph,
    arc_family,
    degree_profile,
    digraph,
    eliminate_extra_vertex,
    family_within,
    format_graph,
    format_tournament,
    induced_family,
    is_acyclic,
    is_eulerian,
    max_acyclic_value,
    min_fas,
    parse_graph,
    parse_tournament,
    reachable_set,
    reverse,
    topological_order,
    tournament_digraph,
)
from .errors import (
    CertificateMismatch,
    EhzlabError,
    EmptyFeasibleSet,
    GoldenMismatch,
    HasCycle,
    InnerMaxNonpositive,
    LimitExceeded,
    NoFeasibleMultiplier,
    NonIntegerWeight,
    NoPositiveValueFound,
    NotSimplex,
    ParityViolation,
    ParseError,
    PreconditionViolated,
    RankNotRestored,
    RoundingIdentityViolated,
    SolverError,
    TooManyVertices,
)
from .ordering import best_ordering, cyclic_class, triangular_sum
from .polytope import (
    HPolytope,
    SimplexCertificate,
    certify_simplex,
    check_multiplier,
    format_polytope,
    hpolytope,
    is_bounded_certified,
    multiplier_vertices,
    parse_polytope,
)
from .ratlinalg import format_rational, parse_rational
from .reduction import (
    FasResult,
    ReductionBundle,
    build_S,
    build_auxiliary,
    build_bundle,
    build_frame,
    build_simplex,
    default_epsilon,
    master_formula,
    perturb,
    rounding_bridge,
    solve_fas_via_capacity,
    verify_rounding_identity,
)
from .rng import SplitMix64, random_tournament

__version__ = "0.1.0"

__all__ = [
    "ArcFamily",
    "BipartiteTournament",
    "CapacityResult",
    "CertificateMismatch",
    "DirectedMultigraph",
    "EhzlabError",
    "EmptyFeasibleSet",
    "FasResult",
    "GoldenMismatch",
    "HPolytope",
    "HasCycle",
    "InnerMaxNonpositive",
    "LimitExceeded",
    "NoFeasibleMultiplier",
    "NoPositiveValueFound",
    "NonIntegerWeight",
    "NotSimplex",
    "ParityViolation",
    "ParseError",
    "PreconditionViolated",
    "RankNotRestored",
    "ReductionBundle",
    "RoundingIdentityViolated",
    "SimplexCertificate",
    "SolverError",
    "SplitMix64",
    "TooManyVertices",
    "WeightMatrix",
    "arc_family",
    "best_ordering",
    "build_S",
    "build_auxiliary",
    "build_bundle",
    "build_frame",
    "build_simplex",
    "capacity_at_uniform_multiplier",
    "capacity_simplex",
    "capacity_upper_bound",
    "certify_simplex",
    "check_multiplier",
    "cyclic_class",
    "decide_capacity_leq",
    "default_epsilon",
    "degree_profile",
    "digraph",
    "eliminate_extra_vertex",
    "family_within",
    "format_graph",
    "format_polytope",
    "format_rational",
    "format_tournament",
    "hpolytope",
    "induced_family",
    "is_acyclic",
    "is_bounded_certified",
    "is_eulerian",
    "master_formula",
    "max_acyclic_value",
    "max_order_sum",
    "min_fas",
    "multiplier_vertices",
    "order_sum",
    "parse_graph",
    "parse_polytope",
    "parse_rational",
    "parse_tournament",
    "perturb",
    "random_tournament",
    "reachable_set",
    "reverse",
    "rounding_bridge",
    "solve_fas_via_capacity",
    "symplectic_form",
    "symplectic_matrix",
    "topological_order",
    "tournament_digraph",
    "triangular_sum",
    "verify_rounding_identity",
    "weight_matrix",
    "weighted_order_sum",
]
