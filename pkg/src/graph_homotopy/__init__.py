"""Homotopy theory of finite undirected graphs: exponential graphs, homotopies
of morphisms, folds and pleats, and the walk groupoid."""

from .errors import (
    EmptyGraphError,
    GraphError,
    InvalidFoldError,
    InvalidMapError,
    InvalidParameterError,
    MismatchError,
    NotMorphismError,
    ParseError,
    PreconditionError,
    SearchCancelled,
    TooLargeError,
    UnknownVertexError,
)
from .exponential import (
    ExponentialGraph,
    adjacent_homs,
    curry,
    enumerate_homs,
    exp_edge,
    hom_graph,
    postcompose,
    precompose,
    realize_exponential,
    uncurry,
)
from .graph import (
    Graph,
    Isomorphism,
    VertexMap,
    are_isomorphic,
    complete_graph,
    coproduct,
    cycle_graph,
    enumerate_graphs,
    graphs_on,
    identity_map,
    inclusion_map,
    induced_subgraph,
    is_morphism,
    looped_path_graph,
    neighborhood,
    path_graph,
    product,
    remove_vertex,
)
from .groupoid import (
    GroupoidArrow,
    GroupProbe,
    Walk,
    arrow,
    compose_arrows,
    concat_walks,
    delta_extend,
    fundamental_group_probe,
    identity_arrow,
    induced_functor,
    invert_arrow,
    natural_iso_component,
    prune_fully,
    prune_once,
    walks_equivalent,
)
from .homotopy import (
    Homotopy,
    are_homotopic,
    check_interchange,
    compose_homotopies,
    homotopies_equivalent,
    homotopy_classes,
    is_spider_pair,
    spider_decompose,
)
from .io import emit_dot, emit_graph, parse_graph
from .pleat import (
    Fold,
    PleatResult,
    apply_fold,
    duplicate_vertex,
    find_folds,
    homotopy_equivalent,
    is_stiff,
    pleat,
    pleat_product_check,
)
from .search import Equivalence
from .verify import VerificationReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "EmptyGraphError",
    "Equivalence",
    "ExponentialGraph",
    "Fold",
    "Graph",
    "GraphError",
    "GroupProbe",
    "GroupoidArrow",
    "Homotopy",
    "InvalidFoldError",
    "InvalidMapError",
    "InvalidParameterError",
    "Isomorphism",
    "MismatchError",
    "NotMorphismError",
    "ParseError",
    "PleatResult",
    "PreconditionError",
    "SearchCancelled",
    "TooLargeError",
    "UnknownVertexError",
    "VerificationReport",
    "VertexMap",
    "Walk",
    "adjacent_homs",
    "apply_fold",
    "are_homotopic",
    "are_isomorphic",
    "arrow",
    "check_interchange",
    "complete_graph",
    "compose_arrows",
    "compose_homotopies",
    "concat_walks",
    "coproduct",
    "curry",
    "cycle_graph",
    "delta_extend",
    "duplicate_vertex",
    "emit_dot",
    "emit_graph",
    "enumerate_graphs",
    "enumerate_homs",
    "exp_edge",
    "find_folds",
    "fundamental_group_probe",
    "graphs_on",
    "hom_graph",
    "homotopies_equivalent",
    "homotopy_classes",
    "homotopy_equivalent",
    "identity_arrow",
    "identity_map",
    "inclusion_map",
    "induced_functor",
    "induced_subgraph",
    "invert_arrow",
    "is_morphism",
    "is_spider_pair",
    "is_stiff",
    "looped_path_graph",
    "natural_iso_component",
    "neighborhood",
    "parse_graph",
    "path_graph",
    "pleat",
    "pleat_product_check",
    "postcompose",
    "precompose",
    "product",
    "prune_fully",
    "prune_once",
    "realize_exponential",
    "remove_vertex",
    "run_suite",
    "spider_decompose",
    "uncurry",
    "walks_equivalent",
]
