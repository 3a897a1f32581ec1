"""Exact vertex attack tolerance, balanced bicliques, and the co-bipartite reduction."""

from .biclique import (
    BicliqueWitness,
    PreconditionError,
    bcbs_decision,
    is_biclique,
    max_balanced_biclique,
    min_bk_ratio,
)
from .graph import (
    BipartiteGraph,
    Graph,
    GraphFormatError,
    co_bipartite_complement,
    components_after_removal,
    is_clique,
    is_connected,
    largest_component_size,
    parse_bipartite,
    parse_edge_list,
)
from .measures import (
    AttackResult,
    CliqueInputError,
    SizeGuardError,
    TrivialGraphError,
    UndefinedMeasureError,
    greedy_uvat,
    residual_size,
    uvat_exact,
    uvat_value,
    vat_exact,
    vat_value,
)
from .reduction import (
    ExtractionError,
    ReductionReport,
    SolverContractError,
    approx_bcbs_via_uvat,
    extract_biclique_from_separator,
    plant_biclique_instance,
    verify_lemma_bounds,
    verify_lemma_identity,
)

__version__ = "0.1.0"
FORMAT_VERSION = "1"
