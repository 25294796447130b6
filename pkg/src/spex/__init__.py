"""Spectral Turan toolkit for forbidden even cycles.

Builds the k-clique-join extremal families, computes spectral radii and
Perron vectors, detects fixed-length paths and cycles with witnesses,
computes EX/SPEX exactly at small n by isomorph-free enumeration, and
audits the structural inequalities that govern even-cycle-free extremal
graphs.
"""

from .audits import (
    CheckResult,
    LemmaAuditReport,
    audit_bipartition_lemma,
    audit_global_bounds,
    audit_neighborhood_bounds,
    audit_spex_graph,
)
from .errors import (
    CapacityError,
    ConvergenceError,
    DataError,
    Graph6ParseError,
    ParameterError,
    SpexError,
)
from .extremal import (
    ExtremalRecord,
    SearchTrace,
    SplitMix64,
    compute_extremal,
    enumerate_graphs,
    local_search,
    random_graph,
)
from .graph6 import graph6_decode, graph6_encode
from .graphs import (
    Graph,
    NeighborhoodLayers,
    VertexSetPair,
    bfs_layers,
    construct_named,
    disjoint_union,
    edge_counts,
    join,
)
from .spectral import (
    Constants,
    RayleighCertificate,
    SpectralResult,
    WeightClassification,
    choose_constants,
    classify_vertices,
    lambda_bounds,
    rayleigh_certificate,
    s_nk_lambda_closed_form,
    spectral_radius,
)
from .subgraphs import (
    ForbiddenFamily,
    SubgraphWitness,
    contains_cycle,
    contains_path,
    contains_path_with_endpoints_in,
    is_family_free,
)

__version__ = "0.1.0"
