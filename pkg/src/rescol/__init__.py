"""Resilience of graph colorings and CNF formulas.

Exact engines for deciding whether a graph stays k-colorable after any r
edge additions and whether a formula stays satisfiable after any r variable
fixings, resilience-preserving formula reductions, and a gadget-based
encoder from width-6 CNF to 3-colorability.
"""
from .coloring import (
    DegreeWitness,
    chromatic_number,
    extend_coloring,
    greedy_color_bounded_degree,
    is_k_colorable,
    validate_coloring,
)
from .graphs import (
    CLASSIC_NAMES,
    Graph,
    ParseError,
    add_edges,
    apex_extension,
    classic,
    complete_graph,
    complete_minus_matching,
    complete_plus_isolated,
    non_edges,
    normalize_edge,
    parse_graph,
    serialize_graph,
)
from .reductions import (
    BudgetExceededError,
    ContractCheck,
    ContractReport,
    DEFAULT_CLAUSE_BUDGET,
    DEFAULT_VERTEX_BUDGET,
    GadgetGraph,
    GadgetRecord,
    blow_up,
    decode_coloring,
    hardness_chain,
    provenance_json,
    shrink_down,
    six_cnf_to_graph,
    three_sat_to_coloring,
    verify_gadget_contracts,
)
from .resilience import (
    GraphResilienceVerdict,
    SATURATED,
    is_r_resiliently_k_colorable,
    max_graph_resilience,
)
from .sat import (
    CnfFormula,
    Restriction,
    SatResilienceVerdict,
    is_r_resilient,
    is_satisfiable,
    max_sat_resilience,
    parse_cnf,
    restrict,
    serialize_cnf,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "CLASSIC_NAMES",
    "CnfFormula",
    "ContractCheck",
    "ContractReport",
    "DEFAULT_CLAUSE_BUDGET",
    "DEFAULT_VERTEX_BUDGET",
    "DegreeWitness",
    "GadgetGraph",
    "GadgetRecord",
    "Graph",
    "GraphResilienceVerdict",
    "ParseError",
    "Restriction",
    "SATURATED",
    "SatResilienceVerdict",
    "add_edges",
    "apex_extension",
    "blow_up",
    "chromatic_number",
    "classic",
    "complete_graph",
    "complete_minus_matching",
    "complete_plus_isolated",
    "decode_coloring",
    "extend_coloring",
    "greedy_color_bounded_degree",
    "hardness_chain",
    "is_k_colorable",
    "is_r_resilient",
    "is_r_resiliently_k_colorable",
    "is_satisfiable",
    "max_graph_resilience",
    "max_sat_resilience",
    "non_edges",
    "normalize_edge",
    "parse_cnf",
    "parse_graph",
    "provenance_json",
    "restrict",
    "serialize_cnf",
    "serialize_graph",
    "six_cnf_to_graph",
    "three_sat_to_coloring",
    "validate_coloring",
    "verify_gadget_contracts",
]
