"""Exact maximum-weight independent set via separator-guided branching.

The package solves MWIS exactly on graphs without long induced paths
(solve_pkfree) and, more generally, on graphs excluding a fixed disconnected
pattern when an exact solver is supplied for each connected piece of the
pattern (solve_hfree). Supporting machinery: balanced separators built from
induced paths, vertex multifamilies with level sets, runtime invariant
checking with measure bookkeeping, brute-force reference solvers, random
generators, and a plain-text graph format with JSON reports.
"""

from .graph import (
    Graph,
    WeightMap,
    closed_neighborhood,
    connected_components,
    induced_subgraph,
    is_independent_set,
    open_neighborhood,
    remove_vertices,
    shortest_path,
    total_weight,
    validate_weights,
)
from .graphio import (
    PARSE_ERROR_KINDS,
    REPORT_FORMAT_VERSION,
    GraphParseError,
    ReportDocument,
    emit_graph,
    error_document,
    parse_graph,
)
from .hfree import (
    Alg2Instance,
    ComponentOracle,
    PatternGraph,
    find_induced_copy,
    is_h_free,
    make_bruteforce_oracle,
    make_pk_oracle,
    pattern_measure,
    solve_hfree,
)
from .instrumentation import (
    RULE_ADD_NEIGHBORHOOD,
    RULE_ADD_SEPARATOR,
    RULE_BRANCH_DELETE,
    RULE_BRANCH_TAKE,
    RULE_COMPONENT,
    InvariantViolation,
    MeasureH,
    MeasureK,
    RunStats,
    assert_recurrence_step,
    max_measure_h,
    max_measure_k,
    measure_h,
    measure_k,
)
from .levels import (
    LevelView,
    VertexMultiFamily,
    branch_threshold,
    ceil_log2,
    family_subtract,
    find_branchable,
    level_set,
)
from .oracle import (
    DEFAULT_BRUTE_FORCE_CAP,
    GenerationError,
    GeneratorSpec,
    GraphTooLarge,
    brute_force_mwis,
    enumerate_mwis,
    generate,
    longest_induced_path_at_most,
    make_bruteforce_solver,
)
from .pkfree import (
    ASSERT_FAIR,
    ASSERT_OFF,
    ASSERT_PARANOID,
    Alg1Instance,
    SolveResult,
    alg1_call,
    collect_witness,
    instance_measure,
    solve_pkfree,
    verify_witness,
)
from .separators import SeparatorCore, balanced_separator_core, gyarfas_path, verify_balanced

__version__ = "0.1.0"

__all__ = [
    "ASSERT_FAIR",
    "ASSERT_OFF",
    "ASSERT_PARANOID",
    "Alg1Instance",
    "Alg2Instance",
    "ComponentOracle",
    "DEFAULT_BRUTE_FORCE_CAP",
    "GenerationError",
    "GeneratorSpec",
    "Graph",
    "GraphParseError",
    "GraphTooLarge",
    "InvariantViolation",
    "LevelView",
    "MeasureH",
    "MeasureK",
    "PARSE_ERROR_KINDS",
    "PatternGraph",
    "REPORT_FORMAT_VERSION",
    "RULE_ADD_NEIGHBORHOOD",
    "RULE_ADD_SEPARATOR",
    "RULE_BRANCH_DELETE",
    "RULE_BRANCH_TAKE",
    "RULE_COMPONENT",
    "ReportDocument",
    "RunStats",
    "SeparatorCore",
    "SolveResult",
    "VertexMultiFamily",
    "WeightMap",
    "alg1_call",
    "assert_recurrence_step",
    "balanced_separator_core",
    "branch_threshold",
    "brute_force_mwis",
    "ceil_log2",
    "closed_neighborhood",
    "collect_witness",
    "connected_components",
    "emit_graph",
    "enumerate_mwis",
    "error_document",
    "family_subtract",
    "find_branchable",
    "find_induced_copy",
    "generate",
    "gyarfas_path",
    "induced_subgraph",
    "instance_measure",
    "is_h_free",
    "is_independent_set",
    "level_set",
    "longest_induced_path_at_most",
    "make_bruteforce_oracle",
    "make_bruteforce_solver",
    "make_pk_oracle",
    "max_measure_h",
    "max_measure_k",
    "measure_h",
    "measure_k",
    "open_neighborhood",
    "parse_graph",
    "pattern_measure",
    "remove_vertices",
    "shortest_path",
    "solve_hfree",
    "solve_pkfree",
    "total_weight",
    "validate_weights",
    "verify_balanced",
    "verify_witness",
]
