"""Exact analysis and simulation of max-consensus over directed networks."""

from .consensus import (
    ConvergenceVerdict,
    FaultReport,
    SwitchingSchedule,
    Trace,
    converges_all_inits_fixed,
    converges_all_inits_switching,
    converges_for_init,
    fault_check,
    min_zero_exponent,
    run_fixed,
    run_switching,
    step,
)
from .errors import DimensionError, ParseError
from .generators import GenSpec, generate, inject_fault, measure_diameter_distribution
from .graph import (
    INFINITE,
    Digraph,
    adjacency,
    dependency_graph,
    diameter,
    from_edges,
    is_jointly_strongly_connected,
    is_strongly_connected,
    neighbors,
    p_neighbors,
    reducible_block_form,
    union_graph,
)
from .mortality import (
    MortalityResult,
    brute_force_mortality,
    is_mortal,
    mortality_witness,
    semigroup_contains_zero,
)
from .tropical import (
    NEG_INF,
    TropicalAdjMatrix,
    from_boolean,
    is_all_zero,
    mat_add,
    mat_mul,
    mat_pow,
    mat_vec,
    t_add,
    t_mul,
    to_boolean,
)

__version__ = "0.1.0"
