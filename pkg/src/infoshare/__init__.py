"""Pointwise information sharing measures on discrete joint distributions.

The package computes non-negative per-realization measures of shared
information (union, intersection, unique, synergistic contents and their
entropies), builds the antichain lattices those measures live on, inverts
lattice valuations into per-node increments, and evaluates arbitrary
information-sharing expressions.
"""

from .algebra import (
    ExpressionError,
    LemmaResult,
    OpNode,
    SourceLeaf,
    eval_expression,
    eval_mutual,
    expression_variables,
    lemma_suite,
    lower,
    parse_expression,
)
from .decomposition import (
    LatticeValuation,
    MutualDecomposition,
    PartialValuation,
    decompose_expected,
    decompose_pointwise,
    decomposition_rows,
    expected_valuation,
    lattice_valuation,
    mi_decompose,
    mobius_closed_form,
    mobius_recursive,
    redundancy_value,
    trivariate_report,
)
from .distribution import (
    InvalidDistribution,
    JointDistribution,
    VariableSet,
    ZeroMass,
    load_distribution,
    load_file,
)
from .lattice import (
    Antichain,
    RedundancyLattice,
    default_names,
    enumerate_antichains,
    enumerate_sources,
    eval_sharing,
    join,
    max_via_min_expansion,
    meet,
    precedes,
    sharing_join,
    sharing_meet,
    sharing_precedes,
    to_dot,
    total_order_reduce,
)
from .measures import (
    cond_intersection_content,
    cond_mutual_content,
    cond_pointwise,
    cond_surprisal,
    cond_synergy_content,
    cond_unique_content,
    cond_union_content,
    entropy,
    expected,
    get_log_base,
    intersection_content,
    mutual_content,
    set_log_base,
    surprisal,
    synergy_content,
    unique_content,
    union_content,
)
from .sampling import derive_trial_seed, random_distribution, trial_rng

__version__ = "0.1.0"
