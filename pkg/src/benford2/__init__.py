"""Leading-block probabilities in base 2.

The unscaled probability that an integer's binary expansion starts with a
given block satisfies a fixed-point relation over the easily computed
scaled probabilities.  This package builds those scaled-probability
transition matrices, solves the fixed point at any depth, verifies the
analytic identities behind the limiting logarithmic law, and measures the
law empirically on classic fast-growing sequences.
"""

from benford2.analytic import (
    SUITES,
    SeriesTerm,
    VerificationReport,
    harmonic_block_sum,
    normalization_check,
    riemann_sum,
    run_suite,
    series_partial_sum,
    term_integral,
    term_value_by_endpoints,
    term_value_by_product,
)
from benford2.dyadic import (
    MAX_COUNT_BITS,
    MAX_DENSE_DEPTH,
    MAX_VECTOR_DEPTH,
    Bits,
    Block,
    DepthError,
    as_block_value,
    block_string,
    block_value,
    complement,
    dyadic_value,
    excess_population,
    excess_population_fast,
    pack_bits,
    truncate,
    unpack_bits,
)
from benford2.empirical import (
    FAMILIES,
    FrequencyReport,
    SequenceSpec,
    frequency_report,
    generate_blocks,
    leading_block,
    rearranged_sequence,
    rearrangement_demo,
)
from benford2.solver import (
    ConvergenceError,
    ConvergenceRow,
    SolveReport,
    aggregate,
    benford_block_probabilities,
    benford_reference,
    convergence_table,
    error_decay_ratios,
    solve,
)
from benford2.transition import (
    ChunkDecomposition,
    TransitionMatrix,
    apply_dense,
    apply_fast,
    brute_force_element,
    build_dense,
    chunk_decomposition,
    element_from_chunks,
    matrix_element,
    matrix_element_exact,
)

__version__ = "0.1.0"

__all__ = [
    "Bits",
    "Block",
    "ChunkDecomposition",
    "ConvergenceError",
    "ConvergenceRow",
    "DepthError",
    "FAMILIES",
    "FrequencyReport",
    "MAX_COUNT_BITS",
    "MAX_DENSE_DEPTH",
    "MAX_VECTOR_DEPTH",
    "SUITES",
    "SequenceSpec",
    "SeriesTerm",
    "SolveReport",
    "TransitionMatrix",
    "VerificationReport",
    "aggregate",
    "apply_dense",
    "apply_fast",
    "as_block_value",
    "benford_block_probabilities",
    "benford_reference",
    "block_string",
    "block_value",
    "brute_force_element",
    "build_dense",
    "chunk_decomposition",
    "complement",
    "convergence_table",
    "dyadic_value",
    "element_from_chunks",
    "error_decay_ratios",
    "excess_population",
    "excess_population_fast",
    "frequency_report",
    "generate_blocks",
    "harmonic_block_sum",
    "leading_block",
    "matrix_element",
    "matrix_element_exact",
    "normalization_check",
    "pack_bits",
    "rearranged_sequence",
    "rearrangement_demo",
    "riemann_sum",
    "run_suite",
    "series_partial_sum",
    "solve",
    "term_integral",
    "term_value_by_endpoints",
    "term_value_by_product",
    "truncate",
    "unpack_bits",
]
