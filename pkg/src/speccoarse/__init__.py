"""Spectrum-preserving graph coarsening with parallel fitness computation.

Coarsen weighted undirected graphs by greedily merging the endpoints of
edges whose degree-normalized adjacency rows are closest in 1-norm, a
criterion that bounds how far the normalized-Laplacian eigenvalues can
drift. The package also provides the lift transform for same-dimension
spectral comparison, a self-contained Jacobi eigensolver for verification,
deterministic graph generators, and a thread-scaling benchmark harness.
"""

from .bench import (BenchConfig, PhaseTimings, SplitMix64, gen_grid,
                    gen_powerlaw, imbalance, scaling_sweep, second_moment)
from .coarsen import (CoarsenResult, MergeLog, approximate_greedy_coarsen,
                      drift_bound, explicit_greedy_coarsen, merge_walk)
from .fitness import (FitnessEntry, FitnessList, all_fitness, edge_fitness,
                      edge_fitness_values, merged_node_lemma_gap, sort_fitness)
from .graph import (Graph, InvalidGraphError, Partition, ValidationReport,
                    contract, from_edges, validate)
from .lift import LiftedGraph, lift
from .spectral import (Spectrum, VerifyReport, alignment_matrix, eig_sym,
                       eigenvalue_gap, eigvals_sym, normalized_laplacian,
                       spectrum_of, verify)

__version__ = "0.1.0"

__all__ = [
    "BenchConfig", "PhaseTimings", "SplitMix64", "gen_grid", "gen_powerlaw",
    "imbalance", "scaling_sweep", "second_moment",
    "CoarsenResult", "MergeLog", "approximate_greedy_coarsen", "drift_bound",
    "explicit_greedy_coarsen", "merge_walk",
    "FitnessEntry", "FitnessList", "all_fitness", "edge_fitness",
    "edge_fitness_values", "merged_node_lemma_gap", "sort_fitness",
    "Graph", "InvalidGraphError", "Partition", "ValidationReport",
    "contract", "from_edges", "validate",
    "LiftedGraph", "lift",
    "Spectrum", "VerifyReport", "alignment_matrix", "eig_sym",
    "eigenvalue_gap", "eigvals_sym", "normalized_laplacian", "spectrum_of",
    "verify",
    "__version__",
]
