"""Graph sequence laboratory.

Local pattern statistics, star-based edit metrics, hyperfinite
decomposition certificates, pattern-invariant finite-range operators, and
normalized spectral distribution functions for bounded-degree colored
graphs, plus a CLI (``gslab``) for desk-scale convergence experiments.
"""

from .census import PatternDistribution, census, distribution_gap, weak_convergence_report
from .decomposition import (DecompositionCertificate, FolnerProfile, boundary,
                            decompose_by_growth, folner_profile, verify_certificate)
from .generators import (AdjacencyOracle, MaterializedSubgraph, SelfSimilarSpec,
                         cycle, default_chain_spec, folner_boxes, glued_lattice_oracle,
                         graph_oracle, grid2d, grid3d, lattice2d_oracle,
                         lattice3d_oracle, materialize, path, random_regular,
                         regular_tree_oracle, self_similar, self_similar_sequence)
from .graphs import (ColoredGraph, RootedPattern, Star, ball, ball_size_bound,
                     canonical_code, canonical_labeling, disjoint_union,
                     graph_from_json, graph_to_json, permute, rooted_isomorphic,
                     star, validate)
from .metrics import (MetricResult, delta, delta_rho_lower, delta_rho_upper,
                      delta_s_exact, delta_s_heuristic)
from .operators import (InvariantRule, OperatorKernel, add, adjoint,
                        ambient_laplacian_rule, check_pattern_invariance,
                        extract_rule, identity_kernel, kernel_from_rule,
                        laplacian, laplacian_rule, multiply, restrict)
from .spectral import (BoundaryDefect, IdsReport, RankCheck, SpectralDistribution,
                       boundary_defect, distribution, eigenvalues, ids_run,
                       moment, moment_via_eigenvalues, rank_bound_check,
                       sup_distance, trace_via_patterns)

__version__ = "0.1.0"
