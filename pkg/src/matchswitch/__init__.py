"""matchswitch: the reconfiguration space of graph matchings under k-switches.

Library layout:
  graphs      graph type, degree/Ore predicates, counterexample families
  matchings   enumeration, counting, symmetric differences, the injection
  switchgraph the k-switch graph H_k(G, gamma) and threshold properties
  reconfig    constructive switch paths and their refinements
  chain       random-switch Markov chains, exact diagnostics, canonical paths
  digraphs    the isolated-matching <-> short-directed-cycle bridge
  cli         experiment harness
"""

__version__ = "0.1.0"

from .errors import (CaseLadderStuck, ConfigError, DivisibilityViolation,
                     EnumerationBudgetExceeded, InfeasibleDegreeError,
                     MatchSwitchError, NoAugmentingEdgeError, NoMoveFound,
                     NoPerfectMatchingError, NonCrossingEdgeError, OmegaTooLarge,
                     OreBipOnNonBipartiteError, PatternNotFound, SelfLoopError,
                     UnbalancedBipartitionError)
from .graphs import (DegreeReport, Graph, as_fraction, build_graph,
                     complete_bipartite, complete_graph, cycle_graph,
                     degree_report, gen_cycle_union, gen_F, gen_F_bip,
                     gen_G_family, gen_G_family_bip, gen_random_min_degree,
                     ore_bip_minimum)
from .matchings import (Matching, SymDiffDecomposition, count_perfect,
                        enumerate_matchings, iter_matchings,
                        near_perfect_injection, permanent_count,
                        symdiff_decompose)
from .switchgraph import (PropertyReport, SwitchGraph, build_switch_graph,
                          components, edge_count_spectrum, evaluate_thresholds,
                          frozen_edges, matching_size_for_gamma, scan_threshold)
from .reconfig import (ReconfigPath, SwitchStep, apply_step, four_switch_path,
                       k_switch_path, refine_3_to_2, refine_4_to_3,
                       validate_path)
from .chain import (ChainDiagnostics, ChainSpec, SimulationSummary,
                    canonical_path, congestion, exact_diagnostics, gamma_step,
                    simulate, transition_matrix, uniform_switch_step)
from .digraphs import (Digraph, bip_to_digraph, digraph_to_bip, gen_Hp,
                       gen_isolated_general, has_directed_cycle_at_most,
                       matching_to_digraph)
