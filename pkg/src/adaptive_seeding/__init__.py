"""Adaptive seeding for influence maximization under linear influence models."""
from .graph import (BipartiteInstance, Graph, ParadoxStats, build_instance,
                    dump_instance, load_edge_list, paradox_stats, random_core,
                    read_edge_list, restore_instance, write_edge_list)
from .knapsack import SortedItemList, allocation, marginal, merged_solve, solve
from .influence import (InfluenceWeights, ProbabilityModel, assign_probabilities,
                        assign_weights, degree_weights, sample_realization,
                        select_feasible, voter_weights)
from .greedy import (SeedingSolution, SplitStrategy, greedy_for_split, objective, run,
                     run_saa, run_sample_and_prune)
from .lp import build_lp, pipage_round, run_lp, solve_lp
from .evaluation import (adaptive_value_exact, adaptive_value_mc, audit_adaptivity_gap,
                         baseline_im, baseline_rf, baseline_rn, estimate_F_sampling)

__version__ = "0.1.0"
