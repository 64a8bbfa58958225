from .coloring import (EdgeColoring, MatchingPartition, verify_proper, greedy_edge_coloring,
                       vizing_coloring, enumerate_matching_partitions, rainbow_forcing_coloring,
                       resolve_coloring)
from .copies import (HPattern, SubgraphCopy, pattern_from_spec, chromatic_number, is_edge_critical,
                     enumerate_copies, verify_copy, is_rainbow, rainbow_copies, nonrainbow_census,
                     census_summary)
from .packing import (Packing, Decomposition, max_packing_exact, packing_reaches, brute_force_packing,
                      N_value, N_rainbow_value, decompose, phi, phi_rainbow, greedy_packing,
                      local_search_packing, hypergraph_matching_greedy, verify_decomposition,
                      decomposition_to_json)
from .extremal import (ColoringMaxResult, ExtremalRecord, phi_R_max_over_colorings, phi_n_table,
                       reevaluate_record, ex_bruteforce, monotonicity_check, verify_main_theorem_small)
from .stability import (PartitionResult, BoundReport, SparsifyTrial, FinderResult, min_internal_partition,
                        brute_force_internal_edges, edk_experiment, random_multipartite,
                        sparsify_closure_mc, near_turan_host, near_turan_rainbow_finder, stability_probe)
