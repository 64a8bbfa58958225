format_version = 1

# enumeration ceilings
enumeration_ceiling = 8
partition_edge_ceiling = 15
rainbow_edge_ceiling = 12
general_h_vertex_ceiling = 10
partition_exact_ceiling = 16
finder_part_size_ceiling = 6

# budgets
budget_nodes = 10_000_000
budget_partitions = 2_000_000

# randomness
seed = 42
trials = 2000
eta = 0.1

workers = 1
print_freq = 200
