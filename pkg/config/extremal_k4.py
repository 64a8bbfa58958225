_base_ = ['rainbow_base.py']

pattern = 'K4'
mode = 'uncolored'
n = '4-7'
# full colouring enumeration only up to 12 edges, pruned beyond
rainbow_edge_ceiling = 12
budget_partitions = 500_000
