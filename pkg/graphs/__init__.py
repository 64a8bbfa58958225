from .graph import (Graph, normalize_edge, turan_parts, turan_graph, turan_number,
                    complete_graph, complete_multipartite, cycle_graph, path_graph,
                    empty_graph, star_graph, random_graph, complement, add_isolated_vertex,
                    disjoint_union)
from .graph6 import parse_graph6, write_graph6, read_graph6_file, write_graph6_file
from .isomorph import (GraphClass, enumerate_nonisomorphic, canonical_form,
                        canonical_graph6, is_isomorphic)
from .generators import build_graph
