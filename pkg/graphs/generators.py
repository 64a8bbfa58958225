"""
Named graph generators for CLI input specs.

A spec is `name:arg1:arg2...`, e.g. `turan:8:2`, `complete:5`,
`complete_multipartite:3,3,3`, `random:10:0.5:7`, `g6:D?{`. Anything that
does not match a registered name is tried as a graph6 line, then as a path
to a graph6 file (first graph of the file).
"""
import os

from util.errors import DomainError
from util.registry import GRAPH_GENERATORS
from . import graph as G
from .graph6 import parse_graph6, read_graph6_file


def _ints(text):
    return [int(x) for x in text.split(',') if x != '']


@GRAPH_GENERATORS.registe_with_name(module_name='turan')
def build_turan(n, k):
    return G.turan_graph(int(n), int(k))


@GRAPH_GENERATORS.registe_with_name(module_name='complete')
def build_complete(n):
    return G.complete_graph(int(n))


@GRAPH_GENERATORS.registe_with_name(module_name='complete_multipartite')
def build_complete_multipartite(sizes):
    return G.complete_multipartite(_ints(sizes))


@GRAPH_GENERATORS.registe_with_name(module_name='cycle')
def build_cycle(n):
    return G.cycle_graph(int(n))


@GRAPH_GENERATORS.registe_with_name(module_name='path')
def build_path(n):
    return G.path_graph(int(n))


@GRAPH_GENERATORS.registe_with_name(module_name='empty')
def build_empty(n):
    return G.empty_graph(int(n))


@GRAPH_GENERATORS.registe_with_name(module_name='star')
def build_star(leaves):
    return G.star_graph(int(leaves))


@GRAPH_GENERATORS.registe_with_name(module_name='random')
def build_random(n, p, seed):
    return G.random_graph(int(n), float(p), int(seed))


@GRAPH_GENERATORS.registe_with_name(module_name='g6')
def build_g6(code):
    return parse_graph6(code)


def build_graph(spec):
    """Resolve a generator spec, graph6 line or graph6 file path to a Graph."""
    spec = spec.strip()
    name, _, rest = spec.partition(':')
    build_func = GRAPH_GENERATORS.get(name)
    if build_func is not None and rest:
        if name == 'g6':
            return build_func(rest)
        try:
            return build_func(*rest.split(':'))
        except TypeError:
            raise DomainError(f'bad arguments for generator "{name}": {rest}')
        except ValueError as e:
            if isinstance(e, DomainError):
                raise
            raise DomainError(f'bad arguments for generator "{name}": {rest}')
    if os.path.isfile(spec):
        graphs = read_graph6_file(spec)
        if not graphs:
            raise DomainError(f'no graphs in {spec}')
        return graphs[0]
    return parse_graph6(spec)
