"""
Canonical labelling and isomorph-free enumeration of small graphs.

The canonical form is the relabelling whose upper-triangle adjacency code is
largest among all relabellings that respect a colour-refinement partition
of the vertices. Refinement colours are ranks of isomorphism-invariant
signatures, so the search only permutes vertices inside a colour class.
Exhaustive over those permutations, which is fine up to n = 10.
"""
import functools
import itertools

from util.errors import BudgetExceeded, DomainError, InvariantViolation
from util.logger import get_logger
from .graph import Graph
from .graph6 import write_graph6

logger = get_logger(__name__)

DEFAULT_CEILING = 8
HARD_CEILING = 10

# OEIS A000088, graphs on n unlabeled vertices
KNOWN_COUNTS = (1, 1, 2, 4, 11, 34, 156, 1044, 12346, 274668, 12005168)


def refine_colors(g):
    colors = g.degrees()
    num = len(set(colors))
    while True:
        sig = [(colors[v], tuple(sorted(colors[u] for u in g.neighbors(v)))) for v in range(g.n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        colors = [ranks[s] for s in sig]
        if len(ranks) == num:
            return colors
        num = len(ranks)


def _code(g, perm):
    """Adjacency code under vertex renaming v -> perm[v]; bit per pair, row-major."""
    n = g.n
    code = 0
    for u, v in g.edges:
        a, b = perm[u], perm[v]
        if a > b:
            a, b = b, a
        code |= 1 << (n * n - 1 - (a * n + b))
    return code


def canonical_relabeling(g):
    """Permutation (old label -> new label) giving the canonical form of `g`."""
    colors = refine_colors(g)
    classes = []
    for c in sorted(set(colors)):
        classes.append([v for v in range(g.n) if colors[v] == c])
    slots = []
    start = 0
    for cls in classes:
        slots.append(list(range(start, start + len(cls))))
        start += len(cls)

    best_code, best_perm = -1, None
    for choice in itertools.product(*[itertools.permutations(cls) for cls in classes]):
        perm = [0] * g.n
        for order, slot in zip(choice, slots):
            for v, label in zip(order, slot):
                perm[v] = label
        code = _code(g, perm)
        if code > best_code:
            best_code, best_perm = code, perm
    return best_perm if best_perm is not None else []


def canonical_form(g):
    return g.relabel(canonical_relabeling(g))


def canonical_graph6(g):
    return write_graph6(canonical_form(g))


def is_isomorphic(g, h):
    if g.n != h.n or g.e != h.e or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)


class GraphClass(object):
    """One canonical representative per isomorphism class on n vertices.

    Graphs are ordered by (edge count, graph6) so sweeps are deterministic.
    """

    def __init__(self, n, graphs):
        self.n = n
        self.graphs = tuple(sorted(graphs, key=lambda g: (g.e, write_graph6(g))))
        self.canonical_forms = frozenset(write_graph6(g) for g in self.graphs)
        if len(self.canonical_forms) != len(self.graphs):
            raise InvariantViolation('duplicate canonical forms in GraphClass')

    def __len__(self):
        return len(self.graphs)

    def __iter__(self):
        return iter(self.graphs)

    def __contains__(self, g):
        return g.n == self.n and canonical_graph6(g) in self.canonical_forms

    def with_edges(self, e):
        return [g for g in self.graphs if g.e == e]

    def __repr__(self):
        return f'GraphClass(n={self.n}, classes={len(self.graphs)})'


@functools.lru_cache(maxsize=None)
def _canonical_level(n):
    if n == 0:
        return (Graph(0),)
    seen = {}
    for g in _canonical_level(n - 1):
        v = n - 1
        for mask in range(1 << v):
            edges = list(g.edges) + [(u, v) for u in range(v) if mask >> u & 1]
            c = canonical_form(Graph(n, edges))
            seen.setdefault(c.edges, c)
    logger.debug(f'enumerated {len(seen)} classes on {n} vertices')
    return tuple(seen[k] for k in sorted(seen))


def enumerate_nonisomorphic(n, ceiling=DEFAULT_CEILING):
    """All graphs on n vertices up to isomorphism, by vertex augmentation."""
    if n < 0:
        raise DomainError(f"vertex count must be non-negative, got {n}")
    if n > min(ceiling, HARD_CEILING):
        raise BudgetExceeded(
            f'enumeration of graphs on {n} vertices exceeds the ceiling {min(ceiling, HARD_CEILING)}')
    result = GraphClass(n, _canonical_level(n))
    if n < len(KNOWN_COUNTS) and len(result) != KNOWN_COUNTS[n]:
        raise InvariantViolation(f'enumerated {len(result)} classes on {n} vertices, expected {KNOWN_COUNTS[n]}')
    return result
