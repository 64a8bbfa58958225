"""
Embedded copies of a pattern H in a host G, and their rainbow status.

Copies are identified by edge set, so automorphic re-embeddings collapse
into one copy. Cliques go through bitmask candidate intersection; any
other pattern goes through backtracking over vertex maps with degree and
adjacency pruning under a node budget.
"""
import itertools
import re

import networkx as nx

from graphs.graph import Graph, complete_graph, cycle_graph, path_graph, star_graph, normalize_edge
from graphs.generators import build_graph
from util.errors import BudgetExceeded, DomainError, InvariantViolation
from util.logger import get_logger

logger = get_logger(__name__)

DEFAULT_VERTEX_CEILING = 10
DEFAULT_NODE_BUDGET = 10_000_000


def chromatic_number(g):
    """Exact chromatic number by backtracking over vertices in degree order."""
    if g.n == 0:
        return 0
    if g.e == 0:
        return 1
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    for k in range(2, g.n + 1):
        colors = [-1] * g.n

        def extend(i, used):
            if i == len(order):
                return True
            v = order[i]
            taken = {colors[u] for u in g.neighbors(v) if colors[u] >= 0}
            # a fresh colour beyond `used` is symmetric to any other fresh one
            for c in range(min(k, used + 1)):
                if c in taken:
                    continue
                colors[v] = c
                if extend(i + 1, max(used, c + 1)):
                    return True
                colors[v] = -1
            return False

        if extend(0, 0):
            return k
    return g.n


def is_edge_critical(h):
    """Some edge whose removal lowers the chromatic number."""
    chi = chromatic_number(h)
    for e in h.edges:
        rest = Graph(h.n, [f for f in h.edges if f != e])
        if chromatic_number(rest) < chi:
            return True
    return False


class HPattern(object):
    """The fixed graph H, with chromatic number and clique flag precomputed."""

    def __init__(self, pattern, name=None):
        if pattern.e < 2:
            raise DomainError(f'patterns need at least 2 edges, got {pattern.e}')
        # isolated vertices carry no edges and never change a copy's edge set
        support = sorted({v for e in pattern.edges for v in e})
        index = {v: i for i, v in enumerate(support)}
        self.pattern = Graph(len(support), [(index[u], index[v]) for u, v in pattern.edges])
        self.e_H = self.pattern.e
        self.r = chromatic_number(self.pattern)
        k = self.pattern.n
        self.clique_order = k if self.e_H == k * (k - 1) // 2 else None
        self.name = name or ('K%d' % k if self.clique_order else 'g6:' + _g6(self.pattern))

    @property
    def is_clique(self):
        return self.clique_order is not None

    @property
    def pairwise_incident(self):
        """Every two edges share a vertex (triangle or star): proper colourings make every copy rainbow."""
        return all(set(a) & set(b) for a, b in itertools.combinations(self.pattern.edges, 2))

    @classmethod
    def clique(cls, r):
        return cls(complete_graph(r), name=f'K{r}')

    def check_extremal(self):
        if self.r < 3:
            raise DomainError(f'pattern {self.name} has chromatic number {self.r}; extremal operations need at least 3')

    def __repr__(self):
        return f'HPattern({self.name}, e_H={self.e_H}, r={self.r})'

    def __eq__(self, other):
        return isinstance(other, HPattern) and self.pattern == other.pattern

    def __hash__(self):
        return hash(self.pattern)


def _g6(g):
    from graphs.graph6 import write_graph6
    return write_graph6(g)


def pattern_from_spec(spec):
    """`K3`, `C5`, `P4`, `S3` (star with 3 leaves) or any graph spec understood by build_graph."""
    m = re.fullmatch(r'([KCPS])(\d+)', spec.strip())
    if m:
        kind, k = m.group(1), int(m.group(2))
        builder = {'K': complete_graph, 'C': cycle_graph, 'P': path_graph, 'S': star_graph}[kind]
        return HPattern(builder(k), name=spec.strip())
    return HPattern(build_graph(spec))


class SubgraphCopy(object):
    """Edge set of one embedded copy of H; rainbow status is per colouring, not stored."""
    __slots__ = ('_edges', '_edge_set')

    def __init__(self, edges):
        self._edges = tuple(sorted(normalize_edge(*e) for e in edges))
        self._edge_set = frozenset(self._edges)

    @property
    def edges(self):
        return self._edges

    @property
    def edge_set(self):
        return self._edge_set

    @property
    def vertex_set(self):
        return frozenset(v for e in self._edges for v in e)

    def __len__(self):
        return len(self._edges)

    def __eq__(self, other):
        if not isinstance(other, SubgraphCopy):
            return NotImplemented
        return self._edges == other._edges

    def __lt__(self, other):
        return self._edges < other._edges

    def __hash__(self):
        return hash(self._edges)

    def __repr__(self):
        return f'SubgraphCopy({list(self._edges)})'

    def to_json(self):
        return [list(e) for e in self._edges]

    def __getstate__(self):
        return self._edges

    def __setstate__(self, state):
        SubgraphCopy.__init__(self, state)


def _cliques_of_size(g, r):
    adj = g.adj
    found = []

    def extend(clique, cand):
        if len(clique) == r:
            found.append(tuple(clique))
            return
        need = r - len(clique)
        while cand and bin(cand).count('1') >= need:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            clique.append(v)
            # only higher-labelled neighbours, so each clique is built once in increasing order
            extend(clique, cand & adj[v])
            clique.pop()

    for v in range(g.n):
        higher = adj[v] >> (v + 1) << (v + 1)
        extend([v], higher)
    return found


def _copies_by_backtracking(g, pattern, node_budget):
    h = pattern
    order = []
    remaining = set(range(h.n))
    while remaining:
        # next pattern vertex: most already-ordered neighbours, then highest degree
        v = max(remaining, key=lambda x: (sum(1 for u in order if h.has_edge(u, x)), h.degree(x), -x))
        order.append(v)
        remaining.discard(v)
    pos = {v: i for i, v in enumerate(order)}
    back = [[pos[u] for u in h.neighbors(v) if pos[u] < i] for i, v in enumerate(order)]
    pattern_edges = [(pos[a], pos[b]) for a, b in h.edges]
    need_deg = [h.degree(v) for v in order]
    host_deg = g.degrees()
    image = [0] * h.n
    used = 0
    nodes = 0
    found = set()

    def rec(i):
        nonlocal used, nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded(f'subgraph search exceeded {node_budget} nodes', best=len(found))
        if i == h.n:
            edges = frozenset(normalize_edge(image[a], image[b]) for a, b in pattern_edges)
            found.add(edges)
            return
        cand = ((1 << g.n) - 1) & ~used
        for j in back[i]:
            cand &= g.adj[image[j]]
        while cand:
            x = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            if host_deg[x] < need_deg[i]:
                continue
            image[i] = x
            used |= 1 << x
            rec(i + 1)
            used &= ~(1 << x)

    rec(0)
    return [SubgraphCopy(edges) for edges in found]


def enumerate_copies(g, h, method='auto', vertex_ceiling=DEFAULT_VERTEX_CEILING,
                     node_budget=DEFAULT_NODE_BUDGET):
    """Every copy of h.pattern in g, once, sorted by edge list."""
    if method not in ('auto', 'clique', 'general'):
        raise DomainError(f'unknown copy enumeration method {method}')
    if method == 'clique' or (method == 'auto' and h.is_clique):
        if not h.is_clique:
            raise DomainError(f'pattern {h.name} is not a clique')
        copies = [SubgraphCopy(itertools.combinations(c, 2)) for c in _cliques_of_size(g, h.clique_order)]
    else:
        if g.n > vertex_ceiling:
            raise BudgetExceeded(
                f'general pattern search on {g.n} vertices exceeds the ceiling {vertex_ceiling}')
        copies = _copies_by_backtracking(g, h.pattern, node_budget)
    return sorted(copies)


def verify_copy(copy, h):
    """Independent isomorphism re-check of a copy against the pattern (networkx VF2)."""
    if len(copy.edges) != h.e_H:
        return False
    sub = nx.Graph()
    sub.add_edges_from(copy.edges)
    return nx.is_isomorphic(sub, h.pattern.to_networkx())


def is_rainbow(copy, coloring):
    colors = [coloring[e] for e in copy.edges]
    return len(set(colors)) == len(colors)


def rainbow_copies(g, h, coloring, copies=None):
    if copies is None:
        copies = enumerate_copies(g, h)
    return [c for c in copies if is_rainbow(c, coloring)]


def nonrainbow_census(g, h, coloring, copies=None):
    """edge -> (rainbow copies through it, non-rainbow copies through it), every edge of g."""
    if copies is None:
        copies = enumerate_copies(g, h)
    table = {e: [0, 0] for e in g.edges}
    for c in copies:
        col = 0 if is_rainbow(c, coloring) else 1
        for e in c.edges:
            table[e][col] += 1
    return {e: tuple(v) for e, v in table.items()}


def census_summary(table, e_H):
    """Copy totals and the share of edges all of whose copies are rainbow."""
    rainbow = sum(r for r, _ in table.values())
    nonrainbow = sum(nr for _, nr in table.values())
    if rainbow % e_H or nonrainbow % e_H:
        raise InvariantViolation('census totals are not multiples of e(H)')
    touched = [e for e, (r, nr) in table.items() if r + nr]
    clean = [e for e in touched if table[e][1] == 0]
    return {
        'rainbow_copies': rainbow // e_H,
        'nonrainbow_copies': nonrainbow // e_H,
        'edges': len(table),
        'edges_in_copies': len(touched),
        'edges_all_rainbow': len(clean),
        'fraction_all_rainbow': (len(clean) / len(touched)) if touched else 1.0,
    }


def census_to_json(table):
    return [{'edge': list(e), 'rainbow': r, 'nonrainbow': nr} for e, (r, nr) in sorted(table.items())]
