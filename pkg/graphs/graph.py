"""
Simple undirected graphs on the dense vertex set 0..n-1.

A Graph is immutable. Edges are stored as sorted pairs (u, v) with u < v,
and each vertex also gets a neighbour bitmask so clique search and
partition counting can intersect neighbourhoods with integer ops.
Equality is label-sensitive; isomorphism lives in graphs.isomorph.
"""
import itertools

import networkx as nx
import numpy as np

from util.errors import DomainError


def normalize_edge(u, v):
    return (u, v) if u < v else (v, u)


class Graph(object):
    __slots__ = ('_n', '_edges', '_edge_set', '_adj', '_edge_index')

    def __init__(self, n, edges=()):
        if n < 0:
            raise DomainError(f'vertex count must be non-negative, got {n}')
        adj = [0] * n
        seen = set()
        for u, v in edges:
            if u == v:
                raise DomainError(f'self-loop at vertex {u}')
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f'edge ({u}, {v}) out of range for n={n}')
            e = normalize_edge(u, v)
            if e in seen:
                raise DomainError(f'parallel edge {e}')
            seen.add(e)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._n = n
        self._edges = tuple(sorted(seen))
        self._edge_set = frozenset(seen)
        self._adj = tuple(adj)
        self._edge_index = None

    @property
    def n(self):
        return self._n

    @property
    def edges(self):
        """Edges in lexicographic order."""
        return self._edges

    @property
    def edge_set(self):
        return self._edge_set

    @property
    def adj(self):
        return self._adj

    @property
    def e(self):
        return len(self._edges)

    @property
    def edge_index(self):
        """edge -> position in `edges`; bitsets over edges use these positions."""
        if self._edge_index is None:
            self._edge_index = {e: i for i, e in enumerate(self._edges)}
        return self._edge_index

    def has_edge(self, u, v):
        return u != v and bool(self._adj[u] >> v & 1)

    def neighbors(self, v):
        mask = self._adj[v]
        return [u for u in range(self._n) if mask >> u & 1]

    def degree(self, v):
        return bin(self._adj[v]).count('1')

    def degrees(self):
        return [self.degree(v) for v in range(self._n)]

    def max_degree(self):
        return max(self.degrees(), default=0)

    def induced_edges(self, vertices):
        """Number of edges with both ends in `vertices`."""
        mask = 0
        for v in vertices:
            mask |= 1 << v
        return sum(bin(self._adj[v] & mask).count('1') for v in vertices) // 2

    def relabel(self, perm):
        """Graph with vertex v renamed perm[v]."""
        return Graph(self._n, [(perm[u], perm[v]) for u, v in self._edges])

    def to_networkx(self):
        G = nx.Graph()
        G.add_nodes_from(range(self._n))
        G.add_edges_from(self._edges)
        return G

    @classmethod
    def from_networkx(cls, G):
        nodes = sorted(G.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        return cls(len(nodes), [(index[u], index[v]) for u, v in G.edges() if u != v])

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self):
        return hash((self._n, self._edges))

    def __repr__(self):
        return f'Graph(n={self._n}, e={self.e})'

    def __getstate__(self):
        return (self._n, self._edges)

    def __setstate__(self, state):
        Graph.__init__(self, *state)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def turan_parts(n, k):
    """Vertex lists of T_k(n): sizes non-increasing, vertices in label order."""
    if k < 1:
        raise DomainError(f'part count must be at least 1, got {k}')
    if n < 0:
        raise DomainError(f'vertex count must be non-negative, got {n}')
    q, rem = divmod(n, k)
    sizes = [q + 1] * rem + [q] * (k - rem)
    return _parts_from_sizes(sizes)


def _parts_from_sizes(sizes):
    parts, start = [], 0
    for s in sizes:
        parts.append(list(range(start, start + s)))
        start += s
    return parts


def complete_multipartite(sizes):
    if any(s < 0 for s in sizes):
        raise DomainError(f'part sizes must be non-negative, got {sizes}')
    parts = _parts_from_sizes(sizes)
    edges = []
    for a, b in itertools.combinations(range(len(parts)), 2):
        edges.extend(itertools.product(parts[a], parts[b]))
    return Graph(sum(sizes), edges)


def turan_graph(n, k):
    """T_k(n), the complete balanced k-partite graph on n vertices."""
    parts = turan_parts(n, k)
    return complete_multipartite([len(p) for p in parts])


def turan_number(n, r):
    """ex(n, K_r) = e(T_{r-1}(n)) by Turan's theorem."""
    if r < 3:
        raise DomainError(f'clique order must be at least 3, got {r}')
    if n < 0:
        raise DomainError(f'vertex count must be non-negative, got {n}')
    sizes = [len(p) for p in turan_parts(n, r - 1)]
    return (n * n - sum(s * s for s in sizes)) // 2


def complete_graph(n):
    return Graph(n, itertools.combinations(range(n), 2))


def empty_graph(n):
    return Graph(n)


def cycle_graph(n):
    if n < 3:
        raise DomainError(f'a cycle needs at least 3 vertices, got {n}')
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves):
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def random_graph(n, p, seed):
    """G(n, p); the seed fixes the edge set."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f'edge probability must lie in [0, 1], got {p}')
    rng = np.random.default_rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    keep = rng.random(len(pairs)) < p
    return Graph(n, [e for e, k in zip(pairs, keep) if k])


def complement(g):
    return Graph(g.n, [e for e in itertools.combinations(range(g.n), 2) if e not in g.edge_set])


def add_isolated_vertex(g):
    return Graph(g.n + 1, g.edges)


def disjoint_union(g, h):
    shift = g.n
    return Graph(g.n + h.n, list(g.edges) + [(u + shift, v + shift) for u, v in h.edges])
