"""
Proper edge colourings.

Colourings are immutable edge -> colour maps bound to a host graph. The
adversarial search never looks at raw colourings: rainbow status only
depends on which edges share a colour, so it walks MatchingPartition
objects (colourings modulo renaming) instead.
"""
from types import MappingProxyType

from graphs.graph import Graph, normalize_edge
from util.errors import BudgetExceeded, ColoringError, DomainError
from util.logger import get_logger

logger = get_logger(__name__)

DEFAULT_EDGE_CEILING = 15


class EdgeColoring(object):
    __slots__ = ('_host', '_color_of')

    def __init__(self, host, color_of):
        normalized = {}
        for e, c in color_of.items():
            e = normalize_edge(*e)
            if e not in host.edge_set:
                raise ColoringError(f'coloured pair {e} is not an edge of the host')
            if not isinstance(c, int) or c < 0:
                raise ColoringError(f'colour of {e} must be a non-negative integer, got {c!r}')
            normalized[e] = c
        missing = [e for e in host.edges if e not in normalized]
        if missing:
            raise ColoringError(f'colouring is not total: {len(missing)} edges uncoloured, first {missing[0]}')
        self._host = host
        self._color_of = MappingProxyType(normalized)

    @property
    def host(self):
        return self._host

    @property
    def color_of(self):
        return self._color_of

    @property
    def num_colors(self):
        return len(set(self._color_of.values()))

    def __getitem__(self, edge):
        return self._color_of[normalize_edge(*edge)]

    def color_classes(self):
        classes = {}
        for e in self._host.edges:
            classes.setdefault(self._color_of[e], []).append(e)
        return classes

    def to_partition(self):
        return MatchingPartition(self.color_classes().values())

    def to_json(self):
        return [{'edge': [u, v], 'color': self._color_of[(u, v)]} for u, v in self._host.edges]

    @classmethod
    def from_json(cls, host, items):
        return cls(host, {tuple(item['edge']): int(item['color']) for item in items})

    @classmethod
    def from_partition(cls, host, partition):
        return cls(host, {e: i for i, block in enumerate(partition.blocks) for e in block})

    @classmethod
    def all_distinct(cls, host):
        return cls(host, {e: i for i, e in enumerate(host.edges)})

    def __eq__(self, other):
        if not isinstance(other, EdgeColoring):
            return NotImplemented
        return self._host == other._host and dict(self._color_of) == dict(other._color_of)

    def __hash__(self):
        return hash((self._host, tuple(sorted(self._color_of.items()))))

    def __repr__(self):
        return f'EdgeColoring(e={len(self._color_of)}, colors={self.num_colors})'


class MatchingPartition(object):
    """A partition of E(G) into matchings, blocks sorted by their smallest edge."""
    __slots__ = ('_blocks',)

    def __init__(self, blocks):
        blocks = [tuple(sorted(normalize_edge(*e) for e in b)) for b in blocks]
        blocks = [b for b in blocks if b]
        self._blocks = tuple(sorted(blocks))

    @property
    def blocks(self):
        return self._blocks

    def __len__(self):
        return len(self._blocks)

    def check(self, host):
        """Raises ColoringError unless this is a matching partition of E(host)."""
        seen = set()
        for block in self._blocks:
            touched = set()
            for u, v in block:
                if (u, v) in seen:
                    raise ColoringError(f'edge {(u, v)} appears in two blocks')
                if u in touched or v in touched:
                    raise ColoringError(f'block {block} is not a matching')
                seen.add((u, v))
                touched.update((u, v))
        if seen != set(host.edges):
            raise ColoringError('blocks do not cover the edge set exactly')
        return True

    def to_coloring(self, host):
        return EdgeColoring.from_partition(host, self)

    def to_json(self):
        return [[list(e) for e in block] for block in self._blocks]

    @classmethod
    def from_json(cls, items):
        return cls([[tuple(e) for e in block] for block in items])

    def __eq__(self, other):
        if not isinstance(other, MatchingPartition):
            return NotImplemented
        return self._blocks == other._blocks

    def __hash__(self):
        return hash(self._blocks)

    def __repr__(self):
        return f'MatchingPartition(blocks={len(self._blocks)})'


def verify_proper(g, coloring):
    """True iff no vertex sees the same colour twice; ColoringError if not total."""
    color_of = coloring.color_of
    missing = [e for e in g.edges if e not in color_of]
    if missing:
        raise ColoringError(f'colouring is not total on the host: first missing edge {missing[0]}')
    seen = [set() for _ in range(g.n)]
    for u, v in g.edges:
        c = color_of[(u, v)]
        if c in seen[u] or c in seen[v]:
            return False
        seen[u].add(c)
        seen[v].add(c)
    return True


def _smallest_free(used):
    c = 0
    while c in used:
        c += 1
    return c


def greedy_edge_coloring(g):
    """Lexicographic greedy colouring; at most 2*Delta - 1 colours."""
    at = [set() for _ in range(g.n)]
    color_of = {}
    for u, v in g.edges:
        c = _smallest_free(at[u] | at[v])
        color_of[(u, v)] = c
        at[u].add(c)
        at[v].add(c)
    return EdgeColoring(g, color_of)


class _FanColoring(object):
    """Mutable partial colouring used by the Misra-Gries procedure."""

    def __init__(self, g):
        self.g = g
        self.palette = range(g.max_degree() + 1)
        self.color = {}
        self.at = [dict() for _ in range(g.n)]  # vertex -> {colour: neighbour}

    def get(self, u, v):
        return self.color.get(normalize_edge(u, v))

    def set(self, u, v, c):
        self.clear(u, v)
        self.color[normalize_edge(u, v)] = c
        self.at[u][c] = v
        self.at[v][c] = u

    def clear(self, u, v):
        c = self.color.pop(normalize_edge(u, v), None)
        if c is not None:
            del self.at[u][c]
            del self.at[v][c]

    def is_free(self, v, c):
        return c not in self.at[v]

    def free_color(self, v):
        for c in self.palette:
            if c not in self.at[v]:
                return c
        raise ColoringError(f'no free colour at vertex {v}')

    def maximal_fan(self, u, v):
        fan = [v]
        in_fan = {v}
        grown = True
        while grown:
            grown = False
            for w in self.g.neighbors(u):
                if w in in_fan:
                    continue
                c = self.get(u, w)
                if c is not None and self.is_free(fan[-1], c):
                    fan.append(w)
                    in_fan.add(w)
                    grown = True
                    break
        return fan

    def invert_path(self, u, c, d):
        """Swap c and d on the maximal path from u alternating d, c, d, ..."""
        path = []
        x, want = u, d
        while want in self.at[x]:
            y = self.at[x][want]
            path.append((x, y, want))
            x = y
            want = c if want == d else d
        for x, y, _ in path:
            self.clear(x, y)
        for x, y, col in path:
            self.set(x, y, d if col == c else c)

    def is_fan_prefix(self, u, fan, end):
        for i in range(end):
            c = self.get(u, fan[i + 1])
            if c is None or not self.is_free(fan[i], c):
                return False
        return True

    def color_edge(self, u, v):
        fan = self.maximal_fan(u, v)
        c = self.free_color(u)
        d = self.free_color(fan[-1])
        self.invert_path(u, c, d)
        for i, w in enumerate(fan):
            if self.is_free(w, d) and self.is_fan_prefix(u, fan, i):
                shifted = [self.get(u, fan[j + 1]) for j in range(i)]
                for j in range(i + 1):
                    self.clear(u, fan[j])
                for j in range(i):
                    self.set(u, fan[j], shifted[j])
                self.set(u, w, d)
                return
        raise ColoringError(f'fan rotation failed at edge {(u, v)}')


def vizing_coloring(g):
    """Misra-Gries fan rotation; at most Delta + 1 colours."""
    state = _FanColoring(g)
    for u, v in g.edges:
        state.color_edge(u, v)
    return EdgeColoring(g, dict(state.color))


def enumerate_matching_partitions(g, budget=None, ceiling=DEFAULT_EDGE_CEILING):
    """Every partition of E(g) into matchings, each once, in canonical order.

    Edges are placed in lexicographic order; an edge joins any earlier block
    it does not touch or opens the next block (restricted-growth strings),
    so no partition is produced twice. Raises BudgetExceeded (with the
    number emitted so far) once `budget` partitions have been produced and
    more remain.
    """
    edges = g.edges
    m = len(edges)
    if budget is None and m > ceiling:
        raise BudgetExceeded(
            f'{m} edges exceed the partition enumeration ceiling {ceiling}; pass a budget', emitted=0)
    if budget is not None and budget <= 0:
        raise DomainError(f'partition budget must be positive, got {budget}')
    bits = [(1 << u) | (1 << v) for u, v in edges]
    masks = []
    assign = [0] * m
    emitted = 0

    def rec(i):
        nonlocal emitted
        if i == m:
            if budget is not None and emitted >= budget:
                raise BudgetExceeded(f'matching partition budget {budget} exhausted', emitted=emitted)
            blocks = [[] for _ in masks]
            for idx, j in enumerate(assign):
                blocks[j].append(edges[idx])
            emitted += 1
            yield MatchingPartition(blocks)
            return
        bit = bits[i]
        for j in range(len(masks)):
            if not masks[j] & bit:
                masks[j] |= bit
                assign[i] = j
                yield from rec(i + 1)
                masks[j] ^= bit
        masks.append(bit)
        assign[i] = len(masks) - 1
        yield from rec(i + 1)
        masks.pop()

    yield from rec(0)


def rainbow_forcing_coloring(g, copy):
    """Proper colouring of g under which `copy` is rainbow.

    The copy's edges take colours 0..e(H)-1; every other edge then takes the
    smallest colour absent at both endpoints, so properness holds by
    construction and nothing is repaired afterwards.
    """
    at = [set() for _ in range(g.n)]
    color_of = {}
    for c, (u, v) in enumerate(copy.edges):
        if (u, v) not in g.edge_set:
            raise DomainError(f'copy edge {(u, v)} is not an edge of the host')
        color_of[(u, v)] = c
        at[u].add(c)
        at[v].add(c)
    for u, v in g.edges:
        if (u, v) in color_of:
            continue
        c = _smallest_free(at[u] | at[v])
        color_of[(u, v)] = c
        at[u].add(c)
        at[v].add(c)
    return EdgeColoring(g, color_of)


def resolve_coloring(g, kind):
    """`greedy`, `vizing`, `all-distinct`, or a path to a JSON colouring file."""
    if kind == 'greedy':
        return greedy_edge_coloring(g)
    if kind == 'vizing':
        return vizing_coloring(g)
    if kind == 'all-distinct':
        return EdgeColoring.all_distinct(g)
    from util.slio import slload
    path = kind[len('file:'):] if kind.startswith('file:') else kind
    items = slload(path, file_format='json')
    if isinstance(items, dict):
        items = items['coloring']
    coloring = EdgeColoring.from_json(g, items)
    if not verify_proper(g, coloring):
        raise ColoringError(f'colouring from {path} is not proper')
    return coloring
