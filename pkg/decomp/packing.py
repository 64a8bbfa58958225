"""
Edge-disjoint packings of copies, and the decompositions they induce.

N(G,H) and N^R_chi(G,H) are maximum set packings over the copies' edge
sets. The exact solver is a branch and bound in two passes:

  1. value pass: branch on the free host edge covered by the fewest
     remaining candidates (each candidate through it, then "leave it
     uncovered"), bounded by min(residual edges // e(H), greedy clique
     cover of the conflict graph);
  2. witness pass: include-first search in candidate index order with the
     optimum as target, which returns the lexicographically smallest index
     set among all maximum packings.

Both passes share one node budget; running out raises BudgetExceeded with
the best packing size known so far.
"""
import itertools

import numpy as np

from graphs.graph import normalize_edge
from util.errors import BudgetExceeded, DomainError, InvariantViolation
from util.logger import get_logger
from .copies import enumerate_copies, is_rainbow, rainbow_copies

logger = get_logger(__name__)

DEFAULT_NODE_BUDGET = 10_000_000
BRUTE_FORCE_LIMIT = 20

UNRESTRICTED = 'unrestricted'
RAINBOW = 'rainbow'


def popcount(x):
    return bin(x).count('1')


class Packing(object):
    """Pairwise edge-disjoint copies; in rainbow mode every copy is rainbow under `coloring`."""

    def __init__(self, copies, host=None, mode=UNRESTRICTED, coloring=None):
        self.copies = tuple(copies)
        self.host = host
        self.mode = mode
        self.coloring = coloring
        self.check()

    def check(self):
        if self.mode not in (UNRESTRICTED, RAINBOW):
            raise DomainError(f'unknown packing mode {self.mode}')
        seen = set()
        for c in self.copies:
            if seen & c.edge_set:
                raise InvariantViolation(f'copies overlap on {sorted(seen & c.edge_set)}')
            seen |= c.edge_set
            if self.host is not None and not c.edge_set <= self.host.edge_set:
                raise InvariantViolation(f'copy {c} uses non-edges of the host')
        if self.mode == RAINBOW:
            if self.coloring is None:
                raise InvariantViolation('rainbow packing without a colouring')
            bad = [c for c in self.copies if not is_rainbow(c, self.coloring)]
            if bad:
                raise InvariantViolation(f'non-rainbow copy {bad[0]} in a rainbow packing')
        return True

    @property
    def size(self):
        return len(self.copies)

    def __len__(self):
        return len(self.copies)

    def covered_edges(self):
        return frozenset(e for c in self.copies for e in c.edges)

    def coverage(self, universe=None):
        """Fraction of host edges covered (or of `universe` when there is no host)."""
        if universe is None:
            universe = self.host.edge_set if self.host is not None else self.covered_edges()
        if not universe:
            return 0.0
        return len(self.covered_edges()) / len(universe)

    def to_json(self):
        return {'mode': self.mode, 'N': self.size, 'copies': [c.to_json() for c in self.copies]}

    def __repr__(self):
        return f'Packing(size={self.size}, mode={self.mode})'


class _PackingInstance(object):
    """Candidates as bitsets over their own edge universe."""

    def __init__(self, candidates):
        self.candidates = list(candidates)
        universe = sorted({e for c in self.candidates for e in c.edges})
        self.edge_pos = {e: i for i, e in enumerate(universe)}
        self.num_edges = len(universe)
        sizes = {len(c.edges) for c in self.candidates}
        if len(sizes) > 1:
            raise DomainError(f'candidates of mixed sizes {sorted(sizes)}')
        self.e_H = sizes.pop() if sizes else 0
        self.masks = []
        for c in self.candidates:
            m = 0
            for e in c.edges:
                m |= 1 << self.edge_pos[e]
            self.masks.append(m)
        m = len(self.candidates)
        self.by_edge = [0] * self.num_edges
        for i, mask in enumerate(self.masks):
            for b in _bits(mask):
                self.by_edge[b] |= 1 << i
        self.conflicts = []
        for i, mask in enumerate(self.masks):
            conf = 0
            for b in _bits(mask):
                conf |= self.by_edge[b]
            self.conflicts.append(conf)
        self.all_candidates = (1 << m) - 1
        self.nodes = 0

    def tick(self, budget, best):
        self.nodes += 1
        if self.nodes > budget:
            raise BudgetExceeded(f'packing search exceeded {budget} nodes', best=best, proven=False)

    def union_edges(self, avail):
        u = 0
        for i in _bits(avail):
            u |= self.masks[i]
        return u

    def upper_bound(self, avail):
        """min(residual edges // e(H), greedy clique cover of the conflict graph)."""
        if not avail:
            return 0
        by_residual = popcount(self.union_edges(avail)) // self.e_H
        cover, left = 0, avail
        while left:
            # candidates through one common edge are pairwise conflicting
            best_edge, best_count = None, 0
            for b in _bits(self.union_edges(left)):
                cnt = popcount(self.by_edge[b] & left)
                if cnt > best_count:
                    best_edge, best_count = b, cnt
            left &= ~self.by_edge[best_edge]
            cover += 1
            if cover >= by_residual:
                break
        return min(by_residual, cover)

    def greedy(self, order=None):
        used, chosen = 0, []
        for i in (order if order is not None else range(len(self.masks))):
            if not used & self.masks[i]:
                used |= self.masks[i]
                chosen.append(i)
        return chosen


def _bits(x):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _max_value(inst, budget, stop_at=None):
    """Optimum packing size by edge branching; stops early once `stop_at` is reached."""
    best = len(inst.greedy())
    if stop_at is not None and best >= stop_at:
        return best

    def rec(avail, count):
        nonlocal best
        inst.tick(budget, best)
        if not avail:
            if count > best:
                best = count
            return
        if count + inst.upper_bound(avail) <= best:
            return
        # most constrained free edge: fewest remaining candidates through it
        target, target_cands = None, None
        for b in _bits(inst.union_edges(avail)):
            cands = inst.by_edge[b] & avail
            if target is None or popcount(cands) < popcount(target_cands):
                target, target_cands = b, cands
                if popcount(cands) == 1:
                    break
        for i in _bits(target_cands):
            rec(avail & ~inst.conflicts[i], count + 1)
            if stop_at is not None and best >= stop_at:
                return
        rec(avail & ~target_cands, count)

    rec(inst.all_candidates, 0)
    return best


def _lex_smallest_witness(inst, target, budget):
    """Lexicographically smallest index set of size `target` among disjoint sets."""
    m = len(inst.masks)
    chosen = []

    def rec(i, avail):
        inst.tick(budget, target)
        if len(chosen) == target:
            return True
        avail &= ~((1 << i) - 1)
        if not avail:
            return False
        if len(chosen) + inst.upper_bound(avail) < target:
            return False
        for j in _bits(avail):
            chosen.append(j)
            if rec(j + 1, avail & ~inst.conflicts[j]):
                return True
            chosen.pop()
            avail &= ~(1 << j)
            if len(chosen) + inst.upper_bound(avail) < target:
                return False
        return False

    if target == 0:
        return []
    if not rec(0, inst.all_candidates if m else 0):
        raise InvariantViolation(f'no packing of size {target} found in the witness pass')
    return list(chosen)


def max_packing_exact(candidates, host=None, mode=UNRESTRICTED, coloring=None,
                      node_budget=DEFAULT_NODE_BUDGET):
    """Maximum set packing of `candidates`; witness is the lexicographically smallest index set."""
    inst = _PackingInstance(candidates)
    if not inst.candidates:
        return Packing([], host=host, mode=mode, coloring=coloring)
    value = _max_value(inst, node_budget)
    witness = _lex_smallest_witness(inst, value, node_budget)
    logger.debug(f'exact packing: {len(inst.candidates)} candidates, value {value}, {inst.nodes} nodes')
    return Packing([inst.candidates[i] for i in witness], host=host, mode=mode, coloring=coloring)


def packing_reaches(candidates, target, node_budget=DEFAULT_NODE_BUDGET):
    """True iff some packing has at least `target` copies (stops at the first such packing)."""
    if target <= 0:
        return True
    inst = _PackingInstance(candidates)
    if not inst.candidates:
        return False
    return _max_value(inst, node_budget, stop_at=target) >= target


def brute_force_packing(candidates):
    """Oracle: scan index subsets from the largest size down, in lexicographic order."""
    candidates = list(candidates)
    if len(candidates) > BRUTE_FORCE_LIMIT:
        raise BudgetExceeded(f'brute force packing is limited to {BRUTE_FORCE_LIMIT} candidates')
    for size in range(len(candidates), 0, -1):
        for combo in itertools.combinations(range(len(candidates)), size):
            edges = [e for i in combo for e in candidates[i].edges]
            if len(edges) == len(set(edges)):
                return [candidates[i] for i in combo]
    return []


def N_value(g, h, node_budget=DEFAULT_NODE_BUDGET, copies=None):
    """N(G,H) and a witness packing."""
    if copies is None:
        copies = enumerate_copies(g, h, node_budget=node_budget)
    packing = max_packing_exact(copies, host=g, node_budget=node_budget)
    return packing.size, packing


def N_rainbow_value(g, h, coloring, node_budget=DEFAULT_NODE_BUDGET, copies=None):
    """N^R_chi(G,H) and a witness packing in rainbow mode."""
    candidates = rainbow_copies(g, h, coloring, copies=copies)
    packing = max_packing_exact(candidates, host=g, mode=RAINBOW, coloring=coloring,
                                node_budget=node_budget)
    return packing.size, packing


class Decomposition(object):
    """Partition of E(G) into copy parts (sorted, first) and single edges (sorted)."""

    def __init__(self, host, copies, single_edges):
        self.host = host
        self.copies = tuple(sorted(copies))
        self.single_edges = tuple(sorted(normalize_edge(*e) for e in single_edges))

    @classmethod
    def from_packing(cls, packing, host=None):
        host = host if host is not None else packing.host
        covered = packing.covered_edges()
        return cls(host, packing.copies, [e for e in host.edges if e not in covered])

    @property
    def parts(self):
        return list(self.copies) + list(self.single_edges)

    @property
    def t(self):
        return len(self.copies) + len(self.single_edges)

    def verify(self, h, coloring=None):
        """Re-check the partition and the part-count identity; raises InvariantViolation."""
        seen = []
        for c in self.copies:
            if len(c.edges) != h.e_H:
                raise InvariantViolation(f'copy part {c} has {len(c.edges)} edges, pattern has {h.e_H}')
            if coloring is not None and not is_rainbow(c, coloring):
                raise InvariantViolation(f'copy part {c} is not rainbow')
            seen.extend(c.edges)
        seen.extend(self.single_edges)
        if len(seen) != len(set(seen)) or set(seen) != set(self.host.edges):
            raise InvariantViolation('decomposition parts do not partition the edge set')
        expected = self.host.e - (h.e_H - 1) * len(self.copies)
        if self.t != expected:
            raise InvariantViolation(f'part count {self.t} differs from e(G) - (e(H)-1)N = {expected}')
        return True

    def to_json(self):
        return {
            'copies': [c.to_json() for c in self.copies],
            'single_edges': [list(e) for e in self.single_edges],
            't': self.t,
            'N': len(self.copies),
        }


def decompose(g, h, coloring=None, node_budget=DEFAULT_NODE_BUDGET, copies=None):
    """Minimum (rainbow when `coloring` is given) H-decomposition, verified."""
    if coloring is None:
        _, packing = N_value(g, h, node_budget=node_budget, copies=copies)
    else:
        _, packing = N_rainbow_value(g, h, coloring, node_budget=node_budget, copies=copies)
    dec = Decomposition.from_packing(packing, host=g)
    dec.verify(h, coloring)
    return dec


def phi(g, h, node_budget=DEFAULT_NODE_BUDGET, copies=None):
    """phi(G,H) = e(G) - (e(H)-1) N(G,H)."""
    dec = decompose(g, h, node_budget=node_budget, copies=copies)
    return dec.t


def phi_rainbow(g, h, coloring, node_budget=DEFAULT_NODE_BUDGET, copies=None):
    """phi^R_chi(G,H) = e(G) - (e(H)-1) N^R_chi(G,H)."""
    dec = decompose(g, h, coloring=coloring, node_budget=node_budget, copies=copies)
    return dec.t


def greedy_packing(candidates, order_seed=None, host=None):
    """First-fit packing; candidate order is shuffled by `order_seed` when given."""
    inst = _PackingInstance(candidates)
    order = None
    if order_seed is not None:
        order = np.random.default_rng(order_seed).permutation(len(inst.candidates)).tolist()
    chosen = inst.greedy(order)
    return Packing([inst.candidates[i] for i in sorted(chosen)], host=host)


def local_search_packing(start, candidates, swap_depth=2):
    """Improve `start` by adding free copies (depth 1) and 1-out-2-in swaps (depth 2).

    Deterministic: moves are tried in candidate index order, and the
    cardinality never decreases.
    """
    if swap_depth not in (1, 2):
        raise DomainError(f'swap depth must be 1 or 2, got {swap_depth}')
    inst = _PackingInstance(candidates)
    index = {c: i for i, c in enumerate(inst.candidates)}
    chosen = []
    for c in start.copies:
        if c not in index:
            raise DomainError(f'start copy {c} is not among the candidates')
        chosen.append(index[c])
    used = 0
    for i in chosen:
        used |= inst.masks[i]

    improved = True
    while improved:
        improved = False
        for i in range(len(inst.masks)):
            if i not in chosen and not used & inst.masks[i]:
                chosen.append(i)
                used |= inst.masks[i]
                improved = True
        if improved or swap_depth < 2:
            continue
        for out in sorted(chosen):
            freed = used & ~inst.masks[out]
            fits = [j for j in range(len(inst.masks)) if j != out and not freed & inst.masks[j]]
            pair = next(((a, b) for a, b in itertools.combinations(fits, 2)
                         if not inst.masks[a] & inst.masks[b]), None)
            if pair is not None:
                chosen.remove(out)
                chosen.extend(pair)
                used = freed | inst.masks[pair[0]] | inst.masks[pair[1]]
                improved = True
                break
    return Packing([inst.candidates[i] for i in sorted(chosen)], host=start.host,
                   mode=start.mode, coloring=start.coloring)


def hypergraph_matching_greedy(copies, seed, host=None):
    """Random greedy matching in the e(H)-uniform hypergraph on host edges.

    Hyperedges (copies) are visited in a seed-determined random order and
    kept when disjoint from everything kept so far. Returns the packing and
    the covered fraction of host edges.
    """
    if seed is None:
        raise DomainError('hypergraph matching needs an explicit seed')
    packing = greedy_packing(copies, order_seed=seed, host=host)
    if host is None:
        universe = frozenset(e for c in copies for e in c.edges)
        return packing, packing.coverage(universe)
    return packing, packing.coverage()


def verify_decomposition(g, h, dec, coloring=None):
    """Independent re-check of a decomposition of g; raises InvariantViolation."""
    if dec.host != g:
        raise InvariantViolation('decomposition belongs to a different host')
    return dec.verify(h, coloring)


def decomposition_to_json(dec, mode=UNRESTRICTED):
    out = dec.to_json()
    out['mode'] = mode
    return out
