"""
Quantitative companions to the stability and sparsification arguments.

  * min_internal_partition: fewest edges left inside the parts of a k-way
    vertex partition (exact branch and bound, or multi-start local search);
  * edk_experiment: smallest K_r packing number among all graphs with
    ex(n, K_r) + m edges, held against the known lower bounds;
  * sparsify_closure_mc: how many K_r copies through a designated edge
    survive a random thinning of a multipartite host;
  * near_turan_rainbow_finder: rainbow K_{k+1} in a complete k-partite
    graph with one extra edge inside a part.
"""
import itertools
from concurrent.futures import ProcessPoolExecutor

import numpy as np
from scipy.special import comb

from graphs.graph import Graph, complete_multipartite, normalize_edge, turan_number
from graphs.isomorph import canonical_graph6, enumerate_nonisomorphic
from util.errors import BudgetExceeded, ColoringError, DomainError, InvariantViolation
from util.logger import get_logger
from util.misc import ceil_div
from .coloring import verify_proper
from .copies import HPattern, SubgraphCopy, _cliques_of_size, enumerate_copies, is_rainbow
from .extremal import ex_bruteforce
from .packing import DEFAULT_NODE_BUDGET, max_packing_exact, packing_reaches, phi_rainbow

logger = get_logger(__name__)

PARTITION_EXACT_CEILING = 16
BRUTE_FORCE_PARTITION_LIMIT = 12
FINDER_PART_SIZE_CEILING = 6
TRIAL_CHUNK = 250


def popcount(x):
    return bin(x).count('1')


# ---------------------------------------------------------------------------
# internal-edge partitions
# ---------------------------------------------------------------------------

class PartitionResult(object):

    def __init__(self, parts, internal_edges, optimal):
        self.parts = [sorted(p) for p in parts]
        self.internal_edges = internal_edges
        self.optimal = optimal

    def verify(self, g):
        """Parts must partition V(g) and reproduce the stored internal edge count."""
        flat = [v for p in self.parts for v in p]
        if sorted(flat) != list(range(g.n)):
            raise InvariantViolation('parts do not partition the vertex set')
        recount = sum(g.induced_edges(p) for p in self.parts)
        if recount != self.internal_edges:
            raise InvariantViolation(f'stored {self.internal_edges} internal edges, parts give {recount}')
        return True

    def to_json(self):
        return {'parts': self.parts, 'internal_edges': self.internal_edges, 'optimal': self.optimal}

    def __repr__(self):
        return f'PartitionResult(k={len(self.parts)}, internal_edges={self.internal_edges}, optimal={self.optimal})'


def _parts_from_assignment(assign, k):
    parts = [[] for _ in range(k)]
    for v, p in enumerate(assign):
        parts[p].append(v)
    # canonical order: by smallest vertex, empty parts last
    return sorted(parts, key=lambda p: (not p, p[0] if p else 0))


def _internal_count(g, assign):
    return sum(1 for u, v in g.edges if assign[u] == assign[v])


def _local_search(g, k, rng, restarts):
    """Best assignment over `restarts` random starts of move/swap descent."""
    best_assign, best_cost = None, None
    for _ in range(restarts):
        assign = rng.integers(0, k, size=g.n).tolist()
        improved = True
        while improved:
            improved = False
            for v in range(g.n):
                inside = [0] * k
                for u in g.neighbors(v):
                    inside[assign[u]] += 1
                target = min(range(k), key=lambda p: (inside[p], p != assign[v]))
                if inside[target] < inside[assign[v]]:
                    assign[v] = target
                    improved = True
            if improved:
                continue
            cost = _internal_count(g, assign)
            for u, v in itertools.combinations(range(g.n), 2):
                if assign[u] == assign[v]:
                    continue
                assign[u], assign[v] = assign[v], assign[u]
                swapped = _internal_count(g, assign)
                if swapped < cost:
                    improved = True
                    break
                assign[u], assign[v] = assign[v], assign[u]
        cost = _internal_count(g, assign)
        if best_cost is None or cost < best_cost:
            best_assign, best_cost = list(assign), cost
    return best_assign, best_cost


def min_internal_partition(g, k, mode='exact', exact_ceiling=PARTITION_EXACT_CEILING,
                           node_budget=DEFAULT_NODE_BUDGET, seed=0, restarts=20):
    """Partition V(g) into k parts minimising the number of edges inside parts."""
    if k < 1:
        raise DomainError(f'part count must be at least 1, got {k}')
    if mode not in ('exact', 'heuristic'):
        raise DomainError(f'unknown partition mode {mode}')
    if g.n == 0:
        return PartitionResult([[] for _ in range(k)], 0, True)

    rng = np.random.default_rng(seed)
    start_assign, start_cost = _local_search(g, k, rng, restarts if mode == 'heuristic' else 2)
    if mode == 'heuristic':
        return PartitionResult(_parts_from_assignment(start_assign, k), start_cost, False)
    if g.n > exact_ceiling:
        raise BudgetExceeded(f'exact partition search on {g.n} vertices exceeds the ceiling {exact_ceiling}',
                             best=start_cost, proven=False)

    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    masks = [0] * k
    assign = [0] * g.n
    best = start_cost
    best_assign = list(start_assign)
    nodes = 0

    def lower_bound(i):
        # every unplaced vertex adds at least its fewest placed neighbours in one part
        lb = 0
        for v in order[i:]:
            lb += min(popcount(g.adj[v] & m) for m in masks)
        return lb

    def rec(i, cost, used):
        nonlocal best, nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded(f'partition search exceeded {node_budget} nodes', best=best, proven=False)
        if i == len(order):
            if cost < best:
                best = cost
                best_assign[:] = assign
            return
        if cost + lower_bound(i) >= best:
            return
        v = order[i]
        # parts are interchangeable: open at most one new part per level
        for p in range(min(k, used + 1)):
            add = popcount(g.adj[v] & masks[p])
            if cost + add >= best:
                continue
            masks[p] |= 1 << v
            assign[v] = p
            rec(i + 1, cost + add, max(used, p + 1))
            masks[p] &= ~(1 << v)

    rec(0, 0, 0)
    logger.debug(f'exact partition: k={k}, n={g.n}, {nodes} nodes, optimum {best}')
    result = PartitionResult(_parts_from_assignment(best_assign, k), best, True)
    result.verify(g)
    return result


def brute_force_internal_edges(g, k):
    """Oracle over all k^n assignments."""
    if g.n > BRUTE_FORCE_PARTITION_LIMIT:
        raise BudgetExceeded(f'brute force partition is limited to {BRUTE_FORCE_PARTITION_LIMIT} vertices')
    if g.n == 0:
        return 0
    return min(_internal_count(g, assign) for assign in itertools.product(range(k), repeat=g.n))


# ---------------------------------------------------------------------------
# edk(m): minimum packing number above the Turan threshold
# ---------------------------------------------------------------------------

class BoundReport(object):

    def __init__(self, n, r, m, min_packing, bound_hoi, bound_gyori_tuza, witnesses):
        self.n = n
        self.r = r
        self.m = m
        self.min_packing = min_packing
        self.bound_hoi = bound_hoi
        self.bound_gyori_tuza = bound_gyori_tuza
        self.witnesses = list(witnesses)

    @property
    def hoi_denominator(self):
        return int(comb(self.r, 2, exact=True)) - (self.r - 2)

    @property
    def hoi_ok(self):
        return self.min_packing >= ceil_div(self.m, self.hoi_denominator)

    def to_row(self):
        return {
            'n': self.n,
            'r': self.r,
            'm': self.m,
            'min_packing': self.min_packing,
            'hoi_bound': self.bound_hoi,
            'gt_reference': self.bound_gyori_tuza,
        }

    def to_json(self):
        out = self.to_row()
        out.update({'witnesses': self.witnesses, 'hoi_ok': self.hoi_ok})
        return out


EDK_COLUMNS = ('n', 'r', 'm', 'min_packing', 'hoi_bound', 'gt_reference')


def edk_experiment(n, r, m_range, ceiling=8, node_budget=DEFAULT_NODE_BUDGET):
    """Sweep all graphs with ex(n, K_r) + m edges for each m; the m / (C(r,2) - (r-2)) bound is asserted."""
    h = HPattern.clique(r)
    base = turan_number(n, r)
    graphs = enumerate_nonisomorphic(n, ceiling=ceiling)
    max_edges = int(comb(n, 2, exact=True))
    reports = []
    for m in m_range:
        if m < 0:
            raise DomainError(f'edge surplus m must be non-negative, got {m}')
        if base + m > max_edges:
            raise DomainError(f'ex({n}, K{r}) + {m} = {base + m} exceeds C({n}, 2) = {max_edges}')
        best, witnesses = None, []
        for g in graphs.with_edges(base + m):
            copies = enumerate_copies(g, h, node_budget=node_budget)
            # only graphs that can tie or beat the incumbent need an exact value
            if best is not None and packing_reaches(copies, best + 1, node_budget=node_budget):
                continue
            value = max_packing_exact(copies, node_budget=node_budget).size
            if best is None or value < best:
                best, witnesses = value, []
            if value == best:
                witnesses.append(canonical_graph6(g))
        denom = int(comb(r, 2, exact=True)) - (r - 2)
        report = BoundReport(
            n=n, r=r, m=m, min_packing=best,
            bound_hoi=m / denom,
            bound_gyori_tuza=5 * m / 9 if r == 3 else None,
            witnesses=sorted(witnesses))
        if not report.hoi_ok:
            raise InvariantViolation(
                f'min N(G, K{r}) = {best} at n={n}, m={m} is below the bound ceil({m}/{denom})')
        logger.info(f'edk n={n} r={r} m={m}: min packing {best} over {len(graphs.with_edges(base + m))} graphs')
        reports.append(report)
    return reports


# ---------------------------------------------------------------------------
# Monte Carlo sparsification
# ---------------------------------------------------------------------------

def _pair_table(values, r, name):
    """Scalar, r x r matrix or upper-triangle list -> {(i, j): value} for i < j.

    The list form holds C(r, 2) values in the order (0, 1), (0, 2), ..., (r-2, r-1).
    """
    pairs = list(itertools.combinations(range(r), 2))
    if np.isscalar(values):
        return {p: float(values) for p in pairs}
    arr = np.asarray(values, dtype=float)
    if arr.shape == (r, r):
        return {(i, j): float(arr[i, j]) for i, j in pairs}
    if arr.shape == (len(pairs),):
        return {p: float(x) for p, x in zip(pairs, arr)}
    raise DomainError(f'{name} must be a scalar, a {r}x{r} matrix or {len(pairs)} pair values, '
                      f'got shape {arr.shape}')


def _check_unit(table, name):
    for pair, x in table.items():
        if not 0.0 <= x <= 1.0:
            raise DomainError(f'{name}{pair} = {x} is outside [0, 1]')


def random_multipartite(parts, densities, seed, designated_edge=None):
    """Multipartite host with independent cross edges at the given pair densities.

    Returns the graph and the vertex lists of the parts. `designated_edge`,
    when given, is always present.
    """
    if seed is None:
        raise DomainError('random hosts need an explicit seed')
    r = len(parts)
    dens = _pair_table(densities, r, 'density')
    _check_unit(dens, 'density')
    rng = np.random.default_rng(seed)
    labels, start = [], 0
    for s in parts:
        labels.append(list(range(start, start + s)))
        start += s
    edges = []
    for (a, b), d in sorted(dens.items()):
        pairs = list(itertools.product(labels[a], labels[b]))
        keep = rng.random(len(pairs)) < d
        edges.extend(p for p, k in zip(pairs, keep) if k)
    if designated_edge is not None:
        edges.append(normalize_edge(*designated_edge))
    return Graph(start, set(edges)), labels


def _part_of(labels):
    return {v: i for i, part in enumerate(labels) for v in part}


def _copies_through(g, labels, u, v):
    """Vertex tuples of every K_r (one vertex per part) containing the edge uv."""
    part_of = _part_of(labels)
    others = [i for i in range(len(labels)) if i not in (part_of[u], part_of[v])]
    found = []

    def extend(i, chosen, cand):
        if i == len(others):
            found.append(tuple(sorted(chosen)))
            return
        for w in labels[others[i]]:
            if cand >> w & 1:
                extend(i + 1, chosen + [w], cand & g.adj[w])

    extend(0, [u, v], g.adj[u] & g.adj[v])
    return found


class SparsifyTrial(object):

    def __init__(self, parts, densities, probabilities, designated_edge, family_size, counts,
                 expectation, eta, seed):
        self.parts = list(parts)
        self.densities = densities
        self.probabilities = probabilities
        self.designated_edge = designated_edge
        self.family_size = family_size
        self.counts = np.asarray(counts, dtype=np.int64)
        self.expectation = expectation
        self.eta = eta
        self.seed = seed
        if self.counts.size and (self.counts.min() < 0 or self.counts.max() > family_size):
            raise InvariantViolation('closed-copy count outside [0, |K|]')

    @property
    def trials(self):
        return int(self.counts.size)

    @property
    def mean(self):
        return float(self.counts.mean())

    @property
    def variance(self):
        return float(self.counts.var(ddof=1)) if self.trials > 1 else 0.0

    @property
    def std_error(self):
        return float(np.sqrt(self.variance / self.trials)) if self.trials else 0.0

    @property
    def outside_fraction(self):
        """Share of trials whose count falls outside (1 +- eta) * expectation."""
        if self.expectation == 0:
            return float(np.mean(self.counts != 0))
        dev = np.abs(self.counts - self.expectation)
        return float(np.mean(dev > self.eta * self.expectation))

    def within(self, num_se):
        if self.std_error == 0:
            return bool(abs(self.mean - self.expectation) < 1e-9)
        return bool(abs(self.mean - self.expectation) <= num_se * self.std_error)

    def to_json(self):
        return {
            'parts': self.parts,
            'densities': self.densities,
            'probabilities': self.probabilities,
            'designated_edge': list(self.designated_edge),
            'family_size': self.family_size,
            'trials': self.trials,
            'seed': self.seed,
            'counts': self.counts.tolist(),
            'mean': self.mean,
            'variance': self.variance,
            'std_error': self.std_error,
            'expectation': self.expectation,
            'eta': self.eta,
            'outside_fraction': self.outside_fraction,
            'within_3_se': self.within(3),
            'within_5_se': self.within(5),
        }


def _run_chunk(payload):
    seed_seq, size, keep_p, incidence, copy_len = payload
    rng = np.random.default_rng(seed_seq)
    keep = rng.random((size, keep_p.size)) < keep_p
    if incidence.shape[0] == 0:
        return np.zeros(size, dtype=np.int64)
    survived = keep.astype(np.int64) @ incidence.T
    return (survived == copy_len).sum(axis=1).astype(np.int64)


def sparsify_closure_mc(parts, densities, probabilities, designated_edge=None, trials=2000, seed=None,
                        eta=0.1, workers=1):
    """Count copies closed by the designated edge over `trials` independent thinnings.

    The host is drawn from the first substream of SeedSequence(seed); trial
    chunks of fixed size draw from the following substreams, so counts do
    not depend on `workers`.
    """
    if seed is None:
        raise DomainError('sparsify_closure_mc needs an explicit seed')
    if trials <= 0:
        raise DomainError(f'trials must be positive, got {trials}')
    r = len(parts)
    if r < 2 or min(parts) < 1:
        raise DomainError(f'need at least two non-empty parts, got {parts}')
    probs = _pair_table(probabilities, r, 'probability')
    _check_unit(probs, 'probability')

    starts = np.cumsum([0] + list(parts))
    if designated_edge is None:
        designated_edge = (0, int(starts[1]))
    u, v = normalize_edge(*designated_edge)

    n_chunks = ceil_div(trials, TRIAL_CHUNK)
    root = np.random.SeedSequence(seed)
    host_seq, *chunk_seqs = root.spawn(1 + n_chunks)
    g, labels = random_multipartite(parts, densities, host_seq, designated_edge=(u, v))
    part_of = _part_of(labels)
    if part_of[u] == part_of[v]:
        raise DomainError(f'designated edge {(u, v)} lies inside a part')

    family = _copies_through(g, labels, u, v)
    copy_edges = [[e for e in itertools.combinations(c, 2) if e != (u, v)] for c in family]
    relevant = sorted({e for edges in copy_edges for e in edges})
    pos = {e: i for i, e in enumerate(relevant)}
    keep_p = np.array([probs[normalize_edge(part_of[a], part_of[b])] for a, b in relevant], dtype=float)
    incidence = np.zeros((len(family), len(relevant)), dtype=np.int64)
    for i, edges in enumerate(copy_edges):
        for e in edges:
            incidence[i, pos[e]] = 1
    copy_len = r * (r - 1) // 2 - 1

    designated_pair = normalize_edge(part_of[u], part_of[v])
    factor = float(np.prod([p for pair, p in probs.items() if pair != designated_pair]))
    expectation = len(family) * factor

    sizes = [min(TRIAL_CHUNK, trials - i * TRIAL_CHUNK) for i in range(n_chunks)]
    payloads = [(s, size, keep_p, incidence, copy_len) for s, size in zip(chunk_seqs, sizes)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_chunk, payloads))
    else:
        chunks = [_run_chunk(p) for p in payloads]
    counts = np.concatenate(chunks)

    trial = SparsifyTrial(
        parts=parts,
        densities={f'{a},{b}': d for (a, b), d in sorted(_pair_table(densities, r, 'density').items())},
        probabilities={f'{a},{b}': p for (a, b), p in sorted(probs.items())},
        designated_edge=(u, v), family_size=len(family), counts=counts,
        expectation=expectation, eta=eta, seed=seed)
    logger.info(f'sparsify: |K|={len(family)}, mean {trial.mean:.3f}, expectation {expectation:.3f}, '
                f'se {trial.std_error:.3f}')
    return trial


# ---------------------------------------------------------------------------
# near-Turan rainbow clique finder
# ---------------------------------------------------------------------------

def near_turan_host(k, part_size, internal_edge):
    """Complete k-partite graph with equal parts, plus the edge (0, 1) inside part 0 when asked."""
    if k < 1:
        raise DomainError(f'part count must be at least 1, got {k}')
    if part_size < 1:
        raise DomainError(f'part size must be at least 1, got {part_size}')
    g = complete_multipartite([part_size] * k)
    if internal_edge:
        if part_size < 2:
            raise DomainError('an internal edge needs parts of size at least 2')
        g = Graph(g.n, list(g.edges) + [(0, 1)])
    return g


class FinderResult(object):

    def __init__(self, k, part_size, internal_edge, copy, searched):
        self.k = k
        self.part_size = part_size
        self.internal_edge = internal_edge
        self.copy = copy
        self.searched = searched

    @property
    def found(self):
        return self.copy is not None

    def to_json(self):
        return {
            'k': self.k,
            'part_size': self.part_size,
            'internal_edge': self.internal_edge,
            'found': self.found,
            'copy': self.copy.to_json() if self.copy is not None else None,
            'searched': self.searched,
        }


def _recheck_absence(host, k, part_size, internal_edge, coloring):
    """Second enumeration, in reverse order: internal edge plus one vertex from every other part."""
    if not internal_edge:
        # a k-partite graph has no K_{k+1}
        return True
    others = [list(range(p * part_size, (p + 1) * part_size))[::-1] for p in range(1, k)]
    for pick in itertools.product(*others):
        verts = (0, 1) + pick
        if all(host.has_edge(a, b) for a, b in itertools.combinations(verts, 2)):
            if is_rainbow(SubgraphCopy(itertools.combinations(verts, 2)), coloring):
                return False
    return True


def near_turan_rainbow_finder(k, part_size, internal_edge, coloring, ceiling=FINDER_PART_SIZE_CEILING):
    """Rainbow K_{k+1} in the near-Turan host under `coloring`, or certified absence."""
    if part_size > ceiling:
        raise BudgetExceeded(f'part size {part_size} exceeds the finder ceiling {ceiling}')
    host = near_turan_host(k, part_size, internal_edge)
    if coloring.host != host:
        raise ColoringError('colouring is not defined on the near-Turan host')
    if not verify_proper(host, coloring):
        raise ColoringError('finder needs a proper colouring')

    searched = 0
    for clique in _cliques_of_size(host, k + 1):
        searched += 1
        copy = SubgraphCopy(itertools.combinations(clique, 2))
        if is_rainbow(copy, coloring):
            return FinderResult(k, part_size, internal_edge, copy, searched)
    if not _recheck_absence(host, k, part_size, internal_edge, coloring):
        raise InvariantViolation('reverse-order search found a rainbow clique the forward search missed')
    return FinderResult(k, part_size, internal_edge, None, searched)


# ---------------------------------------------------------------------------
# stability probe
# ---------------------------------------------------------------------------

def stability_probe(g, h, coloring, mode=None, exact_ceiling=PARTITION_EXACT_CEILING,
                    node_budget=DEFAULT_NODE_BUDGET, seed=0):
    """phi^R against ex(n, H), next to the best (r-1)-part partition of g.

    Reports the deficit ex - phi^R and the internal edge count; no threshold
    is applied to either.
    """
    h.check_extremal()
    value = phi_rainbow(g, h, coloring, node_budget=node_budget)
    if h.is_clique:
        reference = turan_number(g.n, h.clique_order)
    else:
        reference = ex_bruteforce(g.n, h, node_budget=node_budget)
    if mode is None:
        mode = 'exact' if g.n <= exact_ceiling else 'heuristic'
    partition = min_internal_partition(g, h.r - 1, mode=mode, exact_ceiling=exact_ceiling,
                                       node_budget=node_budget, seed=seed)
    return {
        'n': g.n,
        'pattern': h.name,
        'phi_R': value,
        'ex_reference': reference,
        'deficit': reference - value,
        'partition': partition.to_json(),
        'internal_edges': partition.internal_edges,
    }
