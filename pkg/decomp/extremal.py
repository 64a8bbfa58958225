"""
Extremal sweeps: phi(n, H) and phi^R(n, H) over every graph on n vertices.

The inner maximisation over colourings walks matching partitions and
minimises N^R; phi^R = e - (e(H)-1) N^R, so the smallest rainbow packing
wins. Pruning, in order of application:

  * H-free hosts are worth e(G) outright;
  * patterns whose edges pairwise intersect (triangles, stars) are rainbow
    under every proper colouring, so phi^R collapses to phi;
  * the search stops as soon as some colouring leaves no rainbow copy;
  * colourings whose rainbow copy set was already seen are skipped;
  * a packing search only has to beat the incumbent, so it is run with a
    stop threshold instead of to optimality.
"""
import zlib
from concurrent.futures import ProcessPoolExecutor

from graphs.graph import turan_graph, turan_number
from graphs.graph6 import parse_graph6
from graphs.isomorph import canonical_graph6, enumerate_nonisomorphic
from util.errors import BudgetExceeded, DomainError, InvariantViolation
from util.logger import get_logger
from util.misc import MetricLogger
from .coloring import enumerate_matching_partitions, greedy_edge_coloring
from .copies import HPattern, enumerate_copies
from .packing import DEFAULT_NODE_BUDGET, N_rainbow_value, N_value, max_packing_exact, packing_reaches

logger = get_logger(__name__)

DEFAULT_PARTITION_CEILING = 15
DEFAULT_RAINBOW_EDGE_CEILING = 12
DEFAULT_BUDGET_PARTITIONS = 2_000_000


class ColoringMaxResult(object):
    """Inner max over colourings: value, the colouring attaining it, and whether it is proven."""

    def __init__(self, value, witness, proven, explored):
        self.value = value
        self.witness = witness
        self.proven = proven
        self.explored = explored

    def __iter__(self):
        return iter((self.value, self.witness))

    def to_json(self):
        return {
            'value': self.value,
            'witness': self.witness.to_json() if self.witness is not None else None,
            'proven': self.proven,
        }

    def __repr__(self):
        return f'ColoringMaxResult(value={self.value}, proven={self.proven}, explored={self.explored})'


def _block_index(partition):
    return {e: i for i, block in enumerate(partition.blocks) for e in block}


def _rainbow_mask(copies, block_of):
    mask = 0
    for i, c in enumerate(copies):
        colors = [block_of[e] for e in c.edges]
        if len(set(colors)) == len(colors):
            mask |= 1 << i
    return mask


def phi_R_max_over_colorings(g, h, partition_ceiling=DEFAULT_PARTITION_CEILING, budget_partitions=None,
                             pruned=False, node_budget=DEFAULT_NODE_BUDGET, copies=None):
    """max over proper colourings of phi^R_chi(g, h), with the colouring (as a MatchingPartition).

    Without `pruned`, hosts beyond `partition_ceiling` edges or a spent
    `budget_partitions` raise BudgetExceeded carrying the best value found.
    With `pruned`, the best value found is returned with proven=False.
    """
    if copies is None:
        copies = enumerate_copies(g, h, node_budget=node_budget)
    greedy = greedy_edge_coloring(g)
    if not copies:
        return ColoringMaxResult(g.e, greedy.to_partition(), True, 0)
    if h.pairwise_incident:
        n_value, _ = N_value(g, h, node_budget=node_budget, copies=copies)
        return ColoringMaxResult(g.e - (h.e_H - 1) * n_value, greedy.to_partition(), True, 0)

    best_N, _ = N_rainbow_value(g, h, greedy, node_budget=node_budget, copies=copies)
    witness = greedy.to_partition()

    def value():
        return g.e - (h.e_H - 1) * best_N

    if best_N == 0:
        return ColoringMaxResult(value(), witness, True, 0)
    if budget_partitions is None and g.e > partition_ceiling:
        if pruned:
            budget_partitions = DEFAULT_BUDGET_PARTITIONS
        else:
            raise BudgetExceeded(
                f'{g.e} edges exceed the partition ceiling {partition_ceiling}', best=value(), proven=False)

    seen = set()
    explored = 0
    stream = enumerate_matching_partitions(g, budget=budget_partitions, ceiling=partition_ceiling)
    try:
        for partition in stream:
            explored += 1
            mask = _rainbow_mask(copies, _block_index(partition))
            if mask in seen:
                continue
            seen.add(mask)
            rainbow = [c for i, c in enumerate(copies) if mask >> i & 1]
            if packing_reaches(rainbow, best_N, node_budget=node_budget):
                continue
            best_N = max_packing_exact(rainbow, node_budget=node_budget).size
            witness = partition
            if best_N == 0:
                break
    except BudgetExceeded as exc:
        logger.debug(f'partition stream cut after {explored} partitions: {exc}')
        if not pruned:
            raise BudgetExceeded(str(exc), best=value(), proven=False, emitted=explored)
        return ColoringMaxResult(value(), witness, False, explored)
    return ColoringMaxResult(value(), witness, True, explored)


def ex_bruteforce(n, h, ceiling=8, node_budget=DEFAULT_NODE_BUDGET):
    """Largest edge count of an H-free graph on n vertices, by exhaustive sweep."""
    graphs = sorted(enumerate_nonisomorphic(n, ceiling=ceiling), key=lambda g: -g.e)
    for g in graphs:
        if not enumerate_copies(g, h, vertex_ceiling=max(n, 1), node_budget=node_budget):
            return g.e
    return 0


class ExtremalRecord(object):

    def __init__(self, n, pattern, mode, value, maximizers, witness_colorings, reference,
                 turan_is_maximizer, turan_unique, complete):
        self.n = n
        self.pattern = pattern
        self.mode = mode
        self.value = value
        self.maximizers = list(maximizers)
        self.witness_colorings = list(witness_colorings)
        self.reference = reference
        self.turan_is_maximizer = turan_is_maximizer
        self.turan_unique = turan_unique
        self.complete = complete

    @property
    def exceeds_reference(self):
        return self.value > self.reference

    def to_json(self):
        out = {
            'n': self.n,
            'pattern': self.pattern,
            'mode': self.mode,
            'value': self.value,
            'maximizers': self.maximizers,
            'reference': self.reference,
            'exceeds_reference': self.exceeds_reference,
            'turan_is_maximizer': self.turan_is_maximizer,
            'turan_unique': self.turan_unique,
            'complete': self.complete,
        }
        if self.mode == 'rainbow':
            out['witness_colorings'] = [w.to_json() for w in self.witness_colorings]
        return out

    def __repr__(self):
        return (f'ExtremalRecord(n={self.n}, pattern={self.pattern}, mode={self.mode}, '
                f'value={self.value}, maximizers={len(self.maximizers)})')


def _graph_value(g, h, rainbow, cfg):
    """(value, colouring witness or None, proven) for one host."""
    if not rainbow:
        n_value, _ = N_value(g, h, node_budget=cfg['budget_nodes'])
        return g.e - (h.e_H - 1) * n_value, None, True
    full = g.e <= cfg['rainbow_edge_ceiling']
    copies = enumerate_copies(g, h, node_budget=cfg['budget_nodes'])
    res = phi_R_max_over_colorings(
        g, h,
        partition_ceiling=cfg['partition_edge_ceiling'],
        budget_partitions=None if full else cfg['budget_partitions'],
        pruned=not full,
        node_budget=cfg['budget_nodes'],
        copies=copies)
    # any proper colouring sits between the uncoloured value and e(g)
    n_value, _ = N_value(g, h, node_budget=cfg['budget_nodes'], copies=copies)
    floor = g.e - (h.e_H - 1) * n_value
    if not floor <= res.value <= g.e:
        raise InvariantViolation(
            f'{canonical_graph6(g)}: phi^R {res.value} outside [{floor}, {g.e}]')
    return res.value, res.witness, res.proven


def _sweep(graphs, h, rainbow, cfg, progress=False):
    """Per-graph results for every graph that can still reach the running maximum."""
    best = None
    results = []
    metric_logger = MetricLogger(delimiter='  ')
    iterable = graphs
    if progress:
        iterable = metric_logger.log_every(graphs, cfg.get('print_freq', 200),
                                           header=f'sweep n={graphs[0].n}' if graphs else 'sweep',
                                           logger=logger)
    for g in iterable:
        if best is not None and g.e < best:
            continue
        value, witness, proven = _graph_value(g, h, rainbow, cfg)
        results.append((canonical_graph6(g), g.e, value, witness, proven))
        if best is None or value > best:
            best = value
        metric_logger.update(best=best)
    return results


def _sweep_shard(payload):
    g6s, h, rainbow, cfg = payload
    return _sweep([parse_graph6(s) for s in g6s], h, rainbow, cfg)


SWEEP_DEFAULTS = {
    'enumeration_ceiling': 8,
    'partition_edge_ceiling': DEFAULT_PARTITION_CEILING,
    'rainbow_edge_ceiling': DEFAULT_RAINBOW_EDGE_CEILING,
    'budget_partitions': DEFAULT_BUDGET_PARTITIONS,
    'budget_nodes': DEFAULT_NODE_BUDGET,
    'workers': 1,
}


def phi_n_table(n, h, rainbow=False, **kwargs):
    """phi(n, H) (or phi^R(n, H) with `rainbow`) over all graphs on n vertices.

    Keyword arguments override SWEEP_DEFAULTS. With workers > 1 the graphs
    are sharded by crc32 of their canonical graph6 string; the merged record
    does not depend on the sharding.
    """
    h.check_extremal()
    cfg = dict(SWEEP_DEFAULTS)
    unknown = set(kwargs) - set(SWEEP_DEFAULTS) - {'print_freq'}
    if unknown:
        raise DomainError(f'unknown sweep options {sorted(unknown)}')
    cfg.update(kwargs)

    graphs = sorted(enumerate_nonisomorphic(n, ceiling=cfg['enumeration_ceiling']),
                    key=lambda g: (-g.e, canonical_graph6(g)))
    if h.is_clique:
        reference = turan_number(n, h.clique_order)
    else:
        reference = ex_bruteforce(n, h, ceiling=cfg['enumeration_ceiling'], node_budget=cfg['budget_nodes'])

    workers = cfg['workers']
    if workers > 1:
        shards = [[] for _ in range(workers)]
        for g in graphs:
            g6 = canonical_graph6(g)
            shards[zlib.crc32(g6.encode('ascii')) % workers].append(g6)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sweep_shard, [(s, h, rainbow, cfg) for s in shards]))
        results = [r for part in parts for r in part]
    else:
        results = _sweep(graphs, h, rainbow, cfg, progress=True)

    value = max(r[2] for r in results) if results else 0
    top = sorted((r for r in results if r[2] == value), key=lambda r: r[0])
    complete = all(r[4] for r in results if r[1] >= value)

    turan_is_maximizer = turan_unique = False
    if n >= h.r - 1:
        turan_g6 = canonical_graph6(turan_graph(n, h.r - 1))
        turan_is_maximizer = any(r[0] == turan_g6 for r in top)
        turan_unique = turan_is_maximizer and len(top) == 1

    record = ExtremalRecord(
        n=n, pattern=h.name, mode='rainbow' if rainbow else 'uncolored', value=value,
        maximizers=[r[0] for r in top],
        witness_colorings=[r[3] for r in top] if rainbow else [],
        reference=reference,
        turan_is_maximizer=turan_is_maximizer, turan_unique=turan_unique, complete=complete)
    logger.info(f'{record}: reference {reference}, complete {complete}')
    return record


def reevaluate_record(record, h, **kwargs):
    """Re-run every maximizer in isolation; InvariantViolation on any mismatch."""
    cfg = dict(SWEEP_DEFAULTS)
    cfg.update(kwargs)
    rainbow = record.mode == 'rainbow'
    for g6 in record.maximizers:
        g = parse_graph6(g6)
        value, _, _ = _graph_value(g, h, rainbow, cfg)
        if value != record.value:
            raise InvariantViolation(f'maximizer {g6} re-evaluates to {value}, record says {record.value}')
    if rainbow:
        for g6, partition in zip(record.maximizers, record.witness_colorings):
            g = parse_graph6(g6)
            coloring = partition.to_coloring(g)
            n_r, _ = N_rainbow_value(g, h, coloring, node_budget=cfg['budget_nodes'])
            if g.e - (h.e_H - 1) * n_r != record.value:
                raise InvariantViolation(f'witness colouring of {g6} does not attain {record.value}')
    return True


def monotonicity_check(records):
    """Values must not decrease with n: an isolated vertex never lowers the maximum."""
    ordered = sorted(records, key=lambda r: r.n)
    violations = [
        {'n': b.n, 'value': b.value, 'previous': a.value}
        for a, b in zip(ordered, ordered[1:])
        if b.n == a.n + 1 and b.value < a.value
    ]
    return {'monotone': not violations, 'violations': violations}


def verify_main_theorem_small(n_range, r=3, **kwargs):
    """phi^R(n, K_3) = floor(n^2 / 4) over `n_range`; Turan uniqueness reported only."""
    if r != 3:
        raise DomainError(f'small-n verification is only grounded for r = 3, got {r}')
    h = HPattern.clique(3)
    rows, records = [], []
    for n in n_range:
        if n < 3:
            raise DomainError(f'n must be at least 3, got {n}')
        record = phi_n_table(n, h, rainbow=True, **kwargs)
        expected = turan_number(n, 3)
        if record.value != expected:
            raise InvariantViolation(f'phi^R({n}, K3) = {record.value}, expected {expected}')
        records.append(record)
        rows.append({
            'n': n,
            'value': record.value,
            'expected': expected,
            'maximizers': len(record.maximizers),
            'turan_is_maximizer': record.turan_is_maximizer,
            'turan_unique': record.turan_unique,
        })
    return {
        'r': r,
        'rows': rows,
        'verified': True,
        'monotonicity': monotonicity_check(records),
    }
