"""
Run functions behind the CLI subcommands.

Each `run_*` takes the merged config, does the work through graphs/ and
decomp/, and returns (report, format). JSON reports embed the config, the
format version and a dict of verification flags; main_rainbow.py turns a
failed flag into a nonzero exit.
"""
from decomp import (HPattern, N_rainbow_value, census_summary, decompose,
                    edk_experiment, enumerate_copies, greedy_packing, hypergraph_matching_greedy,
                    local_search_packing, min_internal_partition, near_turan_host, near_turan_rainbow_finder,
                    nonrainbow_census, pattern_from_spec, phi_R_max_over_colorings, phi_n_table,
                    reevaluate_record, resolve_coloring, sparsify_closure_mc, stability_probe,
                    verify_copy, verify_main_theorem_small, verify_proper)
from decomp.copies import census_to_json
from decomp.packing import RAINBOW, UNRESTRICTED, decomposition_to_json
from decomp.stability import EDK_COLUMNS
from graphs import build_graph, canonical_graph6, enumerate_nonisomorphic, write_graph6
from util.errors import DomainError
from util.logger import get_logger
from util.registry import COMMANDS
from util.slio import dump_table
from util.time_counter import TimeCounter

logger = get_logger(__name__)

REPORT_SKIP_KEYS = ('out', 'output_dir', 'options', 'config_file')


def int_list(value):
    """`5`, `1,2,3` or `3-7` (inclusive) -> list of ints."""
    if isinstance(value, int):
        return [value]
    if isinstance(value, (list, tuple)):
        return [int(x) for x in value]
    text = str(value).strip()
    if '-' in text.lstrip('-') and ',' not in text:
        lo, hi = text.split('-', 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(',') if x]


def float_or_list(value):
    """`0.5`, `0.5,0.3,0.2` or matrix rows `0,0.5;0.5,0` -> float or (nested) list."""
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, (list, tuple)):
        return [float_or_list(v) for v in value]
    if ';' in str(value):
        return [[float(x) for x in row.split(',') if x] for row in str(value).split(';') if row]
    parts = [float(x) for x in str(value).split(',') if x]
    return parts[0] if len(parts) == 1 else parts


def _require(cfg, *keys):
    missing = [k for k in keys if cfg.get(k) is None]
    if missing:
        raise DomainError(f'command {cfg.command} needs {", ".join("--" + k for k in missing)}')


def _report(cfg, body, verification):
    config = {k: v for k, v in sorted(cfg.to_dict().items()) if k not in REPORT_SKIP_KEYS}
    out = {
        'command': cfg.command,
        'format_version': cfg.format_version,
        'config': config,
        'verification': verification,
    }
    out.update(body)
    return out


def _pattern(cfg):
    return pattern_from_spec(cfg.get('pattern') or f'K{cfg.get("r") or 3}')


def _coloring(cfg, g, h):
    """Resolve --coloring; `enumerate` picks the colouring maximising phi^R."""
    kind = cfg.get('coloring') or 'greedy'
    if kind == 'enumerate':
        res = phi_R_max_over_colorings(g, h, partition_ceiling=cfg.partition_edge_ceiling,
                                       budget_partitions=cfg.budget_partitions, node_budget=cfg.budget_nodes)
        return res.witness.to_coloring(g)
    return resolve_coloring(g, kind)


@COMMANDS.registe_with_name(module_name='decompose')
def run_decompose(cfg):
    _require(cfg, 'graph')
    tc = TimeCounter()
    g = build_graph(cfg.graph)
    h = _pattern(cfg)
    coloring = _coloring(cfg, g, h)
    copies = enumerate_copies(g, h, vertex_ceiling=cfg.general_h_vertex_ceiling, node_budget=cfg.budget_nodes)
    tc.timeit('copies')

    dec = decompose(g, h, node_budget=cfg.budget_nodes, copies=copies)
    rdec = decompose(g, h, coloring=coloring, node_budget=cfg.budget_nodes, copies=copies)
    n_value, n_rainbow = len(dec.copies), len(rdec.copies)
    tc.timeit('packing')

    greedy = greedy_packing(copies, order_seed=cfg.seed, host=g)
    improved = local_search_packing(greedy, copies, swap_depth=2)
    matched, coverage = hypergraph_matching_greedy(copies, seed=cfg.seed, host=g)
    tc.timeit('heuristics')
    logger.info(f'decompose timings: {tc}')

    verification = {
        'coloring_proper': verify_proper(g, coloring),
        'copies_isomorphic': all(verify_copy(c, h) for c in copies),
        'decomposition_valid': dec.verify(h),
        'rainbow_decomposition_valid': rdec.verify(h, coloring),
        'dominance': dec.t <= rdec.t <= g.e,
        'heuristics_sound': max(greedy.size, improved.size, matched.size) <= n_value,
    }
    body = {
        'graph': write_graph6(g),
        'pattern': h.name,
        'coloring': coloring.to_json(),
        'N': n_value,
        'N_R': n_rainbow,
        'phi': dec.t,
        'phi_R': rdec.t,
        'decomposition': decomposition_to_json(dec, UNRESTRICTED),
        'rainbow_decomposition': decomposition_to_json(rdec, RAINBOW),
        'heuristics': {
            'greedy': greedy.size,
            'local_search': improved.size,
            'hypergraph_matching': matched.size,
            'hypergraph_coverage': coverage,
        },
    }
    return _report(cfg, body, verification), 'json'


def _sweep_options(cfg):
    return dict(
        enumeration_ceiling=cfg.enumeration_ceiling,
        partition_edge_ceiling=cfg.partition_edge_ceiling,
        rainbow_edge_ceiling=cfg.rainbow_edge_ceiling,
        budget_partitions=cfg.budget_partitions,
        budget_nodes=cfg.budget_nodes,
        workers=cfg.workers,
        print_freq=cfg.get('print_freq', 200),
    )


@COMMANDS.registe_with_name(module_name='extremal')
def run_extremal(cfg):
    _require(cfg, 'n')
    h = _pattern(cfg)
    mode = cfg.get('mode') or 'rainbow'
    if mode not in ('rainbow', 'uncolored'):
        raise DomainError(f'extremal mode must be rainbow or uncolored, got {mode}')
    opts = _sweep_options(cfg)
    records = [phi_n_table(n, h, rainbow=(mode == 'rainbow'), **opts) for n in int_list(cfg.n)]
    verification = {'maximizers_reevaluate': all(reevaluate_record(r, h, **opts) for r in records)}
    body = {'records': [r.to_json() for r in records]}
    return _report(cfg, body, verification), 'json'


@COMMANDS.registe_with_name(module_name='theorem')
def run_theorem(cfg):
    n_range = int_list(cfg.get('n') or '3-7')
    result = verify_main_theorem_small(n_range, r=cfg.get('r') or 3, **_sweep_options(cfg))
    verification = {'values_match_turan': result['verified'],
                    'monotone': result['monotonicity']['monotone']}
    return _report(cfg, result, verification), 'json'


@COMMANDS.registe_with_name(module_name='stability')
def run_stability(cfg):
    _require(cfg, 'graph')
    g = build_graph(cfg.graph)
    k = cfg.get('k') or (_pattern(cfg).r - 1)
    mode = cfg.get('mode') or ('exact' if g.n <= cfg.partition_exact_ceiling else 'heuristic')
    result = min_internal_partition(g, k, mode=mode, exact_ceiling=cfg.partition_exact_ceiling,
                                    node_budget=cfg.budget_nodes, seed=cfg.seed)
    verification = {'partition_valid': result.verify(g)}
    body = {'graph': write_graph6(g), 'k': k, 'mode': mode, 'partition': result.to_json()}
    return _report(cfg, body, verification), 'json'


@COMMANDS.registe_with_name(module_name='probe')
def run_probe(cfg):
    _require(cfg, 'graph')
    g = build_graph(cfg.graph)
    h = _pattern(cfg)
    coloring = _coloring(cfg, g, h)
    body = stability_probe(g, h, coloring, exact_ceiling=cfg.partition_exact_ceiling,
                           node_budget=cfg.budget_nodes, seed=cfg.seed)
    body['graph'] = write_graph6(g)
    verification = {'coloring_proper': verify_proper(g, coloring),
                    'phi_R_within_edges': body['phi_R'] <= g.e}
    return _report(cfg, body, verification), 'json'


@COMMANDS.registe_with_name(module_name='edk')
def run_edk(cfg):
    _require(cfg, 'n', 'm')
    r = cfg.get('r') or 3
    reports = edk_experiment(int(cfg.n), r, int_list(cfg.m), ceiling=cfg.enumeration_ceiling,
                             node_budget=cfg.budget_nodes)
    return dump_table([rep.to_row() for rep in reports], EDK_COLUMNS), 'csv'


@COMMANDS.registe_with_name(module_name='mc-sparsify')
def run_mc_sparsify(cfg):
    _require(cfg, 'parts', 'seed')
    parts = int_list(cfg.parts)
    densities = float_or_list(cfg.get('densities', 0.5))
    probabilities = float_or_list(cfg.get('probabilities', 0.5))
    trial = sparsify_closure_mc(parts, densities, probabilities, trials=cfg.trials, seed=cfg.seed,
                                eta=cfg.eta, workers=cfg.workers)
    verification = {'counts_in_range': bool(trial.counts.min() >= 0 and trial.counts.max() <= trial.family_size)}
    return _report(cfg, {'trial': trial.to_json()}, verification), 'json'


@COMMANDS.registe_with_name(module_name='census')
def run_census(cfg):
    _require(cfg, 'graph')
    g = build_graph(cfg.graph)
    h = _pattern(cfg)
    coloring = _coloring(cfg, g, h)
    copies = enumerate_copies(g, h, vertex_ceiling=cfg.general_h_vertex_ceiling, node_budget=cfg.budget_nodes)
    table = nonrainbow_census(g, h, coloring, copies=copies)
    summary = census_summary(table, h.e_H)
    n_rainbow, _ = N_rainbow_value(g, h, coloring, node_budget=cfg.budget_nodes, copies=copies)
    verification = {
        'coloring_proper': verify_proper(g, coloring),
        'totals_match': summary['rainbow_copies'] + summary['nonrainbow_copies'] == len(copies),
    }
    body = {'graph': write_graph6(g), 'pattern': h.name, 'census': census_to_json(table),
            'summary': summary, 'N_R': n_rainbow}
    return _report(cfg, body, verification), 'json'


@COMMANDS.registe_with_name(module_name='finder')
def run_finder(cfg):
    _require(cfg, 'k', 'part_size')
    internal = bool(cfg.get('internal_edge'))
    host = near_turan_host(cfg.k, cfg.part_size, internal)
    h = HPattern.clique(cfg.k + 1)
    coloring = _coloring(cfg, host, h)
    result = near_turan_rainbow_finder(cfg.k, cfg.part_size, internal, coloring,
                                       ceiling=cfg.finder_part_size_ceiling)
    verification = {'coloring_proper': verify_proper(host, coloring)}
    if result.found:
        verification['witness_is_clique'] = verify_copy(result.copy, h)
    return _report(cfg, {'finder': result.to_json()}, verification), 'json'


@COMMANDS.registe_with_name(module_name='enumerate')
def run_enumerate(cfg):
    _require(cfg, 'n')
    graphs = enumerate_nonisomorphic(int(cfg.n), ceiling=cfg.enumeration_ceiling)
    return ''.join(canonical_graph6(g) + '\n' for g in graphs), 'text'


def run_command(cfg):
    run_func = COMMANDS.get(cfg.command)
    if run_func is None:
        raise DomainError(f'unknown command {cfg.command}; known: {", ".join(COMMANDS.keys())}')
    logger.info(f'running {cfg.command}')
    return run_func(cfg)

