import pytest

from conftest import fixture_path, graphs_upto
from decomp import (EdgeColoring, HPattern, MatchingPartition, SubgraphCopy, enumerate_copies,
                    enumerate_matching_partitions, greedy_edge_coloring, is_rainbow, rainbow_forcing_coloring,
                    resolve_coloring, verify_proper, vizing_coloring)
from graphs import (Graph, complete_graph, complete_multipartite, cycle_graph, enumerate_nonisomorphic,
                    path_graph, random_graph)
from util.errors import BudgetExceeded, ColoringError


def _sample_graphs():
    yield complete_graph(5)
    yield complete_graph(6)
    yield cycle_graph(7)
    yield complete_multipartite([3, 3, 3])
    for seed in range(15):
        yield random_graph(9, 0.5, seed)


def test_greedy_is_proper_and_bounded():
    for g in _sample_graphs():
        col = greedy_edge_coloring(g)
        assert verify_proper(g, col)
        assert col.num_colors <= max(2 * g.max_degree() - 1, 1)


def test_vizing_is_proper_with_delta_plus_one_colors():
    for g in _sample_graphs():
        col = vizing_coloring(g)
        assert verify_proper(g, col)
        assert col.num_colors <= g.max_degree() + 1


def test_every_coloring_is_proper_up_to_six_vertices():
    patterns = (HPattern.clique(3), HPattern.clique(4))
    for g in graphs_upto(6):
        greedy = greedy_edge_coloring(g)
        assert verify_proper(g, greedy)
        assert greedy.num_colors <= max(2 * g.max_degree() - 1, 0)
        vizing = vizing_coloring(g)
        assert verify_proper(g, vizing)
        assert vizing.num_colors <= g.max_degree() + 1
        for h in patterns:
            for copy in enumerate_copies(g, h):
                col = rainbow_forcing_coloring(g, copy)
                assert verify_proper(g, col)
                assert is_rainbow(copy, col)


@pytest.mark.slow
@pytest.mark.parametrize('n', (7, 8))
def test_vizing_bound_on_every_graph(n):
    for g in enumerate_nonisomorphic(n):
        col = vizing_coloring(g)
        assert verify_proper(g, col)
        assert col.num_colors <= g.max_degree() + 1


def _vizing_random(count):
    for seed in range(count):
        g = random_graph(2 + seed % 49, 0.05 + (seed % 10) / 10, seed)
        col = vizing_coloring(g)
        assert verify_proper(g, col)
        assert col.num_colors <= g.max_degree() + 1


def test_vizing_bound_on_random_graphs():
    _vizing_random(100)


@pytest.mark.slow
def test_vizing_bound_on_many_random_graphs():
    _vizing_random(1000)


def test_verify_proper_detects_conflict():
    g = path_graph(3)
    assert not verify_proper(g, EdgeColoring(g, {(0, 1): 0, (1, 2): 0}))
    assert verify_proper(g, EdgeColoring(g, {(0, 1): 0, (1, 2): 1}))


def test_coloring_must_be_total():
    g = path_graph(3)
    with pytest.raises(ColoringError):
        EdgeColoring(g, {(0, 1): 0})
    with pytest.raises(ColoringError):
        EdgeColoring(g, {(0, 1): 0, (1, 2): 1, (0, 2): 2})


@pytest.mark.parametrize('g,count', [
    (path_graph(3), 1),
    (Graph(4, [(0, 1), (2, 3)]), 2),
    (complete_graph(3), 1),
    (complete_graph(4), 8),
    (Graph(3), 1),
])
def test_matching_partition_counts(g, count):
    partitions = list(enumerate_matching_partitions(g))
    assert len(partitions) == count
    assert len(set(partitions)) == count
    for p in partitions:
        assert p.check(g)


def test_k4_partitions_include_the_three_perfect_matchings(k4, k4_matching_coloring):
    partitions = set(enumerate_matching_partitions(k4))
    assert k4_matching_coloring.to_partition() in partitions


def test_partition_budget_reports_emitted(k4):
    stream = enumerate_matching_partitions(k4, budget=3)
    seen = []
    with pytest.raises(BudgetExceeded) as info:
        for p in stream:
            seen.append(p)
    assert len(seen) == 3
    assert info.value.emitted == 3


def test_partition_ceiling_without_budget():
    with pytest.raises(BudgetExceeded):
        next(enumerate_matching_partitions(complete_graph(7)))


def test_partition_round_trip_through_coloring(k4, k4_matching_coloring):
    partition = k4_matching_coloring.to_partition()
    assert len(partition) == 3
    again = partition.to_coloring(k4).to_partition()
    assert again == partition
    assert MatchingPartition.from_json(partition.to_json()) == partition


def test_rainbow_forcing_coloring(k4):
    copy = SubgraphCopy([(0, 1), (0, 2), (1, 2)])
    col = rainbow_forcing_coloring(k4, copy)
    assert verify_proper(k4, col)
    assert {col[e] for e in copy.edges} == {0, 1, 2}
    assert is_rainbow(copy, col)


def test_rainbow_forcing_on_larger_hosts():
    g = complete_graph(6)
    copy = SubgraphCopy([(1, 3), (1, 4), (1, 5), (3, 4), (3, 5), (4, 5)])
    col = rainbow_forcing_coloring(g, copy)
    assert verify_proper(g, col)
    assert is_rainbow(copy, col)


def test_resolve_coloring(k4):
    assert resolve_coloring(k4, 'greedy') == greedy_edge_coloring(k4)
    assert resolve_coloring(k4, 'all-distinct').num_colors == 6
    col = resolve_coloring(k4, fixture_path('k4_perfect_matching_coloring.json'))
    assert col.num_colors == 3
    with pytest.raises(ColoringError):
        resolve_coloring(k4, fixture_path('k4_bad_coloring.json'))
