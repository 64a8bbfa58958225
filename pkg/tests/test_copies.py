import pytest
from scipy.special import comb

from conftest import graphs_upto
from decomp import (EdgeColoring, HPattern, census_summary, chromatic_number, enumerate_copies,
                    enumerate_matching_partitions, greedy_edge_coloring, is_edge_critical,
                    nonrainbow_census, pattern_from_spec, rainbow_copies, verify_copy)
from graphs import (Graph, complete_graph, cycle_graph, disjoint_union, empty_graph, enumerate_nonisomorphic,
                    path_graph, random_graph)
from util.errors import BudgetExceeded, DomainError


def test_chromatic_numbers():
    assert chromatic_number(complete_graph(4)) == 4
    assert chromatic_number(cycle_graph(5)) == 3
    assert chromatic_number(cycle_graph(6)) == 2
    assert chromatic_number(path_graph(4)) == 2
    assert chromatic_number(empty_graph(3)) == 1


def test_edge_criticality():
    assert is_edge_critical(complete_graph(4))
    assert is_edge_critical(cycle_graph(5))
    assert not is_edge_critical(disjoint_union(complete_graph(3), complete_graph(3)))


def test_pattern_from_spec():
    assert pattern_from_spec('K4').is_clique
    c5 = pattern_from_spec('C5')
    assert c5.r == 3 and c5.e_H == 5 and not c5.is_clique
    assert pattern_from_spec('S3').pairwise_incident
    assert pattern_from_spec('K3').pairwise_incident
    assert not pattern_from_spec('K4').pairwise_incident
    assert pattern_from_spec('g6:Bw') == HPattern.clique(3)
    with pytest.raises(DomainError):
        pattern_from_spec('P2')


@pytest.mark.parametrize('n,r', [(n, r) for n in range(3, 8) for r in range(3, n + 1)])
def test_clique_counts(n, r):
    assert len(enumerate_copies(complete_graph(n), HPattern.clique(r))) == comb(n, r, exact=True)


def test_clique_and_general_paths_agree():
    for seed in range(10):
        g = random_graph(7, 0.6, seed)
        for r in (3, 4):
            h = HPattern.clique(r)
            assert enumerate_copies(g, h, method='clique') == enumerate_copies(g, h, method='general')


def test_general_pattern_copies():
    # C4 in K4: three 4-cycles
    copies = enumerate_copies(complete_graph(4), pattern_from_spec('C4'))
    assert len(copies) == 3
    # P3 (two edges sharing a vertex) in K4: 4 * 3 = 12
    assert len(enumerate_copies(complete_graph(4), pattern_from_spec('P3'))) == 12
    for c in copies:
        assert verify_copy(c, pattern_from_spec('C4'))


def test_general_pattern_vertex_ceiling():
    with pytest.raises(BudgetExceeded):
        enumerate_copies(complete_graph(12), pattern_from_spec('C4'))
    with pytest.raises(DomainError):
        enumerate_copies(complete_graph(4), pattern_from_spec('C4'), method='clique')


def test_every_copy_passes_isomorphism_check():
    for seed in range(5):
        g = random_graph(7, 0.5, seed)
        for spec in ('K3', 'K4', 'C5', 'P4'):
            h = pattern_from_spec(spec)
            assert all(verify_copy(c, h) for c in enumerate_copies(g, h))


def test_rainbow_copies_examples(k4, k3, k4_pattern, k4_matching_coloring):
    assert rainbow_copies(k4, k4_pattern, k4_matching_coloring) == []
    assert rainbow_copies(k4, k3, k4_matching_coloring) == enumerate_copies(k4, k3)
    assert rainbow_copies(empty_graph(5), k3, EdgeColoring(empty_graph(5), {})) == []


def test_triangles_are_always_rainbow(k3):
    for n in range(3, 6):
        g = complete_graph(n)
        every = enumerate_copies(g, k3)
        for partition in enumerate_matching_partitions(g):
            assert rainbow_copies(g, k3, partition.to_coloring(g)) == every


def test_census_examples(k4, k3, k4_pattern, k4_matching_coloring):
    table = nonrainbow_census(k4, k4_pattern, k4_matching_coloring)
    assert set(table.values()) == {(0, 1)}
    assert len(table) == 6
    tri = nonrainbow_census(complete_graph(5), k3, greedy_edge_coloring(complete_graph(5)))
    assert all(nr == 0 for _, nr in tri.values())
    assert nonrainbow_census(empty_graph(4), k3, EdgeColoring(empty_graph(4), {})) == {}


def _census_consistency(g, patterns):
    for h in patterns:
        copies = enumerate_copies(g, h)
        for partition in enumerate_matching_partitions(g):
            col = partition.to_coloring(g)
            rainbow = rainbow_copies(g, h, col, copies=copies)
            summary = census_summary(nonrainbow_census(g, h, col, copies=copies), h.e_H)
            assert summary['rainbow_copies'] == len(rainbow)
            assert summary['rainbow_copies'] + summary['nonrainbow_copies'] == len(copies)
            if h.pairwise_incident:
                assert rainbow == copies


def test_census_totals_match_copy_counts(k3, k4_pattern):
    for g in graphs_upto(5):
        _census_consistency(g, (k3, k4_pattern))


@pytest.mark.slow
def test_census_totals_match_copy_counts_n6(k3, k4_pattern):
    # E(K_6) and its near-complete subgraphs have too many matching partitions to walk
    for g in enumerate_nonisomorphic(6):
        if g.e <= 12:
            _census_consistency(g, (k3, k4_pattern))


def test_pattern_needs_two_edges():
    with pytest.raises(DomainError):
        HPattern(Graph(2, [(0, 1)]))
