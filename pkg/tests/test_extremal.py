import pytest

from conftest import fixture_path, graphs_upto
from decomp import (ColoringMaxResult, ExtremalRecord, HPattern, N_rainbow_value, ex_bruteforce,
                    monotonicity_check, pattern_from_spec, phi, phi_n_table, phi_R_max_over_colorings,
                    reevaluate_record, verify_main_theorem_small)
from decomp import extremal
from graphs import canonical_graph6, complete_graph, turan_graph
from util.errors import BudgetExceeded, DomainError, InvariantViolation
from util.slio import slload


def test_coloring_max_on_k4(k4, k4_pattern):
    res = phi_R_max_over_colorings(k4, k4_pattern)
    assert res.value == 6
    assert res.proven
    coloring = res.witness.to_coloring(k4)
    assert N_rainbow_value(k4, k4_pattern, coloring)[0] == 0
    value, witness = res
    assert value == 6 and witness is res.witness


def test_coloring_max_shortcuts(k3, k4):
    res = phi_R_max_over_colorings(turan_graph(5, 2), k3)
    assert (res.value, res.proven, res.explored) == (6, True, 0)
    res = phi_R_max_over_colorings(k4, k3)
    assert res.value == 4 and res.proven


def test_coloring_max_k5_with_k4(k4_pattern):
    g = complete_graph(5)
    assert phi_R_max_over_colorings(g, k4_pattern).value == 10

    res = phi_R_max_over_colorings(g, k4_pattern, budget_partitions=1, pruned=True)
    assert res.value == 5
    assert not res.proven
    assert res.explored == 1

    with pytest.raises(BudgetExceeded) as info:
        phi_R_max_over_colorings(g, k4_pattern, budget_partitions=1)
    assert info.value.best == 5
    assert info.value.emitted == 1


def test_coloring_max_partition_ceiling(k4_pattern):
    with pytest.raises(BudgetExceeded):
        phi_R_max_over_colorings(complete_graph(5), k4_pattern, partition_ceiling=9)


def test_ex_bruteforce(k3):
    assert ex_bruteforce(5, k3) == 6
    assert ex_bruteforce(4, pattern_from_spec('C4')) == 4
    assert ex_bruteforce(6, HPattern.clique(4)) == 12


def test_uncolored_table_n5(k3):
    record = phi_n_table(5, k3)
    assert record.value == 6
    assert record.mode == 'uncolored'
    assert canonical_graph6(turan_graph(5, 2)) in record.maximizers
    assert canonical_graph6(complete_graph(5)) in record.maximizers
    assert record.turan_is_maximizer and not record.turan_unique
    assert record.complete
    assert not record.exceeds_reference


def test_rainbow_table_examples(k3, k4_pattern):
    record = phi_n_table(3, k3, rainbow=True)
    assert record.value == 2
    assert record.turan_unique

    record = phi_n_table(4, k4_pattern, rainbow=True)
    assert record.value == 6
    assert record.reference == 5
    assert record.exceeds_reference
    assert record.maximizers == [canonical_graph6(complete_graph(4))]
    assert not record.turan_is_maximizer
    assert 'witness_colorings' in record.to_json()


def test_rainbow_table_matches_fixture(k3):
    expected = {row['n']: row['value'] for row in slload(fixture_path('extremal_k3_rainbow.json'))['values']}
    for n in range(3, 7):
        assert phi_n_table(n, k3, rainbow=True).value == expected[n]


def test_uncolored_k4_table_matches_fixture(k4_pattern):
    expected = {row['n']: row['value'] for row in slload(fixture_path('extremal_k4_uncolored.json'))['values']}
    assert sorted(expected) == [4, 5, 6, 7]
    for n in (4, 5, 6, 7):
        assert phi_n_table(n, k4_pattern).value == expected[n]


@pytest.mark.parametrize('n', range(3, 7))
def test_triangle_tables_agree_with_and_without_colours(n, k3):
    rainbow = phi_n_table(n, k3, rainbow=True)
    uncolored = phi_n_table(n, k3)
    assert rainbow.value == uncolored.value
    assert rainbow.maximizers == uncolored.maximizers


@pytest.mark.slow
@pytest.mark.parametrize('n', (7, 8))
def test_triangle_tables_agree_n7_n8(n, k3):
    expected = {row['n']: row['value'] for row in slload(fixture_path('extremal_k3_rainbow.json'))['values']}
    assert phi_n_table(n, k3, rainbow=True).value == phi_n_table(n, k3).value == expected[n]


def test_coloring_max_between_phi_and_edges(k3, k4_pattern):
    for g in graphs_upto(5):
        for h in (k3, k4_pattern):
            res = phi_R_max_over_colorings(g, h)
            assert phi(g, h) <= res.value <= g.e
            assert res.proven


def test_sweep_rejects_out_of_range_values(k4_pattern, monkeypatch):
    monkeypatch.setattr(extremal, 'phi_R_max_over_colorings',
                        lambda g, h, **kwargs: ColoringMaxResult(g.e + 1, None, True, 0))
    with pytest.raises(InvariantViolation):
        phi_n_table(4, k4_pattern, rainbow=True)


def test_table_rejects_bad_input(k3):
    with pytest.raises(DomainError):
        phi_n_table(4, k3, nonsense=1)
    with pytest.raises(DomainError):
        phi_n_table(4, pattern_from_spec('C4'))


def test_sharded_sweep_matches_sequential(k3):
    sequential = phi_n_table(5, k3, rainbow=True)
    sharded = phi_n_table(5, k3, rainbow=True, workers=2)
    assert sharded.value == sequential.value
    assert sharded.maximizers == sequential.maximizers


def test_reevaluate_record(k4_pattern):
    record = phi_n_table(4, k4_pattern, rainbow=True)
    assert reevaluate_record(record, k4_pattern)
    record.value = 5
    with pytest.raises(InvariantViolation):
        reevaluate_record(record, k4_pattern)


def _record(n, value):
    return ExtremalRecord(n=n, pattern='K3', mode='rainbow', value=value, maximizers=[], witness_colorings=[],
                          reference=value, turan_is_maximizer=False, turan_unique=False, complete=True)


def test_monotonicity_check():
    assert monotonicity_check([_record(3, 2), _record(4, 4), _record(5, 6)])['monotone']
    report = monotonicity_check([_record(4, 4), _record(3, 2), _record(5, 3)])
    assert not report['monotone']
    assert report['violations'] == [{'n': 5, 'value': 3, 'previous': 4}]


def test_verify_small_theorem():
    report = verify_main_theorem_small(range(3, 7))
    assert report['verified']
    assert [row['value'] for row in report['rows']] == [2, 4, 6, 9]
    assert all(row['turan_is_maximizer'] for row in report['rows'])
    assert report['monotonicity']['monotone']


def test_verify_small_theorem_rejects_other_inputs():
    with pytest.raises(DomainError):
        verify_main_theorem_small([4], r=4)
    with pytest.raises(DomainError):
        verify_main_theorem_small([2])


@pytest.mark.slow
def test_verify_small_theorem_n7():
    report = verify_main_theorem_small([7])
    assert report['rows'][0]['value'] == 12
