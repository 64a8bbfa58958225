import networkx as nx
import pytest

from graphs import (Graph, complete_graph, empty_graph, parse_graph6, read_graph6_file, write_graph6,
                    write_graph6_file)
from util.errors import Graph6ParseError


@pytest.mark.parametrize('text,graph', [
    ('?', Graph(0)),
    ('@', empty_graph(1)),
    ('Bw', complete_graph(3)),
    ('C~', complete_graph(4)),
    ('>>graph6<<Bw', complete_graph(3)),
    ('Bw\n', complete_graph(3)),
])
def test_parse_known_strings(text, graph):
    assert parse_graph6(text) == graph


def test_write_matches_networkx_bytes():
    g = Graph(7, [(0, 1), (2, 6), (3, 4), (1, 5)])
    expected = nx.to_graph6_bytes(g.to_networkx(), header=False).decode('ascii').strip()
    assert write_graph6(g) == expected
    assert parse_graph6(write_graph6(g)) == g


def test_long_size_field():
    g = Graph(70, [(0, 69), (10, 11)])
    text = write_graph6(g)
    assert text.startswith('~')
    assert parse_graph6(text) == g


@pytest.mark.parametrize('text,offset', [
    ('', 0),
    ('B', 1),
    ('B ', 1),
    ('Bww', 2),
    ('>>graph6<<B', 11),
    ('>>grph<<Bw', 0),
    ('Bx', 1),
    ('A`', 1),
    ('>>graph6<<Bx', 11),
])
def test_malformed_input_reports_offset(text, offset):
    with pytest.raises(Graph6ParseError) as info:
        parse_graph6(text)
    assert info.value.offset == offset
    assert info.value.exit_code == 3


def test_sparse6_is_rejected():
    with pytest.raises(Graph6ParseError):
        parse_graph6(':Fa@x^')


def test_file_io(tmp_path):
    path = tmp_path / 'corpus.g6'
    graphs = [complete_graph(3), empty_graph(2), complete_graph(4)]
    write_graph6_file(str(path), graphs)
    assert read_graph6_file(str(path)) == graphs
