import os

import pytest

from decomp import EdgeColoring, HPattern
from graphs import complete_graph, enumerate_nonisomorphic
from util.slio import slload

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'fixtures')


def fixture_path(name):
    return os.path.join(FIXTURES, name)


def graphs_upto(n_max):
    for n in range(1, n_max + 1):
        yield from enumerate_nonisomorphic(n)


@pytest.fixture
def k3():
    return HPattern.clique(3)


@pytest.fixture
def k4_pattern():
    return HPattern.clique(4)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def k4_matching_coloring(k4):
    """K_4 coloured by its three perfect matchings; no K_4 copy is rainbow."""
    data = slload(fixture_path('k4_perfect_matching_coloring.json'))
    return EdgeColoring.from_json(k4, data['coloring'])
