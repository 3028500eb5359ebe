"""
fixtures shared by the tests
"""

import pytest
import cbnpy.graphgen as cgg
import cbnpy.digraph as cdg


# --- fixtures
@pytest.fixture
def c1():
    return cgg.cycle_digraph(1)


@pytest.fixture
def c2():
    return cgg.cycle_digraph(2)


@pytest.fixture
def c4():
    return cgg.cycle_digraph(4)


@pytest.fixture
def r3x4():
    # three 4-cycles sharing vertex 0
    return cgg.rose(4, 3)


@pytest.fixture
def rose_4_2():
    return cgg.rose(4, 2)


@pytest.fixture
def b4_8_12():
    return cgg.bouquet([4, 8, 12])


@pytest.fixture
def grafted_rose():
    # two 4-cycles through 0 and a third 4-cycle grafted at vertex 1
    return cgg.graft(cgg.rose(4, 2), 1, 4)


@pytest.fixture
def not_strongly_connected():
    return cdg.from_edge_list([(0, 1), (1, 2), (2, 1)], 3)


@pytest.fixture
def edge_list_file(tmp_path):
    def _write(D, name='graph.txt'):
        _path = tmp_path / name
        cdg.write_edge_list(D, str(_path))
        return str(_path)
    return _write
