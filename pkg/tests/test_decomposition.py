"""
tests for cbnpy.decomposition
"""

import pytest
import cbnpy.decomposition as cdc
import cbnpy.digraph as cdg
import cbnpy.graphgen as cgg
from cbnpy.main import PreconditionError
from cbnpy.oracle import classify_by_cycles
from tests.corpus import random_corpus


# --- fixtures
@pytest.fixture
def structural_cases(c1, c2, c4, r3x4, rose_4_2, b4_8_12, grafted_rose):
    return [
        (c1, 1, [1], 'cycle_digraph', 1),
        (c2, 2, [1, 1], 'cycle_digraph', 2),
        (c4, 4, [1, 1, 1, 1], 'cycle_digraph', 4),
        (r3x4, 4, [1, 3, 3, 3], 'rose', 1),
        (rose_4_2, 4, [1, 2, 2, 2], 'rose', 1),
        (b4_8_12, 4, [4, 6, 6, 6], 'general', 0),
        (grafted_rose, 4, [2, 2, 3, 3], 'general', 0),
    ]


# --- tests
def test_partition_c4(c4):
    assert cdc.partition(c4, 2) == [(0, 2), (1, 3)]
    assert cdc.partition(c4, 4) == [(0,), (1,), (2,), (3,)]
    assert cdc.partition(c4, 1) == [(0, 1, 2, 3)]
    with pytest.raises(PreconditionError):
        cdc.partition(c4, 3)


def test_related(c4):
    assert cdc.related(c4, 2, 0, 2)
    assert not cdc.related(c4, 2, 0, 1)
    assert cdc.related(c4, 4, 3, 3)
    with pytest.raises(PreconditionError):
        cdc.related(c4, 2, 0, 4)


def test_structure(structural_cases):
    for _D, _p_star, _sizes, _kind, _alpha in structural_cases:
        _dec = cdc.irreducible_components(_D)
        assert _dec.p_star == _p_star
        assert _dec.block_sizes == _sizes
        assert cdc.classify(_D, _dec) == cdc.Classification(_kind, _alpha)


def test_decomposition_lookup(r3x4):
    _dec = cdc.irreducible_components(r3x4)
    assert _dec.blocks[0] == (0,)
    assert _dec.block_of(0) == 0
    for _k, _block in enumerate(_dec.blocks):
        for _v in _block:
            assert _dec.block_of(_v) == _k
    assert sum(bin(_).count('1') for _ in _dec.block_masks) == r3x4.n


def test_component_states(b4_8_12):
    _dec = cdc.irreducible_components(b4_8_12)
    _component = _dec.components[1]
    assert _component.size == 6
    assert _component.to_global(0) == min(_dec.blocks[1])
    _y = 0b101101
    _x = _component.lift(_y)
    assert _component.restrict(_x) == _y
    assert _x & ~_dec.block_masks[1] == 0


def test_classification_rejects_kind():
    with pytest.raises(ValueError):
        cdc.Classification('tree', 0)


def test_classify_rejects_foreign_decomposition(c4, r3x4):
    with pytest.raises(PreconditionError):
        cdc.classify(r3x4, cdc.irreducible_components(c4))


def test_not_strongly_connected(not_strongly_connected):
    with pytest.raises(PreconditionError):
        cdc.irreducible_components(not_strongly_connected)


@pytest.mark.parametrize('D', random_corpus())
def test_decomposition_properties(D):
    _dec = cdc.irreducible_components(D)
    # blocks partition the vertices
    assert sorted(_v for _block in _dec.blocks for _v in _block) == list(range(D.n))
    for _k, _block in enumerate(_dec.blocks):
        assert cdg.n_out_p(D, _block, 1) == set(_dec.blocks[(_k + 1) % _dec.p_star])
    for _component in _dec.components:
        assert cdg.is_strongly_connected(_component.digraph)
        assert cdg.loop_number(_component.digraph) == 1
    assert cdc.classify(D, _dec) == classify_by_cycles(D)


def test_grafted_rose_components_have_short_cycles_without_long_cycle_in_d(grafted_rose):
    # every component has a 2-cycle but D has no cycle of length 2 * p*
    _dec = cdc.irreducible_components(grafted_rose)
    _lengths = cdg.enumerate_cycles(grafted_rose).lengths
    assert _lengths == [4, 4, 4]
    for _component in _dec.components:
        assert 2 in cdg.enumerate_cycles(_component.digraph).lengths
    assert 2 * _dec.p_star not in _lengths


def _lengths_in_every_component(dec):
    return set.intersection(*[set(cdg.enumerate_cycles(_.digraph).lengths) for _ in dec.components])


def test_bouquet_4_4_8_12_keeps_cycle_lemma_converse():
    # every length shared by all components is matched by a cycle of D, the grafted rose is needed instead
    _D = cgg.bouquet([4, 4, 8, 12])
    _dec = cdc.irreducible_components(_D)
    _lengths = set(cdg.enumerate_cycles(_D).lengths)
    assert _dec.p_star == 4
    assert _lengths == {4, 8, 12}
    _common = _lengths_in_every_component(_dec)
    assert _common == {1, 2, 3}
    assert all(_m * _dec.p_star in _lengths for _m in _common)
    assert 4 not in set(cdg.enumerate_cycles(_dec.components[0].digraph).lengths)


def test_grafted_rose_breaks_cycle_lemma_converse(grafted_rose):
    _dec = cdc.irreducible_components(grafted_rose)
    _lengths = set(cdg.enumerate_cycles(grafted_rose).lengths)
    assert any(_m * _dec.p_star not in _lengths for _m in _lengths_in_every_component(_dec))


def test_cycle_lemma_forward_direction(b4_8_12):
    # a cycle of length L in D gives a cycle of length L / p* in every component
    _dec = cdc.irreducible_components(b4_8_12)
    for _component in _dec.components:
        _component_lengths = set(cdg.enumerate_cycles(_component.digraph).lengths)
        assert {1, 2, 3} <= _component_lengths

