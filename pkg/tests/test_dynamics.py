"""
tests for cbnpy.dynamics
"""

import pytest
import numpy as np
import cbnpy.dynamics as cdy
import cbnpy.digraph as cdg
from cbnpy.decomposition import irreducible_components
from cbnpy.main import PreconditionError, bits_to_state, state_to_bits, restrict_state
from tests.corpus import random_corpus


# --- fixtures
@pytest.fixture
def source_without_input():
    return cdg.from_edge_list([(0, 1), (1, 1)], 2)


# --- tests
def test_step_c4(c4):
    assert state_to_bits(cdy.step(c4, '1000'), 4) == '0100'
    assert state_to_bits(cdy.step(c4, '0111'), 4) == '1011'
    assert cdy.step(c4, [1, 1, 1, 1]) == 0b1111


def test_step_is_conjunction(r3x4):
    # vertex 0 reads the last vertex of each of the three cycles
    _x = bits_to_state('0001001001')
    assert state_to_bits(cdy.step(r3x4, _x), 10) == '1000000000'
    _x = bits_to_state('0001001000')
    assert state_to_bits(cdy.step(r3x4, _x), 10) == '0000000000'


def test_step_requires_inputs(source_without_input):
    with pytest.raises(PreconditionError):
        cdy.step(source_without_input, '11')


def test_step_rejects_length(c4):
    with pytest.raises(PreconditionError):
        cdy.step(c4, '101')


def test_step_k_methods_agree_c4(c4):
    for _x in range(16):
        for _p in range(9):
            assert cdy.step_k(c4, _x, _p) == cdy.step_k(c4, _x, _p, method='product')
    assert cdy.step_k(c4, 0b1000, 4) == 0b1000


@pytest.mark.parametrize('D', random_corpus()[::5])
def test_step_k_methods_agree(D):
    _p_star = irreducible_components(D).p_star
    _states = np.random.default_rng(0).integers(0, 2 ** D.n, size=32)
    for _x in _states:
        for _p in range(2 * _p_star + 1):
            assert cdy.step_k(D, int(_x), _p) == cdy.step_k(D, int(_x), _p, method='product')


def test_step_k_rejects(c4):
    with pytest.raises(ValueError):
        cdy.step_k(c4, 0, 2, method='matrix')
    with pytest.raises(PreconditionError):
        cdy.step_k(c4, 0, -1)


def test_step_array_matches_step(r3x4):
    _states = np.arange(2 ** r3x4.n, dtype=np.uint64)
    _next = cdy.step_array(r3x4, _states)
    assert _next.dtype == np.uint64
    assert [int(_) for _ in _next] == [cdy.step(r3x4, _x) for _x in range(2 ** r3x4.n)]


def test_apply_masks_limit():
    with pytest.raises(PreconditionError):
        cdy.apply_masks(np.zeros(1, dtype=np.uint64), [1] * 65, 65)


def test_trajectory(c4):
    _states = cdy.trajectory(c4, '1000', 5)
    assert [state_to_bits(_, 4) for _ in _states] == ['1000', '0100', '0010', '0001', '1000', '0100']


def test_find_orbit_c4(c4):
    _orbit = cdy.find_orbit(c4, '0111')
    assert _orbit.period == 4
    assert _orbit.transient == 0
    assert _orbit.bits[0] == '0111'
    assert bits_to_state('1101') in _orbit


def test_find_orbit_fixed_points(b4_8_12):
    for _x in [0, 2 ** b4_8_12.n - 1]:
        _orbit = cdy.find_orbit(b4_8_12, _x)
        assert _orbit.period == 1
        assert _orbit.transient == 0


def test_find_orbit_transient(b4_8_12):
    _dec = irreducible_components(b4_8_12)
    _rng = np.random.default_rng(1)
    _transients = []
    for _x in _rng.integers(0, 2 ** b4_8_12.n, size=20):
        _orbit = cdy.find_orbit(b4_8_12, int(_x))
        assert 4 % _orbit.period == 0
        assert all(cdy.is_periodic_state(b4_8_12, _dec, _) for _ in _orbit.states)
        _transients.append(_orbit.transient)
    assert max(_transients) > 0


def test_find_orbit_step_fn(c4):
    # a step that always clears vertex 0 ends in the all zeros state
    _orbit = cdy.find_orbit(c4, '1111', step_fn=lambda _x: cdy.step(c4, _x) & 0b0111)
    assert _orbit.states == (0,)
    assert _orbit.transient == 4


def test_orbit_is_stored_from_least_state():
    _orbit = cdy.Orbit([0b1011, 0b1101, 0b1110, 0b0111], n=4)
    assert _orbit.canonical == 0b0111
    assert _orbit.states == (0b0111, 0b1011, 0b1101, 0b1110)
    assert _orbit == cdy.Orbit([0b1101, 0b1110, 0b0111, 0b1011], n=4)


def test_induced_step(r3x4):
    _dec = irreducible_components(r3x4)
    for _x in range(2 ** r3x4.n):
        _after = cdy.step_k(r3x4, _x, _dec.p_star)
        for _component in _dec.components:
            _y = restrict_state(_x, r3x4.n, _component.vertices)
            assert cdy.induced_step(_dec, _component.index, _y) == _component.restrict(_after)
    with pytest.raises(PreconditionError):
        cdy.induced_step(_dec, 4, 0)


def test_periodic_iff_block_constant(rose_4_2):
    _dec = irreducible_components(rose_4_2)
    _periodic = set()
    for _x in range(2 ** rose_4_2.n):
        _periodic |= set(cdy.find_orbit(rose_4_2, _x).states)
    for _x in range(2 ** rose_4_2.n):
        assert cdy.is_periodic_state(rose_4_2, _dec, _x) == (_x in _periodic)
    assert len(_periodic) == 2 ** _dec.p_star


def test_block_values_shift(r3x4):
    _dec = irreducible_components(r3x4)
    _x = cdy.block_constant_state(_dec, '0110')
    assert state_to_bits(_x, 10) == '0110110110'
    assert cdy.block_values(_dec, _x) == '0110'
    # one step moves the value of block k to block k + 1
    assert cdy.block_values(_dec, cdy.step(r3x4, _x)) == '0011'


def test_block_values_rejects(r3x4):
    _dec = irreducible_components(r3x4)
    with pytest.raises(PreconditionError):
        cdy.block_values(_dec, '0100000000')
    with pytest.raises(PreconditionError):
        cdy.block_constant_state(_dec, '011')
