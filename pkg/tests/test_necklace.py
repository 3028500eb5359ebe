"""
tests for cbnpy.necklace
"""

import pytest
from collections import Counter
from fractions import Fraction
from hypothesis import given, settings, strategies as st
from sympy import divisors, mobius
import cbnpy.necklace as cnl
from cbnpy.main import PreconditionError, CapExceededError
from cbnpy.oracle import brute_force_necklaces


# --- fixtures
@pytest.fixture
def necklaces_4():
    return ['0000', '0001', '0011', '0101', '0111', '1111']


def _moebius_double_sum(p):
    # (1/p) * sum over d | p of mu(d) * 2^(p/d), written out over all divisors
    return Fraction(sum(int(mobius(_d)) * 2 ** (p // _d) for _d in divisors(p)), p)


# --- tests
def test_enumerate_necklaces_4(necklaces_4):
    assert [_.rep for _ in cnl.enumerate_necklaces(4)] == necklaces_4


@pytest.mark.parametrize('p', range(1, 17))
def test_enumerate_necklaces_matches_brute_force(p):
    assert cnl.enumerate_necklaces(p) == brute_force_necklaces(p)


def test_enumerate_necklaces_cap():
    with pytest.raises(CapExceededError):
        cnl.enumerate_necklaces(25)
    with pytest.raises(PreconditionError):
        cnl.enumerate_necklaces(0)
    assert len(cnl.enumerate_necklaces(3, cap=3)) == 4


@settings(max_examples=200, deadline=None)
@given(bits=st.text(alphabet='01', min_size=1, max_size=30), r=st.integers(min_value=0, max_value=60))
def test_canonical_form_is_rotation_invariant(bits, r):
    _s = cnl.canonicalize(bits)
    assert cnl.canonicalize(cnl.rotate(bits, r)) == _s
    assert _s.rep == min(cnl.rotate(bits, _k) for _k in range(len(bits)))
    assert _s.rep == cnl.rotate(bits, cnl.least_rotation(bits))


def test_necklace_basics():
    _s = cnl.Necklace('1101')
    assert _s.rep == '0111'
    assert str(_s) == '0111'
    assert len(_s) == 4
    assert _s.sigma == 3
    assert cnl.Necklace([1, 0, 1, 1]) == _s
    assert cnl.Necklace(_s) == _s
    assert cnl.Necklace.ones(3).rep == '111'
    assert cnl.Necklace.zeros(3).rep == '000'
    assert cnl.Necklace('0011') < cnl.Necklace('0111') < cnl.Necklace('1111')
    assert cnl.Necklace('0011') < cnl.Necklace('0101')


@pytest.mark.parametrize('bits', ['', '0120'])
def test_necklace_rejects(bits):
    with pytest.raises(PreconditionError):
        cnl.Necklace(bits)


@pytest.mark.parametrize('bits, order', [('0000', 1), ('0101', 2), ('0111', 4), ('001001', 3), ('1', 1)])
def test_order(bits, order):
    assert cnl.order(bits) == order
    assert cnl.is_aperiodic(bits) == (order == len(bits))


@pytest.mark.parametrize('k, phi', [(1, 1), (2, 1), (6, 2), (9, 6), (12, 4)])
def test_totient(k, phi):
    assert cnl.totient(k) == phi


def test_count_orbits_of_period_4():
    assert cnl.count_orbits_by_period(4) == {1: 2, 2: 1, 4: 3}


@pytest.mark.parametrize('p_star', range(1, 17))
def test_counting_formulas_match_enumeration(p_star):
    _necklaces = cnl.enumerate_necklaces(p_star)
    _by_order = Counter(_.order for _ in _necklaces)
    _by_sigma = Counter(_.sigma for _ in _necklaces)
    for _p in divisors(p_star):
        assert cnl.count_orbits_of_period(p_star, _p) == _by_order[_p]
        assert cnl.count_orbits_of_period(p_star, _p) == _moebius_double_sum(_p)
    for _d in range(p_star + 1):
        assert cnl.count_fixed_density(p_star, _d) == _by_sigma[_d]
    assert sum(cnl.count_by_density(p_star).values()) == len(_necklaces)


def test_counting_preconditions():
    with pytest.raises(PreconditionError):
        cnl.count_orbits_of_period(4, 3)
    with pytest.raises(PreconditionError):
        cnl.count_fixed_density(4, 5)
    with pytest.raises(PreconditionError):
        cnl.totient(0)


def test_covers():
    assert cnl.covers('0111', '0011')
    assert cnl.covers('0111', '0101')
    assert not cnl.covers('0011', '0111')
    assert not cnl.covers('0111', '0001')
    assert not cnl.covers('0101', '0101')
    with pytest.raises(PreconditionError):
        cnl.covers('011', '0011')


def test_gamma():
    assert cnl.gamma_down('0111', '0011') == 2
    assert cnl.gamma_down('0111', '0101') == 1
    assert cnl.gamma_down('1111', '0111') == 4
    assert cnl.gamma_up('0000', '0001') == 4
    assert cnl.gamma_up('0011', '0111') == 2
    assert cnl.gamma_up('0101', '0111') == 2
    with pytest.raises(PreconditionError):
        cnl.gamma_down('0011', '0111')
    with pytest.raises(PreconditionError):
        cnl.gamma_up('0111', '0011')


def _levels(p):
    _by_sigma = {}
    for _s in cnl.enumerate_necklaces(p):
        _by_sigma.setdefault(_s.sigma, []).append(_s)
    return _by_sigma


@pytest.mark.parametrize('p', range(1, 13))
def test_gamma_down_sums_to_sigma(p):
    _by_sigma = _levels(p)
    for _s in cnl.enumerate_necklaces(p):
        _covered = [_t for _t in _by_sigma.get(_s.sigma - 1, []) if cnl.covers(_s, _t)]
        assert sum(cnl.gamma_down(_s, _t) for _t in _covered) == _s.sigma


@pytest.mark.parametrize('p', range(1, 13))
def test_gamma_up_sums_to_zeros(p):
    _by_sigma = _levels(p)
    for _s in cnl.enumerate_necklaces(p):
        _covering = [_t for _t in _by_sigma.get(_s.sigma + 1, []) if cnl.covers(_t, _s)]
        assert sum(cnl.gamma_up(_s, _t) for _t in _covering) == p - _s.sigma


@pytest.mark.parametrize('p', range(1, 13))
def test_gamma_flip_pairs_balance(p):
    # flips of s into s' and back are the same (state, position) pairs counted from both ends
    for _s in cnl.enumerate_necklaces(p):
        for _t in cnl.flip_tally(_s)[1]:
            assert cnl.covers(_t, _s)
            assert cnl.gamma_up(_s, _t) * _s.order == cnl.gamma_down(_t, _s) * _t.order


@pytest.mark.parametrize('p', range(1, 9))
def test_flip_tally_matches_gamma(p):
    _by_sigma = _levels(p)
    for _s in cnl.enumerate_necklaces(p):
        _down, _up = cnl.flip_tally(_s)
        assert _down == Counter({_t: cnl.gamma_down(_s, _t) for _t in _by_sigma.get(_s.sigma - 1, [])
                                 if cnl.covers(_s, _t)})
        assert _up == Counter({_t: cnl.gamma_up(_s, _t) for _t in _by_sigma.get(_s.sigma + 1, [])
                               if cnl.covers(_t, _s)})


def test_flip_tally_examples():
    _down, _up = cnl.flip_tally('0111')
    assert _down == Counter({cnl.Necklace('0011'): 2, cnl.Necklace('0101'): 1})
    assert _up == Counter({cnl.Necklace('1111'): 1})
    assert cnl.flip_tally('1011') == cnl.flip_tally('0111')
