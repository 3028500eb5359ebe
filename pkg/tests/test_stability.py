"""
tests for cbnpy.stability
"""

import time
import pytest
from collections import Counter
from fractions import Fraction
import cbnpy.stability as cst
import cbnpy.graphgen as cgg
from cbnpy.decomposition import irreducible_components
from cbnpy.dynamics import step
from cbnpy.main import PreconditionError, bits_to_state, flip
from cbnpy.necklace import Necklace, enumerate_necklaces, covers
from cbnpy.oracle import empirical_weights, attractor_labels
from tests.corpus import stability_corpus


# --- fixtures
@pytest.fixture
def r3x4_weights(r3x4):
    return cst.transition_weights(r3x4)


# --- tests
def test_orbit_necklace_bijection(r3x4):
    _dec = irreducible_components(r3x4)
    for _s in enumerate_necklaces(_dec.p_star):
        _x = cst.necklace_to_state(_dec, _s)
        assert cst.orbit_to_necklace(_dec, _x) == _s
        assert cst.orbit_to_necklace(_dec, step(r3x4, _x)) == _s
    with pytest.raises(PreconditionError):
        cst.necklace_to_state(_dec, '011')
    with pytest.raises(PreconditionError):
        cst.orbit_to_necklace(_dec, '0100000000')


def test_successor_after_flip(c4, r3x4, b4_8_12):
    _dec = irreducible_components(c4)
    assert cst.successor_after_flip(c4, _dec, '1111', 0) == Necklace('0111')
    assert cst.successor_after_flip(c4, _dec, '0101', 1) == Necklace('0001')
    assert cst.successor_after_flip(c4, _dec, '0101', 0) == Necklace('0111')

    _dec = irreducible_components(r3x4)
    # the shared vertex is a singleton block, so a 0 -> 1 flip survives there only
    assert cst.successor_after_flip(r3x4, _dec, 0, 0) == Necklace('0001')
    assert cst.successor_after_flip(r3x4, _dec, 0, 1) == Necklace('0000')

    _dec = irreducible_components(b4_8_12)
    for _i in range(b4_8_12.n):
        assert cst.successor_after_flip(b4_8_12, _dec, 0, _i) == Necklace('0000')


def test_successor_after_flip_rejects(r3x4):
    _dec = irreducible_components(r3x4)
    with pytest.raises(PreconditionError):
        cst.successor_after_flip(r3x4, _dec, '0100000000', 0)
    with pytest.raises(PreconditionError):
        cst.successor_after_flip(r3x4, _dec, 0, 10)


def test_perturb(c4, r3x4):
    _result = cst.perturb(c4, '1111', 0)
    assert _result.source == Necklace('1111')
    assert _result.flipped == '0111'
    assert _result.target == Necklace('0111')
    assert _result.agrees
    _result = cst.perturb(r3x4, bits_to_state('1111111111'), 4)
    assert _result.target == Necklace('0111')
    assert _result.transient > 0
    assert _result.agrees


def test_stability_edges_kinds(c4, r3x4, b4_8_12):
    _kinds = {_.kind for _ in cst.stability_edges(c4).edges}
    assert _kinds == {'down', 'up'}
    _structure = cst.stability_edges(b4_8_12)
    assert {_.kind for _ in _structure.edges} == {'down', 'self_loop'}
    assert len([_ for _ in _structure.edges if _.kind == 'self_loop']) == len(_structure.nodes) - 1
    _structure = cst.stability_edges(r3x4)
    assert {_.kind for _ in _structure.edges} == {'down', 'up', 'self_loop'}
    assert not _structure.has_weights


@pytest.mark.parametrize('D', stability_corpus())
def test_stability_edges_properties(D):
    _structure = cst.stability_edges(D)
    _ones = Necklace.ones(_structure.p_star)
    _kinds = Counter(_.kind for _ in _structure.edges)
    assert (_kinds['up'] > 0) == (_structure.kind != 'general')
    assert (_kinds['self_loop'] > 0) == (_structure.kind != 'cycle_digraph')
    assert (_ones, _ones) not in {(_.source, _.target) for _ in _structure.edges}


@pytest.mark.parametrize('D', [cgg.cycle_digraph(8), cgg.rose(6, 2), cgg.bouquet([6, 12])])
def test_stability_edges_follow_covers(D):
    _structure = cst.stability_edges(D)
    _nodes = _structure.nodes
    _down = {(_s.rep, _t.rep) for _s in _nodes for _t in _nodes if covers(_s, _t)}
    _up = {(_t, _s) for _s, _t in _down} if _structure.alpha >= 1 else set()
    _edges = {(_.source.rep, _.target.rep) for _ in _structure.edges if _.kind != 'self_loop'}
    assert _edges == _down | _up


def test_stability_edges_loop_number_16():
    _start = time.perf_counter()
    _structure = cst.transition_weights(cgg.cycle_digraph(16))
    assert time.perf_counter() - _start < 30
    assert len(_structure.nodes) == 4116
    assert len(_structure.edges) == 65344
    assert _structure.is_row_stochastic()


def test_weights_r3x4(r3x4_weights):
    _row = {_.target.rep: (_.kind, _.weight) for _ in r3x4_weights.successors('0111')}
    assert _row == {
        '0011': ('down', Fraction(1, 2)),
        '0101': ('down', Fraction(1, 4)),
        '0111': ('self_loop', Fraction(9, 40)),
        '1111': ('up', Fraction(1, 40)),
    }
    assert r3x4_weights.weight('0111', '1111') == Fraction(1, 40)
    assert r3x4_weights.weight('0111', '0001') == 0
    assert r3x4_weights.is_row_stochastic()


def test_weights_c2(c2):
    _structure = cst.transition_weights(c2)
    assert _structure.weight('01', '00') == Fraction(1, 2)
    assert _structure.weight('01', '11') == Fraction(1, 2)
    assert _structure.is_row_stochastic()


def test_literal_up_weight_breaks_rows(c2):
    # counting the up flips on the target instead of the source overweights the row of 01
    with pytest.warns(UserWarning):
        _structure = cst.transition_weights(c2, up_weight='literal')
    assert _structure.weight('01', '11') == Fraction(1)
    assert _structure.row_sums()['01'] == Fraction(3, 2)
    _observed = empirical_weights(c2)
    _observed = {(_s, _t): _w for _s, _t, _w in zip(_observed['source'], _observed['target'], _observed['weight'])}
    assert _observed[('01', '11')] == cst.transition_weights(c2).weight('01', '11')


@pytest.mark.parametrize('D', stability_corpus())
def test_weights_match_simulation(D):
    _structure = cst.transition_weights(D)
    _observed = empirical_weights(D)
    _observed = {(_s, _t): _w for _s, _t, _w in zip(_observed['source'], _observed['target'], _observed['weight'])}
    assert _structure.edge_set() == set(_observed)
    for _edge in _structure.edges:
        assert _edge.weight == _observed[(_edge.source.rep, _edge.target.rep)]


@pytest.mark.parametrize('D', [
    cgg.rose(4, 21),
    cgg.bouquet([4, 8, 12, 16, 28]),
    cgg.cycle_digraph(12),
    cgg.subdivide(cgg.rose(3, 4), 2),
    cgg.graft(cgg.rose(6, 5), 3, 6),
])
def test_rows_sum_to_one_on_large_graphs(D):
    assert cst.transition_weights(D).is_row_stochastic()


def test_invalid_options(c2):
    with pytest.raises(ValueError):
        cst.transition_weights(c2, up_weight='target')
    with pytest.raises(ValueError):
        cst.export_structure(cst.transition_weights(c2), fmt='csv')
    with pytest.raises(ValueError):
        cst.Transition(Necklace('01'), Necklace('00'), kind='sideways')
    with pytest.raises(PreconditionError):
        cst.stability_edges(c2).row_sums()


def test_json_round_trip(r3x4_weights):
    _text = cst.export_structure(r3x4_weights, fmt='json')
    _restored = cst.StabilityStructure.from_json(_text)
    assert _restored.to_json() == r3x4_weights.to_json()
    assert _restored.nodes == r3x4_weights.nodes
    assert _restored.is_row_stochastic()


def test_dot_and_table(r3x4_weights):
    _dot = cst.export_structure(r3x4_weights, fmt='dot')
    assert _dot.startswith('digraph stability {')
    assert '"0111" -> "1111" [label="1/40", class="up"];' in _dot
    _table = cst.export_structure(r3x4_weights, fmt='table')
    assert _table.startswith('p*=4 n=10 kind=rose alpha=1')
    assert '9/40' in _table


def test_to_frame(r3x4_weights):
    _df = r3x4_weights.to_frame()
    assert list(_df.columns) == ['source', 'target', 'num', 'den', 'kind']
    assert len(_df) == len(r3x4_weights.edges)
    _row = _df[(_df['source'] == '0111') & (_df['target'] == '1111')].iloc[0]
    assert (_row['num'], _row['den']) == (1, 40)


def test_orbit_census(r3x4):
    _census = cst.orbit_census(r3x4)
    assert list(_census['necklace']) == ['0000', '0001', '0011', '0101', '0111', '1111']
    assert list(_census['order']) == [1, 4, 4, 2, 4, 1]
    assert _census['state'].iloc[1] == '0001001001'


def test_flip_before_or_after_step_reaches_same_orbits(r3x4):
    # across one orbit, flipping entry i of x and of f(x) perturbs the same multiset of states
    _dec = irreducible_components(r3x4)
    _labels = attractor_labels(r3x4)
    for _s in enumerate_necklaces(_dec.p_star):
        _x = cst.necklace_to_state(_dec, _s)
        _orbit = [_x]
        while step(r3x4, _orbit[-1]) != _x:
            _orbit.append(step(r3x4, _orbit[-1]))
        for _i in range(r3x4.n):
            _before = Counter(int(_labels[flip(_y, r3x4.n, _i)]) for _y in _orbit)
            _after = Counter(int(_labels[flip(step(r3x4, _y), r3x4.n, _i)]) for _y in _orbit)
            assert _before == _after
