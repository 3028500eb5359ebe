"""
cbnpy.stability.py
~~~~~~~~~~~~~~~~~~

Contains the bijection between periodic orbits and necklaces, the single flip successor, the stability structure and
its exact transition weights

"""
# ---- imports
# --- standard imports
import json
import logging
import warnings
from collections import Counter
from fractions import Fraction
# --- third party imports
import pandas as pd
from typing import Dict, List, Optional, Set, Tuple
from docrep import DocstringProcessor
# --- local imports
from cbnpy.main import export, BaseClass, PreconditionError, StateLike, as_state, flip, state_to_bits, \
    docstr as docstr_main
from cbnpy.digraph import Digraph
from cbnpy.decomposition import Decomposition, irreducible_components, classify
from cbnpy.dynamics import find_orbit, is_periodic_state, block_values, block_constant_state
from cbnpy.necklace import Necklace, NecklaceLike, enumerate_necklaces, flip_tally

# ---- variables
logger = logging.getLogger('cbnpy.stability')
FlipTallies = Dict[Necklace, Tuple[Counter, Counter]]
# --- validations
validations = {
    'Transition__kind': ['down', 'up', 'self_loop'],
    'transition_weights__up_weight': ['source', 'literal'],
    'export__fmt': ['json', 'dot', 'table'],
}
# --- docstr
docstr = DocstringProcessor(
    D=docstr_main.params['D'],
    dec=docstr_main.params['dec'],
    x=docstr_main.params['x'],
    **validations
)


# ---- classes
@export
class Transition(BaseClass):
    """
        Edge of the stability structure

        :param source: necklace of the perturbed orbit
        :param target: necklace of the orbit reached after the perturbation
        :param kind: one of 'down', 'up', 'self_loop'
        :param weight: exact transition probability, None if not computed
    """

    # --- globals
    __name__ = 'Transition'
    __attributes__ = ['source', 'target', 'kind', 'weight']

    # --- functions
    def __init__(self, source: Necklace, target: Necklace, kind: str, weight: Optional[Fraction] = None):
        if kind not in validations['Transition__kind']:
            raise ValueError(f"kind must be one of {validations['Transition__kind']}")
        self.source = source
        self.target = target
        self.kind = kind
        self.weight = weight

    def __repr__(self):
        _weight = '' if self.weight is None else f", weight={self.weight}"
        return f"Transition({self.source} -> {self.target}, kind={self.kind}{_weight})"


@export
class StabilityStructure(BaseClass):
    """
        Digraph over the necklaces of length p* whose edges are the orbit transitions a single flip can cause.
        Nodes are ordered by (sigma, rep), edges by source and then target.

        :param p_star: loop number
        :param n: number of vertices of the network
        :param alpha: number of singleton blocks
        :param kind: structural kind of the network
        :param nodes: all necklaces of length p_star
        :param edges: list of :class:`Transition`
    """

    # --- globals
    __name__ = 'StabilityStructure'
    __attributes__ = ['p_star', 'n', 'alpha', 'kind', 'nodes', 'edges']

    # --- functions
    def __init__(self, p_star: int, n: int, alpha: int, kind: str, nodes: List[Necklace], edges: List[Transition]):
        self.p_star = p_star
        self.n = n
        self.alpha = alpha
        self.kind = kind
        self.nodes = list(nodes)
        self.edges = list(edges)

    @property
    def has_weights(self) -> bool:
        return all(_.weight is not None for _ in self.edges)

    def successors(self, s: NecklaceLike) -> List[Transition]:
        _s = Necklace(s)
        return [_ for _ in self.edges if _.source == _s]

    def weight(self, s: NecklaceLike, t: NecklaceLike) -> Fraction:
        """The weight of the edge s -> t, 0 if there is no such edge"""
        _s, _t = Necklace(s), Necklace(t)
        for _edge in self.edges:
            if _edge.source == _s and _edge.target == _t:
                return _edge.weight
        return Fraction(0)

    def edge_set(self) -> Set[Tuple[str, str]]:
        return {(_.source.rep, _.target.rep) for _ in self.edges}

    def row_sums(self) -> Dict[str, Fraction]:
        if not self.has_weights:
            raise PreconditionError('the structure carries no weights, use transition_weights')
        _sums = {_.rep: Fraction(0) for _ in self.nodes}
        for _edge in self.edges:
            _sums[_edge.source.rep] += _edge.weight
        return _sums

    def is_row_stochastic(self) -> bool:
        return all(_ == 1 for _ in self.row_sums().values())

    def to_frame(self) -> pd.DataFrame:
        """
        :return: pandas DataFrame with one row per edge and the columns source, target, num, den, kind
        """
        return pd.DataFrame({
            'source': [_.source.rep for _ in self.edges],
            'target': [_.target.rep for _ in self.edges],
            'num': pd.array([None if _.weight is None else _.weight.numerator for _ in self.edges], dtype='Int64'),
            'den': pd.array([None if _.weight is None else _.weight.denominator for _ in self.edges], dtype='Int64'),
            'kind': [_.kind for _ in self.edges],
        })

    def to_json(self, indent: int = 2) -> str:
        _dict = {
            'p_star': self.p_star,
            'n': self.n,
            'alpha': self.alpha,
            'kind': self.kind,
            'nodes': [_.rep for _ in self.nodes],
            'edges': [{
                'from': _.source.rep,
                'to': _.target.rep,
                'num': None if _.weight is None else _.weight.numerator,
                'den': None if _.weight is None else _.weight.denominator,
                'kind': _.kind,
            } for _ in self.edges],
        }
        return json.dumps(_dict, indent=indent)

    @classmethod
    def from_json(cls, text: str) -> 'StabilityStructure':
        """
        Restores a structure written by :meth:`to_json`

        :param text: JSON document
        :return: StabilityStructure
        """
        _dict = json.loads(text)
        _edges = []
        for _edge in _dict['edges']:
            _weight = None if _edge['num'] is None else Fraction(_edge['num'], _edge['den'])
            _edges.append(Transition(source=Necklace(_edge['from']), target=Necklace(_edge['to']),
                                     kind=_edge['kind'], weight=_weight))
        return cls(p_star=_dict['p_star'], n=_dict['n'], alpha=_dict['alpha'], kind=_dict['kind'],
                   nodes=[Necklace(_) for _ in _dict['nodes']], edges=_edges)

    def to_dot(self) -> str:
        _lines = ['digraph stability {']
        _lines += [f'  "{_.rep}";' for _ in self.nodes]
        for _edge in self.edges:
            _label = '' if _edge.weight is None else f'label="{_edge.weight.numerator}/{_edge.weight.denominator}", '
            _lines.append(f'  "{_edge.source.rep}" -> "{_edge.target.rep}" [{_label}class="{_edge.kind}"];')
        _lines.append('}')
        return '\n'.join(_lines) + '\n'

    def to_table(self) -> str:
        _df = self.to_frame()
        _df['weight'] = [('' if _.weight is None else str(_.weight)) for _ in self.edges]
        _header = f"p*={self.p_star} n={self.n} kind={self.kind} alpha={self.alpha} " \
                  f"nodes={len(self.nodes)} edges={len(self.edges)}"
        if len(_df) == 0:
            return _header + '\n'
        return _header + '\n' + _df[['source', 'target', 'kind', 'weight']].to_string(index=False) + '\n'


@export
class Perturbation(BaseClass):
    """
        Outcome of flipping one entry of a periodic state

        :param source: necklace of the orbit of the unperturbed state
        :param flipped: bitstring of the perturbed state
        :param target: necklace of the orbit the simulation ends in
        :param predicted: necklace given by :func:`successor_after_flip`
        :param transient: steps from the perturbed state until the orbit is entered
    """

    # --- globals
    __name__ = 'Perturbation'
    __attributes__ = ['source', 'flipped', 'target', 'predicted', 'transient']

    # --- functions
    def __init__(self, source: Necklace, flipped: str, target: Necklace, predicted: Necklace, transient: int):
        self.source = source
        self.flipped = flipped
        self.target = target
        self.predicted = predicted
        self.transient = transient

    @property
    def agrees(self) -> bool:
        return self.target == self.predicted


# ---- functions
def _assert_periodic(D: Digraph, dec: Decomposition, x: int) -> None:
    if not is_periodic_state(D, dec, x):
        raise PreconditionError(f"state {state_to_bits(x, D.n)} is not on a periodic orbit")


@docstr
@export
def orbit_to_necklace(dec: Decomposition, x: StateLike) -> Necklace:
    """
    The necklace of the orbit through a periodic state: the block values y_0..y_{p*-1}, canonicalized. Every state
    of one orbit gives the same necklace since one step rotates the block values.

    :param dec: %(dec)s
    :param x: %(x)s, constant on every block
    :return: Necklace
    """
    return Necklace(block_values(dec, x))


@docstr
@export
def necklace_to_state(dec: Decomposition, s: NecklaceLike) -> int:
    """
    A state of the orbit of a necklace: block U_k holds the k-th character of the canonical representative. The orbit
    has period order(s).

    :param dec: %(dec)s
    :param s: necklace of length p*
    :return: State
    """
    _s = Necklace(s)
    if _s.length != dec.p_star:
        raise PreconditionError(f"necklace {_s.rep} has length {_s.length}, expected p*={dec.p_star}")
    return block_constant_state(dec, _s.rep)


@docstr
@export
def successor_after_flip(D: Digraph, dec: Decomposition, x: StateLike, i: int) -> Necklace:
    """
    Closed form of the orbit reached after flipping entry i of a periodic state x, with k the block of i and y_k
    its value: a 1 -> 0 flip replaces y_k by 0, a 0 -> 1 flip replaces y_k by 1 if the block is a singleton and
    is absorbed otherwise.

    :param D: %(D)s
    :param dec: %(dec)s
    :param x: %(x)s, periodic
    :param i: vertex to flip
    :return: Necklace
    """
    _x = as_state(x, D.n)
    _assert_periodic(D, dec, _x)
    if not 0 <= i < D.n:
        raise PreconditionError(f"vertex {i} out of range for {D.n} vertices")

    _values = list(block_values(dec, _x))
    _k = dec.block_of(i)
    if _values[_k] == '1':
        _values[_k] = '0'
    elif dec.block_sizes[_k] == 1:
        _values[_k] = '1'
    return Necklace(''.join(_values))


@docstr
@export
def perturb(D: Digraph, x: StateLike, i: int, dec: Decomposition = None) -> Perturbation:
    """
    Flips entry i of the periodic state x and simulates until the dynamics return to a periodic orbit

    :param D: %(D)s
    :param x: %(x)s, periodic
    :param i: vertex to flip
    :param dec: %(dec)s, computed if not passed [optional]
    :return: :class:`Perturbation`
    """
    if dec is None:
        dec = irreducible_components(D)
    _x = as_state(x, D.n)
    _predicted = successor_after_flip(D, dec, _x, i)
    _flipped = flip(_x, D.n, i)
    _orbit = find_orbit(D, _flipped)
    return Perturbation(source=orbit_to_necklace(dec, _x), flipped=state_to_bits(_flipped, D.n),
                        target=orbit_to_necklace(dec, _orbit.canonical), predicted=_predicted,
                        transient=_orbit.transient)


def _structure_with_tallies(D: Digraph) -> Tuple['StabilityStructure', FlipTallies]:
    # -- init
    _dec = irreducible_components(D)
    _class = classify(D, _dec)
    _nodes = enumerate_necklaces(_dec.p_star)
    _tallies = {_s: flip_tally(_s) for _s in _nodes}
    _ones = Necklace.ones(_dec.p_star)

    # -- main
    _edges = []
    for _s in _nodes:
        _down, _up = _tallies[_s]
        _edges += [Transition(_s, _t, kind='down') for _t in sorted(_down)]
        if _s != _ones and _class.kind != 'cycle_digraph':
            _edges.append(Transition(_s, _s, kind='self_loop'))
        if _class.alpha >= 1:
            _edges += [Transition(_s, _t, kind='up') for _t in sorted(_up)]

    logger.info(f"stability structure with {len(_nodes)} nodes and {len(_edges)} edges")

    # -- return
    _structure = StabilityStructure(p_star=_dec.p_star, n=D.n, alpha=_class.alpha, kind=_class.kind, nodes=_nodes,
                                    edges=_edges)
    return _structure, _tallies


@docstr
@export
def stability_edges(D: Digraph) -> StabilityStructure:
    """
    The stability structure without weights. There is an edge s -> s' iff

    - s covers s' (down), or
    - s' covers s and D is a rose or a cycle digraph (up), or
    - s == s', s is not all ones and D is not a cycle digraph (self_loop).

    The covering pairs come from flipping every position of every necklace once, see
    :func:`~cbnpy.necklace.flip_tally`.

    :param D: %(D)s
    :return: StabilityStructure
    """
    return _structure_with_tallies(D)[0]


@docstr
@export
def transition_weights(D: Digraph, up_weight: str = 'source') -> StabilityStructure:
    """
    The stability structure with exact weights, sigma being the number of ones of the source s:

    - down s -> s': gamma_down(s, s') / p*
    - up s -> s': alpha * gamma_up(s, s') / (n * p*)
    - self_loop: (p* - sigma) * (n - alpha) / (n * p*)

    With up_weight='literal' the up weight counts the flips of the target instead,
    alpha * gamma_down(s', s) / (n * p*). That count differs whenever the orders of s and s' differ and the rows
    then no longer sum to 1.

    :param D: %(D)s
    :param up_weight: One of %(transition_weights__up_weight)s [optional]
    :return: StabilityStructure
    """
    # -- assert
    if up_weight not in validations['transition_weights__up_weight']:
        raise ValueError(f"up_weight must be one of {validations['transition_weights__up_weight']}")

    # -- init
    _structure, _tallies = _structure_with_tallies(D)
    _n, _p, _alpha = _structure.n, _structure.p_star, _structure.alpha

    # -- main
    for _edge in _structure.edges:
        _down, _up = _tallies[_edge.source]
        if _edge.kind == 'down':
            _edge.weight = Fraction(_down[_edge.target], _p)
        elif _edge.kind == 'up':
            if up_weight == 'source':
                _gamma = _up[_edge.target]
            else:
                _gamma = _tallies[_edge.target][0][_edge.source]
            _edge.weight = Fraction(_alpha * _gamma, _n * _p)
        else:
            _edge.weight = Fraction((_p - _edge.source.sigma) * (_n - _alpha), _n * _p)

    if not _structure.is_row_stochastic():
        warnings.warn(f"transition weights with up_weight={up_weight} do not sum to 1 on every row")

    # -- return
    return _structure


@docstr
@export
def export_structure(structure: StabilityStructure, fmt: str = 'json') -> str:
    """
    Serializes a stability structure. dot output labels the edges with their weights as num/den.

    :param structure: StabilityStructure
    :param fmt: One of %(export__fmt)s
    :return: str
    """
    if fmt not in validations['export__fmt']:
        raise ValueError(f"fmt must be one of {validations['export__fmt']}")
    if fmt == 'json':
        return structure.to_json() + '\n'
    elif fmt == 'dot':
        return structure.to_dot()
    else:  # fmt == 'table'
        return structure.to_table()


@docstr
@export
def orbit_census(D: Digraph, dec: Decomposition = None) -> pd.DataFrame:
    """
    One row per periodic orbit: its necklace, order (the period of the orbit), number of ones and a state on it

    :param D: %(D)s
    :param dec: %(dec)s, computed if not passed [optional]
    :return: pandas DataFrame with the columns necklace, order, sigma, state
    """
    if dec is None:
        dec = irreducible_components(D)
    _nodes = enumerate_necklaces(dec.p_star)
    return pd.DataFrame({
        'necklace': [_.rep for _ in _nodes],
        'order': [_.order for _ in _nodes],
        'sigma': [_.sigma for _ in _nodes],
        'state': [state_to_bits(necklace_to_state(dec, _), D.n) for _ in _nodes],
    })
