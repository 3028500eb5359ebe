"""
cbnpy.graphgen.py
~~~~~~~~~~~~~~~~~

Contains deterministic and seeded generators of strongly connected digraphs: cycles, roses, bouquets, grafted cycles,
edge subdivision and random chords over a Hamiltonian backbone

"""
# ---- imports
# --- standard imports
import logging
import warnings
# --- third party imports
import numpy as np
from typing import List, Sequence, Tuple
from docrep import DocstringProcessor
# --- local imports
from cbnpy.main import export, BaseClass, PreconditionError, parse_int_list
from cbnpy.digraph import Digraph

# ---- variables
logger = logging.getLogger('cbnpy.graphgen')
# --- validations
validations = {
    'GenSpec__kind': ['cycle', 'rose', 'bouquet', 'random', 'graft'],
}
# --- docstr
docstr = DocstringProcessor(
    seed='Seed of numpy.random.default_rng, fully determines the output',
    **validations
)


# ---- functions
def _cycle_through(start: int, length: int, next_vertex: int) -> Tuple[List[Tuple[int, int]], int]:
    # edges of a cycle start -> next_vertex -> ... -> start using length - 1 new vertices
    if length < 1:
        raise PreconditionError(f"cycle lengths must be at least 1, got {length}")
    _path = [start] + list(range(next_vertex, next_vertex + length - 1)) + [start]
    return list(zip(_path[:-1], _path[1:])), next_vertex + length - 1


@export
def cycle_digraph(L: int) -> Digraph:
    """
    The cycle 0 -> 1 -> ... -> L-1 -> 0, a self-loop for L = 1

    :param L: cycle length
    :return: Digraph
    """
    _edges, _n = _cycle_through(0, L, 1)
    return Digraph(_n, _edges)


@export
def bouquet(lengths: Sequence[int]) -> Digraph:
    """
    Cycles of the given lengths through the shared vertex 0. The loop number is the gcd of the lengths.

    :param lengths: cycle lengths, each at least 1
    :return: Digraph

    **Examples**

    >>> bouquet([4, 8, 12]).n
    22
    """
    if len(lengths) == 0:
        raise PreconditionError('a bouquet needs at least one cycle')
    _edges = []
    _next = 1
    for _length in lengths:
        _cycle_edges, _next = _cycle_through(0, _length, _next)
        _edges += _cycle_edges
    return Digraph(_next, _edges)


@export
def rose(m: int, c: int) -> Digraph:
    """
    c cycles of length m sharing exactly the vertex 0, n = 1 + c * (m - 1)

    :param m: cycle length
    :param c: number of cycles
    :return: Digraph
    """
    if c < 1:
        raise PreconditionError(f"a rose needs at least one cycle, got {c}")
    return bouquet([m] * c)


@export
def graft(D: Digraph, vertex: int, length: int) -> Digraph:
    """
    Adds a new cycle of the given length through an existing vertex, using length - 1 new vertices

    :param D: Digraph
    :param vertex: vertex the new cycle passes through
    :param length: cycle length
    :return: Digraph
    """
    if not 0 <= vertex < D.n:
        raise PreconditionError(f"vertex {vertex} out of range for {D.n} vertices")
    _edges, _n = _cycle_through(vertex, length, D.n)
    return Digraph(_n, D.edges + _edges)


@export
def subdivide(D: Digraph, factor: int) -> Digraph:
    """
    Replaces every edge by a directed path of factor edges. Every cycle length is multiplied by factor, so the loop
    number of the result is factor times the loop number of D.

    :param D: Digraph
    :param factor: path length per edge, at least 1
    :return: Digraph
    """
    if factor < 1:
        raise PreconditionError(f"factor must be at least 1, got {factor}")
    _edges = []
    _next = D.n
    for _u, _v in D.edges:
        _path = [_u] + list(range(_next, _next + factor - 1)) + [_v]
        _next += factor - 1
        _edges += list(zip(_path[:-1], _path[1:]))
    return Digraph(_next, _edges)


@docstr
@export
def random_strongly_connected(n: int, extra_edges: int, seed: int = 0) -> Digraph:
    """
    The Hamiltonian backbone 0 -> 1 -> ... -> n-1 -> 0 plus extra_edges chords drawn without replacement from all
    other vertex pairs, self-loops included. Strongly connected by construction.

    :param n: number of vertices
    :param extra_edges: number of chords
    :param seed: %(seed)s
    :return: Digraph
    """
    # -- init
    if n < 1:
        raise PreconditionError(f"n must be at least 1, got {n}")
    if extra_edges < 0:
        raise PreconditionError(f"extra_edges must be nonnegative, got {extra_edges}")
    _backbone = [(_i, (_i + 1) % n) for _i in range(n)]
    _taken = set(_backbone)
    _candidates = [(_u, _v) for _u in range(n) for _v in range(n) if (_u, _v) not in _taken]

    # -- main
    if extra_edges > len(_candidates):
        warnings.warn(f"only {len(_candidates)} chords are available, {extra_edges} were requested")
        extra_edges = len(_candidates)
    _rng = np.random.default_rng(seed)
    _chosen = _rng.choice(len(_candidates), size=extra_edges, replace=False) if extra_edges > 0 else []
    _chords = [_candidates[int(_)] for _ in sorted(_chosen)]
    logger.debug(f"random digraph n={n} seed={seed} chords={_chords}")

    return Digraph(n, _backbone + _chords)


# ---- classes
@export
class GenSpec(BaseClass):
    """
        Parameters of a generator call.

        ========  ==========================================
        kind      params
        ========  ==========================================
        cycle     (L,)
        rose      (m, c)
        bouquet   (length_1, length_2, ...)
        random    (n, extra_edges) or (n, extra_edges, scale)
        graft     (m, c, vertex, length)
        ========  ==========================================

        :param kind: generator kind
        :param params: integer parameters
        :param seed: seed, only used by kind random
    """

    # --- globals
    __name__ = 'GenSpec'
    __attributes__ = ['kind', 'params', 'seed']

    # --- functions
    def __init__(self, kind: str, params: Sequence[int], seed: int = 0):
        if kind not in validations['GenSpec__kind']:
            raise ValueError(f"kind must be one of {validations['GenSpec__kind']}")
        self.kind = kind
        self.params = tuple(int(_) for _ in params)
        self.seed = int(seed)
        if any(_ < 0 for _ in self.params):
            raise PreconditionError(f"parameters must be nonnegative, got {self.params}")

    @classmethod
    def from_strings(cls, kind: str, params: str, seed: int = 0) -> 'GenSpec':
        """
        Builds a GenSpec from command line style arguments, e.g. ('bouquet', '4,8,12')

        :param kind: generator kind
        :param params: comma separated integers
        :param seed: seed
        :return: GenSpec
        """
        return cls(kind=kind, params=parse_int_list(params), seed=seed)

    def _assert_arity(self, *arities: int) -> None:
        if len(self.params) not in arities:
            raise ValueError(f"kind {self.kind} expects {' or '.join(str(_) for _ in arities)} parameters, "
                             f"got {len(self.params)}")

    def build(self) -> Digraph:
        """
        Runs the generator

        :return: Digraph
        """
        if self.kind == 'cycle':
            self._assert_arity(1)
            return cycle_digraph(*self.params)
        elif self.kind == 'rose':
            self._assert_arity(2)
            return rose(*self.params)
        elif self.kind == 'bouquet':
            if len(self.params) == 0:
                raise ValueError('kind bouquet expects at least one length')
            return bouquet(self.params)
        elif self.kind == 'random':
            self._assert_arity(2, 3)
            _graph = random_strongly_connected(self.params[0], self.params[1], seed=self.seed)
            if len(self.params) == 3:
                _graph = subdivide(_graph, self.params[2])
            return _graph
        else:  # self.kind == 'graft'
            self._assert_arity(4)
            _m, _c, _vertex, _length = self.params
            return graft(rose(_m, _c), _vertex, _length)
