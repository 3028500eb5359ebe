"""
cbnpy.digraph.py
~~~~~~~~~~~~~~~~

Contains the dependency digraph: construction, edge list I/O, strong connectivity, cycle enumeration, the loop number
and iterated neighborhoods

"""
# ---- imports
# --- standard imports
import logging
import math
from functools import reduce
from itertools import islice
# --- third party imports
import networkx as nx
from typing import Iterable, List, Sequence, Tuple
from docrep import DocstringProcessor
# --- local imports
from cbnpy.main import export, BaseClass, GraphError, PreconditionError, TooManyCyclesError, rcParams, \
    vertices_to_mask, docstr as docstr_main

# ---- variables
logger = logging.getLogger('cbnpy.digraph')
Edge = Tuple[int, int]
# --- docstr
docstr = DocstringProcessor(
    D=docstr_main.params['D'],
    seed='Set of vertices to start from',
    p='Number of neighborhood iterations, N^0(S) = S',
)


# ---- classes
@export
class Digraph(BaseClass):
    """
        Immutable directed graph on the vertices 0..n-1. An edge u -> v means that the update of v reads u.
        Self-loops are allowed, duplicate edges are collapsed.

        :param n: number of vertices, at least 1
        :param edges: iterable of (from-vertex, to-vertex) pairs
    """

    # --- globals
    __name__ = 'Digraph'
    __attributes__ = ['n', 'edges']

    # --- functions
    def __init__(self, n: int, edges: Iterable[Edge] = ()):

        # -- assert
        if int(n) < 1:
            raise GraphError(f"a digraph needs at least one vertex, got n={n}")
        _n = int(n)

        # -- main
        _out = [set() for _ in range(_n)]
        for _edge in edges:
            _u, _v = (int(_) for _ in _edge)
            if not (0 <= _u < _n and 0 <= _v < _n):
                raise GraphError(f"edge ({_u}, {_v}) references a vertex outside [0, {_n})")
            _out[_u].add(_v)

        _in = [set() for _ in range(_n)]
        for _u, _targets in enumerate(_out):
            for _v in _targets:
                _in[_v].add(_u)

        self._n = _n
        self._out_adj = tuple(tuple(sorted(_)) for _ in _out)
        self._in_adj = tuple(tuple(sorted(_)) for _ in _in)
        self._in_masks = tuple(vertices_to_mask(_n, _) for _ in self._in_adj)

    @property
    def n(self) -> int:
        return self._n

    @property
    def out_adj(self) -> Tuple[Tuple[int, ...], ...]:
        return self._out_adj

    @property
    def in_adj(self) -> Tuple[Tuple[int, ...], ...]:
        return self._in_adj

    @property
    def in_masks(self) -> Tuple[int, ...]:
        """For every vertex the state mask of its in-neighbors"""
        return self._in_masks

    @property
    def edges(self) -> List[Edge]:
        return [(_u, _v) for _u, _targets in enumerate(self._out_adj) for _v in _targets]

    @property
    def n_edges(self) -> int:
        return sum(len(_) for _ in self._out_adj)

    def in_degree(self, v: int) -> int:
        return len(self._in_adj[v])

    def out_neighbors(self, v: int) -> Tuple[int, ...]:
        return self._out_adj[v]

    def in_neighbors(self, v: int) -> Tuple[int, ...]:
        return self._in_adj[v]

    def to_networkx(self) -> nx.DiGraph:
        """
        :return: networkx.DiGraph with the same vertices and edges
        """
        _graph = nx.DiGraph()
        _graph.add_nodes_from(range(self._n))
        _graph.add_edges_from(self.edges)
        return _graph

    def __eq__(self, other):
        return isinstance(other, Digraph) and self._n == other.n and self._out_adj == other.out_adj

    def __hash__(self):
        return hash((self._n, self._out_adj))


@export
class CycleList(BaseClass):
    """
        Elementary cycles of a digraph. Every cycle is stored starting at its least vertex, the list is sorted by
        (length, vertices).

        :param cycles: vertex sequences of simple directed cycles
    """

    # --- globals
    __name__ = 'CycleList'
    __attributes__ = ['cycles']

    # --- functions
    def __init__(self, cycles: Iterable[Sequence[int]] = ()):
        self.cycles = sorted({_rotate_to_min(_) for _ in cycles}, key=lambda _: (len(_), _))

    @property
    def lengths(self) -> List[int]:
        return [len(_) for _ in self.cycles]

    @property
    def gcd(self) -> int:
        return reduce(math.gcd, self.lengths, 0)

    def __len__(self):
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)


# ---- functions
def _rotate_to_min(cycle: Sequence[int]) -> Tuple[int, ...]:
    _cycle = tuple(cycle)
    _i = _cycle.index(min(_cycle))
    return _cycle[_i:] + _cycle[:_i]


def _assert_strongly_connected(D: Digraph) -> None:
    if not is_strongly_connected(D):
        raise PreconditionError('the digraph is not strongly connected')


@export
def from_edge_list(edges: Iterable[Edge], n: int) -> Digraph:
    """
    Builds a :class:`Digraph` from an edge list

    :param edges: iterable of (from-vertex, to-vertex) pairs
    :param n: number of vertices
    :return: Digraph

    **Examples**

    >>> from_edge_list([(0, 1), (1, 0)], 2).n_edges
    2
    """
    return Digraph(n, edges)


@export
def parse_edge_list(text: str) -> Digraph:
    """
    Parses the edge list format: one edge "u v" per line, lines starting with '#' are comments and an optional
    header line "n <count>". Without a header n is one more than the largest index.

    :param text: file contents
    :return: Digraph
    """
    _n = None
    _edges = []
    for _line_nr, _line in enumerate(text.splitlines(), start=1):
        _line = _line.strip()
        if _line == '' or _line.startswith('#'):
            continue
        _tokens = _line.split()
        if len(_tokens) == 2 and _tokens[0] == 'n':
            if _n is not None or len(_edges) > 0:
                raise GraphError(f"line {_line_nr}: the header 'n <count>' must come before the edges")
            if not _tokens[1].isdigit():
                raise GraphError(f"line {_line_nr}: invalid vertex count {_tokens[1]!r}")
            _n = int(_tokens[1])
            continue
        if len(_tokens) != 2 or not all(_.isdigit() for _ in _tokens):
            raise GraphError(f"line {_line_nr}: expected two nonnegative integers 'u v', got {_line!r}")
        _u, _v = int(_tokens[0]), int(_tokens[1])
        if _n is not None and not (_u < _n and _v < _n):
            raise GraphError(f"line {_line_nr}: edge ({_u}, {_v}) references a vertex outside [0, {_n})")
        _edges.append((_u, _v))

    if _n is None:
        if len(_edges) == 0:
            raise GraphError('the edge list is empty')
        _n = 1 + max(max(_) for _ in _edges)

    return Digraph(_n, _edges)


@export
def format_edge_list(D: Digraph) -> str:
    """
    Serializes a digraph in the edge list format, header first and edges in ascending order

    :param D: Digraph
    :return: str
    """
    _lines = [f"n {D.n}"] + [f"{_u} {_v}" for _u, _v in D.edges]
    return '\n'.join(_lines) + '\n'


@export
def read_edge_list(path: str) -> Digraph:
    """
    Reads an edge list file, see :func:`parse_edge_list`

    :param path: file path
    :return: Digraph
    """
    with open(path, 'r') as _file:
        return parse_edge_list(_file.read())


@export
def write_edge_list(D: Digraph, path: str) -> None:
    """
    Writes an edge list file, see :func:`format_edge_list`

    :param D: Digraph
    :param path: file path
    :return: None
    """
    with open(path, 'w') as _file:
        _file.write(format_edge_list(D))


@export
def is_strongly_connected(D: Digraph) -> bool:
    """
    Whether every ordered vertex pair is joined by a directed path

    :param D: Digraph
    :return: bool
    """
    return nx.is_strongly_connected(D.to_networkx())


@docstr
@export
def enumerate_cycles(D: Digraph, cap: int = None) -> CycleList:
    """
    All elementary cycles of D up to rotation, enumerated with Johnson's algorithm as implemented in
    networkx.simple_cycles.

    :param D: %(D)s
    :param cap: maximum number of cycles, defaults to rcParams['digraph.cycle_cap']
    :return: CycleList
    :raises TooManyCyclesError: if D has more than cap cycles
    """
    # -- assert
    _assert_strongly_connected(D)
    if cap is None:
        cap = rcParams['digraph.cycle_cap']

    # -- main
    _cycles = list(islice(nx.simple_cycles(D.to_networkx()), cap + 1))
    if len(_cycles) > cap:
        raise TooManyCyclesError(f"the digraph has more than {cap} elementary cycles")
    logger.debug(f"found {len(_cycles)} elementary cycles")

    return CycleList(_cycles)


@export
def depth_labels(D: Digraph, source: int = 0) -> List[int]:
    """
    Breadth first search distances from the source vertex

    :param D: Digraph, every vertex must be reachable from source
    :param source: start vertex
    :return: list of distances indexed by vertex
    """
    _distances = nx.single_source_shortest_path_length(D.to_networkx(), source)
    if len(_distances) < D.n:
        raise PreconditionError(f"not every vertex is reachable from vertex {source}")
    return [_distances[_v] for _v in range(D.n)]


@docstr
@export
def loop_number(D: Digraph) -> int:
    """
    The loop number p* of D, the gcd of the lengths of all its cycles. Computed in linear time from the depth labels
    d of a breadth first search: p* = gcd over all edges (u, v) of |d(u) + 1 - d(v)|.

    :param D: %(D)s
    :return: positive int

    **Examples**

    >>> loop_number(from_edge_list([(0, 1), (1, 2), (2, 3), (3, 0)], 4))
    4
    """
    _assert_strongly_connected(D)
    _d = depth_labels(D)
    _p = reduce(math.gcd, (abs(_d[_u] + 1 - _d[_v]) for _u, _v in D.edges), 0)
    # an edge back into vertex 0 always gives a nonzero term
    assert _p > 0
    logger.debug(f"loop number {_p} for n={D.n}")
    return _p


def _iterate_neighborhood(adj: Sequence[Sequence[int]], seed: Iterable[int], p: int) -> frozenset:
    if p < 0:
        raise ValueError(f"p must be nonnegative, got {p}")
    _current = frozenset(seed)
    for _ in range(p):
        _current = frozenset(_w for _v in _current for _w in adj[_v])
    return _current


@docstr
@export
def n_out_p(D: Digraph, seed: Iterable[int], p: int) -> frozenset:
    """
    p-fold iterated out-neighborhood

    :param D: Digraph
    :param seed: %(seed)s
    :param p: %(p)s
    :return: frozenset of vertices
    """
    return _iterate_neighborhood(D.out_adj, seed, p)


@docstr
@export
def n_in_p(D: Digraph, seed: Iterable[int], p: int) -> frozenset:
    """
    p-fold iterated in-neighborhood

    :param D: Digraph
    :param seed: %(seed)s
    :param p: %(p)s
    :return: frozenset of vertices
    """
    return _iterate_neighborhood(D.in_adj, seed, p)

