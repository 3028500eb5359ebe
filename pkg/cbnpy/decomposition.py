"""
cbnpy.decomposition.py
~~~~~~~~~~~~~~~~~~~~~~

Contains the partition of the vertex set by depth label residues, the irreducible components and the structural
classification of a dependency digraph

"""
# ---- imports
# --- standard imports
import logging
# --- third party imports
from typing import List, Tuple
from docrep import DocstringProcessor
# --- local imports
from cbnpy.main import export, BaseClass, PreconditionError, State, vertices_to_mask, restrict_state, lift_state, \
    docstr as docstr_main
from cbnpy.digraph import Digraph, depth_labels, loop_number, n_out_p

# ---- variables
logger = logging.getLogger('cbnpy.decomposition')
Block = Tuple[int, ...]
# --- validations
validations = {
    'Classification__kind': ['general', 'rose', 'cycle_digraph'],
}
# --- docstr
docstr = DocstringProcessor(
    D=docstr_main.params['D'],
    dec=docstr_main.params['dec'],
    p='Divisor of the loop number of D',
    **validations
)


# ---- classes
@export
class Component(BaseClass):
    """
        Irreducible component G_k: the digraph on block U_k whose edges are the walks of length p* in D. Local vertex
        j is the j-th smallest global vertex of the block.

        :param index: block index k
        :param vertices: global vertex indices of U_k in ascending order
        :param digraph: component digraph on the local indices
        :param n: number of vertices of D
    """

    # --- globals
    __name__ = 'Component'
    __attributes__ = ['index', 'vertices', 'digraph']

    # --- functions
    def __init__(self, index: int, vertices: Block, digraph: Digraph, n: int):
        self.index = index
        self.vertices = tuple(vertices)
        self.digraph = digraph
        self.n = n

    @property
    def size(self) -> int:
        return len(self.vertices)

    def to_global(self, j: int) -> int:
        return self.vertices[j]

    def restrict(self, x: State) -> State:
        """The local state of a global state x on this component"""
        return restrict_state(x, self.n, self.vertices)

    def lift(self, y: State) -> State:
        """The global state that equals y on this component and 0 elsewhere"""
        return lift_state(y, self.n, self.vertices)


@export
class Decomposition(BaseClass):
    """
        Ordered blocks U_0..U_{p*-1} of the relation d(i) == d(j) mod p* together with the irreducible components.
        Block 0 holds vertex 0 and the out-neighborhood of U_k is U_{k+1 mod p*}.

        :param n: number of vertices of D
        :param p_star: loop number of D
        :param blocks: ordered blocks
        :param components: one :class:`Component` per block
    """

    # --- globals
    __name__ = 'Decomposition'
    __attributes__ = ['n', 'p_star', 'blocks', 'components']
    __attributes_no_repr__ = ['components']

    # --- functions
    def __init__(self, n: int, p_star: int, blocks: List[Block], components: List[Component]):
        self.n = n
        self.p_star = p_star
        self.blocks = [tuple(_) for _ in blocks]
        self.components = list(components)

        self._block_of = [0] * n
        for _k, _block in enumerate(self.blocks):
            for _v in _block:
                self._block_of[_v] = _k
        self._block_masks = [vertices_to_mask(n, _) for _ in self.blocks]

    @property
    def block_sizes(self) -> List[int]:
        return [len(_) for _ in self.blocks]

    @property
    def block_masks(self) -> List[int]:
        """For every block the state mask of its vertices"""
        return self._block_masks

    def block_of(self, v: int) -> int:
        return self._block_of[v]


@export
class Classification(BaseClass):
    """
        Structural class of a digraph: kind is one of 'general', 'rose', 'cycle_digraph' and alpha is the number
        of singleton blocks, 0 unless the digraph is a rose.

        :param kind: structural kind
        :param alpha: number of singleton blocks
    """

    # --- globals
    __name__ = 'Classification'
    __attributes__ = ['kind', 'alpha']

    # --- functions
    def __init__(self, kind: str, alpha: int):
        if kind not in validations['Classification__kind']:
            raise ValueError(f"kind must be one of {validations['Classification__kind']}")
        self.kind = kind
        self.alpha = alpha

    def __eq__(self, other):
        return isinstance(other, Classification) and (self.kind, self.alpha) == (other.kind, other.alpha)

    def __hash__(self):
        return hash((self.kind, self.alpha))


# ---- functions
def _assert_divisor(D: Digraph, p: int) -> int:
    _p_star = loop_number(D)
    if p < 1 or _p_star % p != 0:
        raise PreconditionError(f"{p} does not divide the loop number {_p_star}")
    return _p_star


@docstr
@export
def related(D: Digraph, p: int, i: int, j: int) -> bool:
    """
    Whether some walk from i to j has a length divisible by p. All such walk lengths are congruent mod p, so this
    is decided by the depth labels: d(i) == d(j) mod p.

    :param D: %(D)s
    :param p: %(p)s
    :param i: vertex
    :param j: vertex
    :return: bool
    """
    _assert_divisor(D, p)
    if not (0 <= i < D.n and 0 <= j < D.n):
        raise PreconditionError(f"vertices ({i}, {j}) out of range for {D.n} vertices")
    _d = depth_labels(D)
    return (_d[i] - _d[j]) % p == 0


@docstr
@export
def partition(D: Digraph, p: int) -> List[Block]:
    """
    The p classes of the relation :func:`related`, block k holding the vertices with depth label k mod p. Block 0
    holds vertex 0 and the out-neighborhood of block k is block k + 1 mod p.

    :param D: %(D)s
    :param p: %(p)s
    :return: list of p blocks, each a sorted tuple of vertices

    **Examples**

    >>> from cbnpy.graphgen import cycle_digraph
    >>> partition(cycle_digraph(4), 2)
    [(0, 2), (1, 3)]
    """
    _assert_divisor(D, p)
    _d = depth_labels(D)
    _blocks = [[] for _ in range(p)]
    for _v in range(D.n):
        _blocks[_d[_v] % p].append(_v)
    return [tuple(_) for _ in _blocks]


@docstr
@export
def irreducible_components(D: Digraph) -> Decomposition:
    """
    Decomposition of D into the blocks U_k of the relation for p = p* and the component digraphs G_k, where G_k has
    an edge u -> w iff a walk of length exactly p* joins u to w in D.

    :param D: %(D)s
    :return: Decomposition
    """
    # -- init
    _p_star = loop_number(D)
    _blocks = partition(D, _p_star)

    # -- main
    _components = []
    for _k, _block in enumerate(_blocks):
        _local = {_v: _j for _j, _v in enumerate(_block)}
        _edges = []
        for _v in _block:
            # walks of length p* never leave the block
            for _w in n_out_p(D, {_v}, _p_star):
                _edges.append((_local[_v], _local[_w]))
        _components.append(Component(index=_k, vertices=_block, digraph=Digraph(len(_block), _edges), n=D.n))

    logger.info(f"n={D.n}, p*={_p_star}, block sizes {[len(_) for _ in _blocks]}")

    # -- return
    return Decomposition(n=D.n, p_star=_p_star, blocks=_blocks, components=_components)


@docstr
@export
def classify(D: Digraph, dec: Decomposition = None) -> Classification:
    """
    Classifies D by its block sizes: a cycle digraph iff every block is a singleton, a rose iff at least one block is
    a singleton and general otherwise. alpha is the number of singleton blocks.

    :param D: %(D)s
    :param dec: %(dec)s, computed if not passed [optional]
    :return: Classification
    """
    # -- assert
    if dec is None:
        dec = irreducible_components(D)
    elif dec.n != D.n or sum(dec.block_sizes) != D.n:
        raise PreconditionError('the decomposition was not built from this digraph')

    # -- main
    _alpha = sum(1 for _size in dec.block_sizes if _size == 1)
    if _alpha == dec.p_star:
        _kind = 'cycle_digraph'
    elif _alpha > 0:
        _kind = 'rose'
    else:
        _kind = 'general'

    return Classification(kind=_kind, alpha=_alpha)
