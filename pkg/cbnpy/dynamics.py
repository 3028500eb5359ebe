"""
cbnpy.dynamics.py
~~~~~~~~~~~~~~~~~

Contains the conjunctive update rule, its iterates, the induced dynamics on irreducible components and orbit detection.
States are ints with the bit of vertex 0 most significant, see :func:`~cbnpy.main.vertex_mask`.

"""
# ---- imports
# --- standard imports
import logging
# --- third party imports
import numpy as np
from typing import Callable, List, Sequence
from docrep import DocstringProcessor
# --- local imports
from cbnpy.main import export, BaseClass, PreconditionError, State, StateLike, as_state, state_to_bits, vertex_mask, \
    vertices_to_mask, docstr as docstr_main
from cbnpy.digraph import Digraph, n_in_p
from cbnpy.decomposition import Decomposition

# ---- variables
logger = logging.getLogger('cbnpy.dynamics')
StepFn = Callable[[State], State]
# --- constants
MAX_ARRAY_N = 64
# --- validations
validations = {
    'step_k__method': ['compose', 'product'],
}
# --- docstr
docstr = DocstringProcessor(
    D=docstr_main.params['D'],
    dec=docstr_main.params['dec'],
    x=docstr_main.params['x'],
    step_fn='Replacement for the conjunctive update, used to inject faulty dynamics into the oracle [optional]',
    **validations
)


# ---- classes
@export
class Orbit(BaseClass):
    """
        Periodic orbit, stored with its least state first. Stepping states[k] gives states[k + 1], wrapping
        around after the last state.

        :param states: the states of one period in the order of the dynamics, any rotation
        :param n: number of vertices
        :param transient: steps from the probed initial state until the orbit was entered
    """

    # --- globals
    __name__ = 'Orbit'
    __attributes__ = ['bits', 'period', 'transient']

    # --- functions
    def __init__(self, states: Sequence[State], n: int, transient: int = 0):
        _states = list(states)
        _i = _states.index(min(_states))
        self.states = tuple(_states[_i:] + _states[:_i])
        self.n = n
        self.transient = transient

    @property
    def period(self) -> int:
        return len(self.states)

    @property
    def canonical(self) -> State:
        return self.states[0]

    @property
    def bits(self) -> List[str]:
        return [state_to_bits(_, self.n) for _ in self.states]

    def __contains__(self, x: State):
        return x in self.states

    def __eq__(self, other):
        return isinstance(other, Orbit) and self.n == other.n and self.states == other.states

    def __hash__(self):
        return hash((self.n, self.states))


# ---- functions
def _assert_in_degree(D: Digraph) -> None:
    for _v in range(D.n):
        if D.in_degree(_v) == 0:
            raise PreconditionError(f"vertex {_v} has in-degree 0, its conjunction is empty")


def _apply_masks_int(x: State, masks: Sequence[int], n: int) -> State:
    _out = 0
    for _j, _mask in enumerate(masks):
        if (x & _mask) == _mask:
            _out |= vertex_mask(n, _j)
    return _out


@docstr
@export
def step(D: Digraph, x: StateLike) -> State:
    """
    One synchronous conjunctive update: entry j of the result is the AND of x over the in-neighbors of j.

    :param D: %(D)s
    :param x: %(x)s
    :return: State

    **Examples**

    >>> from cbnpy.graphgen import cycle_digraph
    >>> state_to_bits(step(cycle_digraph(4), '1000'), 4)
    '0100'
    """
    _x = as_state(x, D.n)
    _assert_in_degree(D)
    return _apply_masks_int(_x, D.in_masks, D.n)


@export
def product_masks(D: Digraph, p: int) -> List[int]:
    """
    For every vertex i the state mask of N_in^p(i), the vertices whose AND gives entry i after p steps

    :param D: Digraph
    :param p: nonnegative number of steps
    :return: list of masks indexed by vertex
    """
    return [vertices_to_mask(D.n, n_in_p(D, {_i}, p)) for _i in range(D.n)]


@docstr
@export
def step_k(D: Digraph, x: StateLike, p: int, method: str = 'compose') -> State:
    """
    p synchronous updates. 'compose' applies :func:`step` p times, 'product' evaluates entry i directly as the AND
    over N_in^p(i). Both give the same result.

    :param D: %(D)s
    :param x: %(x)s
    :param p: nonnegative number of steps
    :param method: One of %(step_k__method)s [optional]
    :return: State
    """
    # -- assert
    if method not in validations['step_k__method']:
        raise ValueError(f"method must be one of {validations['step_k__method']}")
    if p < 0:
        raise PreconditionError(f"p must be nonnegative, got {p}")
    _x = as_state(x, D.n)
    _assert_in_degree(D)

    # -- main
    if method == 'product':
        return _apply_masks_int(_x, product_masks(D, p), D.n)
    for _ in range(p):
        _x = _apply_masks_int(_x, D.in_masks, D.n)
    return _x


@export
def apply_masks(states: np.ndarray, masks: Sequence[int], n: int) -> np.ndarray:
    """
    Vectorized conjunctive evaluation: entry j of each result is set iff the state contains masks[j]

    :param states: array of states
    :param masks: one mask per entry of the result
    :param n: number of entries of the result, at most 64
    :return: numpy array of dtype uint64
    """
    if n > MAX_ARRAY_N:
        raise PreconditionError(f"vectorized states support at most {MAX_ARRAY_N} entries, got {n}")
    _states = np.asarray(states, dtype=np.uint64)
    _out = np.zeros_like(_states)
    _zero = np.uint64(0)
    for _j, _mask in enumerate(masks):
        _m = np.uint64(_mask)
        _out |= np.where((_states & _m) == _m, np.uint64(vertex_mask(n, _j)), _zero)
    return _out


@docstr
@export
def step_array(D: Digraph, states: np.ndarray) -> np.ndarray:
    """
    :func:`step` applied to an array of states

    :param D: %(D)s
    :param states: array of states
    :return: numpy array of dtype uint64
    """
    _assert_in_degree(D)
    return apply_masks(states, D.in_masks, D.n)


@docstr
@export
def trajectory(D: Digraph, x0: StateLike, steps: int) -> List[State]:
    """
    The states x0, f(x0), ..., f^steps(x0)

    :param D: %(D)s
    :param x0: %(x)s
    :param steps: number of updates
    :return: list of steps + 1 states
    """
    _x = as_state(x0, D.n)
    _assert_in_degree(D)
    _states = [_x]
    for _ in range(steps):
        _x = _apply_masks_int(_x, D.in_masks, D.n)
        _states.append(_x)
    return _states


@docstr
@export
def find_orbit(D: Digraph, x0: StateLike, step_fn: StepFn = None) -> Orbit:
    """
    Iterates the dynamics from x0, recording every visited state, until a state repeats.

    :param D: %(D)s
    :param x0: %(x)s
    :param step_fn: %(step_fn)s
    :return: :class:`Orbit` with the minimal period and the transient length
    """
    # -- init
    _x = as_state(x0, D.n)
    if step_fn is None:
        _assert_in_degree(D)

        def step_fn(_state: State) -> State:
            return _apply_masks_int(_state, D.in_masks, D.n)

    # -- main
    _seen = {}
    _visited = []
    while _x not in _seen:
        _seen[_x] = len(_visited)
        _visited.append(_x)
        _x = int(step_fn(_x))

    # -- return
    _t0 = _seen[_x]
    return Orbit(_visited[_t0:], n=D.n, transient=_t0)


@docstr
@export
def induced_step(dec: Decomposition, k: int, y: StateLike) -> State:
    """
    One conjunctive update on the irreducible component G_k. For every state x of D this equals p* updates of D
    restricted to U_k.

    :param dec: %(dec)s
    :param k: block index
    :param y: local state over U_k, local index j being the j-th smallest vertex of the block
    :return: local State
    """
    if not 0 <= k < dec.p_star:
        raise PreconditionError(f"block index {k} out of range for p*={dec.p_star}")
    _component = dec.components[k]
    return step(_component.digraph, as_state(y, _component.size))


@docstr
@export
def is_periodic_state(D: Digraph, dec: Decomposition, x: StateLike) -> bool:
    """
    Whether x lies on a periodic orbit, which is the case iff x is constant on every block U_k

    :param D: %(D)s
    :param dec: %(dec)s
    :param x: %(x)s
    :return: bool
    """
    if dec.n != D.n:
        raise PreconditionError('the decomposition was not built from this digraph')
    _x = as_state(x, D.n)
    return all((_x & _mask) in (0, _mask) for _mask in dec.block_masks)


@docstr
@export
def block_values(dec: Decomposition, x: StateLike) -> str:
    """
    The string y_0..y_{p*-1} of the common values of a block constant state

    :param dec: %(dec)s
    :param x: %(x)s, constant on every block
    :return: binary string of length p*
    """
    _x = as_state(x, dec.n)
    _values = []
    for _k, _mask in enumerate(dec.block_masks):
        _masked = _x & _mask
        if _masked not in (0, _mask):
            raise PreconditionError(f"state {state_to_bits(_x, dec.n)} is not constant on block {_k}")
        _values.append('1' if _masked else '0')
    return ''.join(_values)


@docstr
@export
def block_constant_state(dec: Decomposition, values: str) -> State:
    """
    Inverse of :func:`block_values`: the state that holds values[k] on every vertex of U_k

    :param dec: %(dec)s
    :param values: binary string of length p*
    :return: State
    """
    if len(values) != dec.p_star:
        raise PreconditionError(f"expected {dec.p_star} block values, got {len(values)}")
    _x = 0
    for _char, _mask in zip(values, dec.block_masks):
        if _char == '1':
            _x |= _mask
    return _x
