"""
cbnpy.main.py
~~~~~~~~~~~~~

Contains the shared infrastructure of the package: configuration, exceptions, the BaseClass all domain types derive
from, state helpers and console utilities

"""
# ---- imports
# --- standard imports
import os
import sys
import warnings
# --- third party imports
import numpy as np
from copy import deepcopy
from typing import Any, Callable, Iterable, List, Sequence, Set, Union
from docrep import DocstringProcessor

# ---- variables
# --- globals for functions
global_tprint_len = 0  # for temporary printing
# --- typing classes
State = int
StateLike = Union[int, str, Sequence[int]]
VertexSet = Set[int]
# --- rcParams
rcParams = {
    'digraph.cycle_cap': 10 ** 5,
    'necklace.max_length': 24,
    'oracle.max_n': 24,
    'oracle.random_states': 10 ** 4,
    'tprint.r_loc': 'front',
}

# ---- constants
# --- environment
ENV_MAX_ORACLE_N = 'CBN_MAX_ORACLE_N'
# --- validations
validations = {
    'tprint__r_loc': ['front', 'end'],
}
# --- docstr
docstr = DocstringProcessor(
    D='Strongly connected dependency digraph, edge u -> v meaning that v reads u',
    dec='Decomposition of D as returned by :func:`~cbnpy.decomposition.irreducible_components`',
    x='State as int (bit of vertex 0 most significant), bitstring or sequence of 0/1',
    n='Number of vertices',
    printf='The function used for printing progress. Set to None to suppress printing [optional]',
    **validations
)


# ---- exceptions
class GraphError(ValueError):
    """Malformed digraph or edge list input"""


class PreconditionError(ValueError):
    """An operation was called outside of its domain, e.g. on a digraph that is not strongly connected"""


class CapExceededError(PreconditionError):
    """A configured size cap was exceeded"""


class TooManyCyclesError(CapExceededError):
    """Elementary cycle enumeration hit its cap"""


# ---- decorators
def export(fn):
    # based on https://stackoverflow.com/questions/41895077/export-decorator-that-manages-all
    mod = sys.modules[fn.__module__]
    if hasattr(mod, '__all__'):
        mod.__all__.append(fn.__name__)
    else:
        mod.__all__ = [fn.__name__]
    return fn


for _exception in [GraphError, PreconditionError, CapExceededError, TooManyCyclesError]:
    export(_exception)


# ---- classes
@export
class BaseClass:
    """
        Base class for the domain types of the package. Implements __repr__, converting to dict and copying.
        Does NOT provide __init__ since it cannot be used by itself
    """

    # --- globals
    __name__ = 'BaseClass'
    __attributes__ = []
    __attributes_no_repr__ = []

    # --- functions
    def __repr__(self):
        return get_repr(self)

    def to_dict(self, recursive: bool = False) -> dict:
        """
        Converts self to a dictionary

        :param recursive: Whether to recursively propagate to_dict to children
        :return: Dictionary
        """

        if len(self.__attributes__) == 0:
            warnings.warn('self.__attributes__ has length zero, did you declare it?')

        _dict = {'__name__': self.__name__}
        for _attr_name in self.__attributes__:
            _attr = getattr(self, _attr_name)

            # - call to children's to_dict
            if recursive:
                if isinstance(_attr, BaseClass):
                    _attr = _attr.to_dict(recursive=True)
                elif isinstance(_attr, (list, tuple)):
                    _attr = [_ if not isinstance(_, BaseClass) else _.to_dict(recursive=True) for _ in _attr]

            _dict[_attr_name] = _attr

        return _dict

    def copy(self):
        """
        Uses `copy.deepcopy <https://docs.python.org/3/library/copy.html>`_ to return a copy of the object

        :return: Copy of self
        """
        return deepcopy(self)


# ---- functions
# --- internal functions
def get_repr(obj: Any) -> str:
    """
    basic reuseable repr method for custom classes

    :param obj: Any instance of a custom class implementing .__name__ (str) and .__attributes__ (List[str])
    :return: str
    """
    def _get_repr_i(value: Any) -> str:
        # case by case selector
        if isinstance(value, np.ndarray):
            return f"Array{value.shape}"
        elif hasattr(value, 'shape') and hasattr(value, 'columns'):
            return f"DataFrame{value.shape}"
        elif isinstance(value, (list, tuple)) and len(value) > 8:
            return f"[{', '.join(repr(_) for _ in value[:8])}, ... ({len(value)} items)]"
        return repr(value)

    # -- assert
    # - name
    if hasattr(obj, '__name__'):
        _name = obj.__name__
    else:
        warnings.warn('Object has no __name__ attribute, did you declare it?')
        _name = '{Unnamed}'
    if _name == 'BaseClass' and obj.__class__ != BaseClass:
        warnings.warn('__name__ is equal to BaseClass, did you declare it?')
    # - attributes
    _attributes = [_ for _ in getattr(obj, '__attributes__', []) if _ not in getattr(obj, '__attributes_no_repr__', [])]

    # -- main
    _reprs = []
    for _attribute in _attributes:
        if not hasattr(obj, _attribute):
            warnings.warn(f"{_attribute} is specified in self.__attributes__ but does not exist. Skipping...")
            continue
        _value = getattr(obj, _attribute)
        if _value is None:
            continue
        _reprs.append(f"{_attribute}={_get_repr_i(_value)}")

    # -- return
    return f"{_name}({', '.join(_reprs)})".replace('\'', '')


# --- config
@export
def max_oracle_n() -> int:
    """
    The default cap on n for exhaustive sweeps. The environment variable CBN_MAX_ORACLE_N overrides
    rcParams['oracle.max_n'] and is read at call time.

    :return: int
    """
    _env = os.environ.get(ENV_MAX_ORACLE_N)
    if _env is None or _env.strip() == '':
        return rcParams['oracle.max_n']
    try:
        _value = int(_env)
    except ValueError:
        raise ValueError(f"{ENV_MAX_ORACLE_N} must be an integer, got {_env!r}")
    if _value < 1:
        raise ValueError(f"{ENV_MAX_ORACLE_N} must be positive, got {_value}")
    return _value


# --- states
@docstr
@export
def vertex_mask(n: int, i: int) -> int:
    """
    The bit of vertex i in a state over n vertices. Vertex 0 is the most significant bit so that integer order
    equals the lexicographic order of the bitstring.

    :param n: %(n)s
    :param i: vertex index
    :return: int with exactly one bit set
    """
    return 1 << (n - 1 - i)


@export
def state_to_bits(x: State, n: int) -> str:
    """
    Bitstring of a state, vertex 0 first

    **Examples**

    >>> state_to_bits(4, 4)
    '0100'
    """
    return format(x, f"0{n}b") if n > 0 else ''


@export
def bits_to_state(bits: str) -> State:
    """
    Inverse of :func:`state_to_bits`

    :param bits: string of '0' and '1', vertex 0 first
    :return: State
    """
    if len(bits) == 0 or set(bits) - {'0', '1'}:
        raise PreconditionError(f"not a nonempty bitstring: {bits!r}")
    return int(bits, 2)


@docstr
@export
def as_state(x: StateLike, n: int) -> State:
    """
    Coerces the supported state representations to the int representation and checks that it fits n vertices.

    :param x: %(x)s
    :param n: %(n)s
    :return: State
    """
    if isinstance(x, (bool, np.bool_)):
        raise PreconditionError('a single boolean is not a state')
    if isinstance(x, (int, np.integer)):
        _x = int(x)
        if _x < 0 or _x >> n:
            raise PreconditionError(f"state {_x} does not fit {n} vertices")
        return _x
    if isinstance(x, str):
        _bits = x.strip()
    else:
        _bits = ''.join(str(int(_)) for _ in x)
    if len(_bits) != n:
        raise PreconditionError(f"state has length {len(_bits)} but the digraph has {n} vertices")
    return bits_to_state(_bits)


@docstr
@export
def flip(x: State, n: int, i: int) -> State:
    """
    Flips the entry of vertex i

    :param x: State
    :param n: %(n)s
    :param i: vertex index
    :return: State
    """
    if not 0 <= i < n:
        raise PreconditionError(f"vertex {i} out of range for {n} vertices")
    return x ^ vertex_mask(n, i)


@docstr
@export
def vertices_to_mask(n: int, vertices: Iterable[int]) -> int:
    """
    OR of the vertex bits of all given vertices

    :param n: %(n)s
    :param vertices: iterable of vertex indices
    :return: int
    """
    _mask = 0
    for _v in vertices:
        _mask |= vertex_mask(n, _v)
    return _mask


@docstr
@export
def restrict_state(x: State, n: int, vertices: Sequence[int]) -> State:
    """
    The local state of x on a list of vertices, local index j being the position of the vertex in the list

    :param x: State
    :param n: %(n)s
    :param vertices: global vertex indices
    :return: State over len(vertices) entries
    """
    _m = len(vertices)
    _y = 0
    for _j, _v in enumerate(vertices):
        if x & vertex_mask(n, _v):
            _y |= vertex_mask(_m, _j)
    return _y


@docstr
@export
def lift_state(y: State, n: int, vertices: Sequence[int]) -> State:
    """
    Inverse of :func:`restrict_state`, all entries outside of vertices are 0

    :param y: local State
    :param n: %(n)s
    :param vertices: global vertex indices
    :return: State over n entries
    """
    _m = len(vertices)
    _x = 0
    for _j, _v in enumerate(vertices):
        if y & vertex_mask(_m, _j):
            _x |= vertex_mask(n, _v)
    return _x


# --- parsing
@export
def parse_int_list(string: str, sep: str = ',') -> List[int]:
    """
    Parses '4,8,12' style parameter strings

    :param string: separated integers
    :param sep: separator
    :return: list of ints
    """
    try:
        return [int(_) for _ in string.split(sep) if _.strip() != '']
    except ValueError:
        raise ValueError(f"expected a {sep!r} separated list of integers, got {string!r}")


# --- console
@export
def tprint(*args, sep: str = ' ', r_loc: str = None, **kwargs):
    """
    Wrapper for print() but with a carriage return at the end.
    This results in the text being overwritten by the next print call.
    Can be used for progress bars and the like.

    :param args: arguments to print
    :param sep: separator
    :param r_loc: where to put the carriage return, one of %(tprint__r_loc)s. Defaults to rcParams['tprint.r_loc']
    :param kwargs: passed to print
    :return: None
    """
    global global_tprint_len

    if r_loc is None:
        r_loc = rcParams['tprint.r_loc']
    if r_loc not in validations['tprint__r_loc']:
        warnings.warn(f"r_loc not in {validations['tprint__r_loc']}, defaulting to {rcParams['tprint.r_loc']}")
        r_loc = rcParams['tprint.r_loc']

    _string = sep.join(str(_arg) for _arg in args)
    _arg_len = len(_string)

    # pad with whitespace to clear the previous output
    _whitespace_len = global_tprint_len - _arg_len
    if _whitespace_len > 0:
        _string += ' ' * _whitespace_len

    if r_loc == 'front':
        print('\r' + _string, end='', **kwargs)
        # reset tprint
        if len(args) == 0 or (len(args) == 1 and args[0] == ''):
            print('', end='\r', **kwargs)
    else:  # r_loc == 'end'
        print(_string, end='\r', **kwargs)

    # store len for next tprint use
    global_tprint_len = _arg_len


@docstr
@export
def progressbar(i: int = 1, i_max: int = 1, symbol: str = '=', empty_symbol: str = '_',
                print_prefix: str = '', p_step: int = 2, printf: Callable = tprint, **kwargs):
    """
    Prints a progressbar for the currently running process based on iteration counters.

    :param i: current iteration
    :param i_max: max iteration
    :param symbol: symbol that represents reached progress blocks
    :param empty_symbol: symbol that represents not yet reached progress blocks
    :param print_prefix: what to write in front of the progressbar. Useful when calling progressbar multiple times
        from different functions.
    :param p_step: progressbar prints one symbol (progress block) per p_step percent
    :param printf: Using tprint by default
    :param kwargs: Passed to print function
    :return: None
    """
    # -- init
    _perc_f = i / i_max * 100 if i_max > 0 else 100.
    _perc = int(np.floor(_perc_f))
    if len(print_prefix) > 0 and (print_prefix[-2:] != ': ') and (print_prefix[-1:] not in [':', '\n']):
        print_prefix += ': '

    # -- main
    _done = int(np.ceil(_perc / p_step))
    _bar = symbol * _done + empty_symbol * (100 // p_step - _done)
    _mid = '{:6.2f}%'.format(_perc_f)

    _half = len(_bar) // 2
    printf(f"{print_prefix}|{_bar[:_half]}{_mid}{_bar[_half:]}|", **kwargs)
