"""
cbnpy.oracle.py
~~~~~~~~~~~~~~~

Contains the brute force ground truth: exhaustive attractor enumeration over all 2^n states, exhaustive single flip
transitions and a validation report that checks every analytic result of the package against them

"""
# ---- imports
# --- standard imports
import json
import logging
from collections import deque
from fractions import Fraction
# --- third party imports
import numpy as np
import pandas as pd
from typing import Callable, List, Optional, Set, Tuple
from sympy import divisors
from docrep import DocstringProcessor
# --- local imports
from cbnpy.main import export, BaseClass, PreconditionError, CapExceededError, TooManyCyclesError, \
    rcParams, max_oracle_n, state_to_bits, vertex_mask, progressbar, ENV_MAX_ORACLE_N, \
    docstr as docstr_main
from cbnpy.digraph import Digraph, CycleList, enumerate_cycles, is_strongly_connected, loop_number, n_out_p
from cbnpy.decomposition import Decomposition, Classification, irreducible_components, classify
from cbnpy.dynamics import Orbit, StepFn, apply_masks, step_array, product_masks
from cbnpy.necklace import Necklace, enumerate_necklaces, rotate, count_orbits_of_period, count_fixed_density
from cbnpy.stability import StabilityStructure, orbit_to_necklace, necklace_to_state, successor_after_flip, \
    transition_weights

# ---- variables
logger = logging.getLogger('cbnpy.oracle')
CheckOutcome = Tuple[bool, Optional[str], str]
# --- constants
EXHAUSTIVE_CHECK_N = 14
PASS = (True, None, '')
# --- docstr
docstr = DocstringProcessor(
    D=docstr_main.params['D'],
    cap_n='Maximum number of vertices, defaults to rcParams[\'oracle.max_n\'] or the environment variable '
          'CBN_MAX_ORACLE_N [optional]',
    step_fn='Replacement for the conjunctive update mapping an int state to an int state. Used to validate faulty '
            'dynamics [optional]',
    printf=docstr_main.params['printf'],
)


# ---- classes
@export
class Sweep(BaseClass):
    """
        Successor table of all 2^n states together with the periodic states, the least state and the period of
        their orbits and, computed on first access, the attractor every state ends in.

        :param D: digraph of the network
        :param cap_n: maximum number of vertices [optional]
        :param step_fn: replacement for the conjunctive update [optional]
    """

    # --- globals
    __name__ = 'Sweep'
    __attributes__ = ['n', 'n_states', 'n_cyclic']

    # --- functions
    def __init__(self, D: Digraph, cap_n: int = None, step_fn: StepFn = None):
        self.n = D.n
        self.succ = successor_table(D, cap_n=cap_n, step_fn=step_fn)
        self.cyclic = _cycle_states(self.succ)
        self.rep, self.period = _orbit_representatives(self.succ, self.cyclic)
        self._labels = None
        logger.debug(f"sweep over {self.n_states} states, {self.n_cyclic} periodic")

    @property
    def n_states(self) -> int:
        return len(self.succ)

    @property
    def n_cyclic(self) -> int:
        return len(self.cyclic)

    @property
    def labels(self) -> np.ndarray:
        """For every state the least state of the attractor it ends in"""
        if self._labels is None:
            _rep_table = np.full(self.n_states, -1, dtype=np.int64)
            _rep_table[self.cyclic] = self.rep
            _pos = np.arange(self.n_states, dtype=np.int64)
            _open = _rep_table[_pos] < 0
            while _open.any():
                _pos[_open] = self.succ[_pos[_open]]
                _open = _rep_table[_pos] < 0
            self._labels = _rep_table[_pos]
        return self._labels

    def orbits(self, printf: Callable = None) -> List[Orbit]:
        """
        :param printf: progress printer [optional]
        :return: all periodic orbits sorted by their least state
        """
        _reps = np.unique(self.rep)
        _orbits = []
        for _it, _rep in enumerate(_reps):
            if printf and _it % 256 == 0:
                progressbar(_it, len(_reps), print_prefix='orbits', printf=printf)
            _states = [int(_rep)]
            _y = int(self.succ[_rep])
            while _y != _states[0]:
                _states.append(_y)
                _y = int(self.succ[_y])
            _orbits.append(Orbit(_states, n=self.n))
        if printf:
            progressbar(printf=printf, print_prefix='orbits')
        return _orbits


@export
class CheckResult(BaseClass):
    """
        Outcome of one validation check. A failed check always carries a counterexample.

        :param name: check name
        :param passed: whether the check passed
        :param counterexample: state, (state, flip), vertex, edge or necklace violating the check
        :param detail: human readable explanation
        :param skipped: whether the check could not run, e.g. because the digraph has too many cycles
    """

    # --- globals
    __name__ = 'CheckResult'
    __attributes__ = ['name', 'passed', 'counterexample', 'detail', 'skipped']

    # --- functions
    def __init__(self, name: str, passed: bool, counterexample: Optional[str] = None, detail: str = '',
                 skipped: bool = False):
        if not passed and counterexample is None:
            raise ValueError(f"failed check {name} needs a counterexample")
        self.name = name
        self.passed = passed
        self.counterexample = counterexample
        self.detail = detail
        self.skipped = skipped


@export
class ValidationReport(BaseClass):
    """
        Summary of a digraph and the results of all validation checks in the order they ran

        :param n: number of vertices
        :param p_star: loop number
        :param kind: structural kind
        :param alpha: number of singleton blocks
        :param checks: list of :class:`CheckResult`
    """

    # --- globals
    __name__ = 'ValidationReport'
    __attributes__ = ['n', 'p_star', 'kind', 'alpha', 'checks']
    __attributes_no_repr__ = ['checks']

    # --- functions
    def __init__(self, n: int, p_star: int, kind: str, alpha: int, checks: List[CheckResult]):
        self.n = n
        self.p_star = p_star
        self.kind = kind
        self.alpha = alpha
        self.checks = list(checks)

    @property
    def passed(self) -> bool:
        return all(_.passed for _ in self.checks)

    @property
    def first_failure(self) -> Optional[CheckResult]:
        for _check in self.checks:
            if not _check.passed:
                return _check
        return None

    def __getitem__(self, name: str) -> CheckResult:
        for _check in self.checks:
            if _check.name == name:
                return _check
        raise KeyError(name)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([{
            'name': _.name,
            'passed': _.passed,
            'skipped': _.skipped,
            'counterexample': _.counterexample,
            'detail': _.detail,
        } for _ in self.checks], columns=['name', 'passed', 'skipped', 'counterexample', 'detail'])

    def to_json(self, indent: int = 2) -> str:
        return json.dumps({
            'n': self.n,
            'p_star': self.p_star,
            'kind': self.kind,
            'alpha': self.alpha,
            'passed': self.passed,
            'checks': [{_k: _v for _k, _v in _.to_dict().items() if _k != '__name__'} for _ in self.checks],
        }, indent=indent)

    def to_table(self) -> str:
        _df = self.to_frame()
        _df['passed'] = ['skip' if _skipped else ('ok' if _passed else 'FAIL')
                         for _passed, _skipped in zip(_df['passed'], _df['skipped'])]
        _df['counterexample'] = _df['counterexample'].fillna('')
        _header = f"n={self.n} p*={self.p_star} kind={self.kind} alpha={self.alpha} " \
                  f"result={'PASS' if self.passed else 'FAIL'}"
        return _header + '\n' + _df[['name', 'passed', 'counterexample', 'detail']].to_string(index=False) + '\n'


class _Skip(Exception):
    pass


class _Context:
    # shared, lazily computed inputs of the validation checks

    def __init__(self, D: Digraph, cap_n: int, step_fn: StepFn, cycle_cap: int):
        self.D = D
        self.n = D.n
        self.dec = irreducible_components(D)
        self.p_star = self.dec.p_star
        self.classification = classify(D, self.dec)
        self.sweep = Sweep(D, cap_n=cap_n, step_fn=step_fn)
        self.cycle_cap = cycle_cap
        self._cycles = None
        self._orbits = None
        self._structure = None
        self._empirical = None

    @property
    def all_states(self) -> np.ndarray:
        return np.arange(self.sweep.n_states, dtype=np.int64)

    @property
    def sample(self) -> np.ndarray:
        if self.n <= EXHAUSTIVE_CHECK_N:
            return self.all_states
        _rng = np.random.default_rng(0)
        _size = min(self.sweep.n_states, rcParams['oracle.random_states'])
        return np.sort(_rng.choice(self.sweep.n_states, size=_size, replace=False)).astype(np.int64)

    def cycles(self) -> CycleList:
        if self._cycles is None:
            try:
                self._cycles = enumerate_cycles(self.D, cap=self.cycle_cap)
            except TooManyCyclesError as _e:
                raise _Skip(str(_e))
        return self._cycles

    def orbits(self) -> List[Orbit]:
        if self._orbits is None:
            self._orbits = self.sweep.orbits()
        return self._orbits

    def bits(self, x: int) -> str:
        return state_to_bits(int(x), self.n)

    def structure(self) -> StabilityStructure:
        if self._structure is None:
            self._structure = transition_weights(self.D)
        return self._structure

    def empirical(self) -> pd.DataFrame:
        if self._empirical is None:
            self._empirical = empirical_weights(self.D, sweep=self.sweep, dec=self.dec)
        return self._empirical


# ---- functions
# --- internal functions
def _assert_cap(D: Digraph, cap_n: int = None) -> None:
    if cap_n is None:
        cap_n = max_oracle_n()
    if D.n > cap_n:
        raise CapExceededError(f"n={D.n} exceeds the oracle cap of {cap_n} vertices, pass a larger cap_n or set "
                               f"{ENV_MAX_ORACLE_N}")


def _cycle_states(succ: np.ndarray) -> np.ndarray:
    # the images f^k(V) shrink until they reach the set of periodic states
    _current = np.unique(succ)
    while True:
        _next = np.unique(succ[_current])
        if len(_next) == len(_current):
            return _current
        _current = _next


def _orbit_representatives(succ: np.ndarray, cyclic: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    _rep = cyclic.copy()
    _period = np.zeros(len(cyclic), dtype=np.int64)
    _y = cyclic.copy()
    _t = 0
    while (_period == 0).any():
        _y = succ[_y]
        _t += 1
        _open = _period == 0
        _returned = _open & (_y == cyclic)
        _period[_returned] = _t
        _still = _open & ~_returned
        _rep[_still] = np.minimum(_rep[_still], _y[_still])
    return _rep, _period


def _restrict_array(states: np.ndarray, n: int, vertices: Tuple[int, ...]) -> np.ndarray:
    _out = np.zeros_like(states)
    _m = len(vertices)
    for _j, _v in enumerate(vertices):
        _out |= ((states >> (n - 1 - _v)) & 1) << (_m - 1 - _j)
    return _out


def _zero_residue_targets(D: Digraph, source: int, p: int) -> Set[int]:
    # vertices reachable from source by a walk whose length is a multiple of p
    _seen = {(source, 0)}
    _queue = deque(_seen)
    while _queue:
        _v, _r = _queue.popleft()
        for _w in D.out_neighbors(_v):
            _next = (_w, (_r + 1) % p)
            if _next not in _seen:
                _seen.add(_next)
                _queue.append(_next)
    return {_v for _v, _r in _seen if _r == 0}


# --- ground truth
@export
def brute_force_necklaces(p: int) -> List[Necklace]:
    """
    Necklaces of length p by grouping all 2^p strings under rotation

    :param p: necklace length
    :return: list of Necklace sorted by (sigma, rep)
    """
    _classes = set()
    for _x in range(1 << p):
        _bits = format(_x, f"0{p}b")
        _classes.add(min(rotate(_bits, _r) for _r in range(p)))
    return sorted(Necklace(_) for _ in _classes)


@export
def classify_by_cycles(D: Digraph, cap: int = None) -> Classification:
    """
    Classification from the definitions: D is a rose if all its cycles have the same length and share a vertex,
    a cycle digraph if it has exactly one cycle. alpha is the number of vertices shared by all cycles.

    :param D: strongly connected Digraph
    :param cap: maximum number of cycles [optional]
    :return: Classification
    """
    _cycles = enumerate_cycles(D, cap=cap)
    _common = set.intersection(*[set(_) for _ in _cycles])
    if len(set(_cycles.lengths)) != 1 or len(_common) == 0:
        return Classification(kind='general', alpha=0)
    _kind = 'cycle_digraph' if len(_cycles) == 1 else 'rose'
    return Classification(kind=_kind, alpha=len(_common))


@docstr
@export
def successor_table(D: Digraph, cap_n: int = None, step_fn: StepFn = None) -> np.ndarray:
    """
    The update applied to every one of the 2^n states

    :param D: %(D)s
    :param cap_n: %(cap_n)s
    :param step_fn: %(step_fn)s
    :return: numpy int64 array, entry x holding the successor of state x
    """
    _assert_cap(D, cap_n)
    _n_states = 1 << D.n
    if step_fn is None:
        return step_array(D, np.arange(_n_states, dtype=np.uint64)).astype(np.int64)
    _table = np.fromiter((int(step_fn(_x)) for _x in range(_n_states)), dtype=np.int64, count=_n_states)
    if (_table < 0).any() or (_table >= _n_states).any():
        raise PreconditionError(f"step_fn maps states outside of [0, 2^{D.n})")
    return _table


@docstr
@export
def enumerate_attractors(D: Digraph, cap_n: int = None, step_fn: StepFn = None, printf: Callable = None) \
        -> List[Orbit]:
    """
    All periodic orbits, found by following every one of the 2^n states into its attractor. Orbits are
    deduplicated by their least state and sorted by it.

    :param D: %(D)s
    :param cap_n: %(cap_n)s
    :param step_fn: %(step_fn)s
    :param printf: %(printf)s
    :return: list of :class:`~cbnpy.dynamics.Orbit`
    """
    _orbits = Sweep(D, cap_n=cap_n, step_fn=step_fn).orbits(printf=printf)
    logger.info(f"{len(_orbits)} attractors for n={D.n}")
    return _orbits


@docstr
@export
def attractor_labels(D: Digraph, cap_n: int = None, step_fn: StepFn = None) -> np.ndarray:
    """
    For every state the least state of the attractor its trajectory ends in

    :param D: %(D)s
    :param cap_n: %(cap_n)s
    :param step_fn: %(step_fn)s
    :return: numpy int64 array indexed by state
    """
    return Sweep(D, cap_n=cap_n, step_fn=step_fn).labels


@docstr
@export
def empirical_stability(D: Digraph, cap_n: int = None, step_fn: StepFn = None, sweep: Sweep = None,
                        dec: Decomposition = None) -> pd.DataFrame:
    """
    Flips every entry of every periodic state and tallies mu(s, s'), the number of (state, entry) pairs on the orbit
    of s whose flip ends in the orbit of s'. Each orbit contributes n pairs per state.

    :param D: %(D)s
    :param cap_n: %(cap_n)s
    :param step_fn: %(step_fn)s
    :param sweep: precomputed :class:`Sweep` [optional]
    :param dec: precomputed decomposition [optional]
    :return: pandas DataFrame with the columns source, target, mu, period sorted by (sigma, rep) of source and target
    """
    # -- init
    if sweep is None:
        sweep = Sweep(D, cap_n=cap_n, step_fn=step_fn)
    if dec is None:
        dec = irreducible_components(D)

    # -- main
    _masks = np.array([vertex_mask(D.n, _i) for _i in range(D.n)], dtype=np.int64)
    _flipped = sweep.cyclic[:, None] ^ _masks[None, :]
    _df = pd.DataFrame({
        'source_state': np.repeat(sweep.rep, D.n),
        'target_state': sweep.labels[_flipped].ravel(),
        'period': np.repeat(sweep.period, D.n),
    })
    _tally = _df.groupby(['source_state', 'target_state', 'period']).size().reset_index(name='mu')

    _names = {}
    for _state in set(_tally['source_state']) | set(_tally['target_state']):
        _names[_state] = orbit_to_necklace(dec, int(_state))

    _rows = {}
    for _source_state, _target_state, _period, _mu in _tally.itertuples(index=False):
        _key = (_names[_source_state], _names[_target_state])
        if _key in _rows:
            _rows[_key]['mu'] += int(_mu)
        else:
            _rows[_key] = {'source': _key[0], 'target': _key[1], 'mu': int(_mu), 'period': int(_period)}

    # -- return
    _ordered = [_rows[_key] for _key in sorted(_rows)]
    return pd.DataFrame({
        'source': [_['source'].rep for _ in _ordered],
        'target': [_['target'].rep for _ in _ordered],
        'mu': [_['mu'] for _ in _ordered],
        'period': [_['period'] for _ in _ordered],
    }, columns=['source', 'target', 'mu', 'period'])


@docstr
@export
def empirical_weights(D: Digraph, cap_n: int = None, step_fn: StepFn = None, sweep: Sweep = None,
                      dec: Decomposition = None) -> pd.DataFrame:
    """
    :func:`empirical_stability` with the transition weight mu / (n * p) as exact Fraction, p being the period of
    the source orbit

    :param D: %(D)s
    :param cap_n: %(cap_n)s
    :param step_fn: %(step_fn)s
    :param sweep: precomputed :class:`Sweep` [optional]
    :param dec: precomputed decomposition [optional]
    :return: pandas DataFrame with the columns source, target, mu, period, weight
    """
    _df = empirical_stability(D, cap_n=cap_n, step_fn=step_fn, sweep=sweep, dec=dec)
    _df['weight'] = [Fraction(int(_mu), D.n * int(_period)) for _mu, _period in zip(_df['mu'], _df['period'])]
    return _df


# --- checks
def _check_loop_number_vs_cycles(ctx: _Context) -> CheckOutcome:
    _cycles = ctx.cycles()
    for _cycle in _cycles:
        if len(_cycle) % ctx.p_star != 0:
            return False, ' '.join(str(_) for _ in _cycle), f"cycle length {len(_cycle)} not divisible by " \
                                                             f"p*={ctx.p_star}"
    if _cycles.gcd != ctx.p_star:
        return False, f"lengths {sorted(set(_cycles.lengths))}", f"gcd {_cycles.gcd} != p*={ctx.p_star}"
    return PASS


def _check_partition(ctx: _Context) -> CheckOutcome:
    _seen = set()
    for _block in ctx.dec.blocks:
        for _v in _block:
            if _v in _seen:
                return False, f"vertex {_v}", 'vertex in two blocks'
            _seen.add(_v)
    _missing = set(range(ctx.n)) - _seen
    if _missing:
        return False, f"vertex {min(_missing)}", 'vertex in no block'
    # the depth label residues must agree with a direct walk search
    for _i in range(ctx.n):
        _reached = _zero_residue_targets(ctx.D, _i, ctx.p_star)
        _expected = set(ctx.dec.blocks[ctx.dec.block_of(_i)])
        if _reached != _expected:
            return False, f"vertices ({_i}, {min(_reached ^ _expected)})", 'block disagrees with walk lengths'
    return PASS


def _check_block_shift(ctx: _Context) -> CheckOutcome:
    for _k, _block in enumerate(ctx.dec.blocks):
        _out = n_out_p(ctx.D, _block, 1)
        _next = set(ctx.dec.blocks[(_k + 1) % ctx.p_star])
        if _out != _next:
            return False, f"vertex {min(_out ^ _next)}", f"out-neighborhood of block {_k} is not the next block"
    return PASS


def _check_components_irreducible(ctx: _Context) -> CheckOutcome:
    for _component in ctx.dec.components:
        if not is_strongly_connected(_component.digraph):
            return False, f"block {_component.index}", 'component not strongly connected'
        if loop_number(_component.digraph) != 1:
            return False, f"block {_component.index}", 'component loop number is not 1'
    return PASS


def _check_cycle_lemma(ctx: _Context) -> CheckOutcome:
    _lengths = set(ctx.cycles().lengths)
    for _component in ctx.dec.components:
        try:
            _component_lengths = set(enumerate_cycles(_component.digraph, cap=ctx.cycle_cap).lengths)
        except TooManyCyclesError as _e:
            raise _Skip(str(_e))
        for _length in sorted(_lengths):
            if _length // ctx.p_star not in _component_lengths:
                return False, f"block {_component.index}", f"no cycle of length {_length // ctx.p_star} for the " \
                                                           f"cycle of length {_length} in D"
    return PASS


def _check_classification(ctx: _Context) -> CheckOutcome:
    try:
        _by_cycles = classify_by_cycles(ctx.D, cap=ctx.cycle_cap)
    except TooManyCyclesError as _e:
        raise _Skip(str(_e))
    if _by_cycles != ctx.classification:
        return False, f"{ctx.classification.kind}/{ctx.classification.alpha}", \
            f"cycle definition gives {_by_cycles.kind}/{_by_cycles.alpha}"
    return PASS


def _check_fixed_points(ctx: _Context) -> CheckOutcome:
    _fixed = set(int(_) for _ in np.flatnonzero(ctx.sweep.succ == ctx.all_states))
    _expected = {0, ctx.sweep.n_states - 1}
    if _fixed != _expected:
        return False, ctx.bits(min(_fixed ^ _expected)), 'fixed points are not exactly all zeros and all ones'
    return PASS


def _check_step_k_product(ctx: _Context) -> CheckOutcome:
    _states = ctx.sample
    _composed = _states.copy()
    for _p in range(2 * ctx.p_star + 1):
        _product = apply_masks(_states, product_masks(ctx.D, _p), ctx.n).astype(np.int64)
        _bad = np.flatnonzero(_composed != _product)
        if _bad.size > 0:
            return False, ctx.bits(_states[_bad[0]]), f"{_p} composed steps differ from the N_in^{_p} product"
        _composed = ctx.sweep.succ[_composed]
    return PASS


def _check_induced_dynamics(ctx: _Context) -> CheckOutcome:
    _states = ctx.sample
    _after = _states.copy()
    for _ in range(ctx.p_star):
        _after = ctx.sweep.succ[_after]
    for _component in ctx.dec.components:
        _local = _restrict_array(_states, ctx.n, _component.vertices)
        _induced = apply_masks(_local, _component.digraph.in_masks, _component.size).astype(np.int64)
        _bad = np.flatnonzero(_induced != _restrict_array(_after, ctx.n, _component.vertices))
        if _bad.size > 0:
            return False, ctx.bits(_states[_bad[0]]), f"induced dynamics of block {_component.index} differ from " \
                                                      f"p* steps restricted to the block"
    return PASS


def _check_periods_are_divisors(ctx: _Context) -> CheckOutcome:
    _divisors = set(int(_) for _ in divisors(ctx.p_star))
    for _state, _period in zip(ctx.sweep.cyclic, ctx.sweep.period):
        if int(_period) not in _divisors:
            return False, ctx.bits(_state), f"period {_period} does not divide p*={ctx.p_star}"
    _missing = _divisors - set(int(_) for _ in ctx.sweep.period)
    if _missing:
        return False, f"period {min(_missing)}", 'divisor of p* not realized by any orbit'
    return PASS


def _check_periodic_iff_block_constant(ctx: _Context) -> CheckOutcome:
    _states = ctx.all_states
    _constant = np.ones(len(_states), dtype=bool)
    for _mask in ctx.dec.block_masks:
        _masked = _states & _mask
        _constant &= (_masked == 0) | (_masked == _mask)
    _periodic = np.zeros(len(_states), dtype=bool)
    _periodic[ctx.sweep.cyclic] = True
    _bad = np.flatnonzero(_constant != _periodic)
    if _bad.size > 0:
        _state = _states[_bad[0]]
        _detail = 'periodic but not block constant' if _periodic[_bad[0]] else 'block constant but not periodic'
        return False, ctx.bits(_state), _detail
    return PASS


def _check_value_shift(ctx: _Context) -> CheckOutcome:
    _states = ctx.sweep.cyclic
    _after = ctx.sweep.succ[_states]
    _masks = ctx.dec.block_masks
    for _k in range(ctx.p_star):
        _m, _m_next = _masks[_k], _masks[(_k + 1) % ctx.p_star]
        _bad = np.flatnonzero(((_states & _m) == _m) != ((_after & _m_next) == _m_next))
        if _bad.size > 0:
            return False, ctx.bits(_states[_bad[0]]), f"value of block {_k} not shifted to block " \
                                                      f"{(_k + 1) % ctx.p_star}"
    return PASS


def _check_bijection(ctx: _Context) -> CheckOutcome:
    _period_of = dict(zip((int(_) for _ in ctx.sweep.cyclic), (int(_) for _ in ctx.sweep.period)))
    _seen = set()
    for _orbit in ctx.orbits():
        try:
            _necklace = orbit_to_necklace(ctx.dec, _orbit.canonical)
        except PreconditionError:
            return False, ctx.bits(_orbit.canonical), 'orbit state is not block constant'
        if _necklace in _seen:
            return False, ctx.bits(_orbit.canonical), f"second orbit with necklace {_necklace}"
        if _orbit.period != _necklace.order:
            return False, ctx.bits(_orbit.canonical), f"period {_orbit.period} != order {_necklace.order} of " \
                                                      f"{_necklace}"
        _seen.add(_necklace)
    for _necklace in enumerate_necklaces(ctx.p_star):
        if _necklace not in _seen:
            return False, _necklace.rep, 'necklace without orbit'
        _x = necklace_to_state(ctx.dec, _necklace)
        if orbit_to_necklace(ctx.dec, _x) != _necklace:
            return False, _necklace.rep, 'necklace_to_state does not invert orbit_to_necklace'
        if _period_of.get(_x) != _necklace.order:
            return False, _necklace.rep, f"state {ctx.bits(_x)} has period {_period_of.get(_x)}, expected " \
                                         f"{_necklace.order}"
    return PASS


def _check_orbit_counts(ctx: _Context) -> CheckOutcome:
    _by_period = {}
    for _orbit in ctx.orbits():
        _by_period[_orbit.period] = _by_period.get(_orbit.period, 0) + 1
    for _p in divisors(ctx.p_star):
        _expected = count_orbits_of_period(ctx.p_star, int(_p))
        if _by_period.get(int(_p), 0) != _expected:
            return False, f"period {_p}", f"{_by_period.get(int(_p), 0)} orbits, formula gives {_expected}"
    if sum(_by_period.values()) != sum(count_orbits_of_period(ctx.p_star, int(_)) for _ in divisors(ctx.p_star)):
        return False, f"p*={ctx.p_star}", 'total orbit count differs'
    # density is the number of ones of the necklace, not of the state
    _necklace_density = {}
    for _orbit in ctx.orbits():
        _sigma = orbit_to_necklace(ctx.dec, _orbit.canonical).sigma
        _necklace_density[_sigma] = _necklace_density.get(_sigma, 0) + 1
    for _d in range(ctx.p_star + 1):
        _expected = count_fixed_density(ctx.p_star, _d)
        if _necklace_density.get(_d, 0) != _expected:
            return False, f"density {_d}", f"{_necklace_density.get(_d, 0)} orbits, formula gives {_expected}"
    return PASS


def _check_successor_after_flip(ctx: _Context) -> CheckOutcome:
    _labels = ctx.sweep.labels
    _names = {}
    for _x in (int(_) for _ in ctx.sweep.cyclic):
        for _i in range(ctx.n):
            _label = int(_labels[_x ^ vertex_mask(ctx.n, _i)])
            if _label not in _names:
                _names[_label] = orbit_to_necklace(ctx.dec, _label)
            _predicted = successor_after_flip(ctx.D, ctx.dec, _x, _i)
            if _predicted != _names[_label]:
                return False, f"{ctx.bits(_x)} flip {_i}", f"closed form gives {_predicted}, simulation " \
                                                           f"{_names[_label]}"
    return PASS


def _check_stability_edges(ctx: _Context) -> CheckOutcome:
    _analytic = ctx.structure().edge_set()
    _observed = set(zip(ctx.empirical()['source'], ctx.empirical()['target']))
    _missing = sorted(_analytic - _observed)
    if _missing:
        return False, f"{_missing[0][0]}->{_missing[0][1]}", 'edge predicted but never observed'
    _extra = sorted(_observed - _analytic)
    if _extra:
        return False, f"{_extra[0][0]}->{_extra[0][1]}", 'edge observed but not predicted'
    return PASS


def _check_transition_weights(ctx: _Context) -> CheckOutcome:
    _observed = {(_s, _t): _w for _s, _t, _w in zip(ctx.empirical()['source'], ctx.empirical()['target'],
                                                   ctx.empirical()['weight'])}
    for _edge in ctx.structure().edges:
        _key = (_edge.source.rep, _edge.target.rep)
        if _observed.get(_key) != _edge.weight:
            return False, f"{_key[0]}->{_key[1]}", f"weight {_edge.weight}, observed {_observed.get(_key)}"
    return PASS


def _check_row_stochastic(ctx: _Context) -> CheckOutcome:
    for _rep, _sum in ctx.structure().row_sums().items():
        if _sum != 1:
            return False, _rep, f"outgoing weights sum to {_sum}"
    return PASS


_CHECKS = [
    ('loop_number_vs_cycles', _check_loop_number_vs_cycles),
    ('partition', _check_partition),
    ('block_shift', _check_block_shift),
    ('components_irreducible', _check_components_irreducible),
    ('cycle_lemma', _check_cycle_lemma),
    ('classification', _check_classification),
    ('fixed_points', _check_fixed_points),
    ('step_k_product', _check_step_k_product),
    ('induced_dynamics', _check_induced_dynamics),
    ('periods_are_divisors', _check_periods_are_divisors),
    ('periodic_iff_block_constant', _check_periodic_iff_block_constant),
    ('value_shift', _check_value_shift),
    ('bijection', _check_bijection),
    ('orbit_counts', _check_orbit_counts),
    ('successor_after_flip', _check_successor_after_flip),
    ('stability_edges', _check_stability_edges),
    ('transition_weights', _check_transition_weights),
    ('row_stochastic', _check_row_stochastic),
]
CHECK_NAMES = [_name for _name, _ in _CHECKS]


@docstr
@export
def validate(D: Digraph, cap_n: int = None, step_fn: StepFn = None, cycle_cap: int = None,
             printf: Callable = None) -> ValidationReport:
    """
    Runs every check of the analytic results against the exhaustive sweep. Checks run in a fixed order so that the
    first failure points to the earliest broken result. A check that raises is recorded as failed.

    :param D: %(D)s
    :param cap_n: %(cap_n)s
    :param step_fn: %(step_fn)s
    :param cycle_cap: maximum number of cycles for the cycle based checks, these are skipped above it [optional]
    :param printf: %(printf)s
    :return: :class:`ValidationReport`
    """
    # -- init
    _assert_cap(D, cap_n)
    _ctx = _Context(D, cap_n=cap_n, step_fn=step_fn, cycle_cap=cycle_cap)

    # -- main
    _results = []
    for _it, (_name, _check) in enumerate(_CHECKS):
        if printf:
            progressbar(_it, len(_CHECKS), print_prefix=f"validate {_name}", printf=printf)
        try:
            _passed, _counterexample, _detail = _check(_ctx)
            _result = CheckResult(_name, _passed, counterexample=_counterexample, detail=_detail)
        except _Skip as _e:
            _result = CheckResult(_name, True, detail=f"skipped: {_e}", skipped=True)
        except (ValueError, ArithmeticError, LookupError) as _e:
            _result = CheckResult(_name, False, counterexample=f"{_e.__class__.__name__}: {_e}",
                                  detail='check raised')
        if not _result.passed:
            logger.warning(f"check {_name} failed: {_result.counterexample} ({_result.detail})")
        else:
            logger.debug(f"check {_name} passed")
        _results.append(_result)
    if printf:
        progressbar(print_prefix='validate', printf=printf)
        printf('')

    # -- return
    return ValidationReport(n=D.n, p_star=_ctx.p_star, kind=_ctx.classification.kind,
                            alpha=_ctx.classification.alpha, checks=_results)
