"""
cbnpy.necklace.py
~~~~~~~~~~~~~~~~~

Contains binary necklace combinatorics: canonical form, order, enumeration, counting formulas, the covering relation
and the single flip multiplicities gamma

"""
# ---- imports
# --- standard imports
import logging
import math
from collections import Counter
# --- third party imports
from typing import Dict, Iterator, List, Sequence, Tuple, Union
from sympy import divisors, mobius, totient as sympy_totient
from docrep import DocstringProcessor
# --- local imports
from cbnpy.main import export, BaseClass, PreconditionError, CapExceededError, rcParams

# ---- variables
logger = logging.getLogger('cbnpy.necklace')
NecklaceLike = Union['Necklace', str, Sequence[int]]
# --- docstr
docstr = DocstringProcessor(
    s='Necklace or any binary string of its class',
    s_prime='Necklace or any binary string of its class, same length as s',
    p_star='Necklace length, the loop number of the digraph',
)


# ---- classes
@export
class Necklace(BaseClass):
    """
        Rotation class of a binary string, stored as its lexicographically least rotation. Ordered by (sigma, rep).

        :param bits: any member of the class as string of '0' and '1' or as sequence of 0/1
    """

    # --- globals
    __name__ = 'Necklace'
    __attributes__ = ['rep']

    # --- functions
    def __init__(self, bits: Union[str, Sequence[int]]):

        if isinstance(bits, Necklace):
            _bits = bits.rep
        elif isinstance(bits, str):
            _bits = bits.strip()
        else:
            _bits = ''.join(str(int(_)) for _ in bits)

        if len(_bits) == 0:
            raise PreconditionError('a necklace needs at least one position')
        if set(_bits) - {'0', '1'}:
            raise PreconditionError(f"not a binary string: {_bits!r}")

        _k = least_rotation(_bits)
        self._rep = _bits[_k:] + _bits[:_k]

    @classmethod
    def zeros(cls, length: int) -> 'Necklace':
        return cls('0' * length)

    @classmethod
    def ones(cls, length: int) -> 'Necklace':
        return cls('1' * length)

    @property
    def rep(self) -> str:
        return self._rep

    @property
    def length(self) -> int:
        return len(self._rep)

    @property
    def sigma(self) -> int:
        return self._rep.count('1')

    @property
    def order(self) -> int:
        for _r in divisors(self.length):
            if rotate(self._rep, _r) == self._rep:
                return int(_r)

    def __str__(self):
        return self._rep

    def __len__(self):
        return len(self._rep)

    def __eq__(self, other):
        return isinstance(other, Necklace) and self._rep == other.rep

    def __hash__(self):
        return hash(self._rep)

    def __lt__(self, other: 'Necklace'):
        return (self.sigma, self._rep) < (other.sigma, other.rep)


# ---- functions
def _as_necklace(s: NecklaceLike) -> Necklace:
    return s if isinstance(s, Necklace) else Necklace(s)


def _assert_same_length(s: Necklace, s_prime: Necklace) -> None:
    if s.length != s_prime.length:
        raise PreconditionError(f"necklaces of different lengths: {s.rep} and {s_prime.rep}")


def _flip_char(bits: str, i: int) -> str:
    return bits[:i] + ('0' if bits[i] == '1' else '1') + bits[i + 1:]


@export
def least_rotation(bits: str) -> int:
    """
    Booth's algorithm: the start index of the lexicographically least rotation of bits, in linear time

    :param bits: nonempty string
    :return: int
    """
    _doubled = bits + bits
    _failure = [-1] * len(_doubled)
    _k = 0
    for _j in range(1, len(_doubled)):
        _char = _doubled[_j]
        _i = _failure[_j - _k - 1]
        while _i != -1 and _char != _doubled[_k + _i + 1]:
            if _char < _doubled[_k + _i + 1]:
                _k = _j - _i - 1
            _i = _failure[_i]
        if _char != _doubled[_k + _i + 1]:
            # _i == -1
            if _char < _doubled[_k]:
                _k = _j
            _failure[_j - _k] = -1
        else:
            _failure[_j - _k] = _i + 1
    return _k


@export
def rotate(bits: str, r: int) -> str:
    """
    Left rotation of a string by r positions

    **Examples**

    >>> rotate('0111', 1)
    '1110'
    """
    if len(bits) == 0:
        return bits
    _r = r % len(bits)
    return bits[_r:] + bits[:_r]


@export
def canonicalize(bits: Union[str, Sequence[int]]) -> Necklace:
    """
    The necklace of a binary string

    :param bits: nonempty binary string or sequence of 0/1
    :return: Necklace

    **Examples**

    >>> canonicalize('1011').rep
    '0111'
    """
    return Necklace(bits)


@docstr
@export
def order(s: NecklaceLike) -> int:
    """
    Number of distinct rotations of the necklace, always a divisor of its length

    :param s: %(s)s
    :return: int
    """
    return _as_necklace(s).order


@docstr
@export
def sigma(s: NecklaceLike) -> int:
    """
    Number of ones

    :param s: %(s)s
    :return: int
    """
    return _as_necklace(s).sigma


@docstr
@export
def is_aperiodic(s: NecklaceLike) -> bool:
    """
    Whether the order of the necklace equals its length

    :param s: %(s)s
    :return: bool
    """
    _s = _as_necklace(s)
    return _s.order == _s.length


def _fkm(length: int) -> Iterator[str]:
    # iterative Fredricksen-Kessler-Maiorana over prenecklaces in lexicographic order, keeping those whose
    # Lyndon prefix length divides the length
    _a = [0] * length
    yield '0' * length
    while True:
        _i = length - 1
        while _i >= 0 and _a[_i] == 1:
            _i -= 1
        if _i < 0:
            return
        _a[_i] += 1
        for _j in range(_i + 1, length):
            _a[_j] = _a[_j - _i - 1]
        if length % (_i + 1) == 0:
            yield ''.join(str(_) for _ in _a)


@export
def enumerate_necklaces(p: int, cap: int = None) -> List[Necklace]:
    """
    All binary necklaces of length p sorted by (sigma, rep)

    :param p: necklace length, at least 1
    :param cap: maximum length, defaults to rcParams['necklace.max_length']
    :return: list of Necklace

    **Examples**

    >>> [_.rep for _ in enumerate_necklaces(2)]
    ['00', '01', '11']
    """
    # -- assert
    if cap is None:
        cap = rcParams['necklace.max_length']
    if p < 1:
        raise PreconditionError(f"necklace length must be positive, got {p}")
    if p > cap:
        raise CapExceededError(f"necklace length {p} exceeds the cap of {cap}")

    # -- main
    _necklaces = sorted(Necklace(_) for _ in _fkm(p))
    logger.debug(f"{len(_necklaces)} necklaces of length {p}")

    return _necklaces


@export
def totient(k: int) -> int:
    """
    Euler's totient, the number of integers in [1, k] coprime to k

    :param k: positive int
    :return: int
    """
    if k < 1:
        raise PreconditionError(f"totient is defined for positive integers, got {k}")
    return int(sympy_totient(k))


@docstr
@export
def count_orbits_of_period(p_star: int, p: int) -> int:
    """
    Number of necklaces of length p_star with order exactly p, i.e. the number of periodic orbits of period p.
    Moebius inversion over the divisors d of p: (1/p) * sum mu(d) * 2^(p/d).

    :param p_star: %(p_star)s
    :param p: divisor of p_star
    :return: int

    **Examples**

    >>> count_orbits_of_period(4, 4)
    3
    """
    # -- assert
    p_star, p = int(p_star), int(p)
    if p_star < 1 or p < 1 or p_star % p != 0:
        raise PreconditionError(f"{p} does not divide {p_star}")

    # -- main
    _total = sum(int(mobius(_d)) * 2 ** (p // _d) for _d in divisors(p))

    # -- return
    assert _total % p == 0
    return _total // p


@docstr
@export
def count_fixed_density(p_star: int, d: int) -> int:
    """
    Number of necklaces of length p_star with exactly d ones:
    (1/p_star) * sum over k | gcd(p_star - d, d) of phi(k) * binomial(p_star/k, d/k).

    :param p_star: %(p_star)s
    :param d: number of ones, 0 <= d <= p_star
    :return: int
    """
    # -- assert
    if p_star < 1 or not 0 <= d <= p_star:
        raise PreconditionError(f"density {d} outside [0, {p_star}]")

    # -- main
    # gcd(p_star, 0) == p_star covers d == 0 and d == p_star
    _g = math.gcd(p_star - d, d)
    _total = sum(totient(_k) * math.comb(p_star // _k, d // _k) for _k in divisors(_g))

    # -- return
    assert _total % p_star == 0
    return _total // p_star


@docstr
@export
def count_orbits_by_period(p_star: int) -> Dict[int, int]:
    """
    :func:`count_orbits_of_period` for every divisor of p_star

    :param p_star: %(p_star)s
    :return: dict period -> count
    """
    return {int(_p): count_orbits_of_period(p_star, int(_p)) for _p in divisors(p_star)}


@docstr
@export
def count_by_density(p_star: int) -> Dict[int, int]:
    """
    :func:`count_fixed_density` for every density 0..p_star

    :param p_star: %(p_star)s
    :return: dict density -> count
    """
    return {_d: count_fixed_density(p_star, _d) for _d in range(p_star + 1)}


def _count_flips(s: Necklace, target: Necklace, from_char: str) -> int:
    return sum(
        1 for _i, _char in enumerate(s.rep) if _char == from_char and Necklace(_flip_char(s.rep, _i)) == target
    )


@docstr
@export
def covers(s: NecklaceLike, s_prime: NecklaceLike) -> bool:
    """
    Whether s has exactly one more 1 than s_prime and a single 1 -> 0 replacement in s yields the class of s_prime

    :param s: %(s)s
    :param s_prime: %(s_prime)s
    :return: bool
    """
    _s, _s_prime = _as_necklace(s), _as_necklace(s_prime)
    _assert_same_length(_s, _s_prime)
    if _s.sigma != _s_prime.sigma + 1:
        return False
    return _count_flips(_s, _s_prime, '1') > 0


@docstr
@export
def gamma_down(s: NecklaceLike, s_prime: NecklaceLike) -> int:
    """
    Number of positions holding 1 in the representative of s whose flip to 0 yields the class of s_prime. The count
    is the same for every representative of s.

    :param s: %(s)s
    :param s_prime: %(s_prime)s, covered by s
    :return: int

    **Examples**

    >>> gamma_down('0111', '0011')
    2
    """
    _s, _s_prime = _as_necklace(s), _as_necklace(s_prime)
    if not covers(_s, _s_prime):
        raise PreconditionError(f"{_s.rep} does not cover {_s_prime.rep}")
    return _count_flips(_s, _s_prime, '1')


@docstr
@export
def gamma_up(s: NecklaceLike, s_prime: NecklaceLike) -> int:
    """
    Number of positions holding 0 in the representative of s whose flip to 1 yields the class of s_prime.
    Related to :func:`gamma_down` by gamma_up(s, s') * order(s) == gamma_down(s', s) * order(s').

    :param s: %(s)s
    :param s_prime: %(s_prime)s, covering s
    :return: int

    **Examples**

    >>> gamma_up('0000', '0001')
    4
    """
    _s, _s_prime = _as_necklace(s), _as_necklace(s_prime)
    if not covers(_s_prime, _s):
        raise PreconditionError(f"{_s_prime.rep} does not cover {_s.rep}")
    return _count_flips(_s, _s_prime, '0')


@docstr
@export
def flip_tally(s: NecklaceLike) -> Tuple[Counter, Counter]:
    """
    Flips every position of the representative of s once and counts the classes reached. The first Counter holds
    gamma_down(s, s') for every s' covered by s, the second gamma_up(s, s') for every s' covering s.

    :param s: %(s)s
    :return: tuple of (1 -> 0 Counter, 0 -> 1 Counter), both keyed by Necklace

    **Examples**

    >>> flip_tally('0011')[0][Necklace('0001')]
    2
    """
    _s = _as_necklace(s)
    _down, _up = Counter(), Counter()
    for _i, _char in enumerate(_s.rep):
        _target = Necklace(_flip_char(_s.rep, _i))
        if _char == '1':
            _down[_target] += 1
        else:
            _up[_target] += 1
    return _down, _up
