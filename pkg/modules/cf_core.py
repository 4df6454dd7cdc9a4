import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple, Union

from . import config
from .errors import ComparisonError, PartialSequenceError
from .intervals import RInterval
from .sequences import BiSeq, OneSidedSeq, periodic_biseq
from .surds import Surd, SurdSum

Objective = str
MAXIMIZE = 'max'
MINIMIZE = 'min'


def continuant(w: Sequence[int]) -> Tuple[int, int]:
    """``(p, q)`` with ``p/q == [0; w]`` in lowest terms and ``q == K(w)``.

    The empty word gives ``(0, 1)``.
    """
    p_prev, p = 1, 0
    q_prev, q = 0, 1
    for a in w:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return (p, q)


def K(w: Sequence[int]) -> int:
    return continuant(w)[1]


def _matrix(word: Sequence[int]):
    h_prev, h, k_prev, k = 0, 1, 1, 0
    for a in word:
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    return (h, h_prev, k, k_prev)


@lru_cache(maxsize=1 << 16)
def _periodic_complete_quotient(tail: Tuple[int, ...]) -> Surd:
    # X = [t1; t2, ..., tp, X]  =>  k X^2 + (k' - h) X - h' = 0
    h, h_prev, k, k_prev = _matrix(tail)
    disc = (k_prev - h) ** 2 + 4 * h_prev * k
    return Surd(Fraction(h - k_prev, 2 * k), Fraction(1, 2 * k), disc)


@lru_cache(maxsize=1 << 18)
def side_value(head: Tuple[int, ...], tail: Tuple[int, ...]) -> Surd:
    """Exact ``[0; head, tail, tail, ...]``."""
    x = _periodic_complete_quotient(tail)
    for a in reversed(head):
        x = x.inverse() + a
    return x.inverse()


def side_surd(seq: OneSidedSeq) -> Surd:
    if not seq.is_complete:
        raise PartialSequenceError()
    if seq.has_wildcards:
        raise PartialSequenceError('sequence has unconstrained digits')
    return side_value(seq.head, seq.tail)


@dataclass(frozen=True)
class Evaluation:
    interval: RInterval
    exact: Optional[Surd] = None


def eval_seq(seq: OneSidedSeq, integer_part: int = 0, tol: Fraction = config.DEFAULT_TOL) -> Evaluation:
    """Enclosure of ``[integer_part; seq]`` of width at most ``tol``, with its exact surd."""
    exact = side_surd(seq) + integer_part
    interval = exact.to_interval(tol)
    assert interval.width <= tol
    return Evaluation(interval, exact)


def compare_prefix(shared: Sequence[int], next_a: int, next_b: int, position: Optional[int] = None):
    """Which of two continued fractions agreeing on ``shared`` is larger.

    ``position`` is the index of the first differing partial quotient. Returns
    ``('a' | 'b', gap)`` where ``gap`` bounds the distance between any two
    continued fractions sharing the first ``position - 1`` partial quotients.
    """
    if position is None:
        position = len(shared) + 1
    if next_a == next_b:
        raise ComparisonError(f'digits at position {position} are equal; no first difference')
    sign = -1 if position % 2 else 1
    larger = 'a' if sign * (next_a - next_b) > 0 else 'b'
    return (larger, Fraction(1, 2 ** (position - 2)) if position >= 2 else Fraction(2 ** (2 - position)))


def _parity_is_odd(next_position_parity: Union[int, str]) -> bool:
    if isinstance(next_position_parity, str):
        return next_position_parity.lower() == 'odd'
    return next_position_parity % 2 == 1


def extremal_tail(alphabet: Iterable[int], objective: Objective, next_position_parity: Union[int, str]) -> OneSidedSeq:
    lo, hi = min(alphabet), max(alphabet)
    if lo == hi:
        return OneSidedSeq((), (lo,))
    odd = _parity_is_odd(next_position_parity)
    # the value grows with the digit at even positions and shrinks at odd ones
    first = lo if (objective == MAXIMIZE) == odd else hi
    second = hi if first == lo else lo
    return OneSidedSeq((), (first, second))


@lru_cache(maxsize=1 << 18)
def side_bound(digits: Tuple[int, ...], alphabet: Tuple[int, ...], objective: Objective) -> Surd:
    """Exact extremum of ``[0; digits, x_1, x_2, ...]`` over all free continuations."""
    tail = extremal_tail(alphabet, objective, len(digits) + 1)
    return side_value(digits, tail.tail)


def side_bounds(seq: OneSidedSeq, alphabet: Tuple[int, ...]) -> Tuple[Surd, Surd]:
    """``(min, max)`` of ``[0; seq]`` over all completions of a partial side."""
    if seq.is_complete and not seq.has_wildcards:
        exact = side_value(seq.head, seq.tail)
        return (exact, exact)
    known = seq.known_prefix()
    return (side_bound(known, alphabet, MINIMIZE), side_bound(known, alphabet, MAXIMIZE))


def lambda_exact(a: BiSeq, i: int = 0) -> SurdSum:
    shifted = a.shifted(i) if i else a
    return SurdSum.of(side_surd(shifted.right) + shifted.origin) + side_surd(shifted.left)


def lambda_bounds(window: BiSeq, i: int, alphabet: Tuple[int, ...]) -> Tuple[SurdSum, SurdSum]:
    """Exact ``(min, max)`` of ``lambda_i`` over every completion of ``window``."""
    d = window.digit(i)
    if d is None:
        raise PartialSequenceError(f'position {i} is not fixed in the window')
    right_lo, right_hi = side_bounds(window.right_of(i), alphabet)
    left_lo, left_hi = side_bounds(window.left_of(i), alphabet)
    return (SurdSum.of(right_lo + d) + left_lo, SurdSum.of(right_hi + d) + left_hi)


def lambda_at(a: BiSeq, i: int = 0, tol: Fraction = config.DEFAULT_TOL) -> RInterval:
    if not a.is_complete:
        raise PartialSequenceError()
    interval = lambda_exact(a, i).to_interval(tol)
    assert interval.width <= tol
    return interval


def _gap_digits(tol: Fraction) -> int:
    # smallest n with 2^-(n-1) <= tol/2
    n = 2
    while Fraction(1, 2 ** (n - 1)) > tol / 2:
        n += 1
    return n


def periodic_phase_max(tail: Tuple[int, ...], tol: Fraction) -> RInterval:
    """Maximum of ``lambda_0`` over the shifts of the bi-infinite repetition of ``tail``."""
    best = None
    for k in range(len(tail)):
        value = lambda_exact(periodic_biseq(tail, k)).to_interval(tol)
        best = value if best is None else best.maximum(value)
    return best


def markov_value(a: BiSeq, tol: Fraction = config.DEFAULT_TOL) -> RInterval:
    """Enclosure of ``sup_n lambda_n(a)`` for a sequence periodic on both sides."""
    if not a.is_complete:
        raise PartialSequenceError('markov_value needs periodic tails on both sides')
    n = _gap_digits(tol)
    lo_pos, hi_pos = a.extent()
    share = tol / 4
    window = None
    for i in range(lo_pos - n, hi_pos + n + 1):
        value = lambda_exact(a, i).to_interval(share)
        window = value if window is None else window.maximum(value)
    periodic = periodic_phase_max(a.right.tail, share).maximum(periodic_phase_max(a.left.tail[::-1], share))
    outside = RInterval(periodic.lo, periodic.hi + Fraction(1, 2 ** (n - 1)))
    result = window.maximum(periodic)
    result = RInterval(result.lo, max(window.hi, outside.hi))
    logging.debug(f'markov_value over {hi_pos - lo_pos + 2 * n + 1} positions, width {float(result.width):.3e}')
    assert result.width <= tol
    return result


def lagrange_value(a: BiSeq, tol: Fraction = config.DEFAULT_TOL) -> RInterval:
    if a.right.tail is None:
        raise PartialSequenceError('lagrange_value needs a periodic right tail')
    result = periodic_phase_max(a.right.tail, tol)
    assert result.width <= tol
    return result


def complete_extremal(window: BiSeq, alphabet: Tuple[int, ...], objective: Objective, i: int = 0) -> BiSeq:
    """Complete both sides of ``window`` so that ``lambda_i`` is extremal."""
    right = window.right
    left = window.left
    # the first free digit on each side sits at this continued-fraction position of lambda_i
    if not right.is_complete:
        right = right.with_tail(extremal_tail(alphabet, objective, len(right.head) + 1 - i).tail)
    if not left.is_complete:
        left = left.with_tail(extremal_tail(alphabet, objective, len(left.head) + 1 + i).tail)
    return BiSeq(left, window.origin, right)
