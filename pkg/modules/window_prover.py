"""Branch-and-bound verification of inequalities over all completions of a window.

A claim fixes finitely many digits around the origin and asserts a bound on
``lambda_i`` for every bi-infinite completion over the alphabet. One-sided
extremes come from the alternating min/max tails, so every comparison is an
exact surd comparison against a decimal threshold.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from . import config
from .cf_core import MAXIMIZE, MINIMIZE, complete_extremal, lambda_bounds, lambda_exact, markov_value
from .errors import LedgerFormatError, PartialSequenceError
from .intervals import RInterval
from .sequences import WILDCARD, BiSeq, format_literal, parse_literal
from .surds import SurdSum, parse_surd_expression

UPPER = 'upper'
LOWER = 'lower'
DISJUNCTIVE = 'disjunctive'
KINDS = (UPPER, LOWER, DISJUNCTIVE)

PROVED = 'Proved'
REFUTED = 'Refuted'
INCONCLUSIVE = 'Inconclusive'

ALL_POSITIONS = '*'


@dataclass(frozen=True)
class WindowPattern:
    seq: BiSeq
    alphabet: Tuple[int, ...] = config.DEFAULT_ALPHABET

    @classmethod
    def parse(cls, literal: str, alphabet=config.DEFAULT_ALPHABET) -> 'WindowPattern':
        return cls(parse_literal(literal), tuple(sorted(alphabet)))

    @property
    def known(self):
        return self.seq.known_positions()

    def transpose(self) -> 'WindowPattern':
        return WindowPattern(self.seq.transpose(), self.alphabet)

    def __str__(self):
        return format_literal(self.seq)


@dataclass(frozen=True)
class Claim:
    """``kind`` UPPER: ``lambda_i < c``; LOWER: ``lambda_i > c``; DISJUNCTIVE:
    ``lambda_i > c_i`` for some ``i`` in the index set (``'*'`` meaning any
    position, i.e. the Markov value exceeds ``c``)."""

    id: str
    pattern: WindowPattern
    kind: str
    threshold_text: str
    index_set: Tuple = ((0, None),)
    max_depth: Optional[int] = None
    printed: Optional[str] = None
    transposable: bool = True

    def __post_init__(self):
        if self.kind not in KINDS:
            raise LedgerFormatError(f'{self.id}: unknown claim kind {self.kind!r}')
        if self.kind == DISJUNCTIVE and not self.index_set:
            raise LedgerFormatError(f'{self.id}: disjunctive claim needs a nonempty index set')
        if self.threshold <= 0:
            raise LedgerFormatError(f'{self.id}: threshold must be positive')

    @property
    def threshold(self) -> SurdSum:
        return parse_surd_expression(self.threshold_text)

    @property
    def all_positions(self) -> bool:
        return self.index_set == ALL_POSITIONS

    def thresholds(self) -> List[Tuple[int, SurdSum]]:
        default = self.threshold
        return [(i, parse_surd_expression(t) if t else default) for i, t in self.index_set]

    def transpose(self) -> 'Claim':
        if self.all_positions:
            index_set = ALL_POSITIONS
        else:
            index_set = tuple((-i, t) for i, t in self.index_set)
        return Claim(f'{self.id}^t', self.pattern.transpose(), self.kind, self.threshold_text, index_set, self.max_depth, self.printed, False)


@dataclass
class Verdict:
    claim_id: str
    status: str
    bound: Optional[RInterval] = None
    witness: Optional[BiSeq] = None
    depth_used: int = 0
    nodes: int = 0
    message: str = ''

    @property
    def proved(self) -> bool:
        return self.status == PROVED

    def witness_literal(self) -> Optional[str]:
        return format_literal(self.witness) if self.witness is not None else None


@dataclass
class _Search:
    claim: Claim
    max_depth: int
    tol: Fraction
    nodes: int = 0
    depth_used: int = 0
    best: Optional[SurdSum] = None
    witness: Optional[BiSeq] = None
    inconclusive: bool = False
    refuted: Optional[BiSeq] = None
    thresholds: List = field(default_factory=list)


def _gap_positions(seq: BiSeq) -> List[int]:
    gaps = [k + 1 for k, d in enumerate(seq.right.head) if d is WILDCARD]
    gaps += [-k - 1 for k, d in enumerate(seq.left.head) if d is WILDCARD]
    return gaps


def _fill_gaps(seq: BiSeq, alphabet):
    gaps = _gap_positions(seq)
    if not gaps:
        yield seq
        return
    p = min(gaps, key=lambda x: (abs(x), -x))
    for d in alphabet:
        yield from _fill_gaps(seq.set_digit(p, d), alphabet)


def _extremal(claim: Claim, max_depth: int, tol: Fraction) -> Verdict:
    i, _ = claim.thresholds()[0]
    c = claim.threshold
    objective = MAXIMIZE if claim.kind == UPPER else MINIMIZE
    best = None
    witness = None
    for window in _fill_gaps(claim.pattern.seq, claim.pattern.alphabet):
        lo, hi = lambda_bounds(window, i, claim.pattern.alphabet)
        value = hi if objective == MAXIMIZE else lo
        if best is None or (value > best if objective == MAXIMIZE else value < best):
            best = value
            witness = complete_extremal(window, claim.pattern.alphabet, objective, i)
    holds = best < c if claim.kind == UPPER else best > c
    status = PROVED if holds else REFUTED
    return Verdict(claim.id, status, best.to_interval(tol), witness, len(_gap_positions(claim.pattern.seq)), 1)


def _index_positions(search: _Search, window: BiSeq):
    if not search.claim.all_positions:
        return search.thresholds
    lo, hi = window.extent()
    if window.left.is_complete:
        lo -= len(window.left.tail)
    if window.right.is_complete:
        hi += len(window.right.tail)
    c = search.claim.threshold
    return [(i, c) for i in range(lo, hi + 1)]


def _certified_winner(window: BiSeq, targets, alphabet):
    """Index whose certified lower bound clears its threshold by the widest margin."""
    winner = None
    for i, c in targets:
        if window.digit(i) is None:
            continue
        try:
            lb, _ = lambda_bounds(window, i, alphabet)
        except PartialSequenceError:
            continue
        margin = lb - c
        if margin.sign() > 0 and (winner is None or margin > winner[2]):
            winner = (i, lb, margin)
    return winner


def _violates(search: _Search, witness: BiSeq) -> bool:
    """True when every index of the claim stays at or below its threshold on ``witness``."""
    if search.claim.all_positions:
        return False
    for i, c in search.thresholds:
        if lambda_exact(witness, i) > c:
            return False
    return True


def _split_position(search: _Search, window: BiSeq) -> Optional[int]:
    gaps = _gap_positions(window)
    if gaps:
        return min(gaps, key=lambda p: (_distance(search, p), abs(p), -p))
    candidates = []
    lo, hi = window.extent()
    if not window.right.is_complete:
        candidates.append(hi + 1)
    if not window.left.is_complete:
        candidates.append(lo - 1)
    if not candidates:
        return None
    return min(candidates, key=lambda p: (_distance(search, p), abs(p), -p))


def _distance(search: _Search, p: int) -> int:
    if search.claim.all_positions:
        return 0
    return min(abs(p - i) for i, _ in search.thresholds)


def _explore(search: _Search, window: BiSeq, depth: int):
    search.nodes += 1
    search.depth_used = max(search.depth_used, depth)
    alphabet = search.claim.pattern.alphabet
    if not _gap_positions(window):
        winner = _certified_winner(window, _index_positions(search, window), alphabet)
        if winner is not None:
            if search.best is None or winner[1] < search.best:
                search.best = winner[1]
            return
        checked = [0] + [i for i, _ in search.thresholds] if not search.claim.all_positions else [0]
        for i in dict.fromkeys(checked):
            witness = complete_extremal(window, alphabet, MINIMIZE, i)
            if _violates(search, witness):
                search.refuted = witness
                return
        if search.claim.all_positions and (depth >= search.max_depth or window.is_complete):
            witness = complete_extremal(window, alphabet, MINIMIZE, 0)
            if search.claim.threshold >= markov_value(witness, search.tol).hi:
                search.refuted = witness
                return
    if depth >= search.max_depth:
        search.inconclusive = True
        if search.witness is None:
            search.witness = window
        logging.debug(f'{search.claim.id}: depth {depth} exhausted at {format_literal(window)}')
        return
    p = _split_position(search, window)
    if p is None:
        search.inconclusive = True
        search.witness = window
        return
    for d in alphabet:
        _explore(search, window.set_digit(p, d), depth + 1)
        if search.refuted is not None:
            return


def prove_claim(claim: Claim, max_depth: Optional[int] = None, tol: Fraction = config.DEFAULT_TOL) -> Verdict:
    if max_depth is None:
        max_depth = claim.max_depth or config.DEFAULT_MAX_DEPTH
    if claim.kind in (UPPER, LOWER):
        verdict = _extremal(claim, max_depth, tol)
        logging.debug(f'{claim.id}: {verdict.status} with bound {verdict.bound}')
        return verdict
    search = _Search(claim, max_depth, tol)
    if not claim.all_positions:
        search.thresholds = claim.thresholds()
    _explore(search, claim.pattern.seq, 0)
    if search.refuted is not None:
        best = max((lambda_exact(search.refuted, i) for i, _ in search.thresholds), default=None)
        bound = best.to_interval(tol) if best is not None else None
        return Verdict(claim.id, REFUTED, bound, search.refuted, search.depth_used, search.nodes)
    if search.inconclusive:
        return Verdict(claim.id, INCONCLUSIVE, None, search.witness, search.depth_used, search.nodes, f'max_depth {max_depth} exhausted')
    bound = search.best.to_interval(tol) if search.best is not None else None
    logging.debug(f'{claim.id}: proved over {search.nodes} nodes, depth {search.depth_used}')
    return Verdict(claim.id, PROVED, bound, None, search.depth_used, search.nodes)
