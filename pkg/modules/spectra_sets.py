"""The Cantor set C near 3.7097, the gap J around it, its largest element and
the block constants that bound c(B, C) on each region."""
import itertools
import json
import logging
import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import config
from .cf_core import MAXIMIZE, MINIMIZE, lambda_bounds, lambda_exact, markov_value, side_value
from .errors import LiteralError, VerificationError
from .intervals import RInterval
from .sequences import BiSeq, OneSidedSeq, format_literal, parse_literal, periodic_biseq
from .surds import SurdSum, parse_surd_expression

C_LEFT = '(3322212)33*2221233222122121212'
C_ALPHABET = (1, 2)
C_PRINTED = ('3.70969985975024', '3.70969985975028')
J0_LITERAL = '(33*22212)'
J1_LITERAL = '(21)12212332221233*22212332221233321(12)'
UPSILON_LITERAL = '(3322212)33*222123322212212121(12)'
UPSILON_PRINTED = '3.7096998597503806'

_TAIL_BLOCKS = 4


@dataclass(frozen=True)
class GapInterval:
    lo: RInterval
    hi: RInterval
    label: str = 'J'

    def __post_init__(self):
        if not self.lo.certainly_lt(self.hi):
            raise VerificationError(f'gap {self.label} has overlapping endpoints', (self.lo, self.hi))

    def contains(self, x: RInterval) -> bool:
        """Strict containment of an enclosure between the two endpoints."""
        return self.lo.certainly_lt(x) and self.hi.certainly_gt(x)


@dataclass(frozen=True)
class SymmetricBlockSpec:
    name: str
    blocks: Tuple[str, ...]
    alphabet: Tuple[int, ...]
    forbidden: Tuple[str, ...] = ()
    expression: Optional[str] = None
    threshold: str = '0'
    region_lo: Optional[str] = None
    cited: bool = False
    restrictions: Tuple[Tuple[str, str], ...] = ()
    locus: str = ''

    @classmethod
    def from_dict(cls, data: dict) -> 'SymmetricBlockSpec':
        return cls(
            data['name'], tuple(data['blocks']), tuple(data['alphabet']),
            tuple(data.get('forbidden', ())), data.get('expression'), data['threshold'],
            data.get('region_lo'), bool(data.get('cited', False)),
            tuple(tuple(pair) for pair in data.get('restrictions', ())), data.get('locus', ''),
        )

    @property
    def block_words(self) -> List[Tuple[int, ...]]:
        return [tuple(int(ch) for ch in b) for b in self.blocks]

    def may_follow(self, prev: Optional[str], nxt: str) -> bool:
        return prev is None or (prev, nxt) not in self.restrictions


def load_block_specs(path: Optional[str] = None) -> Dict[str, SymmetricBlockSpec]:
    path = path or os.path.join(config.DATA_DIR, config.BLOCK_FILE)
    with open(path, 'r', encoding='utf-8') as f:
        specs = [SymmetricBlockSpec.from_dict(d) for d in json.load(f)]
    return {s.name: s for s in specs}


def c_point(theta_prefix: Sequence[int] = (), tol: Fraction = config.DEFAULT_TOL) -> RInterval:
    """Enclosure of ``lambda_0`` over every theta over {1, 2} extending ``theta_prefix``."""
    for pos, d in enumerate(theta_prefix):
        if d not in C_ALPHABET:
            raise LiteralError(f'theta digit {d} is outside {{1, 2}}', pos)
    window = parse_literal(C_LEFT + ''.join(str(d) for d in theta_prefix))
    lo, hi = lambda_bounds(window, 0, C_ALPHABET)
    return RInterval(lo.to_interval(tol / 2).lo, hi.to_interval(tol / 2).hi)


def interval_J(tol: Fraction = config.DEFAULT_TOL) -> GapInterval:
    j0 = lambda_exact(parse_literal(J0_LITERAL)).to_interval(tol)
    j1 = lambda_exact(parse_literal(J1_LITERAL)).to_interval(tol)
    return GapInterval(j0, j1, 'J')


def upsilon(tol: Fraction = config.DEFAULT_TOL) -> RInterval:
    """Markov value of the largest known element of the gap."""
    return markov_value(parse_literal(UPSILON_LITERAL), tol)


def replay_upsilon_chain(claims=None, jobs: int = 1):
    """Re-prove the digit-forcing steps behind the largest element of the gap."""
    from .ledger import load_ledger, run_ledger
    claims = claims if claims is not None else load_ledger()
    chain = [c for c in claims if c.id.startswith('ups.')]
    if not chain:
        raise VerificationError('ledger holds no forcing-chain claims')
    logging.info(f'Replaying {len(chain)} forcing-chain claims')
    return run_ledger(chain, jobs=jobs)


def verify_block_constant(spec: SymmetricBlockSpec, tol: Fraction = config.DEFAULT_TOL) -> RInterval:
    """Enclosure of the extremal expression bounding c(B, C), checked below its threshold."""
    if spec.cited or not spec.expression:
        raise VerificationError(f'{spec.name}: bound {spec.threshold} is cited, nothing to compute')
    value = lambda_exact(parse_literal(spec.expression))
    threshold = parse_surd_expression(spec.threshold)
    enclosure = value.to_interval(tol)
    if not value < threshold:
        raise VerificationError(f'{spec.name}: {enclosure} is not below {spec.threshold}', enclosure)
    if spec.region_lo and spec.region_lo != spec.threshold and not threshold < parse_surd_expression(spec.region_lo):
        raise VerificationError(f'{spec.name}: threshold {spec.threshold} is not below the region start {spec.region_lo}', enclosure)
    logging.debug(f'{spec.name}: c(B,C) <= {enclosure} < {spec.threshold}')
    return enclosure


@dataclass
class SpliceResult:
    block: Tuple[int, ...]
    bridge: Tuple[int, ...]
    k: int
    value: RInterval
    target: RInterval
    upper: RInterval
    completions: List[str] = field(default_factory=list)

    @property
    def slack(self) -> Fraction:
        return Fraction(1, 2 ** (self.k - 2))

    @property
    def lower_holds(self) -> bool:
        return self.value.lo >= self.target.hi - self.slack

    @property
    def upper_holds(self) -> bool:
        return self.value.hi <= self.upper.lo + self.slack

    @property
    def holds(self) -> bool:
        return self.lower_holds and self.upper_holds

    @property
    def literal(self) -> str:
        return format_literal(periodic_biseq(self.block, 0))

    def to_dict(self) -> dict:
        lo, hi = self.value.to_decimal(20)
        return {'periodic_word': self.literal, 'bridge': ''.join(map(str, self.bridge)), 'k': self.k, 'value_lo': lo, 'value_hi': hi, 'sandwich': self.holds, 'completions': self.completions}


def _as_blocks(spec_or_blocks) -> SymmetricBlockSpec:
    if isinstance(spec_or_blocks, SymmetricBlockSpec):
        return spec_or_blocks
    blocks = tuple(spec_or_blocks)
    digits = sorted({int(ch) for b in blocks for ch in b})
    return SymmetricBlockSpec('custom', blocks, tuple(digits))


def _split_blocks(word: str, spec: SymmetricBlockSpec, prev: Optional[str] = None) -> bool:
    if not word:
        return True
    for b in spec.blocks:
        if word.startswith(b) and spec.may_follow(prev, b) and _split_blocks(word[len(b):], spec, b):
            return True
    return False


def shortest_bridges(spec: SymmetricBlockSpec, min_length: int = 1) -> List[Tuple[int, ...]]:
    """Admissible block words of Sigma(B) of the smallest digit length ``>= min_length``."""
    queue = deque([('', None)])
    seen = set()
    best = None
    found = set()
    while queue:
        word, last = queue.popleft()
        if best is not None and len(word) >= best:
            continue
        for b in sorted(spec.blocks, key=len):
            if not spec.may_follow(last, b):
                continue
            grown = word + b
            if (grown, b) in seen:
                continue
            seen.add((grown, b))
            if len(grown) >= min_length:
                if best is None or len(grown) < best:
                    best, found = len(grown), set()
                if len(grown) == best:
                    found.add(tuple(int(ch) for ch in grown))
            else:
                queue.append((grown, b))
    return sorted(found)


def _block_cycles(spec: SymmetricBlockSpec, reverse: bool = False):
    words = [w[::-1] if reverse else w for w in spec.block_words]
    for n in range(1, _TAIL_BLOCKS + 1):
        for combo in itertools.product(words, repeat=n):
            yield tuple(d for w in combo for d in w)


def _extremal_block_side(head: Tuple[int, ...], spec: SymmetricBlockSpec, objective: str, reverse: bool) -> OneSidedSeq:
    best = None
    best_value = None
    for cycle in _block_cycles(spec, reverse):
        candidate = OneSidedSeq(head, cycle)
        value = side_value(candidate.head, candidate.tail)
        if best is None or (value > best_value if objective == MAXIMIZE else value < best_value):
            best, best_value = candidate, value
    return best


def _recentre(a: BiSeq) -> BiSeq:
    lo, hi = a.extent()
    span = max(len(a.left.tail or ()), len(a.right.tail or ()))
    best_i, best = 0, None
    for i in range(lo - span, hi + span + 1):
        value = lambda_exact(a, i)
        if best is None or value > best:
            best_i, best = i, value
    return a.shifted(best_i) if best_i else a


def key_lemma_splice(a_center: Union[str, BiSeq], blocks, connectors: Optional[Sequence[int]] = None, k: int = 6, tol: Fraction = config.DEFAULT_TOL) -> SpliceResult:
    """Splice the finite part ``a_-k .. a_k`` into a periodic word through a Sigma(B) bridge.

    ``m(P_k)`` must land within ``2^-(k-2)`` of ``m(a)`` from below and of the
    largest Markov value among the four glued completions from above.
    """
    if k < 3:
        raise ValueError('k must be at least 3')
    spec = _as_blocks(blocks)
    a = parse_literal(a_center) if isinstance(a_center, str) else a_center
    a = _recentre(a)
    target = markov_value(a, tol)
    right = tuple(a.digit(i) for i in range(0, k + 1))
    left = tuple(a.digit(i) for i in range(-k, 0))
    if connectors is not None:
        bridge = tuple(connectors)
        if not bridge or not _split_blocks(''.join(map(str, bridge)), spec):
            raise LiteralError(f'connector {"".join(map(str, bridge))} is not a word of Sigma(B)')
        candidates = [bridge]
    else:
        candidates = shortest_bridges(spec)
    best = None
    for bridge in candidates:
        block = right + bridge + left
        value = markov_value(periodic_biseq(block, 0), tol)
        if best is None or value.hi < best[1].hi:
            best = (bridge, value, block)
    bridge, value, block = best
    completions = []
    upper = target
    for objective in (MAXIMIZE, MINIMIZE):
        right_side = _extremal_block_side(right[1:] + bridge, spec, objective, reverse=False)
        theta = BiSeq(a.left, a.origin, right_side)
        completions.append(format_literal(theta))
        upper = upper.maximum(markov_value(theta, tol))
        left_side = _extremal_block_side(tuple(reversed(left)) + tuple(reversed(bridge)), spec, objective, reverse=True)
        theta = BiSeq(left_side, a.origin, a.right)
        completions.append(format_literal(theta))
        upper = upper.maximum(markov_value(theta, tol))
    result = SpliceResult(block, bridge, k, value, target, upper, completions)
    logging.debug(f'splice k={k} bridge={"".join(map(str, bridge))}: m(P_k) {value}, m {target}')
    return result


def constants_table(tol: Fraction = config.DEFAULT_TOL, specs: Optional[Dict[str, SymmetricBlockSpec]] = None) -> List[dict]:
    """Computed constants with their enclosures, in a fixed order."""
    gap = interval_J(tol)
    rows = [
        ('j0', gap.lo, config.PRINTED_CONSTANTS['j0'], 'lambda_0 of ' + J0_LITERAL),
        ('j1', gap.hi, config.PRINTED_CONSTANTS['j1'], 'lambda_0 of ' + J1_LITERAL),
        ('upsilon', upsilon(tol), UPSILON_PRINTED, 'Markov value of ' + UPSILON_LITERAL),
        ('c_set', c_point((), tol), None, 'lambda_0 over theta in {1,2}^N after ' + C_LEFT),
    ]
    specs = specs if specs is not None else load_block_specs()
    for name in sorted(specs):
        spec = specs[name]
        if not spec.cited:
            rows.append((f'c_bound[{name}]', verify_block_constant(spec, tol), None, spec.locus))
    table = []
    for name, enclosure, printed, locus in rows:
        lo, hi = enclosure.to_decimal(20)
        table.append({'name': name, 'decimal': printed or lo, 'lo': lo, 'hi': hi, 'locus': locus})
    return table
