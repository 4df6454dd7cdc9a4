"""Symbolic window search under Markov-value constraints.

``survivors`` enumerates the finite windows around the origin that are still
compatible with ``lo < lambda_0 < hi`` and ``lambda_i < hi`` nearby;
``replicate_left`` reproduces the forced growth of the replication seed.
Every elimination is certified by exact extremal bounds.
"""
import json
import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import config
from .cf_core import lambda_bounds
from .errors import ResourceBudgetError, VerificationError
from .intervals import decimal_fraction
from .ledger import load_ledger, with_transposes
from .memory_monitor import MemoryMonitor
from .sequences import WILDCARD, BiSeq, OneSidedSeq, parse_literal, window_literal
from .stats import RunStats
from .window_prover import UPPER, Claim

FORCED = 'forced'
NOT_FORCED = 'not forced'

# lambda_i only feels digits this far away by more than ~2^-12
_NEIGHBOURHOOD = 12


@dataclass(frozen=True)
class ClaimRule:
    """A proved claim reduced to what window pruning needs.

    ``targets`` are the positions, relative to the pattern origin, whose
    lambda the claim bounds; ``upper`` rules refute ``lo < lambda_0``, the
    others refute ``lambda_i < hi`` at every target.
    """
    claim_id: str
    known: Tuple[Tuple[int, int], ...]
    span: Tuple[int, int]
    targets: Tuple[int, ...]
    upper: bool = False

    def placements(self, window: BiSeq, near: Optional[int] = None) -> Sequence[int]:
        """Offsets worth trying; with ``near`` only those pinning that digit."""
        if near is None:
            w_lo, w_hi = window.extent()
            return range(w_lo - self.span[0], w_hi - self.span[1] + 1)
        d = window.digit(near)
        return [near - j for j, e in self.known if e == d]

    def refutes(self, window: BiSeq, s: int, radius: int) -> bool:
        if self.upper:
            if s + self.targets[0] != 0:
                return False
        elif any(abs(s + i) > radius for i in self.targets):
            return False
        return all(window.digit(s + j) == d for j, d in self.known)


def claim_rules(claims: Optional[Sequence[Claim]], lo: Optional[Fraction], hi: Fraction) -> Tuple[ClaimRule, ...]:
    """Rules for the claims whose conclusion contradicts ``lo < lambda_0`` or ``lambda_i < hi``.

    Claims are taken as proved. Patterns with periodic tails and Markov-value
    claims say nothing about a finite window and are skipped.
    """
    rules = []
    for claim in claims or ():
        seq = claim.pattern.seq
        if seq.left.tail is not None or seq.right.tail is not None or claim.all_positions:
            continue
        known = tuple(sorted((j, d) for j, d in seq.known_positions().items() if d is not None))
        if not known:
            continue
        span = (known[0][0], known[-1][0])
        thresholds = claim.thresholds()
        if claim.kind == UPPER:
            i, c = thresholds[0]
            if lo is not None and c <= lo:
                rules.append(ClaimRule(claim.id, known, span, (i,), upper=True))
        elif all(c >= hi for _, c in thresholds):
            rules.append(ClaimRule(claim.id, known, span, tuple(i for i, _ in thresholds)))
    return tuple(rules)


@dataclass(frozen=True)
class GrowthBounds:
    lo: Optional[Fraction]
    hi: Fraction
    constraint_radius: int
    alphabet: Tuple[int, ...]
    rules: Tuple[ClaimRule, ...] = ()


def _fixed_positions(window: BiSeq) -> range:
    lo, hi = window.extent()
    return range(lo, hi + 1)


def eliminated_by(window: BiSeq, bounds: GrowthBounds, near: Optional[int] = None) -> Optional[Tuple[str, int]]:
    """Reason a window is impossible, or ``None`` if it may still extend.

    ``near`` restricts the scan to positions close to a freshly set digit.
    A ledger rule gives its claim id and the offset it was placed at.
    """
    for rule in bounds.rules:
        for s in rule.placements(window, near):
            if rule.refutes(window, s, bounds.constraint_radius):
                return (rule.claim_id, s)
    if bounds.lo is not None and (near is None or abs(near) <= _NEIGHBOURHOOD):
        _, ub = lambda_bounds(window, 0, bounds.alphabet)
        if ub <= bounds.lo:
            return ('lo', 0)
    for i in _fixed_positions(window):
        if abs(i) > bounds.constraint_radius:
            continue
        if near is not None and abs(i - near) > _NEIGHBOURHOOD:
            continue
        if window.digit(i) is None:
            continue
        lb, _ = lambda_bounds(window, i, bounds.alphabet)
        if lb >= bounds.hi:
            return ('hi', i)
    return None


def _next_position(window: BiSeq, left_target: int, right_target: int) -> Optional[int]:
    lo, hi = window.extent()
    grow_right = hi < right_target
    grow_left = lo > left_target
    if grow_right and grow_left:
        return hi + 1 if hi <= -lo else lo - 1
    if grow_right:
        return hi + 1
    if grow_left:
        return lo - 1
    return None


def extendable(window: BiSeq, bounds: GrowthBounds, depth: int, targets: Tuple[int, int]) -> bool:
    """Whether some ``depth``-digit extension beyond the window survives cheap pruning."""
    if depth <= 0:
        return True
    p = _next_position(window, *targets)
    if p is None:
        return True
    for d in bounds.alphabet:
        child = window.set_digit(p, d)
        if eliminated_by(child, bounds, near=p) is None and extendable(child, bounds, depth - 1, targets):
            return True
    return False


def lookahead_check(args) -> bool:
    window, bounds, depth = args
    lo, hi = window.extent()
    return extendable(window, bounds, depth, (lo - depth, hi + depth))


def _key(window: BiSeq):
    right = tuple(0 if d is None else d for d in window.right.head)
    left = tuple(0 if d is None else d for d in window.left.head)
    return (right, left)


def canonicalize(window: BiSeq) -> BiSeq:
    """Lexicographic minimum of the window and its transpose.

    The key reads the right side outward, then the left side outward, with
    wildcards sorting first.
    """
    flipped = window.transpose()
    return min((window, flipped), key=_key)


def _covers(pattern: BiSeq, window: BiSeq) -> bool:
    lo, hi = pattern.extent()
    for i in range(lo, hi + 1):
        d = pattern.digit(i)
        if d is not None and window.digit(i) != d:
            return False
    return True


def compress_wildcards(windows: List[BiSeq], alphabet: Sequence[int]) -> List[BiSeq]:
    """Merge windows that differ only in one outer digit taking every alphabet value."""
    full = set(alphabet)
    current = list(dict.fromkeys(windows))
    changed = True
    while changed:
        changed = False
        if not current:
            break
        lo, hi = current[0].extent()
        for p in sorted(range(lo, hi + 1), key=lambda x: (-abs(x), x)):
            if p == 0:
                continue
            groups: Dict[BiSeq, set] = {}
            for w in current:
                stem = w.set_digit(p, WILDCARD) if w.digit(p) is not None else w
                groups.setdefault(stem, set()).add(w.digit(p))
            merged = []
            for stem, digits in groups.items():
                if digits == full:
                    merged.append(stem)
                    changed = True
                else:
                    merged.extend(stem.set_digit(p, d) if d is not None else stem for d in sorted(digits, key=lambda x: x or 0))
            current = list(dict.fromkeys(merged))
    return current


def cite_claims(window: BiSeq, rules: Sequence[ClaimRule], radius: int) -> List[str]:
    """Ids of the rules whose instance on ``window`` rules it out under the search hypotheses."""
    return [rule.claim_id for rule in rules if any(rule.refutes(window, s, radius) for s in rule.placements(window))]


@dataclass
class SurvivorSet:
    windows: List[BiSeq]
    radius: int
    lo: Optional[Fraction]
    hi: Fraction
    eliminated_count: int = 0
    claims_used: List[str] = field(default_factory=list)
    uncited_count: int = 0

    def literals(self) -> List[str]:
        return [window_literal(w, -self.radius, self.radius) for w in self.windows]

    def trimmed_literals(self) -> List[str]:
        out = []
        for w in self.windows:
            lo, hi = -self.radius, self.radius
            while lo < 0 and w.digit(lo) is None:
                lo += 1
            while hi > 0 and w.digit(hi) is None:
                hi -= 1
            out.append(window_literal(w, lo, hi))
        return out

    def common_window(self) -> Optional[str]:
        """Longest window around the origin on which every survivor agrees."""
        if not self.windows:
            return None
        first = self.windows[0]

        def agree(i):
            d = first.digit(i)
            return d is not None and all(w.digit(i) == d for w in self.windows)

        if not agree(0):
            return None
        lo, hi = 0, 0
        while lo - 1 >= -self.radius and agree(lo - 1):
            lo -= 1
        while hi + 1 <= self.radius and agree(hi + 1):
            hi += 1
        return window_literal(first, lo, hi)

    def covers(self, window: BiSeq) -> bool:
        return any(_covers(w, window) or _covers(w, window.transpose()) for w in self.windows)

    def to_dict(self) -> dict:
        return {
            'radius': self.radius,
            'lo': _fraction_text(self.lo),
            'hi': _fraction_text(self.hi),
            'survivors': self.literals(),
            'trimmed': self.trimmed_literals(),
            'eliminated_count': self.eliminated_count,
            'claims_used': self.claims_used,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _fraction_text(x: Optional[Fraction]) -> Optional[str]:
    if x is None:
        return None
    text = f'{x.numerator / x.denominator:.15g}'
    if decimal_fraction(text) == x:
        return text
    return f'{x.numerator}/{x.denominator}'


@dataclass
class _Layer:
    position: int
    windows: List[BiSeq]
    eliminated: List[BiSeq]


def _grow(seeds: List[BiSeq], bounds: GrowthBounds, left_target: int, right_target: int, lookahead: int, jobs: int = 1, stats: Optional[RunStats] = None, budget: Optional[int] = None):
    from .worker_functions import lookahead_worker
    monitor = MemoryMonitor()
    budget = budget or monitor.window_budget()
    live = []
    eliminated_total = 0
    eliminated_windows = []
    for w in seeds:
        if eliminated_by(w, bounds) is None:
            live.append(w)
        else:
            eliminated_total += 1
            eliminated_windows.append(w)
    layers = [_Layer(0, list(live), list(eliminated_windows))]
    while live:
        p = _next_position(live[0], left_target, right_target)
        if p is None:
            break
        survivors = []
        eliminated = []
        for w in live:
            for d in bounds.alphabet:
                child = w.set_digit(p, d)
                if stats is not None:
                    stats.windows_generated += 1
                if eliminated_by(child, bounds, near=p) is None:
                    survivors.append(child)
                else:
                    eliminated.append(child)
            if len(survivors) > budget:
                raise ResourceBudgetError(len(survivors), budget)
        eliminated_total += len(eliminated)
        layers.append(_Layer(p, survivors, eliminated))
        logging.info(f'Position {p:+d}: {len(survivors)} live windows, {len(eliminated)} eliminated')
        live = survivors
        monitor.observe_layer(len(live), budget)
    if lookahead > 0 and live:
        checks = [(w, bounds, lookahead) for w in live]
        if jobs > 1 and len(live) > 1:
            results: Dict[int, bool] = {}
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                futures = {executor.submit(lookahead_worker, c): idx for idx, c in enumerate(checks)}
                for future in as_completed(futures):
                    results[futures[future]] = future.result()
            keep = [results[i] for i in range(len(live))]
        else:
            keep = [lookahead_check(c) for c in checks]
        dropped = [w for w, k in zip(live, keep) if not k]
        live = [w for w, k in zip(live, keep) if k]
        eliminated_total += len(dropped)
        layers.append(_Layer(None, list(live), dropped))
        logging.info(f'Lookahead {lookahead}: {len(live)} windows kept, {len(dropped)} dropped')
    if stats is not None:
        stats.windows_eliminated += eliminated_total
    return live, eliminated_total, layers


def _citations(layers: List[_Layer], bounds: GrowthBounds, radius: int):
    if not bounds.rules:
        return [], 0
    used = set()
    uncited = 0
    for layer in layers:
        for w in layer.eliminated:
            cited = cite_claims(w, bounds.rules, radius)
            if cited:
                used.update(cited)
            else:
                uncited += 1
    return sorted(used), uncited


def survivors(lo, hi, radius: int, alphabet: Sequence[int] = config.DEFAULT_ALPHABET, lookahead: int = config.DEFAULT_LOOKAHEAD, jobs: int = 1, claims: Optional[Sequence[Claim]] = None, stats: Optional[RunStats] = None, budget: Optional[int] = None) -> SurvivorSet:
    lo = decimal_fraction(lo) if isinstance(lo, str) else Fraction(lo)
    hi = decimal_fraction(hi) if isinstance(hi, str) else Fraction(hi)
    if not lo < hi:
        raise ValueError(f'empty range ({lo}, {hi})')
    if radius < 1:
        raise ValueError('radius must be at least 1')
    alphabet = tuple(sorted(alphabet))
    bounds = GrowthBounds(lo, hi, radius, alphabet, claim_rules(claims, lo, hi))
    seeds = [BiSeq(OneSidedSeq(), d, OneSidedSeq()) for d in alphabet]
    live, eliminated, layers = _grow(seeds, bounds, -radius, radius, lookahead, jobs, stats, budget)
    canonical = sorted(set(canonicalize(w) for w in live), key=_key)
    windows = sorted(compress_wildcards(canonical, alphabet), key=_key)
    used, uncited = _citations(layers, bounds, radius)
    if bounds.rules and uncited:
        logging.info(f'{uncited} eliminated windows not matched by a single ledger claim')
    return SurvivorSet(windows, radius, lo, hi, eliminated, used, uncited)


@dataclass
class ForcingStep:
    position: int
    digits: Tuple[int, ...]
    claims: List[str] = field(default_factory=list)


@dataclass
class ReplicationResult:
    status: str
    extension: Optional[BiSeq]
    survivors: List[BiSeq]
    shift_offset: Optional[int]
    steps: List[ForcingStep] = field(default_factory=list)

    @property
    def forced(self) -> bool:
        return self.status == FORCED

    def extension_literal(self) -> Optional[str]:
        if self.extension is None:
            return None
        return window_literal(self.extension, -config.REPLICATION_LEFT_EXTENT, config.REPLICATION_RIGHT_EXTENT)

    def survivor_literals(self) -> List[str]:
        return [window_literal(w, -config.REPLICATION_LEFT_EXTENT, config.REPLICATION_RIGHT_EXTENT) for w in self.survivors]

    def to_dict(self) -> dict:
        return {
            'status': self.status,
            'extension': self.extension_literal(),
            'survivors': self.survivor_literals(),
            'shift_offset': self.shift_offset,
            'steps': [{'position': s.position, 'digits': list(s.digits), 'claims': s.claims} for s in self.steps],
        }


def contains_seed(window: BiSeq, at: int = 0, seed: str = config.REPLICATION_SEED) -> bool:
    pattern = parse_literal(seed)
    lo, hi = pattern.extent()
    return all(window.digit(at + i) == pattern.digit(i) for i in range(lo, hi + 1))


def default_claims() -> List[Claim]:
    """The shipped ledger with transposes, as used when no claims are given."""
    return with_transposes(load_ledger())


def replicate_left(window, bound=config.REPLICATION_BOUND, claims: Optional[Sequence[Claim]] = None, lookahead: int = config.REPLICATION_LOOKAHEAD, jobs: int = 1, stats: Optional[RunStats] = None) -> ReplicationResult:
    """Grow a window holding the replication seed to positions -16..12.

    Assumes ``lambda_i < bound`` for ``|i| <= 17``. Besides the extremal
    bounds inside the window, every claim is placed at every offset that
    pins the digit just set; several of them bound lambda at positions
    outside the window. ``claims`` defaults to the shipped ledger and is
    taken as proved. The extension is forced when exactly one window
    survives; the seed then reappears seven places to the left of the origin.
    """
    if isinstance(window, str):
        window = parse_literal(window)
    if not contains_seed(window):
        raise VerificationError(f'window {window} does not contain the replication seed at its origin')
    if claims is None:
        claims = default_claims()
    hi = decimal_fraction(bound) if isinstance(bound, str) else Fraction(bound)
    rules = claim_rules(claims, None, hi)
    bounds = GrowthBounds(None, hi, config.REPLICATION_RADIUS, config.DEFAULT_ALPHABET, rules)
    live, _, layers = _grow([window], bounds, -config.REPLICATION_LEFT_EXTENT, config.REPLICATION_RIGHT_EXTENT, lookahead, jobs, stats)
    steps = []
    for layer in layers[1:]:
        if layer.position is None:
            continue
        digits = tuple(sorted({w.digit(layer.position) for w in layer.windows}))
        cited = set()
        for w in layer.eliminated:
            cited.update(cite_claims(w, rules, config.REPLICATION_RADIUS))
        steps.append(ForcingStep(layer.position, digits, sorted(cited)))
    if len(live) == 1:
        extension = live[0]
        offset = config.REPLICATION_SHIFT if contains_seed(extension, config.REPLICATION_SHIFT) else None
        logging.info(f'Replication forced: {window_literal(extension, -config.REPLICATION_LEFT_EXTENT, config.REPLICATION_RIGHT_EXTENT)}')
        return ReplicationResult(FORCED, extension, live, offset, steps)
    logging.info(f'Replication not forced: {len(live)} windows survive')
    return ReplicationResult(NOT_FORCED, None, live, None, steps)


def iterate_replication(window, bound=config.REPLICATION_BOUND, times: int = 2, lookahead: int = config.REPLICATION_LOOKAHEAD, jobs: int = 1, claims: Optional[Sequence[Claim]] = None) -> List[ReplicationResult]:
    """Apply ``replicate_left`` repeatedly, re-centring on the shifted seed each time.

    Round ``k`` works in a frame whose origin sits at ``-7k`` of the first one.
    """
    if isinstance(window, str):
        window = parse_literal(window)
    if claims is None:
        claims = default_claims()
    results = []
    current = window
    for k in range(times):
        result = replicate_left(current, bound, claims, lookahead=lookahead, jobs=jobs)
        results.append(result)
        if not result.forced or result.shift_offset is None:
            break
        current = result.extension.shifted(result.shift_offset)
        logging.info(f'Iteration {k + 1}: re-centred at offset {result.shift_offset}')
    return results
