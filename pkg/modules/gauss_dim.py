"""Hausdorff dimension of Gauss-Cantor sets cut out by forbidden words.

The s-weighted transfer operator ``(L_s f)(x) = sum_a (a + x)^(-2s) f(1/(a + x))``
is split over the states of the subshift and collocated on Chebyshev nodes in
each state's cylinder. The dimension is the zero of ``P(s) = log rho(L_s)``.
All estimates here are heuristic: the enclosure width is the gap between
orders N and 2N, not a proven error bound.
"""
import json
import logging
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from . import config
from .cf_core import MAXIMIZE, MINIMIZE, side_bound
from .errors import EmptySubshiftError, ThresholdError
from .intervals import RInterval

FIXED = 'fixed'
AUTOMATON = 'automaton'

Word = Tuple[int, ...]


def _word(w) -> Word:
    return tuple(int(ch) for ch in w) if isinstance(w, str) else tuple(w)


def _has_factor(word: Word, forbidden: Sequence[Word]) -> bool:
    n = len(word)
    for f in forbidden:
        m = len(f)
        for i in range(n - m + 1):
            if word[i:i + m] == f:
                return True
    return False


@dataclass
class SubshiftSpec:
    """States are prefixes of ``x = [0; x_1, x_2, ...]``; the edge ``(v, a, w)``
    prepends the digit ``a`` to a point of state ``v`` and lands in ``w``."""

    alphabet: Tuple[int, ...]
    forbidden: Tuple[Word, ...]
    states: List[Word] = field(default_factory=list)
    transitions: List[Tuple[int, int, int]] = field(default_factory=list)
    intervals: List[Tuple[float, float]] = field(default_factory=list)
    coding: str = FIXED
    name: str = ''
    interpretation: bool = False

    @property
    def is_empty(self) -> bool:
        return not self.transitions

    @property
    def state_length(self) -> int:
        return max(1, max((len(f) for f in self.forbidden), default=1) - 1)

    def reversed(self) -> 'SubshiftSpec':
        """The subshift of reversed words, which has the same dimension."""
        return build_subshift(self.alphabet, [f[::-1] for f in self.forbidden], self.coding, name=f'{self.name}^t' if self.name else '')

    def adjacency(self) -> np.ndarray:
        n = len(self.states)
        A = np.zeros((n, n))
        for v, _, w in self.transitions:
            A[v, w] += 1
        return A


def _fixed_states(alphabet, forbidden, L):
    states = []
    stack = [()]
    while stack:
        word = stack.pop()
        if len(word) == L:
            states.append(word)
            continue
        for a in alphabet:
            grown = word + (a,)
            if not _has_factor(grown, forbidden):
                stack.append(grown)
    states.sort()
    index = {s: i for i, s in enumerate(states)}
    edges = []
    for s in states:
        for a in alphabet:
            window = (a,) + s
            if not _has_factor(window, forbidden):
                edges.append((index[s], a, index[window[:L]]))
    return states, edges


def _automaton_states(alphabet, forbidden):
    # Aho-Corasick over the reversed words: digits arrive by prepending
    patterns = [f[::-1] for f in forbidden]
    nodes = {(): False}
    for p in patterns:
        for k in range(1, len(p) + 1):
            nodes.setdefault(p[:k], False)
        nodes[p] = True
    fail = {(): ()}
    order = sorted(nodes, key=len)
    for node in order:
        if not node:
            continue
        suffix = node[1:]
        while suffix not in nodes:
            suffix = suffix[1:]
        fail[node] = suffix if suffix != node else ()
        if nodes[fail[node]]:
            nodes[node] = True

    def step(node, a):
        while True:
            grown = node + (a,)
            if grown in nodes:
                return grown
            if not node:
                return ()
            node = fail[node]

    live = sorted((n for n, terminal in nodes.items() if not terminal), key=lambda n: (len(n), n))
    index = {n: i for i, n in enumerate(live)}
    edges = []
    for n in live:
        for a in alphabet:
            target = step(n, a)
            if not nodes[target]:
                edges.append((index[n], a, index[target]))
    # the prefix of x tracked by a node is its reading reversed
    return [n[::-1] for n in live], edges


def _prune(states, edges):
    G = nx.MultiDiGraph()
    G.add_nodes_from(range(len(states)))
    for v, a, w in edges:
        G.add_edge(v, w, digit=a)
    keep = set()
    for component in nx.strongly_connected_components(G):
        if len(component) > 1 or any(G.has_edge(n, n) for n in component):
            keep |= component
    kept = sorted(keep)
    remap = {old: new for new, old in enumerate(kept)}
    pruned_edges = [(remap[v], a, remap[w]) for v, a, w in edges if v in keep and w in keep]
    return [states[i] for i in kept], pruned_edges


def _cylinder(prefix: Word, alphabet: Tuple[int, ...]) -> Tuple[float, float]:
    lo = float(side_bound(prefix, alphabet, MINIMIZE))
    hi = float(side_bound(prefix, alphabet, MAXIMIZE))
    return (lo, hi)


def build_subshift(alphabet: Iterable[int], forbidden: Iterable = (), coding: str = FIXED, name: str = '', interpretation: bool = False) -> SubshiftSpec:
    alphabet = tuple(sorted(set(alphabet)))
    forbidden = tuple(sorted({_word(f) for f in forbidden}, key=lambda f: (len(f), f)))
    for f in forbidden:
        if any(d not in alphabet for d in f):
            raise ValueError(f'forbidden word {"".join(map(str, f))} uses digits outside the alphabet')
    if coding == FIXED:
        L = max(1, max((len(f) for f in forbidden), default=1) - 1)
        states, edges = _fixed_states(alphabet, forbidden, L)
    elif coding == AUTOMATON:
        states, edges = _automaton_states(alphabet, forbidden)
    else:
        raise ValueError(f'unknown coding {coding!r}')
    total = len(states)
    states, edges = _prune(states, edges)
    spec = SubshiftSpec(alphabet, forbidden, states, edges, [_cylinder(s, alphabet) for s in states], coding, name, interpretation)
    if spec.is_empty:
        logging.warning(f'Subshift {name or alphabet} is empty after pruning')
    else:
        logging.debug(f'Subshift {name or alphabet}: {len(states)}/{total} states, {len(edges)} edges ({coding})')
    return spec


def _nodes(lo: float, hi: float, order: int):
    j = np.arange(order)
    theta = (2 * j + 1) * np.pi / (2 * order)
    mid, half = (lo + hi) / 2, max((hi - lo) / 2, 1e-14)
    nodes = mid + half * np.cos(theta)
    weights = (-1.0) ** j * np.sin(theta)
    return nodes, weights


def _interpolation_rows(nodes: np.ndarray, weights: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Barycentric Lagrange basis on ``nodes`` evaluated at every point of ``y``."""
    diff = y[:, None] - nodes[None, :]
    exact = np.isclose(diff, 0.0, atol=1e-300, rtol=0.0)
    diff[exact] = 1.0
    terms = weights[None, :] / diff
    rows = terms / terms.sum(axis=1)[:, None]
    hit = exact.any(axis=1)
    if hit.any():
        rows[hit] = exact[hit].astype(float)
    return rows


def transfer_matrix(spec: SubshiftSpec, s: float, order: int) -> np.ndarray:
    n = len(spec.states)
    grid = [_nodes(lo, hi, order) for lo, hi in spec.intervals]
    M = np.zeros((n * order, n * order))
    for v, a, w in spec.transitions:
        x = grid[v][0]
        shifted = a + x
        rows = _interpolation_rows(grid[w][0], grid[w][1], 1.0 / shifted)
        M[v * order:(v + 1) * order, w * order:(w + 1) * order] += shifted[:, None] ** (-2.0 * s) * rows
    return M


def spectral_radius(M: np.ndarray, tol: float = config.POWER_ITERATION_TOL, max_steps: int = config.POWER_ITERATION_MAX_STEPS) -> float:
    v = np.ones(M.shape[0]) / math.sqrt(M.shape[0])
    lam = 0.0
    for _ in range(max_steps):
        w = M @ v
        norm = np.linalg.norm(w)
        if norm == 0:
            return 0.0
        estimate = float(v @ w)
        w /= norm
        if abs(estimate - lam) <= tol * abs(estimate) and np.linalg.norm(w - v) < math.sqrt(tol):
            return estimate
        v, lam = w, estimate
    logging.debug('power iteration did not settle, falling back to a dense eigensolve')
    return float(np.max(np.abs(np.linalg.eigvals(M))))


def _pressure_value(spec: SubshiftSpec, s: float, order: int) -> float:
    rho = spectral_radius(transfer_matrix(spec, s, order))
    if rho <= 0:
        return float('-inf')
    return math.log(rho)


def pressure(spec: SubshiftSpec, s, order: int = config.DEFAULT_ORDER) -> RInterval:
    """Pressure at ``s`` as the hull of the order ``N`` and ``2N`` values."""
    if order < 2:
        raise ValueError('order must be at least 2')
    if spec.is_empty:
        return RInterval.negative_infinity()
    coarse = _pressure_value(spec, float(s), order)
    fine = _pressure_value(spec, float(s), 2 * order)
    return RInterval(Fraction(min(coarse, fine)), Fraction(max(coarse, fine)))


@dataclass
class PressureCurve:
    samples: List[Tuple[float, RInterval]]
    order: int

    def is_decreasing(self) -> bool:
        values = [p for _, p in sorted(self.samples, key=lambda item: item[0])]
        if any(p.is_negative_infinity for p in values):
            return False
        return all(a.certainly_gt(b) for a, b in zip(values, values[1:]))


def pressure_curve(spec: SubshiftSpec, grid: Sequence[float], order: int = config.DEFAULT_ORDER) -> PressureCurve:
    return PressureCurve([(float(s), pressure(spec, s, order)) for s in grid], order)


@dataclass
class DimensionEstimate:
    value: float
    uncertainty: float
    order: int
    heuristic: bool = True
    name: str = ''

    def to_dict(self) -> dict:
        return {'name': self.name, 'estimate': f'{self.value:.15f}', 'uncertainty': f'{self.uncertainty:.3e}', 'order': self.order, 'heuristic': self.heuristic}


def _root(spec: SubshiftSpec, order: int, tol: float) -> float:
    a, b = 0.0, 1.0
    fa = _pressure_value(spec, a, order)
    fb = _pressure_value(spec, b, order)
    if not (fa > 0 > fb):
        raise ThresholdError(f'pressure does not change sign on [0, 1] (P(0)={fa:.3g}, P(1)={fb:.3g})')
    side = 0
    for step in range(200):
        # Illinois variant of regula falsi, with a bisection guard
        c = b - fb * (b - a) / (fb - fa)
        if not a < c < b:
            c = (a + b) / 2
        fc = _pressure_value(spec, c, order)
        logging.debug(f'order {order} step {step}: s={c:.15f} P={fc:.3e}')
        if abs(fc) < 1e-15 or b - a < tol:
            return c
        if fc > 0:
            a, fa = c, fc
            if side == -1:
                fb /= 2
            side = -1
        else:
            b, fb = c, fc
            if side == 1:
                fa /= 2
            side = 1
    return (a + b) / 2


def dimension(spec: SubshiftSpec, order: int = config.DEFAULT_ORDER, tol: float = 1e-13) -> DimensionEstimate:
    """Zero of the pressure at orders N and 2N; the estimate is the finer one."""
    if spec.is_empty:
        raise EmptySubshiftError(f'subshift {spec.name or spec.alphabet} has no recurrent part')
    coarse = _root(spec, order, tol)
    fine = _root(spec, 2 * order, tol)
    estimate = DimensionEstimate(fine, abs(fine - coarse), 2 * order, True, spec.name)
    logging.info(f'dim {spec.name or spec.alphabet} ~ {fine:.12f} (+/- {estimate.uncertainty:.1e}, order {2 * order}, heuristic)')
    return estimate


def load_subshifts(path: Optional[str] = None) -> Dict[str, SubshiftSpec]:
    path = path or os.path.join(config.DATA_DIR, config.SUBSHIFT_FILE)
    with open(path, 'r', encoding='utf-8') as f:
        entries = json.load(f)
    return {e['name']: build_subshift(e['alphabet'], e.get('forbidden', []), e.get('coding', FIXED), e['name']) for e in entries}


def load_subshift_entries(path: Optional[str] = None) -> List[dict]:
    path = path or os.path.join(config.DATA_DIR, config.SUBSHIFT_FILE)
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)


OMEGA_ITEMS = ('i', 'ii', 'v', 'vi', 'vii', 'x', 'xii', 'xiii', 'xiv', 'xv', 'xvii', 'xxii', 'xxv', 'xxvi', 'xxviii', 'xxix', 'xxx', 'xxxi', 'xxxiii', 'xxxv', 'xxxvi', 'xxxvii', 'xxxviii', 'xxxix')
OMEGA_EXTRA = ('2332221233222123322',)


def _finite_word(pattern) -> Optional[Word]:
    seq = pattern.seq
    lo, hi = seq.extent()
    digits = tuple(seq.digit(i) for i in range(lo, hi + 1))
    if None in digits:
        return None
    return digits


def omega_spec(claims, item_ids: Sequence[str] = OMEGA_ITEMS, extra_words: Sequence[str] = OMEGA_EXTRA, alphabet: Sequence[int] = (1, 2)) -> SubshiftSpec:
    """Forbidden words assembled from the ledger's local-uniqueness items.

    The word list is an interpretation: each listed item contributes the
    finite window of its pattern together with the reversed window.
    """
    wanted = set(item_ids)
    words = set()
    for claim in claims:
        if '^t' in claim.id or claim.id.count('.') != 1:
            continue
        if claim.id.split('.', 1)[1] not in wanted:
            continue
        word = _finite_word(claim.pattern)
        if word is None:
            logging.debug(f'{claim.id}: pattern has free digits, skipped for omega')
            continue
        words.add(word)
        words.add(word[::-1])
    for text in extra_words:
        w = _word(text)
        words.add(w)
        words.add(w[::-1])
    alphabet = tuple(sorted(set(alphabet) | {d for w in words for d in w}))
    logging.info(f'omega: {len(words)} forbidden words from {len(wanted)} ledger items')
    return build_subshift(alphabet, sorted(words), AUTOMATON, name='omega', interpretation=True)
