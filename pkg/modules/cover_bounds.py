"""Cylinder covers of the gap Cantor sets.

For a cylinder ``I(a_1..a_n)`` and a continuation ``w`` the length ratio
``|I(a_1..a_n w)| / |I(a_1..a_n)|`` equals ``(r+1) / ((A r + B)(C r + D))``
with ``r = q_{n-1}/q_n`` in ``[0, 1]``. A cover refines every cylinder by the
continuations of one case; it does not grow the s-dimensional measure when
the sum of ``sup^s`` over each case stays below 1.
"""
import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from mpmath import iv, libmp

from . import config
from .cf_core import K
from .errors import ThresholdError
from .intervals import RInterval, decimal_fraction
from .surds import Surd

Word = Tuple[int, ...]
_SURD_TOL = Fraction(1, 2 ** 160)
_JOINT_PIECES = 256


@dataclass(frozen=True)
class RatioFunc:
    A: int
    B: int
    C: int
    D: int
    source_word: Word = ()

    def __call__(self, r: Fraction) -> Fraction:
        r = Fraction(r)
        return (r + 1) / ((self.A * r + self.B) * (self.C * r + self.D))

    @property
    def coefficients(self) -> Tuple[int, int, int, int]:
        return (self.A, self.B, self.C, self.D)

    def upper_on(self, r0: Fraction, r1: Fraction) -> Fraction:
        """A bound for the ratio on ``[r0, r1]`` from monotone numerator and denominator."""
        return (r1 + 1) / ((self.A * r0 + self.B) * (self.C * r0 + self.D))


def ratio_function(w: Sequence[int]) -> RatioFunc:
    w = tuple(w)
    if not w:
        raise ValueError('continuation word must be nonempty')
    B = K(w)
    A = K(w[1:])
    D = K(w[:-1]) + B
    # a one-digit word has no inner part; its continuant is K_{-1} = 0
    C = A + (K(w[1:-1]) if len(w) >= 2 else 0)
    return RatioFunc(A, B, C, D, w)


def cylinder_length(word: Sequence[int]) -> Fraction:
    q_prev, q = 0, 1
    for a in word:
        q_prev, q = q, a * q + q_prev
    return Fraction(1, q * (q + q_prev))


def sup_ratio(f: RatioFunc) -> Union[Fraction, Surd]:
    """Exact supremum of ``f`` over ``[0, 1]``.

    The derivative has the sign of ``-AC r^2 - 2AC r + (BD - AD - BC)``, which
    is decreasing on ``r >= 0``: the maximum sits at 0, at 1, or at the
    positive root ``r* = -1 + sqrt((B-A)(D-C)/(AC))``.
    """
    A, B, C, D = f.coefficients
    if B * D - A * D - B * C <= 0:
        return Fraction(1, B * D)
    AC = A * C
    if (B - A) * (D - C) >= 4 * AC:
        return f(Fraction(1))
    r_star = Surd(-1, Fraction(1, AC), (B - A) * (D - C) * AC)
    if r_star.is_rational:
        return f(r_star.a)
    return (r_star + 1) / ((r_star * A + B) * (r_star * C + D))


def sup_interval(f: RatioFunc, tol: Fraction = _SURD_TOL) -> RInterval:
    value = sup_ratio(f)
    if isinstance(value, Fraction):
        return RInterval.point(value)
    return value.to_interval(tol)


@dataclass
class CoverSystem:
    label: str
    region: Tuple[str, str]
    alphabet: Tuple[int, ...]
    cases: Dict[str, List[Word]]
    s_stated: Fraction
    margin: Fraction
    excluded: List[Word] = field(default_factory=list)
    notes: str = ''
    reuses: Optional[str] = None

    @property
    def words(self) -> List[Word]:
        return [w for case in self.cases.values() for w in case]

    @property
    def max_branches(self) -> int:
        return max(len(case) for case in self.cases.values())


def _word(text: str) -> Word:
    return tuple(int(ch) for ch in text)


def load_cover_systems(path: Optional[str] = None) -> Dict[str, CoverSystem]:
    path = path or os.path.join(config.DATA_DIR, config.COVER_FILE)
    with open(path, 'r', encoding='utf-8') as f:
        entries = json.load(f)
    by_label = {e['label']: e for e in entries}
    systems = {}
    for entry in entries:
        source = by_label[entry['reuses']] if 'reuses' in entry else entry
        systems[entry['label']] = CoverSystem(
            entry['label'], tuple(entry['region']), tuple(source['alphabet']),
            {name: [_word(w) for w in words] for name, words in source['cases'].items()},
            decimal_fraction(source['s']), decimal_fraction(source['margin']),
            [_word(w) for w in source.get('excluded', [])],
            entry.get('notes', ''), entry.get('reuses'),
        )
    logging.debug(f'Loaded {len(systems)} cover systems from {os.path.basename(path)}')
    return systems


def _to_iv(x: Fraction):
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)


def _from_iv(x) -> RInterval:
    a, b = x._mpi_
    return RInterval(Fraction(*libmp.to_rational(a)), Fraction(*libmp.to_rational(b)))


def _power_sum(bases: List[Fraction], s_iv) -> RInterval:
    total = iv.mpf(0)
    for base in bases:
        total += iv.exp(iv.log(_to_iv(base)) * s_iv)
    return _from_iv(total)


def _term_sum(words: List[Word], s_iv) -> RInterval:
    # x -> x^s is increasing, so the enclosure endpoints are summed separately
    sups = [sup_interval(ratio_function(w)) for w in words]
    lower = _power_sum([e.lo for e in sups], s_iv)
    upper = _power_sum([e.hi for e in sups], s_iv)
    return RInterval(lower.lo, upper.hi)


def _joint_case(words: List[Word], s_iv) -> RInterval:
    """Enclosure of ``max_r sum_w rho_w(r)^s`` by subdividing ``[0, 1]``."""
    funcs = [ratio_function(w) for w in words]
    lower = None
    upper = None
    for j in range(_JOINT_PIECES + 1):
        r = Fraction(j, _JOINT_PIECES)
        sample = _power_sum([f(r) for f in funcs], s_iv)
        lower = sample if lower is None else lower.maximum(sample)
        if j < _JOINT_PIECES:
            r1 = Fraction(j + 1, _JOINT_PIECES)
            bound = _power_sum([f.upper_on(r, r1) for f in funcs], s_iv)
            upper = bound if upper is None else upper.maximum(bound)
    return RInterval(lower.lo, upper.hi)


def case_sums(cs: CoverSystem, s, joint: bool = False) -> Dict[str, RInterval]:
    """Per-case enclosures of ``sum_w sup(rho_w)^s``."""
    s = Fraction(s) if not isinstance(s, str) else decimal_fraction(s)
    if not 0 <= s <= 1:
        raise ValueError(f's = {s} is outside [0, 1]')
    old = iv.prec
    try:
        iv.prec = config.INTERVAL_ARITH_PREC
        s_iv = _to_iv(s)
        sums = {}
        for name, words in cs.cases.items():
            sums[name] = _joint_case(words, s_iv) if joint else _term_sum(words, s_iv)
    finally:
        iv.prec = old
    return sums


def case_sum(cs: CoverSystem, s, joint: bool = False) -> RInterval:
    """Enclosure of the largest case sum at exponent ``s``."""
    sums = case_sums(cs, s, joint)
    result = None
    for value in sums.values():
        result = value if result is None else result.maximum(value)
    return result


def certify_case_margin(cs: CoverSystem, joint: bool = False) -> bool:
    value = case_sum(cs, cs.s_stated, joint)
    ok = value.certainly_lt(cs.margin)
    if ok:
        logging.info(f'{cs.label}: max case sum at s={float(cs.s_stated)} is {value} < {float(cs.margin)}')
    else:
        logging.warning(f'{cs.label}: max case sum {value} not certified below {float(cs.margin)}')
    return ok


def solve_threshold(cs: CoverSystem, tol: Fraction = config.THRESHOLD_TOL, joint: bool = False) -> Fraction:
    """Smallest ``s`` (within ``tol``) whose case sums are certified below 1."""
    hi = Fraction(1)
    if not case_sum(cs, hi, joint).certainly_lt(1):
        raise ThresholdError(f'{cs.label}: no exponent in (0, 1] brings the case sums below 1')
    lo = Fraction(0)
    steps = 0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if case_sum(cs, mid, joint).certainly_lt(1):
            hi = mid
        else:
            lo = mid
        steps += 1
    logging.debug(f'{cs.label}: s* in ({float(lo):.9f}, {float(hi):.9f}] after {steps} bisection steps')
    return hi


def assemble_region_bound(dim_base, s_star) -> RInterval:
    """Dimension bound of a region: base Cantor set plus the cover exponent."""
    base = dim_base if isinstance(dim_base, RInterval) else RInterval.point(decimal_fraction(str(dim_base)) if isinstance(dim_base, str) else Fraction(dim_base))
    s = s_star if isinstance(s_star, RInterval) else RInterval.point(decimal_fraction(s_star) if isinstance(s_star, str) else Fraction(s_star))
    return base + s
