"""Digit sequences with a marked origin and their literal syntax.

A literal reads left to right like the printed sequence::

    (21)12212332221233*22212332221233321(12)

``(...)`` is a periodic block (the left one repeats to the left, the right one
to the right), ``*`` marks the origin digit, ``?`` is an unconstrained digit
and a trailing ``^t`` transposes. A literal that is a single block such as
``(33*22212)`` is purely periodic; without a star its first digit is the
origin.
"""
from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Tuple

from .errors import LiteralError, PartialSequenceError

Word = Tuple[Optional[int], ...]
WILDCARD = None


def minimal_period(block: Tuple[int, ...]) -> Tuple[int, ...]:
    n = len(block)
    for p in range(1, n + 1):
        if n % p == 0 and block[:p] * (n // p) == block:
            return block[:p]
    return block


def rotate(block: Tuple[int, ...], k: int) -> Tuple[int, ...]:
    k %= len(block)
    return block[k:] + block[:k]


@dataclass(frozen=True)
class OneSidedSeq:
    """Digits read outward from the origin: ``head`` then ``tail`` repeated.

    Without a tail the sequence is partial and only its head is known.
    """

    head: Word = ()
    tail: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        head = tuple(self.head)
        tail = self.tail
        if tail is not None:
            tail = tuple(tail)
            if not tail:
                raise ValueError('periodic tail must be nonempty')
            if WILDCARD in tail:
                raise ValueError('periodic tail cannot hold wildcards')
            tail = minimal_period(tail)
            while head and head[-1] == tail[-1]:
                head = head[:-1]
                tail = rotate(tail, -1)
        object.__setattr__(self, 'head', head)
        object.__setattr__(self, 'tail', tail)

    @property
    def is_complete(self) -> bool:
        return self.tail is not None

    @property
    def has_wildcards(self) -> bool:
        return WILDCARD in self.head

    def digit(self, k: int) -> Optional[int]:
        """Digit at outward offset ``k`` (0 is the digit next to the origin).

        Returns ``None`` for wildcards and for offsets beyond a partial head.
        """
        if k < len(self.head):
            return self.head[k]
        if self.tail is None:
            return None
        return self.tail[(k - len(self.head)) % len(self.tail)]

    def prefix(self, n: int) -> Word:
        return tuple(self.digit(k) for k in range(n))

    def known_prefix(self) -> Tuple[int, ...]:
        """Longest run of fixed digits starting at offset 0 (bounded by the head if partial)."""
        out = []
        limit = len(self.head) if self.tail is None else len(self.head) + len(self.tail)
        for k in range(limit):
            d = self.digit(k)
            if d is None:
                break
            out.append(d)
        return tuple(out)

    def drop(self, n: int) -> 'OneSidedSeq':
        if n <= len(self.head):
            return OneSidedSeq(self.head[n:], self.tail)
        if self.tail is None:
            raise PartialSequenceError(f'cannot drop {n} digits from a partial side of length {len(self.head)}')
        return OneSidedSeq((), rotate(self.tail, n - len(self.head)))

    def prepend(self, digits: Word) -> 'OneSidedSeq':
        return OneSidedSeq(tuple(digits) + self.head, self.tail)

    def extend(self, digits: Word) -> 'OneSidedSeq':
        if self.tail is not None:
            raise ValueError('cannot extend a complete side')
        return OneSidedSeq(self.head + tuple(digits), None)

    def with_tail(self, tail: Tuple[int, ...]) -> 'OneSidedSeq':
        if self.tail is not None:
            raise ValueError('side is already complete')
        return OneSidedSeq(self.head, tail)

    def set_digit(self, k: int, d: int) -> 'OneSidedSeq':
        head = list(self.head)
        if k < len(head):
            head[k] = d
        elif self.tail is None:
            head.extend([WILDCARD] * (k - len(head)))
            head.append(d)
        else:
            raise ValueError(f'offset {k} lies in the periodic tail')
        return OneSidedSeq(tuple(head), self.tail)


@dataclass(frozen=True)
class BiSeq:
    left: OneSidedSeq
    origin: int
    right: OneSidedSeq

    @property
    def is_complete(self) -> bool:
        return self.left.is_complete and self.right.is_complete

    def transpose(self) -> 'BiSeq':
        return BiSeq(self.right, self.origin, self.left)

    def digit(self, i: int) -> Optional[int]:
        if i == 0:
            return self.origin
        if i > 0:
            return self.right.digit(i - 1)
        return self.left.digit(-i - 1)

    def known_positions(self) -> Dict[int, int]:
        """Fixed digits of the finite part (heads and origin)."""
        known = {0: self.origin}
        for k, d in enumerate(self.right.head):
            if d is not None:
                known[k + 1] = d
        for k, d in enumerate(self.left.head):
            if d is not None:
                known[-k - 1] = d
        return known

    def extent(self) -> Tuple[int, int]:
        """Positions ``(L, R)`` spanned by the finite part."""
        return (-len(self.left.head), len(self.right.head))

    def right_of(self, i: int) -> OneSidedSeq:
        """Outward digits ``a_{i+1}, a_{i+2}, ...``."""
        if i >= 0:
            return self.right.drop(i)
        between = tuple(self.left.digit(k) for k in range(-i - 2, -1, -1))
        return self.right.prepend(between + (self.origin,))

    def left_of(self, i: int) -> OneSidedSeq:
        """Outward digits ``a_{i-1}, a_{i-2}, ...``."""
        return self.transpose().right_of(-i)

    def shifted(self, i: int) -> 'BiSeq':
        d = self.digit(i)
        if d is None:
            raise PartialSequenceError(f'position {i} is not a fixed digit')
        return BiSeq(self.left_of(i), d, self.right_of(i))

    def set_digit(self, i: int, d: int) -> 'BiSeq':
        if i == 0:
            return BiSeq(self.left, d, self.right)
        if i > 0:
            return BiSeq(self.left, self.origin, self.right.set_digit(i - 1, d))
        return BiSeq(self.left.set_digit(-i - 1, d), self.origin, self.right)

    def digits(self, lo: int, hi: int) -> Iterator[Optional[int]]:
        for i in range(lo, hi + 1):
            yield self.digit(i)

    def __str__(self):
        return format_literal(self)


def periodic_biseq(block: Tuple[int, ...], k: int = 0) -> BiSeq:
    """The purely periodic sequence repeating ``block`` with the origin on ``block[k]``."""
    block = tuple(block)
    p = len(block)
    right = tuple(block[(k + 1 + j) % p] for j in range(p))
    left = tuple(block[(k - 1 - j) % p] for j in range(p))
    return BiSeq(OneSidedSeq((), left), block[k], OneSidedSeq((), right))


def _digit_char(d: Optional[int]) -> str:
    return '?' if d is None else str(d)


def _word_text(word) -> str:
    return ''.join(_digit_char(d) for d in word)


def _parse_digits(text: str, offset: int, allow_wildcard: bool = True):
    out = []
    for j, ch in enumerate(text):
        if ch == '?':
            if not allow_wildcard:
                raise LiteralError('wildcard inside a periodic block', offset + j)
            out.append(WILDCARD)
        elif ch.isdigit() and ch != '0':
            out.append(int(ch))
        else:
            raise LiteralError(f'unexpected character {ch!r}', offset + j)
    return tuple(out)


def parse_literal(text: str) -> BiSeq:
    source = text.strip()
    transpose = False
    if source.endswith('^t'):
        transpose = True
        source = source[:-2]
    if not source:
        raise LiteralError('empty literal', 0)
    left_block = right_block = None
    body_start, body_end = 0, len(source)
    if source.startswith('('):
        close = source.find(')')
        if close < 0:
            raise LiteralError('unclosed periodic block', 0)
        left_block = (1, source[1:close])
        body_start = close + 1
    if body_start < len(source) and source.endswith(')'):
        open_ = source.rfind('(')
        if open_ < body_start:
            raise LiteralError('unbalanced parenthesis', len(source) - 1)
        right_block = (open_ + 1, source[open_ + 1:-1])
        body_end = open_
    body = source[body_start:body_end]
    if '(' in body or ')' in body:
        raise LiteralError('at most one periodic block per side', body_start + max(body.find('('), body.find(')')))
    if left_block is not None and right_block is None and body == '':
        seq = _parse_pure(left_block[1], left_block[0])
        return seq.transpose() if transpose else seq
    if body.count('*') != 1:
        raise LiteralError('exactly one origin marker expected outside periodic blocks', body_start)
    star = body.index('*')
    if star == 0:
        raise LiteralError('origin marker must follow a digit', body_start)
    left_digits = _parse_digits(body[:star - 1], body_start)
    origin = _parse_digits(body[star - 1], body_start + star - 1, allow_wildcard=False)[0]
    right_digits = _parse_digits(body[star + 1:], body_start + star + 1)
    left_tail = None
    right_tail = None
    if left_block is not None:
        left_tail = tuple(reversed(_parse_digits(left_block[1], left_block[0], allow_wildcard=False)))
        if not left_tail:
            raise LiteralError('empty periodic block', left_block[0])
    if right_block is not None:
        right_tail = _parse_digits(right_block[1], right_block[0], allow_wildcard=False)
        if not right_tail:
            raise LiteralError('empty periodic block', right_block[0])
    seq = BiSeq(OneSidedSeq(tuple(reversed(left_digits)), left_tail), origin, OneSidedSeq(right_digits, right_tail))
    return seq.transpose() if transpose else seq


def _parse_pure(block_text: str, offset: int) -> BiSeq:
    stars = block_text.count('*')
    if stars > 1:
        raise LiteralError('more than one origin marker', offset + block_text.rfind('*'))
    k = 0
    if stars == 1:
        star = block_text.index('*')
        if star == 0:
            raise LiteralError('origin marker must follow a digit', offset)
        k = star - 1
        block_text = block_text.replace('*', '')
    block = _parse_digits(block_text, offset, allow_wildcard=False)
    if not block:
        raise LiteralError('empty periodic block', offset)
    return periodic_biseq(block, k)


def _pure_block(seq: BiSeq) -> Optional[Tuple[int, ...]]:
    if seq.left.head or seq.right.head or not seq.is_complete:
        return None
    tail = seq.right.tail
    if tail[-1] != seq.origin:
        return None
    block = (seq.origin,) + tail[:-1]
    if periodic_biseq(block) != seq:
        return None
    return block


def format_literal(seq: BiSeq) -> str:
    block = _pure_block(seq)
    if block is not None:
        return f'({block[0]}*{_word_text(block[1:])})'
    parts = []
    if seq.left.tail is not None:
        parts.append(f'({_word_text(reversed(seq.left.tail))})')
    parts.append(_word_text(reversed(seq.left.head)))
    parts.append(f'{seq.origin}*')
    parts.append(_word_text(seq.right.head))
    if seq.right.tail is not None:
        parts.append(f'({_word_text(seq.right.tail)})')
    return ''.join(parts)


def window_literal(seq: BiSeq, lo: int, hi: int) -> str:
    """Finite window ``a_lo .. a_hi`` with the origin marked."""
    out = []
    for i in range(lo, hi + 1):
        out.append(_digit_char(seq.digit(i)))
        if i == 0:
            out.append('*')
    return ''.join(out)
