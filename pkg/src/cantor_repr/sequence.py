"""Eventually-periodic points of {0,1}^N and the self-similar structure on them.

A point is stored as ``preamble`` followed by ``period`` repeated forever, so
``BinSeq("01", "10")`` is the sequence 0,1,1,0,1,0,... .  The text notation
``pre(per)`` (``01(10)``, or ``(01)`` for an empty preamble) is used for all
interchange.

Words are plain bit strings.  The word ``k1...ki`` names the composition
``F_k1 o ... o F_ki`` of the two shift contractions; applying it prepends the
bits, and its cone is the set of sequences having it as a prefix.
"""
from __future__ import annotations

import enum
import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import InvalidInput

_BITS = re.compile(r"[01]*")
_NOTATION = re.compile(r"([01]*)\(([01]+)\)")


def _check_bits(s: str, what: str) -> str:
    if not isinstance(s, str) or not _BITS.fullmatch(s):
        raise InvalidInput(f"{what} must be a string of 0/1 characters, got {s!r}")
    return s


def _primitive_root(period: str) -> str:
    # Smallest rotation that reproduces the string is its primitive period.
    d = (period + period).find(period, 1)
    return period[:d] if len(period) % d == 0 else period


@functools.total_ordering
@dataclass(frozen=True)
class BinSeq:
    """A canonical eventually-periodic binary sequence.

    Construct through :func:`canonicalize` or :meth:`parse`; the
    constructor itself canonicalizes, so two instances compare equal exactly
    when they denote the same infinite sequence.  Ordering is lexicographic
    on the unrolled bits.
    """

    preamble: str
    period: str

    def __post_init__(self):
        _check_bits(self.preamble, "preamble")
        _check_bits(self.period, "period")
        if not self.period:
            raise InvalidInput("period must have length >= 1")
        pre = self.preamble
        per = _primitive_root(self.period)
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = per[-1] + per[:-1]
        object.__setattr__(self, "preamble", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def parse(cls, text: str) -> "BinSeq":
        m = _NOTATION.fullmatch(text.strip())
        if m is None:
            raise InvalidInput(f"not a sequence in pre(per) notation: {text!r}")
        return cls(m.group(1), m.group(2))

    def __str__(self) -> str:
        return f"{self.preamble}({self.period})"

    def prefix(self, n: int) -> str:
        """The first ``n`` bits as a string."""
        pre, per = self.preamble, self.period
        if n <= len(pre):
            return pre[:n]
        rest = n - len(pre)
        return pre + (per * (rest // len(per) + 1))[:rest]

    def __lt__(self, other):
        if not isinstance(other, BinSeq):
            return NotImplemented
        n = max(len(self.preamble), len(other.preamble)) + math.lcm(
            len(self.period), len(other.period)
        )
        return self.prefix(n) < other.prefix(n)


@dataclass(frozen=True)
class Fiber:
    """A nonempty finite set of sequences, kept sorted and duplicate-free."""

    elements: tuple[BinSeq, ...]

    def __post_init__(self):
        elems = tuple(sorted(set(self.elements)))
        if not elems:
            raise InvalidInput("a fiber must be nonempty")
        object.__setattr__(self, "elements", elems)

    @classmethod
    def of(cls, elements: Iterable[BinSeq]) -> "Fiber":
        return cls(tuple(elements))

    @classmethod
    def parse(cls, items: Iterable[str]) -> "Fiber":
        return cls(tuple(BinSeq.parse(s) for s in items))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.elements

    def to_strings(self) -> list[str]:
        return [str(e) for e in self.elements]


def canonicalize(preamble: str, period: str) -> BinSeq:
    """Normal form of ``preamble`` followed by ``period`` repeated.

    The period is reduced to its primitive root, then rolled into the
    preamble while the last bits agree.  Raises :class:`InvalidInput` for an
    empty period.
    """
    return BinSeq(preamble, period)


ZERO = BinSeq("", "0")
ONE = BinSeq("", "1")


def bit_at(x: BinSeq, i: int) -> int:
    """The ``i``-th bit of ``x``, 1-based."""
    if i < 1:
        raise InvalidInput(f"bit index must be >= 1, got {i}")
    pre = x.preamble
    if i <= len(pre):
        return int(pre[i - 1])
    return int(x.period[(i - 1 - len(pre)) % len(x.period)])


def _aligned(x: BinSeq, y: BinSeq) -> tuple[int, int, str, str]:
    L = max(len(x.preamble), len(y.preamble))
    P = math.lcm(len(x.period), len(y.period))
    return L, P, x.prefix(L + P), y.prefix(L + P)


def digit_series(head: str, cycle: str, base: int) -> Fraction:
    """Exact value of ``sum_i d_i / base**i`` for the digit string ``head``
    followed by ``cycle`` repeated forever."""
    L, P = len(head), len(cycle)
    h = int(head, base) if head else 0
    c = int(cycle, base)
    period = base**P - 1
    return Fraction(h * period + c, period * base**L)


def metric(x: BinSeq, y: BinSeq) -> Fraction:
    """``d(x, y) = sum |x_i - y_i| / 2**i``, evaluated in closed form."""
    if x == y:
        return Fraction(0)
    L, P, a, b = _aligned(x, y)
    diff = int(a, 2) ^ int(b, 2)
    head, cyc = diff >> P, diff & ((1 << P) - 1)
    return Fraction(head * ((1 << P) - 1) + cyc, ((1 << P) - 1) << L)


def apply_word(word: str, x: BinSeq) -> BinSeq:
    """``F_k1 o ... o F_ki (x)`` for ``word = k1...ki``: prepend the word."""
    _check_bits(word, "word")
    if not word:
        return x
    return BinSeq(word + x.preamble, x.period)


def shift(x: BinSeq, k: int) -> BinSeq:
    """Drop the first ``k`` bits; left inverse of prepending a word of length ``k``."""
    pre, per = x.preamble, x.period
    if k <= len(pre):
        return BinSeq(pre[k:], per)
    r = (k - len(pre)) % len(per)
    return BinSeq("", per[r:] + per[:r])


def strip_word(word: str, x: BinSeq) -> BinSeq:
    if not cone_contains(word, x):
        raise InvalidInput(f"{x} does not lie in the cone of {word!r}")
    return shift(x, len(word))


def cone_contains(word: str, x: BinSeq) -> bool:
    _check_bits(word, "word")
    return x.prefix(len(word)) == word


class ConeRelation(enum.Enum):
    DISJOINT = "disjoint"
    NESTED = "nested"
    EQUAL = "equal"


def cone_relation(w1: str, w2: str) -> ConeRelation:
    _check_bits(w1, "word")
    _check_bits(w2, "word")
    if w1 == w2:
        return ConeRelation.EQUAL
    if w1.startswith(w2) or w2.startswith(w1):
        return ConeRelation.NESTED
    return ConeRelation.DISJOINT


def cone_diameter(word: str) -> Fraction:
    """Diameter of the cone of ``word``; attained by ``word+0...`` vs ``word+1...``."""
    _check_bits(word, "word")
    return Fraction(1, 2 ** len(word))


def cmts_value(x: BinSeq) -> Fraction:
    """Image of ``x`` in the middle-thirds Cantor set: ``sum 2 x_i / 3**i``."""
    return digit_series(x.preamble.replace("1", "2"), x.period.replace("1", "2"), 3)


def expansions(r: Fraction, base: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All base-``base`` expansions of ``r`` in [0, 1] as (head, cycle) digit tuples.

    A rational with a terminating expansion has a second one ending in the
    repeated top digit; both are returned (greedy first).  ``1`` has only the
    expansion ``0.(base-1)``.
    """
    r = Fraction(r)
    if not 0 <= r <= 1:
        raise InvalidInput(f"value must lie in [0, 1], got {r}")
    top = base - 1
    if r == 1:
        return [((), (top,))]
    p, q = r.numerator, r.denominator
    digits: list[int] = []
    seen: dict[int, int] = {}
    rem = p
    while rem not in seen:
        seen[rem] = len(digits)
        d, rem = divmod(rem * base, q)
        digits.append(d)
    start = seen[rem]
    greedy = (tuple(digits[:start]), tuple(digits[start:]))
    out = [greedy]
    if greedy[1] == (0,) and greedy[0]:
        head = list(greedy[0])
        head[-1] -= 1
        out.append((tuple(head), (top,)))
    return out


def in_cmts(r: Fraction) -> bool:
    """True iff some ternary expansion of ``r`` avoids the digit 1."""
    return any(
        1 not in head and 1 not in cycle for head, cycle in expansions(r, 3)
    )
