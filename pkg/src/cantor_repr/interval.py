"""The binary-expansion quotient of {0,1}^N onto [0, 1] and its fibers."""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Optional

from .errors import InvalidInput, NotAFiber
from .sequence import ONE, ZERO, BinSeq, Fiber, digit_series


class Kind(enum.Enum):
    ENDPOINT_ZERO = "endpoint-zero"
    ENDPOINT_ONE = "endpoint-one"
    DYADIC_INTERIOR = "dyadic-interior"
    NON_DYADIC = "non-dyadic"


@dataclass(frozen=True)
class DyadicClass:
    kind: Kind
    n: Optional[int] = None
    l: Optional[int] = None


def as_unit_rational(y) -> Fraction:
    """Coerce an exact rational in [0, 1]; floats and other inexact values are rejected."""
    if isinstance(y, bool) or not isinstance(y, Rational):
        raise InvalidInput(f"expected an exact rational, got {y!r}")
    if not isinstance(y, Fraction):
        y = Fraction(y)
    if not 0 <= y <= 1:
        raise InvalidInput(f"value {y} lies outside [0, 1]")
    return y


def binary_value(x: BinSeq) -> Fraction:
    """``f(x) = sum x_i / 2**i``."""
    return digit_series(x.preamble, x.period, 2)


def classify(y) -> DyadicClass:
    y = as_unit_rational(y)
    if y == 0:
        return DyadicClass(Kind.ENDPOINT_ZERO)
    if y == 1:
        return DyadicClass(Kind.ENDPOINT_ONE)
    q = y.denominator
    if q & (q - 1) == 0:
        return DyadicClass(Kind.DYADIC_INTERIOR, n=q.bit_length() - 1, l=y.numerator)
    return DyadicClass(Kind.NON_DYADIC)


@functools.lru_cache(maxsize=4096)
def _cycle_length(m: int) -> int:
    # Remainders of the long division c/m (m odd, gcd(c, m) = 1) cycle with
    # the order of 2 modulo m, whatever the numerator.
    rem, n = 2 % m, 1
    while rem != 1:
        rem = rem * 2 % m
        n += 1
    return n


def expand(y) -> BinSeq:
    """The binary expansion of a non-dyadic rational ``y`` in (0, 1)."""
    y = as_unit_rational(y)
    q = y.denominator
    k = (q & -q).bit_length() - 1
    m = q >> k
    if m == 1:
        raise InvalidInput(f"{y} is dyadic and has two expansions")
    head, c = divmod(y.numerator, m)  # y * 2**k = head + c/m
    P = _cycle_length(m)
    cyc = c * (2**P - 1) // m
    pre = format(head, f"0{k}b") if k else ""
    return BinSeq(pre, format(cyc, f"0{P}b"))


def fiber_unit_interval(y) -> Fiber:
    """``f^{-1}(y)``: a singleton unless ``y = l/2**n`` is dyadic interior.

    For dyadic ``y`` the two elements are ``a1..a_{n-1} 0 1 1 1 ...`` and
    ``a1..a_{n-1} 1 0 0 0 ...`` where ``a1..a_{n-1}`` are the leading bits
    of ``l``.
    """
    c = classify(y)
    if c.kind is Kind.ENDPOINT_ZERO:
        return Fiber((ZERO,))
    if c.kind is Kind.ENDPOINT_ONE:
        return Fiber((ONE,))
    if c.kind is Kind.DYADIC_INTERIOR:
        lead = format(c.l, f"0{c.n}b")[:-1]
        return Fiber((BinSeq(lead + "0", "1"), BinSeq(lead + "1", "0")))
    return Fiber((expand(y),))


def decode_fiber(fiber: Fiber) -> Fraction:
    """The common binary value of the fiber's elements."""
    values = {binary_value(e) for e in fiber}
    if len(values) != 1:
        shown = ", ".join(sorted(str(v) for v in values))
        raise NotAFiber(f"elements have differing binary values: {shown}")
    return values.pop()
