import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cantor_repr import (
    ONE,
    ZERO,
    BinSeq,
    Fiber,
    InvalidInput,
    Kind,
    NotAFiber,
    binary_value,
    classify,
    decode_fiber,
    fiber_unit_interval,
)
from cantor_repr.oracle import all_canonical

from conftest import binseqs, unrolled_sum


def doubling_bits(y: Fraction, n: int) -> str:
    """First ``n`` bits of the greedy binary expansion by repeated doubling."""
    out = []
    for _ in range(n):
        y *= 2
        out.append("1" if y >= 1 else "0")
        y -= int(y >= 1)
    return "".join(out)


def unit_rationals(max_den):
    yield Fraction(0)
    for b in range(1, max_den + 1):
        for a in range(1, b + 1):
            if math.gcd(a, b) == 1:
                yield Fraction(a, b)


def test_binary_value_examples():
    assert binary_value(ZERO) == 0
    assert binary_value(ONE) == 1
    x = BinSeq("", "01")
    assert binary_value(x) == Fraction(1, 3)
    assert 0 <= Fraction(1, 3) - unrolled_sum(x, 64) <= Fraction(1, 2**64)
    assert binary_value(BinSeq("1", "0")) == Fraction(1, 2)


@given(binseqs)
def test_binary_value_matches_truncation(x):
    assert 0 <= binary_value(x) - unrolled_sum(x, 64) <= Fraction(1, 2**64)


def test_classify_examples():
    c = classify(Fraction(1, 2))
    assert (c.kind, c.n, c.l) == (Kind.DYADIC_INTERIOR, 1, 1)
    assert classify(Fraction(1, 3)).kind is Kind.NON_DYADIC
    assert classify(0).kind is Kind.ENDPOINT_ZERO
    assert classify(1).kind is Kind.ENDPOINT_ONE
    c = classify(Fraction(5, 8))
    assert (c.n, c.l) == (3, 5)


@pytest.mark.parametrize("bad", [Fraction(3, 2), Fraction(-1, 4), 0.5, "1/2", True])
def test_classify_rejects(bad):
    with pytest.raises(InvalidInput):
        classify(bad)


def test_fiber_examples():
    assert fiber_unit_interval(Fraction(1, 2)) == Fiber((BinSeq("0", "1"), BinSeq("1", "0")))
    assert fiber_unit_interval(Fraction(1, 3)) == Fiber((BinSeq("", "01"),))
    assert doubling_bits(Fraction(1, 3), 12) == "010101010101"
    assert fiber_unit_interval(0) == Fiber((ZERO,))
    assert fiber_unit_interval(1) == Fiber((ONE,))


def test_dyadic_fiber_shape():
    # y = 5/8 = 0.101: a0 = 10 0 111..., a1 = 10 1 000...
    f = fiber_unit_interval(Fraction(5, 8))
    assert f.to_strings() == ["100(1)", "101(0)"]


@pytest.mark.parametrize("y", list(unit_rationals(40)))
def test_fiber_against_doubling(y):
    f = fiber_unit_interval(y)
    greedy = doubling_bits(y, 90)
    if y == 1:
        assert f == Fiber((ONE,))
    else:
        # the greedy expansion is always one element of the fiber
        assert any(e.prefix(90) == greedy for e in f)
    for e in f:
        assert binary_value(e) == y


def test_decode_examples():
    assert decode_fiber(Fiber((BinSeq("0", "1"), BinSeq("1", "0")))) == Fraction(1, 2)
    assert decode_fiber(Fiber((BinSeq("", "01"),))) == Fraction(1, 3)
    with pytest.raises(NotAFiber):
        decode_fiber(Fiber((ZERO, ONE)))


@pytest.mark.slow
def test_round_trip_exhaustive_to_1024():
    for y in unit_rationals(2**10):
        f = fiber_unit_interval(y)
        assert decode_fiber(f) == y
        assert (len(f) == 2) == (classify(y).kind is Kind.DYADIC_INTERIOR)


def test_fibers_partition():
    owner = {}
    for y in unit_rationals(64):
        f = fiber_unit_interval(y)
        assert len(set(f)) == len(f)
        for e in f:
            assert e not in owner
            owner[e] = y


def test_surjective_at_desk_scale():
    universe = all_canonical(10)
    assert len(universe) == len(set(universe))
    for x in universe:
        assert x in fiber_unit_interval(binary_value(x))


@given(st.fractions(min_value=0, max_value=1, max_denominator=10**6))
def test_round_trip_property(y):
    assert decode_fiber(fiber_unit_interval(y)) == y
