"""Enclosure layer: outward rounding, comparisons, refinement, truncation."""

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gronwall.enclosure import (
    BoundedReal,
    Cmp,
    DomainStraddle,
    StraddlesBoundary,
    refine_until,
    truncate3,
)

rationals = st.fractions(
    min_value=Fraction(-10**6), max_value=Fraction(10**6), max_denominator=10**6
)


def test_from_exact_encloses_tightly():
    x = BoundedReal.from_exact(Fraction(1, 3), 128)
    assert x.lo_fraction() <= Fraction(1, 3) <= x.hi_fraction()
    assert x.width_fraction() < Fraction(1, 2**120)
    # integers are representable, so the enclosure is a point
    assert BoundedReal.from_exact(12345, 64).width_fraction() == 0


def test_point_and_contains():
    x = BoundedReal.point(7)
    assert x.contains(7)
    assert not x.contains(Fraction(71, 10))


@given(rationals, rationals)
@settings(max_examples=200, deadline=None)
def test_add_mul_enclose_exact_arithmetic(a, b):
    xa = BoundedReal.from_exact(a, 64)
    xb = BoundedReal.from_exact(b, 64)
    s = xa.add(xb)
    assert s.lo_fraction() <= a + b <= s.hi_fraction()
    m = xa.mul(xb)
    assert m.lo_fraction() <= a * b <= m.hi_fraction()
    d = xa.sub(xb)
    assert d.lo_fraction() <= a - b <= d.hi_fraction()


@given(rationals)
@settings(max_examples=200, deadline=None)
def test_higher_precision_nests(a):
    # the 512-bit enclosure of an expression sits inside the 64-bit one
    def chain(prec):
        x = BoundedReal.from_exact(a, prec)
        y = x.mul(x).add(BoundedReal.from_exact(Fraction(7, 3), prec)).mul(3)
        return y

    assert chain(64).encloses(chain(512))


def test_log_exp_against_mpmath():
    mpmath.mp.dps = 60
    for value in (Fraction(2), Fraction(10, 3), Fraction(5040), Fraction(1, 7)):
        enc = BoundedReal.from_exact(value, 128).log()
        oracle = mpmath.log(mpmath.mpf(value.numerator) / value.denominator)
        assert enc.lo_fraction() <= Fraction(str(oracle)) <= enc.hi_fraction()
    e1 = BoundedReal.from_exact(1, 128).exp()
    assert e1.lo_fraction() <= Fraction(str(mpmath.exp(1))) <= e1.hi_fraction()


def test_division_by_interval_containing_zero():
    span = BoundedReal.from_exact(Fraction(-1), 64).add(BoundedReal.from_exact(Fraction(1, 2), 64))
    assert span.sign() == -1
    zero_span = BoundedReal(BoundedReal.from_exact(-1, 64).lo, BoundedReal.from_exact(1, 64).hi)
    with pytest.raises(DomainStraddle):
        BoundedReal.from_exact(1, 64).div(zero_span)
    with pytest.raises(DomainStraddle):
        zero_span.log()


def test_compare_and_sign():
    a = BoundedReal.from_exact(Fraction(1, 3), 128)
    b = BoundedReal.from_exact(Fraction(2, 3), 128)
    assert a.compare(b) is Cmp.LESS
    assert b.compare(a) is Cmp.GREATER
    # overlapping enclosures cannot be ordered
    wide = BoundedReal(a.lo, b.hi)
    assert wide.compare(a) is None
    assert wide.sign() == 1
    assert BoundedReal.from_exact(0, 64).sign() == 0


def test_refine_until_escalates_and_gives_up():
    calls = []

    def needs_1024_bits(prec):
        calls.append(prec)
        return "done" if prec >= 1024 else None

    assert refine_until(needs_1024_bits, start=128, cap=4096) == "done"
    assert calls == [128, 256, 512, 1024]

    assert refine_until(lambda p: None, start=128, cap=512) is None


def test_refine_until_treats_domain_straddle_as_undecided():
    def touchy(prec):
        if prec < 512:
            raise DomainStraddle("interval spans zero")
        return 42

    assert refine_until(touchy, start=128, cap=1024) == 42


@pytest.mark.parametrize(
    "value,expected",
    [
        (Fraction(31, 16), "1.937"),
        (Fraction(7, 4), "1.750"),
        (5, "5.000"),
        (Fraction(19344, 5040), "3.838"),
        (Fraction(-40931, 10000), "-4.094"),  # floor truncation, not rounding
        (Fraction(-1, 2), "-0.500"),
        (0, "0.000"),
    ],
)
def test_truncate3_exact_values(value, expected):
    assert truncate3(value) == expected


def test_truncate3_enclosure_paths():
    x = BoundedReal.from_exact(Fraction(31, 16), 128)
    assert truncate3(x) == "1.937"
    # an enclosure spanning a millimark cannot be rendered
    spanning = BoundedReal(
        BoundedReal.from_exact(Fraction(1999, 1000), 64).lo,
        BoundedReal.from_exact(Fraction(2001, 1000), 64).hi,
    )
    with pytest.raises(StraddlesBoundary):
        truncate3(spanning)


def test_center_stays_inside():
    x = BoundedReal.from_exact(Fraction(1, 3), 64)
    c = x.center
    assert x.lo <= c <= x.hi
