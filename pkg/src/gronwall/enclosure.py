"""Certified real arithmetic: interval enclosures over MPFR directed rounding.

A BoundedReal is a pair of extended-precision endpoints lo <= hi that are
guaranteed to bracket the exact value of the expression that produced them.
Every operation is outward-rounded (lo computed rounding down, hi rounding
up), so enclosures stay sound under composition. Comparisons against exact
integers and rationals are themselves exact.

Decision procedures escalate precision with refine_until: evaluate at a
starting precision, double on failure, give up at a cap.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from typing import Callable, Optional, TypeVar, Union

import gmpy2

DEFAULT_PRECISION = 128
DEFAULT_PRECISION_CAP = 4096

Exact = Union[int, Fraction]

_ZERO = gmpy2.mpfr(0)  # forces exact operands through a rounding context

_contexts: dict[tuple[int, object], object] = {}


def _ctx(prec: int, rounding):
    key = (prec, rounding)
    ctx = _contexts.get(key)
    if ctx is None:
        ctx = _contexts[key] = gmpy2.context(precision=prec, round=rounding)
    return ctx


def _down(prec: int):
    return _ctx(prec, gmpy2.RoundDown)


def _up(prec: int):
    return _ctx(prec, gmpy2.RoundUp)


class PrecisionExhausted(Exception):
    """Escalation reached the precision cap without certifying a decision."""


class StraddlesBoundary(Exception):
    """An enclosure crosses a truncation-cell boundary; escalate and retry."""


class DomainStraddle(ArithmeticError):
    """An enclosure touches a function's domain edge (log of <= 0, division
    by an interval containing 0). Usually means the precision is too low."""


class Tri(enum.Enum):
    """Three-valued certified verdict."""

    TRUE = "true"
    FALSE = "false"
    INDETERMINATE = "indeterminate"


class Cmp(enum.Enum):
    """Certified ordering. EQUAL is only ever produced by identical inputs;
    numeric equality of distinct expressions is never certified."""

    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INDETERMINATE = "indeterminate"


def _to_mpq(x) -> "gmpy2.mpq":
    if isinstance(x, Fraction):
        return gmpy2.mpq(x.numerator, x.denominator)
    return gmpy2.mpq(x)


class BoundedReal:
    """An interval [lo, hi] certified to contain the exact value."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        if not lo <= hi:
            raise ValueError(f"invalid enclosure [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_exact(cls, value: Exact, prec: int) -> "BoundedReal":
        """Enclosure of an integer or rational at the given precision."""
        q = _to_mpq(value)
        return cls(_down(prec).add(q, _ZERO), _up(prec).add(q, _ZERO))

    @classmethod
    def point(cls, x) -> "BoundedReal":
        return cls(x, x)

    # -- structure ---------------------------------------------------------

    @property
    def precision(self) -> int:
        return max(self.lo.precision, self.hi.precision)

    @property
    def center(self):
        # RoundDown sum then exact halving keeps the center inside [lo, hi]
        p = self.precision
        return _down(p).div(_down(p).add(self.lo, self.hi), 2)

    @property
    def radius(self):
        c = self.center
        u = _up(self.precision)
        return max(u.sub(self.hi, c), u.sub(c, self.lo))

    def width_fraction(self) -> Fraction:
        return self.hi_fraction() - self.lo_fraction()

    def lo_fraction(self) -> Fraction:
        return Fraction(*(int(v) for v in self.lo.as_integer_ratio()))

    def hi_fraction(self) -> Fraction:
        return Fraction(*(int(v) for v in self.hi.as_integer_ratio()))

    def __repr__(self) -> str:
        return f"BoundedReal[{self.lo!r}, {self.hi!r}]"

    # -- arithmetic (always outward-rounded) --------------------------------

    def _operand(self, other):
        if isinstance(other, BoundedReal):
            return other.lo, other.hi
        q = _to_mpq(other)
        return q, q

    def _prec_with(self, olo) -> int:
        if isinstance(olo, type(_ZERO)):
            return max(self.precision, olo.precision)
        return self.precision

    def add(self, other) -> "BoundedReal":
        olo, ohi = self._operand(other)
        p = self._prec_with(olo)
        return BoundedReal(_down(p).add(self.lo, olo), _up(p).add(self.hi, ohi))

    def sub(self, other) -> "BoundedReal":
        olo, ohi = self._operand(other)
        p = self._prec_with(olo)
        return BoundedReal(_down(p).sub(self.lo, ohi), _up(p).sub(self.hi, olo))

    def neg(self) -> "BoundedReal":
        return BoundedReal(-self.hi, -self.lo)

    def mul(self, other) -> "BoundedReal":
        olo, ohi = self._operand(other)
        p = self._prec_with(olo)
        d, u = _down(p), _up(p)
        if not isinstance(other, BoundedReal) and olo >= 0:
            # common fast path: nonnegative exact scalar
            return BoundedReal(d.mul(self.lo, olo), u.mul(self.hi, ohi))
        los = [d.mul(a, b) for a in (self.lo, self.hi) for b in (olo, ohi)]
        his = [u.mul(a, b) for a in (self.lo, self.hi) for b in (olo, ohi)]
        return BoundedReal(min(los), max(his))

    def div(self, other) -> "BoundedReal":
        olo, ohi = self._operand(other)
        if olo <= 0 <= ohi:
            raise DomainStraddle("division by an enclosure containing zero")
        p = self._prec_with(olo)
        d, u = _down(p), _up(p)
        los = [d.div(a, b) for a in (self.lo, self.hi) for b in (olo, ohi)]
        his = [u.div(a, b) for a in (self.lo, self.hi) for b in (olo, ohi)]
        return BoundedReal(min(los), max(his))

    def log(self) -> "BoundedReal":
        if self.lo <= 0:
            raise DomainStraddle("log of an enclosure touching (-inf, 0]")
        p = self.precision
        return BoundedReal(_down(p).log(self.lo), _up(p).log(self.hi))

    def exp(self) -> "BoundedReal":
        p = self.precision
        return BoundedReal(_down(p).exp(self.lo), _up(p).exp(self.hi))

    def square(self) -> "BoundedReal":
        return self.mul(self)

    # -- certified queries ---------------------------------------------------

    def sign(self) -> Optional[int]:
        """Certified sign of the exact value, or None if undecided."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == 0 and self.hi == 0:
            return 0
        return None

    def compare(self, other) -> Optional[Cmp]:
        """Certified strict ordering against an enclosure or exact number.

        None means the intervals overlap at this precision; it never means
        equality.
        """
        olo, ohi = self._operand(other)
        if self.hi < olo:
            return Cmp.LESS
        if self.lo > ohi:
            return Cmp.GREATER
        return None

    def contains(self, value: Exact) -> bool:
        q = _to_mpq(value)
        return self.lo <= q <= self.hi

    def encloses(self, other: "BoundedReal") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi


T = TypeVar("T")


def refine_until(
    attempt: Callable[[int], Optional[T]],
    *,
    start: int = DEFAULT_PRECISION,
    cap: int = DEFAULT_PRECISION_CAP,
) -> Optional[T]:
    """Evaluate attempt(precision), doubling precision until it returns a
    non-None decision. Returns None once the cap fails too. DomainStraddle
    from an attempt counts as "not decided yet"."""
    if start > cap:
        start = cap
    prec = start
    while True:
        try:
            result = attempt(prec)
        except DomainStraddle:
            result = None
        if result is not None:
            return result
        if prec >= cap:
            return None
        prec = min(prec * 2, cap)


def truncate3(x: Union[BoundedReal, Exact]) -> str:
    """floor(x * 1000) / 1000 rendered with exactly three decimals.

    For enclosures the result is certified: if the interval straddles a
    multiple of 1/1000 the rendering is refused (StraddlesBoundary) and the
    caller should escalate precision.
    """
    if isinstance(x, BoundedReal):
        mlo = math.floor(x.lo_fraction() * 1000)
        mhi = math.floor(x.hi_fraction() * 1000)
        if mlo != mhi:
            raise StraddlesBoundary(f"enclosure spans truncation cells {mlo}..{mhi}")
        milli = mlo
    elif isinstance(x, (int, Fraction)):
        milli = math.floor(Fraction(x) * 1000)
    else:
        raise TypeError(f"truncate3 expects BoundedReal, int, or Fraction, got {type(x)}")
    sign = "-" if milli < 0 else ""
    whole, frac = divmod(abs(milli), 1000)
    return f"{sign}{whole}.{frac:03d}"
