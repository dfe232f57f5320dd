"""Gronwall's function G(n) = sigma(n) / (n log log n), fully certified.

The exact rational part (sigma(n)/n) is always computed first; only the
log-log denominator and the final division pass through enclosures. All
comparisons escalate precision until the intervals separate, so a LESS or
GREATER answer is a guarantee, not an estimate.

The Euler-Mascheroni constant is embedded as a 1000-digit decimal literal
(standard published value; the test suite re-derives 140+ digits from
scratch with an Euler-Maclaurin enclosure). e^gamma is obtained by
exponentiating the literal's rational bracket.
"""

from __future__ import annotations

import math
from fractions import Fraction
from importlib import resources

from .arith import Factorization, divisor_sigma, factorize
from .enclosure import (
    DEFAULT_PRECISION,
    DEFAULT_PRECISION_CAP,
    BoundedReal,
    Cmp,
    PrecisionExhausted,
    StraddlesBoundary,
    refine_until,
    truncate3,
)

_GAMMA_TEXT = (
    resources.files("gronwall").joinpath("data/gamma_digits.txt").read_text().strip()
)
if not _GAMMA_TEXT.startswith("0.57721"):
    raise RuntimeError("embedded Euler-Mascheroni digits failed the startup self-check")

_GAMMA_DECIMALS = len(_GAMMA_TEXT) - 2
_GAMMA_SCALED = int(_GAMMA_TEXT.replace(".", ""))

# Bits of precision the digit supply can honestly back (with guard bits).
GAMMA_PRECISION_LIMIT = int(_GAMMA_DECIMALS * math.log2(10)) - 8


def gamma_enclosure(prec: int) -> BoundedReal:
    """Certified enclosure of the Euler-Mascheroni constant.

    Asking for more bits than the embedded digit supply can back raises
    PrecisionExhausted, so escalation ladders that climb past the ceiling
    surface an honest cannot-certify instead of a crash.
    """
    if prec > GAMMA_PRECISION_LIMIT:
        raise PrecisionExhausted(
            f"precision {prec} exceeds the {GAMMA_PRECISION_LIMIT}-bit support "
            "of the embedded digits"
        )
    scale = 10**_GAMMA_DECIMALS
    lo = BoundedReal.from_exact(Fraction(_GAMMA_SCALED, scale), prec)
    hi = BoundedReal.from_exact(Fraction(_GAMMA_SCALED + 1, scale), prec)
    return BoundedReal(lo.lo, hi.hi)


_e_gamma_cache: dict[int, BoundedReal] = {}


def e_gamma(prec: int = DEFAULT_PRECISION) -> BoundedReal:
    """Certified enclosure of e^gamma (~1.78107)."""
    got = _e_gamma_cache.get(prec)
    if got is None:
        got = _e_gamma_cache[prec] = gamma_enclosure(prec).exp()
    return got


_loglog_cache: dict[tuple[int, int], BoundedReal] = {}


def log_log(n: int, prec: int = DEFAULT_PRECISION) -> BoundedReal:
    """Certified enclosure of ln(ln n) for n >= 2.

    Negative for n = 2, positive for n >= 3; never zero at an integer.
    """
    if n < 2:
        raise ValueError(f"log log is undefined for n = {n}")
    key = (n, prec)
    got = _loglog_cache.get(key)
    if got is None:
        inner = BoundedReal.from_exact(n, prec).log()
        got = _loglog_cache[key] = inner.log()
    return got


def g_value(
    n: int, prec: int = DEFAULT_PRECISION, factorization: Factorization | None = None
) -> BoundedReal:
    """Certified enclosure of G(n) = sigma(n) / (n log log n), n >= 2."""
    if n < 2:
        raise ValueError(f"G(n) is defined for n >= 2, got {n}")
    f = factorization if factorization is not None else factorize(n)
    ratio = Fraction(divisor_sigma(f), n)
    return BoundedReal.from_exact(ratio, prec).div(log_log(n, prec))


def g_compare(
    a: int,
    b: int,
    *,
    start: int = DEFAULT_PRECISION,
    cap: int = DEFAULT_PRECISION_CAP,
    sigma_a: int | None = None,
    sigma_b: int | None = None,
) -> Cmp:
    """Certified ordering of G(a) versus G(b).

    Compares sigma(a)*b*loglog(b) against sigma(b)*a*loglog(a), escalating
    precision until the enclosures separate. EQUAL only for a == b; distinct
    arguments that refuse to separate come back INDETERMINATE.
    """
    if a < 2 or b < 2:
        raise ValueError("g_compare needs a, b >= 2")
    if a == b:
        return Cmp.EQUAL
    sa = sigma_a if sigma_a is not None else divisor_sigma(factorize(a))
    sb = sigma_b if sigma_b is not None else divisor_sigma(factorize(b))

    def attempt(prec: int) -> Cmp | None:
        la, lb = log_log(a, prec), log_log(b, prec)
        sign_a, sign_b = la.sign(), lb.sign()
        if sign_a is None or sign_b is None:
            return None
        if sign_a < 0 and sign_b > 0:
            return Cmp.LESS  # G(a) < 0 < G(b)
        if sign_a > 0 and sign_b < 0:
            return Cmp.GREATER
        # Same sign: sign(G(a) - G(b)) == sign(sa*b*lb - sb*a*la) because the
        # denominator a*b*la*lb is positive whether both logs are positive or
        # both negative. (Both negative cannot actually happen for a != b:
        # only n = 2 has loglog < 0.)
        diff = lb.mul(sa * b).sub(la.mul(sb * a))
        s = diff.sign()
        if s is None or s == 0:
            return None
        return Cmp.LESS if s < 0 else Cmp.GREATER

    verdict = refine_until(attempt, start=start, cap=cap)
    return verdict if verdict is not None else Cmp.INDETERMINATE


def _flip(c: Cmp | None) -> Cmp | None:
    if c is Cmp.LESS:
        return Cmp.GREATER
    if c is Cmp.GREATER:
        return Cmp.LESS
    return None


def g_cmp_exact(
    n: int,
    threshold: Fraction | int,
    *,
    start: int = DEFAULT_PRECISION,
    cap: int = DEFAULT_PRECISION_CAP,
    sigma_n: int | None = None,
) -> Cmp:
    """Certified ordering of G(n) versus an exact rational threshold."""
    if n < 2:
        raise ValueError("g_cmp_exact needs n >= 2")
    s = sigma_n if sigma_n is not None else divisor_sigma(factorize(n))
    ratio = Fraction(s, n)

    def attempt(prec: int) -> Cmp | None:
        ll = log_log(n, prec)
        sign = ll.sign()
        if sign is None:
            return None
        if sign < 0:
            if threshold > 0:
                return Cmp.LESS  # G(n) < 0 < threshold
            return BoundedReal.from_exact(ratio, prec).div(ll).compare(threshold)
        # loglog(n) > 0, so G(n) vs t is sigma/n vs t*loglog(n), reversed
        return _flip(ll.mul(threshold).compare(ratio))

    verdict = refine_until(attempt, start=start, cap=cap)
    return verdict if verdict is not None else Cmp.INDETERMINATE


def g_cmp_e_gamma(
    n: int,
    *,
    start: int = DEFAULT_PRECISION,
    cap: int = DEFAULT_PRECISION_CAP,
    sigma_n: int | None = None,
) -> Cmp:
    """Certified ordering of G(n) versus e^gamma."""
    if n < 2:
        raise ValueError("g_cmp_e_gamma needs n >= 2")
    s = sigma_n if sigma_n is not None else divisor_sigma(factorize(n))
    ratio = Fraction(s, n)

    def attempt(prec: int) -> Cmp | None:
        ll = log_log(n, prec)
        sign = ll.sign()
        if sign is None:
            return None
        if sign < 0:
            return Cmp.LESS  # G(n) < 0 < e^gamma
        rhs = e_gamma(prec).mul(ll)  # compare sigma/n against e^gamma*loglog(n)
        c = rhs.compare(ratio)
        if c is Cmp.LESS:
            return Cmp.GREATER
        if c is Cmp.GREATER:
            return Cmp.LESS
        return None

    verdict = refine_until(attempt, start=start, cap=cap)
    return verdict if verdict is not None else Cmp.INDETERMINATE


def g_truncate3(
    n: int,
    *,
    start: int = DEFAULT_PRECISION,
    cap: int = DEFAULT_PRECISION_CAP,
    factorization: Factorization | None = None,
) -> str:
    """truncate3 rendering of G(n) with automatic precision escalation."""

    def attempt(prec: int) -> str | None:
        try:
            return truncate3(g_value(n, prec, factorization))
        except StraddlesBoundary:
            return None

    rendered = refine_until(attempt, start=start, cap=cap)
    if rendered is None:
        raise PrecisionExhausted(f"G({n}) sits on a truncation boundary at cap {cap}")
    return rendered
