"""G(n), its certified comparisons, and the Euler-gamma constant plumbing."""

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gronwall.arith import factorize
from gronwall.enclosure import Cmp, PrecisionExhausted
from gronwall.gfun import (
    GAMMA_PRECISION_LIMIT,
    e_gamma,
    g_cmp_e_gamma,
    g_cmp_exact,
    g_compare,
    g_truncate3,
    g_value,
    gamma_enclosure,
    log_log,
)
from gronwall.robin import harmonic_exact


def frac(mp_value):
    return Fraction(str(mp_value))


def test_gamma_digits_match_mpmath():
    mpmath.mp.dps = 1010
    enc = gamma_enclosure(GAMMA_PRECISION_LIMIT)
    gamma = frac(mpmath.euler)
    assert enc.lo_fraction() <= gamma <= enc.hi_fraction()
    # 3313 bits of the 1000-digit supply: width capped by 2^-prec rounding
    assert enc.width_fraction() < Fraction(1, 10**990)


def test_gamma_euler_maclaurin_cross_check():
    # gamma = H_N - ln N - 1/2N + 1/12N^2 - 1/120N^4 + O(N^-6), N = 10^4:
    # an oracle independent of both the embedded digits and mpmath.euler
    n = 10**4
    mpmath.mp.dps = 40
    h = harmonic_exact(n)
    approx = (
        mpmath.mpf(h.numerator) / h.denominator
        - mpmath.log(n)
        - mpmath.mpf(1) / (2 * n)
        + mpmath.mpf(1) / (12 * n**2)
        - mpmath.mpf(1) / (120 * n**4)
    )
    enc = gamma_enclosure(256)
    # the truncated Euler-Maclaurin tail is below 1e-28
    assert abs(frac(approx) - enc.lo_fraction()) < Fraction(1, 10**26)


def test_e_gamma_value():
    # the decimal oracle must out-resolve the ~2^-190 enclosure width
    mpmath.mp.dps = 80
    enc = e_gamma(192)
    assert enc.lo_fraction() <= frac(mpmath.exp(mpmath.euler)) <= enc.hi_fraction()
    assert int(enc.lo_fraction() * 10**15) == 1781072417990197


def test_e_gamma_precision_ceiling():
    assert e_gamma(GAMMA_PRECISION_LIMIT).width_fraction() > 0
    with pytest.raises(PrecisionExhausted):
        e_gamma(GAMMA_PRECISION_LIMIT + 1)


@pytest.mark.parametrize("n", [2, 3, 16, 5040, 183783600])
def test_log_log_contains_oracle(n):
    mpmath.mp.dps = 50
    enc = log_log(n, 128)
    oracle = frac(mpmath.log(mpmath.log(n)))
    assert enc.lo_fraction() <= oracle <= enc.hi_fraction()
    assert enc.width_fraction() < Fraction(1, 2**100)


def test_log_log_sign_flip_at_two():
    assert log_log(2).sign() == -1
    assert log_log(3).sign() == 1
    with pytest.raises(ValueError):
        log_log(1)


@pytest.mark.parametrize(
    "n,rendered",
    [
        (2, "-4.093"),
        (3, "14.177"),
        (4, "5.357"),
        (6, "3.429"),
        (16, "1.899"),
        (5040, "1.790"),
        (183783600, "1.717"),
    ],
)
def test_g_truncations(n, rendered):
    assert g_truncate3(n) == rendered


def test_g_value_contains_oracle():
    mpmath.mp.dps = 50
    for n in (4, 5040, 10080):
        enc = g_value(n)
        f = factorize(n)
        from gronwall.arith import divisor_sigma

        oracle = frac(
            mpmath.mpf(divisor_sigma(f)) / n / mpmath.log(mpmath.log(n))
        )
        assert enc.lo_fraction() <= oracle <= enc.hi_fraction()


def test_g_compare_examples():
    assert g_compare(6, 3) is Cmp.LESS  # G(6)=3.429 < G(3)=14.177
    assert g_compare(3, 6) is Cmp.GREATER
    assert g_compare(7, 7) is Cmp.EQUAL
    assert g_compare(5040, 2520) is Cmp.LESS
    assert g_compare(2, 3) is Cmp.LESS  # negative versus positive


@given(st.integers(min_value=2, max_value=3000), st.integers(min_value=2, max_value=3000))
@settings(max_examples=150, deadline=None)
def test_g_compare_antisymmetric(a, b):
    c = g_compare(a, b)
    d = g_compare(b, a)
    flip = {Cmp.LESS: Cmp.GREATER, Cmp.GREATER: Cmp.LESS, Cmp.EQUAL: Cmp.EQUAL}
    assert d is flip[c]


def test_prime_swap_decreases_g():
    # for primes q < p, neither dividing n: G(pn) < G(qn); the table rows
    # {11, 13, 17, 19} exercise the swap used to cap G over prime multiples
    for n in (6, 720, 5040):
        values = [11, 13, 17, 19]
        for q, p in zip(values, values[1:]):
            assert g_compare(p * n, q * n) is Cmp.LESS, (n, q, p)


def test_g_cmp_e_gamma_boundary_rows():
    assert g_cmp_e_gamma(5040) is Cmp.GREATER
    assert g_cmp_e_gamma(5041) is Cmp.LESS
    assert g_cmp_e_gamma(3) is Cmp.GREATER
    assert g_cmp_e_gamma(2) is Cmp.LESS  # G(2) < 0 < e^gamma


def test_g_cmp_exact_thresholds():
    assert g_cmp_exact(4, Fraction(4644, 1000)) is Cmp.GREATER
    assert g_cmp_exact(4, Fraction(5357, 1000)) is Cmp.GREATER  # truncation floor
    assert g_cmp_exact(4, Fraction(5358, 1000)) is Cmp.LESS
    assert g_cmp_exact(2, Fraction(1)) is Cmp.LESS  # negative side short-circuit
    assert g_cmp_exact(2, Fraction(-100)) is Cmp.GREATER
