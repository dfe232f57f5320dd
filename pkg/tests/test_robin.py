"""Threshold scans, the 26-row exception table, bounds, and harmonic checks."""

import csv
from fractions import Fraction
from importlib import resources

import mpmath
import pytest

from gronwall.arith import factorize
from gronwall.enclosure import Cmp, PrecisionExhausted, Tri, truncate3
from gronwall.gfun import g_compare, g_truncate3
from gronwall.robin import (
    ROBIN_THRESHOLD,
    bound_margin_sweep,
    harmonic,
    harmonic_exact,
    lagarias_check,
    lagarias_sweep,
    robin_bound_margin,
    robin_check,
    robin_exceptions,
    scan_range,
    witness_prime,
)

# the complete set of known violators of the e^gamma threshold
R_SET = [3, 4, 5, 6, 8, 9, 10, 12, 16, 18, 20, 24, 30, 36, 48, 60, 72, 84,
         120, 180, 240, 360, 720, 840, 2520, 5040]

# Published table exhibits of a prime p with G(r/p) > G(r), where they differ
# from the true minimum. Each exhibited value is itself a valid witness --
# except r = 48, whose exhibited 3 fails the defining inequality outright
# (G(16) = 1.899... < G(48) = 1.908..., by the published values themselves).
EXHIBITED_NONMINIMAL = {20: 5, 24: 3, 72: 3, 180: 5, 240: 5, 360: 5, 720: 3}
EXHIBITED_INVALID = {48: 3}


def load_golden():
    text = resources.files("gronwall.data").joinpath("table1_golden.csv").read_text()
    return list(csv.DictReader(text.splitlines()))


def test_robin_check_basics():
    assert robin_check(5041) is Tri.TRUE
    assert robin_check(10080) is Tri.TRUE
    assert robin_check(183783600) is Tri.TRUE
    with pytest.raises(ValueError):
        robin_check(5040)  # the inequality only applies beyond the threshold


def test_exceptions_match_golden_table():
    records = robin_exceptions()
    golden = load_golden()
    assert [rec.r for rec in records] == R_SET
    assert len(records) == len(golden) == 26
    for rec, row in zip(records, golden):
        assert str(rec.r) == row["r"]
        assert ("1" if rec.is_sa else "0") == row["sa"]
        assert str(rec.factorization) == row["factorization"]
        assert str(rec.sigma) == row["sigma"]
        assert truncate3(rec.abundancy) == row["abundancy"]
        assert truncate3(rec.g) == row["g"]
        witness = "" if rec.witness_prime is None else str(rec.witness_prime)
        assert witness == row["p_witness"]
        assert truncate3(rec.g_11r) == row["g_11r"]


def test_exception_spot_values():
    records = {rec.r: rec for rec in robin_exceptions()}
    assert records[4].witness_prime is None
    assert truncate3(records[4].g) == "5.357"
    assert records[36].witness_prime == 2
    assert records[5040].sigma == 19344
    assert truncate3(records[5040].g_11r) == "1.751"


def test_witness_prime_values():
    assert witness_prime(6) == 2
    assert witness_prime(9) == 3
    assert witness_prime(4) is None  # G(2) < 0 < G(4)
    # minimal witness, not the published table's exhibited 3
    assert witness_prime(720) == 2


def test_witness_prime_is_minimal_over_R():
    golden = {int(row["r"]): row["p_witness"] for row in load_golden()}
    for r in R_SET:
        if r <= 5:
            continue
        w = witness_prime(r)
        assert w == int(golden[r])
        # no smaller prime factor qualifies
        for p, _ in factorize(r).pairs:
            if p >= w:
                break
            assert g_compare(r // p, r) is Cmp.LESS


def test_published_exhibits_are_flagged_correctly():
    # the seven non-minimal exhibits still satisfy the witness inequality
    for r, p in EXHIBITED_NONMINIMAL.items():
        assert g_compare(r // p, r) is Cmp.GREATER, (r, p)
        assert witness_prime(r) < p
    # ... while the r = 48 exhibit does not
    for r, p in EXHIBITED_INVALID.items():
        assert g_compare(r // p, r) is Cmp.LESS, (r, p)


def test_scan_finds_exactly_R():
    report = scan_range(2, ROBIN_THRESHOLD)
    assert [n for n, _ in report.violations] == R_SET
    assert report.indeterminates == ()
    assert report.max_g[0] == 3  # G(3) = 14.177 dwarfs everything else


def test_scan_above_threshold_is_quiet():
    report = scan_range(5041, 5100)
    assert report.violations == ()
    assert report.indeterminates == ()


def test_scan_chunking_and_workers_agree():
    base = scan_range(2, 40000)
    chunked = scan_range(2, 40000, chunk=999)
    parallel = scan_range(2, 40000, workers=2)
    def rendered(report):
        return [(n, truncate3(g)) for n, g in report.violations]

    for other in (chunked, parallel):
        assert rendered(other) == rendered(base)
        assert other.max_g[0] == base.max_g[0]


def test_scan_argument_validation():
    with pytest.raises(ValueError):
        scan_range(1, 10)
    with pytest.raises(ValueError):
        scan_range(10, 5)


def test_bound_margin_positive_at_small_n():
    for n in (3, 4, 5, 7, 5040, 5041):
        margin = robin_bound_margin(n)
        assert margin.sign() == 1, n
    with pytest.raises(ValueError):
        robin_bound_margin(2)


def test_bound_value_at_five_truncates():
    # e^gamma + 0.6483/(loglog 5)^2 = 4.643..., the cap used for all n >= 5
    from gronwall.enclosure import BoundedReal
    from gronwall.gfun import e_gamma, log_log
    from gronwall.robin import BOUND_CONSTANT

    value = e_gamma(160).add(
        BoundedReal.from_exact(BOUND_CONSTANT, 160).div(log_log(5, 160).square())
    )
    assert truncate3(value) == "4.643"


def test_bound_margin_oracle():
    mpmath.mp.dps = 40
    margin = robin_bound_margin(5)
    ll5 = mpmath.log(mpmath.log(5))
    oracle = mpmath.exp(mpmath.euler) + mpmath.mpf("0.6483") / ll5**2 - mpmath.mpf(6) / 5 / ll5
    assert margin.lo_fraction() <= Fraction(str(oracle)) <= margin.hi_fraction()


def test_bound_margin_sweep_clean():
    report = bound_margin_sweep(3, 10**4)
    assert report.clean
    with pytest.raises(ValueError):
        bound_margin_sweep(2, 10)


def test_harmonic_exact_values():
    assert harmonic_exact(1) == 1
    assert harmonic_exact(2) == Fraction(3, 2)
    assert harmonic_exact(4) == Fraction(25, 12)
    assert harmonic_exact(10) == Fraction(7381, 2520)
    with pytest.raises(ValueError):
        harmonic_exact(10**4 + 1)


@pytest.mark.parametrize("n", [10, 10**4, 10**5, 10**7])
def test_harmonic_contains_oracle(n):
    mpmath.mp.dps = 40
    enc = harmonic(n)
    oracle = Fraction(str(mpmath.harmonic(n)))
    assert enc.lo_fraction() <= oracle <= enc.hi_fraction()
    # relative width stays well under the certification needs downstream
    assert enc.width_fraction() / enc.lo_fraction() < Fraction(1, 10**3)


def test_lagarias_examples():
    # H_2 + exp(H_2) log(H_2) = 3.317... > sigma(2) = 3
    assert lagarias_check(2, variant="strict") is Tri.TRUE
    assert lagarias_check(2, variant="doubled") is Tri.TRUE
    assert lagarias_check(5040, variant="strict") is Tri.TRUE
    with pytest.raises(ValueError):
        lagarias_check(1)
    with pytest.raises(ValueError):
        lagarias_check(10, variant="tripled")


def test_lagarias_rhs_oracle():
    mpmath.mp.dps = 30
    rhs = mpmath.mpf(1.5) + mpmath.exp(1.5) * mpmath.log(1.5)
    assert abs(rhs - mpmath.mpf("3.31716854")) < 1e-7


def test_lagarias_sweeps_clean():
    assert lagarias_sweep(2, 10**4, variant="strict").clean
    assert lagarias_sweep(2, 10**4, variant="doubled").clean


def test_prime_multiples_of_R_stay_below_threshold():
    # for every table row r and prime p >= 11: G(p*r) < e^gamma, via the
    # rendered G(11r) < 1.76 plus the prime-swap inequality; checked directly
    from gronwall.gfun import g_cmp_e_gamma, g_cmp_exact

    for r in R_SET:
        assert g_cmp_exact(11 * r, Fraction(176, 100)) is Cmp.LESS
        for p in (11, 13, 17, 19):
            assert g_cmp_e_gamma(p * r) is Cmp.LESS, (p, r)


def test_scan_low_precision_cap_reports_indeterminates():
    report = scan_range(2, 50, start=8, cap=8)
    assert report.indeterminates != ()
