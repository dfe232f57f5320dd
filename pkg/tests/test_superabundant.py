"""Superabundant enumeration, the candidate universe, and structure checks."""

from fractions import Fraction

import pytest

from gronwall.arith import Factorization
from gronwall.enclosure import Cmp, truncate3
from gronwall.gfun import g_cmp_e_gamma
from gronwall.superabundant import (
    check_alaoglu_erdos,
    divisibility_stabilization,
    sa_candidates,
    sa_enumerate,
    sa_filter_records,
)

# OEIS A004394, all terms up to 5040
SA_TO_5040 = [1, 2, 4, 6, 12, 24, 36, 48, 60, 120, 180, 240, 360, 720,
              840, 1260, 1680, 2520, 5040]


def brute_superabundant(limit):
    """Record-holders of sigma(n)/n by direct divisor-sum sieve."""
    sig = [0] * (limit + 1)
    for d in range(1, limit + 1):
        for m in range(d, limit + 1, d):
            sig[m] += d
    out, best = [], Fraction(0)
    for n in range(1, limit + 1):
        r = Fraction(sig[n], n)
        if r > best:
            out.append(n)
            best = r
    return out


def test_enumerate_small():
    assert [e.s for e in sa_enumerate(1)] == [1]
    assert [e.s for e in sa_enumerate(5)] == [1, 2, 4]
    assert [e.s for e in sa_enumerate(5040)] == SA_TO_5040


def test_enumerate_matches_brute_force():
    assert [e.s for e in sa_enumerate(10**4)] == brute_superabundant(10**4)


def test_enumerate_rejects_bad_limit():
    with pytest.raises(ValueError):
        sa_enumerate(0)


def test_entry_attributes_exact():
    entries = {e.s: e for e in sa_enumerate(5040)}
    assert entries[1].g is None
    assert entries[1].abundancy == 1
    assert entries[5040].abundancy == Fraction(19344, 5040)
    assert str(entries[5040].factorization) == "2^4*3^2*5*7"
    assert truncate3(entries[5040].g) == "1.790"


def test_abundancy_strictly_increases():
    entries = sa_enumerate(10**5)
    for a, b in zip(entries, entries[1:]):
        assert b.abundancy > a.abundancy


def test_sa_intersect_exceptions():
    # which threshold violators are superabundant, per the published table
    sa = {e.s for e in sa_enumerate(5040)}
    flagged = {4, 6, 12, 24, 36, 48, 60, 120, 180, 240, 360, 720, 840, 2520, 5040}
    exceptions = {3, 4, 5, 6, 8, 9, 10, 12, 16, 18, 20, 24, 30, 36, 48, 60,
                  72, 84, 120, 180, 240, 360, 720, 840, 2520, 5040}
    assert exceptions & sa == flagged


def test_alaoglu_erdos_all_pass_on_sa():
    for entry in sa_enumerate(10**4):
        if entry.s == 1:
            continue
        report = check_alaoglu_erdos(entry.factorization)
        assert report.ok, entry.s


def test_alaoglu_erdos_shape_failures():
    # 18 = 2 * 3^2: exponents increase along the primes
    assert not check_alaoglu_erdos(Factorization(((2, 1), (3, 2)))).exponents_nonincreasing
    # 15 = 3 * 5: does not start at 2
    assert not check_alaoglu_erdos(Factorization(((3, 1), (5, 1)))).exponents_nonincreasing
    # 54 = 2 * 3^3: 3^3 = 27 >= 2^(1+2) = 8
    report = check_alaoglu_erdos(Factorization(((2, 1), (3, 3))))
    assert 3 in report.prime_power_violations
    # 3750 = 2 * 3 * 5^4: floor(k2 log2/log5) = 0 but k5 = 4
    report = check_alaoglu_erdos(Factorization(((2, 1), (3, 1), (5, 4))))
    assert (2, 5) in report.exponent_ratio_violations
    assert not report.ok


def test_alaoglu_erdos_rejects_empty():
    with pytest.raises(ValueError):
        check_alaoglu_erdos(Factorization(()))


def test_candidates_small():
    assert [f.value() for f in sa_candidates(2)] == [2]
    assert [f.value() for f in sa_candidates(10)] == [2, 4, 6, 8]
    values = [f.value() for f in sa_candidates(5040)]
    assert values == sorted(values)
    assert 5040 in values
    assert all(v <= 5040 for v in values)


def test_candidates_are_valid_shapes():
    for f in sa_candidates(500):
        ps = f.primes()
        exps = [k for _, k in f.pairs]
        assert ps[0] == 2
        assert exps == sorted(exps, reverse=True)


def test_candidates_reject_bad_bound():
    with pytest.raises(ValueError):
        sa_candidates(1)


def test_filter_records_equals_enumeration():
    # the candidate-restricted record filter recovers the SA list minus 1
    records = sa_filter_records(sa_candidates(5040))
    assert [e.s for e in records] == SA_TO_5040[1:]


def test_filter_records_needs_sorted_input():
    cands = sa_candidates(100)
    with pytest.raises(ValueError):
        sa_filter_records(list(reversed(cands)))


def test_stabilization_views():
    entries = sa_enumerate(5040)
    by2 = divisibility_stabilization(2, entries)
    assert by2.last_nonmultiple == 1
    assert by2.stable_from_index == 1
    assert by2.stabilized
    by9 = divisibility_stabilization(9, entries)
    assert by9.last_nonmultiple == 1680
    assert by9.stabilized  # 2520 and 5040 remain
    with pytest.raises(ValueError):
        divisibility_stabilization(1, entries)
    with pytest.raises(ValueError):
        divisibility_stabilization(2, [])


def test_sa_above_threshold_stay_below_e_gamma():
    # finite-scale corridor: no superabundant number in (5040, 10^6]
    # crosses the e^gamma line
    for entry in sa_enumerate(10**6):
        if entry.s > 5040:
            assert g_cmp_e_gamma(entry.s) is Cmp.LESS, entry.s
