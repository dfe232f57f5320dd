"""Superabundant numbers: enumeration, structure checks, and finite proxies.

A superabundant (SA) number's abundancy sigma(s)/s strictly exceeds that of
every smaller positive integer. Enumeration tracks the running record with
exact cross-multiplied integer comparisons; floats only shortlist, never
decide. The structure checks implement the classical Alaoglu-Erdos (1944)
constraints on SA factorizations, which also shape the candidate generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .arith import (
    DEFAULT_SIEVE_BUDGET,
    Factorization,
    divisor_sigma,
    factorize,
    primes_up_to,
    sigma_sieve,
)
from .enclosure import (
    DEFAULT_PRECISION,
    DEFAULT_PRECISION_CAP,
    BoundedReal,
    PrecisionExhausted,
    refine_until,
)
from .gfun import g_value, log_log

_SA_CHUNK = 1 << 22


@dataclass(frozen=True)
class SAEntry:
    """A superabundant number with its exact and certified attributes."""

    s: int
    factorization: Factorization
    abundancy: Fraction
    g: Optional[BoundedReal]  # None for s = 1, where G is undefined


@dataclass(frozen=True)
class AlaogluErdosReport:
    """Verdicts of the three Alaoglu-Erdos structure constraints.

    exponents_nonincreasing: the factorization has the shape
        2^k2 * 3^k3 * ... * p^kp with k2 >= k3 >= ... >= kp
    (consecutive primes from 2 up, exponents non-increasing).
    exponent_ratio_violations: prime pairs (q, r), q < r, where
        |floor(kq * log q / log r) - kr| > 1.
    prime_power_violations: primes q with q^kq >= 2^(k2+2).
    """

    exponents_nonincreasing: bool
    exponent_ratio_violations: tuple[tuple[int, int], ...]
    prime_power_violations: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return (
            self.exponents_nonincreasing
            and not self.exponent_ratio_violations
            and not self.prime_power_violations
        )


@dataclass(frozen=True)
class StabilizationReport:
    """Finite-scale view of 'all large SA numbers are multiples of n0'."""

    n0: int
    last_nonmultiple: Optional[int]
    stable_from_index: int
    stabilized: bool


def sa_enumerate(
    limit: int,
    *,
    chunk: int = _SA_CHUNK,
    max_elements: int = DEFAULT_SIEVE_BUDGET,
    precision: int = DEFAULT_PRECISION,
) -> list[SAEntry]:
    """All superabundant numbers <= limit, in increasing order.

    One sieved pass keeps the running abundancy record. A float prefilter
    shortlists per-block candidates (anything within 1e-12 relative of the
    running float record; float error is ~1e-16, so no true record can be
    missed) and exact integer cross-multiplication makes every decision.
    """
    if limit < 1:
        raise ValueError(f"sa_enumerate needs limit >= 1, got {limit}")
    entries = [SAEntry(1, Factorization(()), Fraction(1), None)]
    best_num, best_den = 1, 1  # sigma(1)/1
    best_float = 1.0
    a = 2
    while a <= limit:
        b = min(limit, a + chunk - 1)
        sig = sigma_sieve(a, b, max_elements=max_elements)
        ns = np.arange(a, b + 1, dtype=np.int64)
        ratio = sig / ns
        running = np.maximum.accumulate(ratio)
        shortlist = (ratio >= running * (1.0 - 1e-12)) & (ratio > best_float * (1.0 - 1e-12))
        for n, s in zip(ns[shortlist].tolist(), sig[shortlist].tolist()):
            if s * best_den > best_num * n:  # exact: sigma(n)/n > record
                f = factorize(n)
                entries.append(SAEntry(n, f, Fraction(s, n), g_value(n, precision, f)))
                best_num, best_den = s, n
                best_float = s / n
        a = b + 1
    return entries


def check_alaoglu_erdos(
    f: Factorization,
    *,
    start: int = DEFAULT_PRECISION,
    cap: int = DEFAULT_PRECISION_CAP,
) -> AlaogluErdosReport:
    """Evaluate the three structure constraints on a factorization.

    The exponent-ratio floor is taken from a certified enclosure of
    kq*log(q)/log(r); the enclosure can always be separated from an integer
    because q^kq = r^m is impossible for distinct primes, so escalation
    terminates in practice. Hitting the cap raises rather than guessing.
    """
    if not f.pairs:
        raise ValueError("check_alaoglu_erdos needs a nonempty factorization")
    ps = f.primes()
    exps = [k for _, k in f.pairs]
    initial_segment = list(ps) == primes_up_to(ps[-1])
    nonincreasing = initial_segment and all(
        exps[i] >= exps[i + 1] for i in range(len(exps) - 1)
    )

    ratio_violations = []
    for i, (q, kq) in enumerate(f.pairs):
        for r, kr in f.pairs[i + 1 :]:

            def floor_of_ratio(prec: int) -> int | None:
                x = (
                    BoundedReal.from_exact(q, prec)
                    .log()
                    .mul(kq)
                    .div(BoundedReal.from_exact(r, prec).log())
                )
                flo = math.floor(x.lo_fraction())
                fhi = math.floor(x.hi_fraction())
                return flo if flo == fhi else None

            floor_val = refine_until(floor_of_ratio, start=start, cap=cap)
            if floor_val is None:
                raise PrecisionExhausted(
                    f"floor of {kq}*log({q})/log({r}) undecided at cap {cap}"
                )
            if abs(floor_val - kr) > 1:
                ratio_violations.append((q, r))

    k2 = f.exponent_of(2)
    power_violations = [q for q, kq in f.pairs if q**kq >= 2 ** (k2 + 2)]
    return AlaogluErdosReport(
        exponents_nonincreasing=nonincreasing,
        exponent_ratio_violations=tuple(ratio_violations),
        prime_power_violations=tuple(power_violations),
    )


def _primes_covering(bound: int) -> list[int]:
    """Consecutive primes 2, 3, 5, ... whose primorial first exceeds bound."""
    size = 64
    while True:
        ps = primes_up_to(size)
        primorial = 1
        cover = []
        for p in ps:
            cover.append(p)
            primorial *= p
            if primorial > bound:
                return cover
        size *= 4


def sa_candidates(
    bound: int,
    *,
    prime_budget: int | None = None,
    exponent_cap: int | None = None,
) -> list[Factorization]:
    """Every factorization of the Alaoglu-Erdos shape with value <= bound.

    Consecutive primes from 2, non-increasing exponents, depth-first with
    pruning on the partial product only (no abundancy pruning: that would
    risk unsound exclusion). Sorted by represented value; 1 is not emitted.
    """
    if bound < 2:
        raise ValueError(f"sa_candidates needs bound >= 2, got {bound}")
    primes = _primes_covering(bound)
    if prime_budget is not None:
        primes = primes[:prime_budget]
    max_exp = bound.bit_length()  # 2^k <= bound
    if exponent_cap is not None:
        max_exp = min(max_exp, exponent_cap)
    out: list[Factorization] = []

    def descend(idx: int, exp_ceiling: int, value: int, pairs: list[tuple[int, int]]) -> None:
        if idx == len(primes):
            return
        p = primes[idx]
        v = value
        for k in range(1, exp_ceiling + 1):
            v *= p
            if v > bound:
                break
            pairs.append((p, k))
            out.append(Factorization(tuple(pairs)))
            descend(idx + 1, k, v, pairs)
            pairs.pop()

    descend(0, max_exp, 1, [])
    out.sort(key=lambda f: f.value())
    return out


def sa_filter_records(
    candidates: Sequence[Factorization], *, precision: int = DEFAULT_PRECISION
) -> list[SAEntry]:
    """Strict abundancy record-holders within a value-sorted candidate list.

    Restricted to the full Alaoglu-Erdos candidate universe below a bound,
    this is exactly the SA numbers in (1, bound]: every SA number has the
    candidate shape (a theorem), the universe is complete by construction,
    and a record against all candidates is in particular a record against
    the SA subset, which dominates all other integers below the bound.
    """
    values = [f.value() for f in candidates]
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError("candidates must be strictly increasing by value")
    entries: list[SAEntry] = []
    best_num, best_den = 1, 1
    for f, v in zip(candidates, values):
        s = divisor_sigma(f)
        if s * best_den > best_num * v:
            entries.append(SAEntry(v, f, Fraction(s, v), g_value(v, precision, f)))
            best_num, best_den = s, v
    return entries


def divisibility_stabilization(n0: int, entries: Sequence[SAEntry]) -> StabilizationReport:
    """Where the listed SA numbers become (and stay) multiples of n0.

    Purely observational at finite scale: reports the largest listed value
    not divisible by n0 and whether any later entries exist to witness
    stabilization within the list.
    """
    if n0 < 2:
        raise ValueError(f"divisibility_stabilization needs n0 >= 2, got {n0}")
    if not entries:
        raise ValueError("empty SA list")
    last_nonmultiple = None
    stable_from = 0
    for i, entry in enumerate(entries):
        if entry.s % n0 != 0:
            last_nonmultiple = entry.s
            stable_from = i + 1
    return StabilizationReport(
        n0=n0,
        last_nonmultiple=last_nonmultiple,
        stable_from_index=stable_from,
        stabilized=stable_from < len(entries),
    )
