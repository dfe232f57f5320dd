"""Robin's inequality G(n) < e^gamma (n > 5040) and the Lagarias criterion.

Range scans never trust floating point: each block of sieved sigma values
is first reduced by an exact scaled-integer filter (sound because
e^gamma * loglog is increasing), and only the handful of survivors pay for
full certified comparisons. Violations and precision failures are always
reported separately.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .arith import (
    DEFAULT_SIEVE_BUDGET,
    Factorization,
    abundancy,
    divisor_sigma,
    factorize,
    sigma_sieve,
)
from .enclosure import (
    DEFAULT_PRECISION,
    DEFAULT_PRECISION_CAP,
    BoundedReal,
    Cmp,
    PrecisionExhausted,
    Tri,
    refine_until,
)
from .gfun import e_gamma, g_cmp_e_gamma, g_compare, g_value, log_log

ROBIN_THRESHOLD = 5040

# The unconditional refinement G(n) < e^gamma + c/(loglog n)^2 uses this
# exact decimal constant.
BOUND_CONSTANT = Fraction(6483, 10000)

HARMONIC_EXACT_LIMIT = 10**4

DEFAULT_CHUNK = 1 << 20

# Ranges below this are certified element by element; the block filter only
# pays off once loglog is comfortably positive.
_FILTER_FLOOR = 16


@dataclass(frozen=True)
class RobinRecord:
    """One row of the exceptions table: an r <= 5040 with G(r) >= e^gamma."""

    r: int
    factorization: Factorization
    sigma: int
    abundancy: Fraction
    g: BoundedReal
    is_sa: bool
    witness_prime: Optional[int]
    g_11r: BoundedReal


@dataclass(frozen=True)
class ScanReport:
    """Certified classification of a range against e^gamma."""

    lo: int
    hi: int
    violations: tuple[tuple[int, BoundedReal], ...]
    indeterminates: tuple[int, ...]
    max_g: tuple[int, BoundedReal]


@dataclass(frozen=True)
class SweepReport:
    """Outcome of a certified per-element sweep (bound margin, Lagarias)."""

    lo: int
    hi: int
    violations: tuple[int, ...]
    indeterminates: tuple[int, ...]

    @property
    def clean(self) -> bool:
        return not self.violations and not self.indeterminates


def _blocks(lo: int, hi: int, chunk: int):
    """Geometric blocks (span ~ start) capped at chunk, covering [lo, hi]."""
    a = lo
    while a <= hi:
        b = min(hi, a + min(chunk, max(a, 2)) - 1)
        yield a, b
        a = b + 1


def _filter_pair(threshold: Fraction, hi: int) -> tuple[int, int]:
    """(P, Q) with P/Q <= threshold, sized so sigma*Q and n*P fit in int64."""
    q = 1 << 20 if hi > 10**9 else 1 << 30
    return math.floor(threshold * q), q


def _e_gamma_loglog_lower(a: int, prec: int) -> Fraction:
    """Exact lower bound for e^gamma * loglog(a)."""
    return e_gamma(prec).mul(log_log(a, prec)).lo_fraction()


def _scan_block(args: tuple) -> tuple:
    """Classify one sieved block against e^gamma.

    Returns (block_lo, [(n, sigma) violations], [indeterminate n],
    (n, sigma) float-argmax candidate). Sound because sigma*Q >= n*P is
    necessary for sigma/n >= e^gamma*loglog(n) within the block.
    """
    a, b, start, cap, max_elements = args
    sig = sigma_sieve(a, b, max_elements=max_elements)
    ns = np.arange(a, b + 1, dtype=np.int64)
    p, q = _filter_pair(_e_gamma_loglog_lower(a, start), b)
    mask = sig * q >= ns * p
    violations: list[tuple[int, int]] = []
    indeterminates: list[int] = []
    for n, s in zip(ns[mask].tolist(), sig[mask].tolist()):
        verdict = g_cmp_e_gamma(n, start=start, cap=cap, sigma_n=s)
        if verdict is Cmp.GREATER:
            violations.append((n, s))
        elif verdict is Cmp.INDETERMINATE:
            indeterminates.append(n)
    g_float = (sig / ns) / np.log(np.log(ns))
    i = int(np.argmax(g_float))
    candidate = (int(ns[i]), int(sig[i]))
    return a, violations, indeterminates, candidate


def _certified_argmax(
    candidates: list[tuple[int, int]],
    lo: int,
    hi: int,
    chunk: int,
    start: int,
    cap: int,
    max_elements: int,
) -> tuple[int, BoundedReal, list[int]]:
    """Certified argmax of G over [lo, hi].

    Starts from float-suggested candidates, then proves global maximality
    with a threshold filter pass: every n either falls below a certified
    lower bound of G(champion) by exact arithmetic, or loses a certified
    pairwise comparison. A filter survivor that wins becomes the new
    champion and the pass restarts.
    """
    if hi == 2:
        return 2, g_value(2, start), []
    champion, champ_sigma = candidates[0]
    for n, s in candidates[1:]:
        if g_compare(n, champion, sigma_a=s, sigma_b=champ_sigma, start=start, cap=cap) is Cmp.GREATER:
            champion, champ_sigma = n, s
    indeterminates: set[int] = set()
    while True:
        switched = False
        g_champ = g_value(champion, start)
        threshold = g_champ.lo_fraction()
        if threshold <= 0:
            raise PrecisionExhausted(f"cannot bound G({champion}) away from zero")
        for a, b in _blocks(lo, hi, chunk):
            sig = sigma_sieve(a, b, max_elements=max_elements)
            ns = np.arange(a, b + 1, dtype=np.int64)
            # sigma/n < threshold*loglog(a) certifies G(n) < threshold <= G(champion)
            p, q = _filter_pair(threshold * log_log(a, start).lo_fraction(), b)
            mask = sig * q >= ns * p
            for n, s in zip(ns[mask].tolist(), sig[mask].tolist()):
                if n == champion:
                    continue
                verdict = g_compare(n, champion, sigma_a=s, sigma_b=champ_sigma, start=start, cap=cap)
                if verdict is Cmp.GREATER:
                    champion, champ_sigma = n, s
                    switched = True
                    break
                if verdict is Cmp.INDETERMINATE:
                    indeterminates.add(n)
            if switched:
                break
        if not switched:
            return champion, g_champ, sorted(indeterminates)


def scan_range(
    lo: int,
    hi: int,
    *,
    chunk: int = DEFAULT_CHUNK,
    workers: int = 1,
    start: int = DEFAULT_PRECISION,
    cap: int = DEFAULT_PRECISION_CAP,
    max_elements: int = DEFAULT_SIEVE_BUDGET,
) -> ScanReport:
    """Certified classification of every n in [lo, hi] against e^gamma.

    Reports the n with certified G(n) >= e^gamma, the n that could not be
    decided at the precision cap (never conflated with violations), and the
    certified argmax of G over the range.
    """
    if not 2 <= lo <= hi:
        raise ValueError(f"need 2 <= lo <= hi, got [{lo}, {hi}]")
    if chunk > max_elements:
        raise ValueError(f"chunk {chunk} exceeds the sieve budget {max_elements}")
    tasks = [(a, b, start, cap, max_elements) for a, b in _blocks(lo, hi, chunk)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_block, tasks))
    else:
        results = [_scan_block(t) for t in tasks]

    violations: list[tuple[int, int]] = []
    indeterminates: list[int] = []
    candidates: list[tuple[int, int]] = []
    for _, viols, indets, cand in results:
        violations.extend(viols)
        indeterminates.extend(indets)
        candidates.append(cand)
    if hi >= 3:
        candidates = [(n, s) for n, s in candidates if n >= 3] or candidates

    argmax_n, argmax_g, argmax_indet = _certified_argmax(
        candidates, lo, hi, chunk, start, cap, max_elements
    )
    indeterminates.extend(argmax_indet)
    return ScanReport(
        lo=lo,
        hi=hi,
        violations=tuple((n, g_value(n, start)) for n, _ in violations),
        indeterminates=tuple(sorted(set(indeterminates))),
        max_g=(argmax_n, argmax_g),
    )


def robin_check(
    n: int, *, start: int = DEFAULT_PRECISION, cap: int = DEFAULT_PRECISION_CAP
) -> Tri:
    """Certified Robin's inequality at a single n > 5040.

    TRUE means certified G(n) < e^gamma; FALSE would be a certified
    counterexample to the Riemann Hypothesis.
    """
    if n <= ROBIN_THRESHOLD:
        raise ValueError(f"robin_check applies to n > {ROBIN_THRESHOLD}; use robin_exceptions")
    verdict = g_cmp_e_gamma(n, start=start, cap=cap)
    if verdict is Cmp.LESS:
        return Tri.TRUE
    if verdict is Cmp.INDETERMINATE:
        return Tri.INDETERMINATE
    return Tri.FALSE


def witness_prime(
    r: int, *, start: int = DEFAULT_PRECISION, cap: int = DEFAULT_PRECISION_CAP
) -> Optional[int]:
    """Smallest prime p | r with certified G(r/p) > G(r), or None.

    Minimality is certified: every smaller prime factor must lose its
    comparison outright, so an undecidable comparison along the way raises
    rather than silently skewing the minimum.
    """
    if r < 2:
        raise ValueError(f"witness_prime needs r >= 2, got {r}")
    f = factorize(r)
    sigma_r = divisor_sigma(f)
    for p, _ in f.pairs:
        quotient = r // p
        if quotient < 2:
            continue  # G(1) undefined; cannot witness
        verdict = g_compare(
            quotient,
            r,
            sigma_a=divisor_sigma(f.divide_by(p)),
            sigma_b=sigma_r,
            start=start,
            cap=cap,
        )
        if verdict is Cmp.GREATER:
            return p
        if verdict is Cmp.INDETERMINATE:
            raise PrecisionExhausted(
                f"cannot certify G({r}/{p}) vs G({r}) at cap {cap}; minimality unknowable"
            )
    return None


def robin_exceptions(
    *,
    start: int = DEFAULT_PRECISION,
    cap: int = DEFAULT_PRECISION_CAP,
) -> list[RobinRecord]:
    """All r <= 5040 with certified G(r) >= e^gamma, as full table rows.

    The membership scan is certified in both directions: every excluded n
    has certified G(n) < e^gamma, every included r the reverse.
    """
    from .superabundant import sa_enumerate

    report = scan_range(2, ROBIN_THRESHOLD, start=start, cap=cap)
    if report.indeterminates:
        raise PrecisionExhausted(
            f"exceptions scan left undecided n: {report.indeterminates[:5]}"
        )
    sa_values = {entry.s for entry in sa_enumerate(ROBIN_THRESHOLD)}
    records = []
    for r, g_enclosure in report.violations:
        f = factorize(r)
        records.append(
            RobinRecord(
                r=r,
                factorization=f,
                sigma=divisor_sigma(f),
                abundancy=abundancy(f),
                g=g_enclosure,
                is_sa=r in sa_values,
                witness_prime=witness_prime(r, start=start, cap=cap),
                g_11r=g_value(11 * r, start),
            )
        )
    return records


# -- the unconditional bound ---------------------------------------------------


def robin_bound_margin(
    n: int, prec: int = DEFAULT_PRECISION, *, sigma_n: int | None = None
) -> BoundedReal:
    """Enclosure of [e^gamma + 0.6483/(loglog n)^2] - G(n) for n >= 3.

    The bound is a theorem, so a certified-negative margin would falsify
    this implementation, not the theorem.
    """
    if n < 3:
        raise ValueError(f"bound margin needs n >= 3 (loglog > 0), got {n}")
    s = sigma_n if sigma_n is not None else divisor_sigma(factorize(n))
    ll = log_log(n, prec)
    bound = e_gamma(prec).add(BoundedReal.from_exact(BOUND_CONSTANT, prec).div(ll.square()))
    g = BoundedReal.from_exact(Fraction(s, n), prec).div(ll)
    return bound.sub(g)


def _margin_positive(n: int, sigma_n: int, start: int, cap: int) -> Tri:
    def attempt(prec: int) -> Tri | None:
        sign = robin_bound_margin(n, prec, sigma_n=sigma_n).sign()
        if sign is None:
            return None
        return Tri.TRUE if sign > 0 else Tri.FALSE

    verdict = refine_until(attempt, start=start, cap=cap)
    return verdict if verdict is not None else Tri.INDETERMINATE


def bound_margin_sweep(
    lo: int,
    hi: int,
    *,
    start: int = DEFAULT_PRECISION,
    cap: int = DEFAULT_PRECISION_CAP,
    chunk: int = DEFAULT_CHUNK,
    max_elements: int = DEFAULT_SIEVE_BUDGET,
) -> SweepReport:
    """Certify the unconditional bound margin positive for every n in [lo, hi].

    Blocks from 16 up use the filter sigma/n < e^gamma*loglog(a) + c/loglog(a),
    which lower-bounds the per-n requirement because that expression is
    increasing in n once loglog(n)^2 > c/e^gamma (certified below for n >= 16).
    """
    if not 3 <= lo <= hi:
        raise ValueError(f"need 3 <= lo <= hi, got [{lo}, {hi}]")
    violations: list[int] = []
    indeterminates: list[int] = []

    def settle(n: int, s: int) -> None:
        verdict = _margin_positive(n, s, start, cap)
        if verdict is Tri.FALSE:
            violations.append(n)
        elif verdict is Tri.INDETERMINATE:
            indeterminates.append(n)

    head_hi = min(hi, _FILTER_FLOOR - 1)
    for n in range(lo, head_hi + 1):
        settle(n, divisor_sigma(factorize(n)))

    body_lo = max(lo, _FILTER_FLOOR)
    if body_lo <= hi:
        ll16 = log_log(_FILTER_FLOOR, start)
        if ll16.square().mul(e_gamma(start)).compare(BOUND_CONSTANT) is not Cmp.GREATER:
            raise PrecisionExhausted("monotonicity certificate failed at n = 16")
        for a, b in _blocks(body_lo, hi, chunk):
            ll = log_log(a, start)
            threshold = (
                e_gamma(start)
                .mul(ll)
                .add(BoundedReal.from_exact(BOUND_CONSTANT, start).div(ll))
                .lo_fraction()
            )
            p, q = _filter_pair(threshold, b)
            sig = sigma_sieve(a, b, max_elements=max_elements)
            ns = np.arange(a, b + 1, dtype=np.int64)
            mask = sig * q >= ns * p
            for n, s in zip(ns[mask].tolist(), sig[mask].tolist()):
                settle(n, s)
    return SweepReport(lo, hi, tuple(violations), tuple(indeterminates))


# -- harmonic numbers and the Lagarias criterion -------------------------------


def _harmonic_fraction(a: int, b: int) -> Fraction:
    # balanced splitting keeps intermediate numerators short
    if a == b:
        return Fraction(1, a)
    mid = (a + b) // 2
    return _harmonic_fraction(a, mid) + _harmonic_fraction(mid + 1, b)


@lru_cache(maxsize=16)
def harmonic_exact(n: int) -> Fraction:
    """H_n as an exact rational; capped at n <= 10^4 (the size blows up)."""
    if n < 1:
        raise ValueError(f"harmonic numbers start at n = 1, got {n}")
    if n > HARMONIC_EXACT_LIMIT:
        raise ValueError(f"exact harmonic mode is capped at n = {HARMONIC_EXACT_LIMIT}")
    return _harmonic_fraction(1, n)


_harmonic_base: dict[int, BoundedReal] = {}


def harmonic(n: int, prec: int = DEFAULT_PRECISION) -> BoundedReal:
    """Certified enclosure of H_n.

    Exact summation up to 10^4; beyond that, partial sum plus the integral
    bracket ln((n+1)/(k+1)) <= H_n - H_k <= ln(n/k). The bracket gives the
    enclosure an intrinsic width of about 1/k - 1/n that more precision
    cannot shrink.
    """
    if n < 1:
        raise ValueError(f"harmonic numbers start at n = 1, got {n}")
    if n <= HARMONIC_EXACT_LIMIT:
        return BoundedReal.from_exact(harmonic_exact(n), prec)
    base = _harmonic_base.get(prec)
    if base is None:
        base = _harmonic_base[prec] = BoundedReal.from_exact(
            harmonic_exact(HARMONIC_EXACT_LIMIT), prec
        )
    k = HARMONIC_EXACT_LIMIT
    tail_lo = BoundedReal.from_exact(Fraction(n + 1, k + 1), prec).log().lo
    tail_hi = BoundedReal.from_exact(Fraction(n, k), prec).log().hi
    return base.add(BoundedReal(tail_lo, tail_hi))


def _lagarias_rhs(h: BoundedReal, doubled: bool) -> BoundedReal:
    grow = h.exp().mul(h.log())
    if doubled:
        grow = grow.mul(2)
    return h.add(grow)


def lagarias_check(
    n: int,
    variant: str = "strict",
    *,
    start: int = DEFAULT_PRECISION,
    cap: int = DEFAULT_PRECISION_CAP,
    sigma_n: int | None = None,
) -> Tri:
    """Certified sigma(n) < H_n + exp(H_n) log(H_n), or the doubled variant.

    The strict form is equivalent to the Riemann Hypothesis; the doubled
    form is an unconditional theorem.
    """
    if n < 2:
        raise ValueError(f"lagarias_check needs n > 1, got {n}")
    if variant not in ("strict", "doubled"):
        raise ValueError(f"variant must be 'strict' or 'doubled', got {variant!r}")
    s = sigma_n if sigma_n is not None else divisor_sigma(factorize(n))
    doubled = variant == "doubled"

    def attempt(prec: int) -> Tri | None:
        rhs = _lagarias_rhs(harmonic(n, prec), doubled)
        c = rhs.compare(s)
        if c is Cmp.GREATER:
            return Tri.TRUE
        if c is Cmp.LESS:
            return Tri.FALSE
        return None

    verdict = refine_until(attempt, start=start, cap=cap)
    return verdict if verdict is not None else Tri.INDETERMINATE


def lagarias_sweep(
    lo: int,
    hi: int,
    variant: str = "strict",
    *,
    start: int = DEFAULT_PRECISION,
    cap: int = DEFAULT_PRECISION_CAP,
    chunk: int = DEFAULT_CHUNK,
    max_elements: int = DEFAULT_SIEVE_BUDGET,
) -> SweepReport:
    """Certify the chosen Lagarias inequality for every n in [lo, hi].

    Below 10^4 every n is checked against a running exact-capable enclosure;
    above, geometric blocks use the monotone right side at the block start
    as an exact filter, and survivors get the full escalating check.
    """
    if not 2 <= lo <= hi:
        raise ValueError(f"need 2 <= lo <= hi, got [{lo}, {hi}]")
    if variant not in ("strict", "doubled"):
        raise ValueError(f"variant must be 'strict' or 'doubled', got {variant!r}")
    doubled = variant == "doubled"
    violations: list[int] = []
    indeterminates: list[int] = []

    def settle(n: int, s: int) -> None:
        verdict = lagarias_check(n, variant, start=start, cap=cap, sigma_n=s)
        if verdict is Tri.FALSE:
            violations.append(n)
        elif verdict is Tri.INDETERMINATE:
            indeterminates.append(n)

    # dense region: per-n incremental enclosure of H_n, escalate only on doubt
    dense_hi = min(hi, HARMONIC_EXACT_LIMIT)
    if lo <= dense_hi:
        h = harmonic(lo - 1, start) if lo > 2 else BoundedReal.from_exact(1, start)
        sig = sigma_sieve(lo, dense_hi, max_elements=max_elements)
        for i, n in enumerate(range(lo, dense_hi + 1)):
            h = h.add(Fraction(1, n))
            s = int(sig[i])
            c = _lagarias_rhs(h, doubled).compare(s)
            if c is Cmp.GREATER:
                continue
            settle(n, s)

    body_lo = max(lo, HARMONIC_EXACT_LIMIT + 1)
    if body_lo <= hi:
        for a, b in _blocks(body_lo, hi, chunk):
            # right side is increasing in n, so its value at a filters the block
            rhs_floor = math.floor(_lagarias_rhs(harmonic(a, start), doubled).lo_fraction())
            sig = sigma_sieve(a, b, max_elements=max_elements)
            ns = np.arange(a, b + 1, dtype=np.int64)
            mask = sig >= rhs_floor
            for n, s in zip(ns[mask].tolist(), sig[mask].tolist()):
                settle(n, s)
    return SweepReport(lo, hi, tuple(violations), tuple(indeterminates))
