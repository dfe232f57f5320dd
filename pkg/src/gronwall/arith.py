"""Exact integer arithmetic: primality, factorization, divisor sums, sieves.

Everything in this module is exact; no floating point anywhere. Trial
division covers desk-scale inputs, with a deterministic Miller-Rabin test
and a Brent-cycle rho splitter (seeded from the input, so reproducible)
for the occasional larger cofactor.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

TRIAL_DIVISION_LIMIT = 10**6

# Deterministic below 3_317_044_064_679_887_385_961_981 (~3.3e24).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_BELOW = 3317044064679887385961981

# Gap wheel mod 30, starting from 7.
_WHEEL = (4, 2, 4, 2, 4, 6, 2, 6)

DEFAULT_SIEVE_BUDGET = 1 << 26  # elements per sigma_sieve call
SIEVE_VALUE_LIMIT = 10**12  # int64 overflow guard: sigma(n) < 2^63 needs headroom


class BudgetExceeded(Exception):
    """A sieving request is larger than the configured memory budget."""


def is_prime(n: int) -> bool:
    """Miller-Rabin primality test, deterministic for n < 3.3e24.

    Inputs beyond the deterministic range get 24 extra rounds with bases
    drawn from a generator seeded by n, keeping results reproducible.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = ((d & -d).bit_length()) - 1
    d >>= s

    def witness(a: int) -> bool:
        # True if a proves n composite.
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            return False
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                return False
        return True

    if any(witness(a) for a in _MR_BASES):
        return False
    if n < _MR_DETERMINISTIC_BELOW:
        return True
    rng = random.Random(n)
    return not any(witness(rng.randrange(2, n - 1)) for _ in range(24))


def primes_up_to(n: int) -> list[int]:
    """All primes <= n, via a numpy Eratosthenes sieve."""
    if n < 2:
        return []
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).tolist()


@dataclass(frozen=True)
class Factorization:
    """A validated prime factorization: ((p1, k1), (p2, k2), ...) with p1 < p2 < ...

    The empty tuple represents 1. Every constructor path checks the
    invariants, so a Factorization in hand is trustworthy.
    """

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        last = 1
        for p, k in self.pairs:
            if p <= last:
                raise ValueError(f"primes must be strictly increasing, got {p} after {last}")
            if k < 1:
                raise ValueError(f"exponent for {p} must be >= 1, got {k}")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            last = p

    def value(self) -> int:
        n = 1
        for p, k in self.pairs:
            n *= p**k
        return n

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)

    def exponent_of(self, p: int) -> int:
        for q, k in self.pairs:
            if q == p:
                return k
        return 0

    def divide_by(self, p: int) -> "Factorization":
        """The factorization of value()/p; p must divide the value."""
        out = []
        hit = False
        for q, k in self.pairs:
            if q == p:
                hit = True
                if k > 1:
                    out.append((q, k - 1))
            else:
                out.append((q, k))
        if not hit:
            raise ValueError(f"{p} does not divide {self}")
        return Factorization(tuple(out))

    def scale_by(self, other: "Factorization") -> "Factorization":
        """Factorization of the product of the two represented integers."""
        exps: dict[int, int] = dict(self.pairs)
        for p, k in other.pairs:
            exps[p] = exps.get(p, 0) + k
        return Factorization(tuple(sorted(exps.items())))

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __str__(self) -> str:
        if not self.pairs:
            return "1"
        return "*".join(f"{p}^{k}" if k > 1 else f"{p}" for p, k in self.pairs)


def _brent_rho(n: int, rng: random.Random) -> int:
    """A nontrivial factor of composite, odd, non-prime-power n."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _perfect_power_root(n: int) -> tuple[int, int] | None:
    """(b, e) with b**e == n and e >= 2, or None."""
    for e in range(2, n.bit_length() + 1):
        lo, hi = 2, 1 << (n.bit_length() // e + 1)
        while lo <= hi:
            mid = (lo + hi) // 2
            power = mid**e
            if power == n:
                return mid, e
            if power < n:
                lo = mid + 1
            else:
                hi = mid - 1
    return None


def _factor_into(n: int, exps: dict[int, int], mult: int, rng: random.Random) -> None:
    if n == 1:
        return
    if is_prime(n):
        exps[n] = exps.get(n, 0) + mult
        return
    root = _perfect_power_root(n)
    if root is not None:
        b, e = root
        _factor_into(b, exps, mult * e, rng)
        return
    d = _brent_rho(n, rng)
    _factor_into(d, exps, mult, rng)
    _factor_into(n // d, exps, mult, rng)


def factorize(n: int) -> Factorization:
    """Prime factorization of n >= 1 (n = 1 gives the empty factorization)."""
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    exps: dict[int, int] = {}
    rem = n
    for p in (2, 3, 5):
        while rem % p == 0:
            rem //= p
            exps[p] = exps.get(p, 0) + 1
    d, i = 7, 0
    while d * d <= rem and d <= TRIAL_DIVISION_LIMIT:
        while rem % d == 0:
            rem //= d
            exps[d] = exps.get(d, 0) + 1
        d += _WHEEL[i]
        i = (i + 1) & 7
    if rem > 1:
        if d * d > rem:
            exps[rem] = exps.get(rem, 0) + 1
        else:
            _factor_into(rem, exps, 1, random.Random(n))
    return Factorization(tuple(sorted(exps.items())))


def divisor_sigma(f: Factorization) -> int:
    """Sum of all divisors of the represented integer (exact)."""
    total = 1
    for p, k in f.pairs:
        total *= (p ** (k + 1) - 1) // (p - 1)
    return total


def abundancy(f: Factorization) -> Fraction:
    """sigma(n)/n in lowest terms."""
    return Fraction(divisor_sigma(f), f.value())


def sigma_sieve(lo: int, hi: int, *, max_elements: int = DEFAULT_SIEVE_BUDGET) -> np.ndarray:
    """Array of sigma values for lo..hi inclusive; entry i is sigma(lo + i).

    Windowed sieve over int64: extract every prime <= sqrt(hi) from each
    element, then whatever remains above 1 is a single large prime factor.
    """
    if not 1 <= lo <= hi:
        raise ValueError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    if hi > SIEVE_VALUE_LIMIT:
        raise BudgetExceeded(f"sigma_sieve supports hi <= {SIEVE_VALUE_LIMIT}, got {hi}")
    size = hi - lo + 1
    if size > max_elements:
        raise BudgetExceeded(f"window of {size} exceeds budget of {max_elements} elements")

    remaining = np.arange(lo, hi + 1, dtype=np.int64)
    sigma = np.ones(size, dtype=np.int64)
    for p in primes_up_to(math.isqrt(hi)):
        start = -(lo // -p) * p  # first multiple of p at or above lo
        idx = np.arange(start - lo, size, p, dtype=np.int64)
        if idx.size == 0:
            continue
        rem = remaining[idx]
        exp = np.ones(idx.size, dtype=np.int64)
        rem //= p
        divisible = rem % p == 0
        while divisible.any():
            rem[divisible] //= p
            exp[divisible] += 1
            divisible = rem % p == 0
        remaining[idx] = rem
        # sigma(p^e) = (p^(e+1) - 1)/(p - 1), computed in int64
        sigma[idx] *= (np.power(p, exp + 1) - 1) // (p - 1)
    large = remaining > 1
    sigma[large] *= remaining[large] + 1
    return sigma
