"""Prime tables, the von Mangoldt function and the two model prime sums."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .testfns import TestFunctionPair, abs_moment


class EmptyDomainError(ValueError):
    """Raised when a sieve is requested below the first prime."""


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    primes: np.ndarray

    def __len__(self) -> int:
        return len(self.primes)

    def upto(self, x: float) -> np.ndarray:
        """Primes p <= x."""
        return self.primes[: np.searchsorted(self.primes, x, side="right")]


def sieve_primes(limit: int) -> PrimeTable:
    """Odd-only sieve of Eratosthenes, one byte per odd number."""
    limit = int(limit)
    if limit < 2:
        raise EmptyDomainError(f"no primes up to {limit}")
    # index i stands for 2i + 1
    size = (limit - 1) // 2 + 1
    odd = np.ones(size, dtype=bool)
    odd[0] = False
    for i in range(1, (math.isqrt(limit) - 1) // 2 + 1):
        if odd[i]:
            p = 2 * i + 1
            odd[p * p // 2 :: p] = False
    primes = np.concatenate(([2], 2 * np.flatnonzero(odd) + 1)).astype(np.int64)
    primes.setflags(write=False)
    return PrimeTable(limit=limit, primes=primes)


@lru_cache(maxsize=8)
def _cached_table(limit: int) -> PrimeTable:
    return sieve_primes(limit)


def primes_upto(x: float) -> np.ndarray:
    """Primes p <= x, served from a shared cached table."""
    n = int(math.floor(x))
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    # round the table size up so nearby requests share one sieve
    size = 1 << max(10, (n - 1).bit_length())
    return _cached_table(size).upto(n)


def von_mangoldt(m: int) -> float:
    """log p when m = p^nu, otherwise 0."""
    m = int(m)
    if m < 1:
        raise ValueError("von_mangoldt requires m >= 1")
    if m == 1:
        return 0.0
    p = _smallest_factor(m)
    while m % p == 0:
        m //= p
    return math.log(p) if m == 1 else 0.0


def _smallest_factor(m: int) -> int:
    if m % 2 == 0:
        return 2
    for d in range(3, math.isqrt(m) + 1, 2):
        if m % d == 0:
            return d
    return m


@dataclass(frozen=True)
class PrimeSum:
    """A prime sum together with the cutoff implied by supp(ghat)."""

    value: float
    limit: int
    cutoff: float
    truncated: bool

    def __float__(self) -> float:
        return self.value


def _prime_sum(F: TestFunctionPair, a: int, R: float, limit: int | None, power: int) -> PrimeSum:
    if R <= 1:
        raise ValueError("R must exceed 1")
    if a < 1:
        raise ValueError("a must be a positive integer")
    log_r = math.log(R)
    cutoff = R ** (F.support / a)
    if limit is None:
        limit = math.ceil(cutoff)
    p = primes_upto(limit).astype(float)
    u = np.log(p) / log_r
    terms = np.asarray(F.ghat(a * u), dtype=float) * u**power / p
    scale = 1.0 if power == 1 else 4.0
    return PrimeSum(
        value=float(scale * terms.sum()),
        limit=int(limit),
        cutoff=cutoff,
        truncated=limit < cutoff,
    )


def prime_sum_linear(F: TestFunctionPair, a: int, R: float, limit: int | None = None) -> PrimeSum:
    """sum_p ghat(a log p / log R) (log p / log R) / p; tends to g(0) / (2a)."""
    return _prime_sum(F, a, R, limit, power=1)


def prime_sum_quadratic(F: TestFunctionPair, R: float, limit: int | None = None) -> PrimeSum:
    """sum_p ghat(log p / log R) 4 (log p / log R)^2 / p; tends to 2 int |u| ghat(u) du."""
    return _prime_sum(F, 1, R, limit, power=2)


def linear_target(F: TestFunctionPair, a: int) -> float:
    return F.g0 / (2 * a)


def quadratic_target(F: TestFunctionPair) -> float:
    return 2.0 * abs_moment(F)
