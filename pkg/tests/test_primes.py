import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lowlying.primes import (
    EmptyDomainError,
    linear_target,
    prime_sum_linear,
    prime_sum_quadratic,
    primes_upto,
    quadratic_target,
    sieve_primes,
    von_mangoldt,
)
from lowlying.testfns import fejer_pair, zero_pair


def _is_prime(n):
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def test_small_sieve():
    assert sieve_primes(30).primes.tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert sieve_primes(2).primes.tolist() == [2]


def test_sieve_rejects_empty_domain():
    with pytest.raises(EmptyDomainError):
        sieve_primes(1)


def test_prime_counts():
    assert len(primes_upto(10**4)) == 1229
    assert len(primes_upto(10**6)) == 78498
    assert len(primes_upto(1.5)) == 0


@given(st.integers(min_value=2, max_value=5000))
def test_sieve_membership(n):
    assert (n in set(primes_upto(n).tolist())) == _is_prime(n)


@given(st.integers(min_value=1, max_value=10**5))
def test_von_mangoldt_sum_is_log(n):
    # sum over d | n of Lambda(d) = log n
    divisors = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    divisors += [n // d for d in divisors if d * d != n]
    assert math.isclose(sum(von_mangoldt(d) for d in divisors), math.log(n), abs_tol=1e-9)


def test_von_mangoldt_values():
    assert von_mangoldt(1) == 0.0
    assert von_mangoldt(8) == pytest.approx(math.log(2))
    assert von_mangoldt(12) == 0.0
    with pytest.raises(ValueError):
        von_mangoldt(0)


def test_zero_test_function_gives_zero():
    Z = zero_pair(0.5)
    assert float(prime_sum_linear(Z, 1, 1e4)) == 0.0
    assert float(prime_sum_quadratic(Z, 1e4)) == 0.0


def test_targets():
    F = fejer_pair(0.5)
    assert linear_target(F, 1) == pytest.approx(0.25)
    assert linear_target(F, 2) == pytest.approx(0.125)
    # 2 int |u| (1 - 2|u|)_+ du = 1/6
    assert quadratic_target(F) == pytest.approx(1 / 6)


def test_prime_sum_cutoff_and_truncation():
    F = fejer_pair(0.5)
    full = prime_sum_linear(F, 1, 1e6)
    assert full.cutoff == pytest.approx(1e3)
    assert not full.truncated
    cut = prime_sum_linear(F, 1, 1e6, limit=100)
    assert cut.truncated and cut.value < full.value


@pytest.mark.parametrize("R", [1e3, 1e4, 1e5, 1e6])
def test_residuals_within_envelope(R):
    F = fejer_pair(0.5)
    bound = 2 / math.log(R)
    assert abs(float(prime_sum_linear(F, 1, R)) - linear_target(F, 1)) <= bound
    assert abs(float(prime_sum_quadratic(F, R)) - quadratic_target(F)) <= bound


def test_linear_sum_frozen_value():
    # computed independently by a plain loop over primes, then frozen
    F = fejer_pair(0.5)
    ps = np.array([p for p in range(2, 1001) if _is_prime(p)], dtype=float)
    u = np.log(ps) / math.log(1e6)
    direct = float(np.sum(np.maximum(0, 1 - 2 * u) * u / ps))
    assert float(prime_sum_linear(F, 1, 1e6)) == pytest.approx(direct, rel=1e-12)
    assert direct == pytest.approx(0.1795585252369687, rel=1e-12)


@settings(max_examples=20, deadline=None)
@given(st.floats(min_value=0.05, max_value=0.95), st.floats(min_value=10.0, max_value=1e5))
def test_prime_sums_nonnegative_for_fejer(sigma, R):
    F = fejer_pair(sigma)
    assert float(prime_sum_linear(F, 1, R)) >= 0
    assert float(prime_sum_quadratic(F, R)) >= 0
