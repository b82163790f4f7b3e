import random

import pytest
from hypothesis import given, strategies as st

from rackforge.numth import (
    cyclotomic_decompositions,
    cyclotomic_primes_below,
    is_prime,
    jacobi,
    prime_power_decompose,
    primes_below,
)


def legendre_by_counting(a, p):
    """Legendre symbol by brute force over the squares mod p."""
    a %= p
    if a == 0:
        return 0
    squares = {x * x % p for x in range(1, p)}
    return 1 if a in squares else -1


def test_is_prime_small_values():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29}
    for n in range(-3, 30):
        assert is_prime(n) == (n in primes)


def test_is_prime_rejects_carmichael_numbers():
    for n in (561, 1105, 1729, 2465, 2821, 6601):
        assert not is_prime(n)


def test_is_prime_agrees_with_trial_division():
    for n in range(2, 2000):
        by_trial = all(n % d for d in range(2, int(n**0.5) + 1))
        assert is_prime(n) == by_trial


def test_primes_below():
    assert primes_below(2) == []
    assert primes_below(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(primes_below(1000)) == 168


def test_prime_power_decompose():
    assert prime_power_decompose(8) == (2, 3)
    assert prime_power_decompose(7) == (7, 1)
    assert prime_power_decompose(81) == (3, 4)
    assert prime_power_decompose(12) is None
    assert prime_power_decompose(100) is None


def test_jacobi_matches_legendre_on_primes():
    # an independent oracle: count quadratic residues directly
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        for a in range(2 * p):
            assert jacobi(a, p) == legendre_by_counting(a, p), (a, p)


def test_jacobi_known_values():
    assert jacobi(1, 7) == 1
    assert jacobi(2, 7) == 1
    assert jacobi(3, 7) == -1
    assert jacobi(6, 7) == -1
    assert jacobi(7, 7) == 0
    assert jacobi(2, 15) == 1
    assert jacobi(1001, 9907) == -1


def test_jacobi_is_multiplicative_in_top_argument():
    rng = random.Random(11)
    for _ in range(1000):
        n = rng.randrange(3, 500, 2)
        a = rng.randrange(n)
        b = rng.randrange(n)
        assert jacobi(a * b, n) == jacobi(a, n) * jacobi(b, n)


def test_jacobi_is_periodic_in_top_argument():
    rng = random.Random(12)
    for _ in range(1000):
        n = rng.randrange(3, 500, 2)
        a = rng.randrange(n)
        assert jacobi(a, n) == jacobi(a + n, n)


def test_jacobi_rejects_even_modulus():
    with pytest.raises(ValueError):
        jacobi(3, 8)
    with pytest.raises(ValueError):
        jacobi(3, 1)


def test_cyclotomic_decompositions_golden():
    assert cyclotomic_decompositions(3) == [(2, 2)]
    assert cyclotomic_decompositions(5) == [(4, 2)]
    assert cyclotomic_decompositions(7) == [(2, 3)]
    assert cyclotomic_decompositions(13) == [(3, 3)]
    assert cyclotomic_decompositions(31) == [(2, 5), (5, 3)]
    assert cyclotomic_decompositions(11) == []
    assert cyclotomic_decompositions(23) == []


def test_cyclotomic_decompositions_verify_by_evaluation():
    for p in primes_below(2000):
        for r, k in cyclotomic_decompositions(p):
            assert k >= 2
            assert prime_power_decompose(r) is not None
            assert (r**k - 1) // (r - 1) == p


def test_cyclotomic_decompositions_exhaustive_against_search():
    # independent search: enumerate r and k directly instead of bisecting
    for p in primes_below(800):
        direct = []
        for k in range(2, p.bit_length() + 1):
            for r in range(2, p):
                total = sum(r**i for i in range(k))
                if total == p and prime_power_decompose(r) is not None:
                    direct.append((r, k))
                if total >= p:
                    break
        assert cyclotomic_decompositions(p) == sorted(direct)


def test_cyclotomic_primes_below_golden():
    want = [3, 5, 7, 13, 17, 31, 73, 127, 257, 307]
    assert cyclotomic_primes_below(400) == want
    assert cyclotomic_primes_below(1000) == want + [757]


def test_cyclotomic_rejects_composites():
    with pytest.raises(ValueError):
        cyclotomic_decompositions(15)


def test_prime_power_decompose_rejects_small_input():
    with pytest.raises(ValueError):
        prime_power_decompose(1)


@given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=1, max_value=500))
def test_jacobi_value_range(a, half):
    n = 2 * half + 1
    assert jacobi(a, n) in (-1, 0, 1)
