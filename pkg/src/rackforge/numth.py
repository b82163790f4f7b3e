"""Exact number theory: primality, prime powers, Jacobi symbols, and
decompositions of a prime as p = (r^k - 1)/(r - 1) with r a prime power.
"""

from __future__ import annotations

__all__ = [
    "is_prime",
    "primes_below",
    "prime_power_decompose",
    "jacobi",
    "cyclotomic_decompositions",
    "cyclotomic_primes_below",
]

# Deterministic Miller-Rabin witness set for n < 2^64 (Sinclair's list).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_LIMIT = 2**64


def is_prime(n):
    """Deterministic primality test for n < 2^64; larger inputs are rejected."""
    if not isinstance(n, int):
        raise ValueError("is_prime expects an integer")
    if n >= _LIMIT:
        raise ValueError("is_prime supports n < 2^64 only")
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_below(limit):
    """All primes < limit by sieve."""
    if limit <= 2:
        return []
    sieve = bytearray([1]) * limit
    sieve[0] = sieve[1] = 0
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(limit) if sieve[i]]


def _integer_root(n, k):
    """Largest r with r^k <= n."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if k == 1 or n < 2:
        return n
    r = int(round(n ** (1.0 / k)))
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def prime_power_decompose(n):
    """Return (s, a) with n = s^a and s prime, or None if n is not a prime power.

    n must be at least 2. The decomposition is unique when it exists.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    for a in range(n.bit_length(), 0, -1):
        r = _integer_root(n, a)
        if r**a == n and is_prime(r):
            return (r, a)
    return None


def jacobi(ell, p):
    """Jacobi symbol (ell/p) for odd p >= 3; values in {-1, 0, 1}.

    For prime p this is the Legendre symbol, so for ell coprime to p it
    reports whether ell is a quadratic residue mod p.
    """
    if p < 3 or p % 2 == 0:
        raise ValueError("jacobi needs odd p >= 3")
    m = ell % p
    n = p
    result = 1
    while m:
        while m % 2 == 0:
            m //= 2
            if n % 8 in (3, 5):
                result = -result
        # reciprocity flip uses the pair about to be swapped, both odd here
        if m % 4 == 3 and n % 4 == 3:
            result = -result
        m, n = n % m, m
    return result if n == 1 else 0


def _geometric_sum(r, k):
    """1 + r + ... + r^(k-1)."""
    return (r**k - 1) // (r - 1)


def cyclotomic_decompositions(p):
    """All ways to write the prime p as (r^k - 1)/(r - 1) with r a prime power
    and k >= 2, as a list of (r, k) pairs sorted by r.

    k ranges over all integers 2..floor(log2(p+1)); r is found by monotone
    bisection since the geometric sum is strictly increasing in r. That k
    comes out prime whenever p is prime is a consequence, not an input
    restriction (a composite k = ab would make (r^a - 1)/(r - 1) > 1 a proper
    divisor of p).
    """
    if not is_prime(p):
        raise ValueError("cyclotomic_decompositions expects a prime")
    found = []
    k = 2
    while 2**k - 1 <= p:
        lo, hi = 2, p
        while lo <= hi:
            mid = (lo + hi) // 2
            val = _geometric_sum(mid, k)
            if val == p:
                if prime_power_decompose(mid) is not None:
                    found.append((mid, k))
                break
            if val < p:
                lo = mid + 1
            else:
                hi = mid - 1
        k += 1
    return sorted(found)


def cyclotomic_primes_below(limit):
    """Primes p < limit admitting at least one (r, k) decomposition."""
    return [p for p in primes_below(limit) if cyclotomic_decompositions(p)]
