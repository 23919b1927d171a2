"""Integer and multiplicative-function primitives.

Everything here is exact integer arithmetic: prime sieving, Kronecker
symbols, the Moebius function, divisor enumeration.  All results are
plain Python ints (no wraparound) and all functions are pure.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ResourceError, ValidationError

# Sieve memory budget: one byte per candidate.
SIEVE_LIMIT_MAX = 200_000_000


@dataclass(frozen=True)
class PrimeTable:
    """All primes <= limit, ascending."""

    limit: int
    primes: tuple

    def __len__(self):
        return len(self.primes)


@dataclass(frozen=True)
class Factorization:
    """n = prod p^a with primes strictly increasing and a >= 1."""

    n: int
    factors: tuple  # of (prime, exponent)


def sieve_primes(limit):
    """Sieve of Eratosthenes up to and including `limit`."""
    if limit < 2:
        raise ValidationError("sieve limit must be >= 2, got %r" % (limit,))
    if limit > SIEVE_LIMIT_MAX:
        raise ResourceError(
            "sieve limit %d exceeds the memory budget (max %d)"
            % (limit, SIEVE_LIMIT_MAX))
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p::p] = False
    return PrimeTable(limit, tuple(int(p) for p in np.nonzero(mask)[0]))


def kronecker(a, n):
    """Kronecker symbol (a/n) for n >= 1.

    Completely multiplicative in n, with the (a/2) convention 0, +1, -1
    for a = 0, +-1, +-3 mod 8.  Negative n is not supported.
    """
    if n < 1:
        raise ValidationError("kronecker requires n >= 1, got n=%r" % (n,))
    result = 1
    # Split off the even part of n via (a/2) per factor of 2.
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        e = 0
        while n % 2 == 0:
            n //= 2
            e += 1
        if e % 2 == 1 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n) for odd n by quadratic reciprocity.
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def factorize(n):
    """Trial-division factorization; fine for the desk-scale n used here."""
    if n < 1:
        raise ValidationError("factorize requires n >= 1, got %r" % (n,))
    m = n
    factors = []
    for p in (2, 3):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
    p = 5
    step = 2  # alternate 5,7,11,13,... (skip multiples of 2 and 3)
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        p += step
        step = 6 - step
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def mu_and_squarefree(n):
    """(mu(n), is n squarefree).  mu(n) = 0 exactly when n is not squarefree."""
    fac = factorize(n)
    for _, e in fac.factors:
        if e >= 2:
            return 0, False
    return (-1) ** len(fac.factors), True


def sigma(n):
    """Sum of divisors."""
    total = 1
    for p, e in factorize(n).factors:
        total *= (p ** (e + 1) - 1) // (p - 1)
    return total


def sigma_gcd(m, n):
    """sigma(gcd(m, n))."""
    if m < 1 or n < 1:
        raise ValidationError("sigma_gcd requires m, n >= 1")
    return sigma(math.gcd(m, n))


def divisors(n):
    """Ascending list of the divisors of n."""
    divs = [1]
    for p, e in factorize(n).factors:
        pk = 1
        block = list(divs)
        for _ in range(e):
            pk *= p
            divs.extend(d * pk for d in block)
    divs.sort()
    return divs


def squarefree_sieve(lo, hi):
    """Boolean array marking squarefree integers in [lo, hi)."""
    if lo < 1 or hi <= lo:
        raise ValidationError("need 1 <= lo < hi")
    mask = np.ones(hi - lo, dtype=bool)
    for p in range(2, math.isqrt(hi - 1) + 1):
        sq = p * p
        start = ((lo + sq - 1) // sq) * sq
        if start < hi:
            mask[start - lo::sq] = False
    return mask
