"""Small integer helpers shared across modules."""

from math import gcd, isqrt


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_between(lo, hi):
    """Primes p with lo <= p <= hi, ascending."""
    return [p for p in range(max(lo, 2), hi + 1) if is_prime(p)]


def prime_factors(n):
    """Distinct prime factors of n > 0, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def euler_phi(n):
    result = n
    for r in prime_factors(n):
        result -= result // r
    return result


def units_mod(m):
    return [a for a in range(1, m) if gcd(a, m) == 1]
