"""Arbitrary-precision integer utilities: roots, primality, factorization.

Factorization only has to cope with discriminants of defining polynomials
(tens of digits); Pollard rho is plenty at that scale.
"""

from __future__ import annotations

import math
from fractions import Fraction

isqrt = math.isqrt


def introot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 0:
        raise ValueError("introot requires n >= 0")
    if n == 0:
        return 0
    if k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    r = int(round(n ** (1.0 / k)))
    # float seed can be off by a few; fix up exactly
    while r > 0 and r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def is_perfect_power(n: int, k: int) -> bool:
    if n < 0:
        return k % 2 == 1 and is_perfect_power(-n, k)
    return introot(n, k) ** k == n


_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24 (fixed witness set)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
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


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite odd n."""
    if n % 2 == 0:
        return 2
    for c in range(1, 200):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"pollard rho failed on {n}")


def factorize(n: int) -> dict[int, int]:
    """Full prime factorization of |n| as {prime: exponent}; n must be nonzero."""
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        # try perfect powers first; rho struggles on them
        for k in (2, 3, 5, 7):
            r = introot(m, k)
            if r**k == m:
                stack.extend([r] * k)
                break
        else:
            d = _pollard_rho(m)
            stack.extend([d, m // d])
    return dict(sorted(out.items()))


def squarefree_part(n: int) -> int:
    """The squarefree kernel of n (sign preserved)."""
    sign = -1 if n < 0 else 1
    out = 1
    for p, e in factorize(n).items():
        if e % 2 == 1:
            out *= p
    return sign * out


def frac_floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def frac_round(q: Fraction) -> int:
    """Round half away from zero (deterministic, sign-symmetric)."""
    n, d = q.numerator, q.denominator
    if n >= 0:
        return (2 * n + d) // (2 * d)
    return -((-2 * n + d) // (2 * d))
