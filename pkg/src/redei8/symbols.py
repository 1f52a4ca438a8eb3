"""Residue symbols used by the Redei pipeline.

Signs are plain ints (+1 / -1). ``jacobi`` returns 0 when its arguments
share a factor, the usual convention for the "not coprime" case.
"""

from __future__ import annotations

from math import prod
from typing import Sequence

# Deterministic for n < 3.3e24, which covers every 64-bit input.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class SymbolError(ValueError):
    """A residue symbol was asked for outside its domain of definition."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a | n) for odd n > 0; 0 if gcd(a, n) > 1."""
    if n <= 0 or n % 2 == 0:
        raise SymbolError(f"Jacobi symbol needs an odd positive modulus, got {n}")
    a %= n
    result = 1
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


def quartic_symbol(a: int, D: int, factors: Sequence[int]) -> int:
    """Rational quartic residue symbol (a | D)_4 = prod over p | D of a^((p-1)/4) mod p.

    ``factors`` must be the distinct primes of D, each 1 mod 4, and a must be
    a unit quadratic residue modulo each of them.
    """
    if len(set(factors)) != len(factors):
        raise SymbolError(f"repeated prime in {list(factors)}")
    if prod(factors) != D:
        raise SymbolError(f"factors {list(factors)} do not multiply to {D}")
    sign = 1
    for p in factors:
        if p % 4 != 1:
            raise SymbolError(f"quartic symbol needs p = 1 mod 4, got {p}")
        if a % p == 0:
            raise SymbolError(f"{a} is not prime to {p}")
        r = pow(a, (p - 1) // 4, p)
        if r == p - 1:
            sign = -sign
        elif r != 1:
            raise SymbolError(f"{a} is not a quadratic residue mod {p}")
    return sign


def _split(a: int, p: int) -> tuple[int, int]:
    k = 0
    while a % p == 0:
        a //= p
        k += 1
    return k, a


def hilbert_odd(a: int, b: int, p: int) -> int:
    """Hilbert symbol (a, b)_p at an odd prime p, by the unit/valuation formula."""
    if a == 0 or b == 0:
        raise SymbolError("Hilbert symbol of zero")
    if p == 2 or p < 2:
        raise SymbolError(f"only odd primes are supported, got {p}")
    alpha, ua = _split(a, p)
    beta, ub = _split(b, p)
    sign = -1 if ((p - 1) // 2) * alpha * beta % 2 else 1
    if beta % 2:
        sign *= jacobi(ua, p)
    if alpha % 2:
        sign *= jacobi(ub, p)
    return sign


def xi(s: int) -> int:
    """The isomorphism {+1, -1} -> F_2."""
    if s == 1:
        return 0
    if s == -1:
        return 1
    raise SymbolError(f"not a sign: {s}")
