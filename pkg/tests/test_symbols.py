import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import hilbert_by_solvability, is_prime_trial, legendre_euler
from redei8.symbols import SymbolError, hilbert_odd, is_prime, jacobi, quartic_symbol, xi

SMALL_PRIMES = [p for p in range(3, 200) if is_prime_trial(p)]


def test_is_prime_examples():
    assert is_prime(2)
    assert not is_prime(1)
    assert not is_prime(4895)


def test_is_prime_matches_trial_division():
    assert [n for n in range(1, 5000) if is_prime(n)] == [n for n in range(1, 5000) if is_prime_trial(n)]


@pytest.mark.parametrize(
    "n, expected",
    [
        (2**61 - 1, True),
        (2**64 - 59, True),
        (2**64 - 1, False),
        (3825123056546413051, False),  # strong pseudoprime to bases 2..23
        (3215031751, False),  # strong pseudoprime to bases 2, 3, 5, 7
        (4 * 10**18 + 9, False),
    ],
)
def test_is_prime_64_bit(n, expected):
    assert is_prime(n) is expected


def test_jacobi_examples():
    assert jacobi(1, 15) == 1
    assert jacobi(2, 15) == 1
    assert jacobi(-3, 5) == -1
    assert jacobi(3, 15) == 0


def test_jacobi_rejects_even_modulus():
    with pytest.raises(SymbolError):
        jacobi(3, 8)


def test_euler_criterion():
    for p in SMALL_PRIMES:
        for a in range(1, p):
            assert jacobi(a, p) == legendre_euler(a, p)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), st.integers(0, 5000))
def test_jacobi_multiplicative(a, b, k):
    n = 2 * k + 1
    assert jacobi(a * b, n) == jacobi(a, n) * jacobi(b, n)


def test_reciprocity_for_primes_one_mod_four():
    ps = [p for p in SMALL_PRIMES if p % 4 == 1]
    for p in ps:
        for q in ps:
            if p != q:
                assert jacobi(p, q) == jacobi(q, p)


def test_quartic_examples():
    assert quartic_symbol(1, 65, [5, 13]) == 1
    assert quartic_symbol(4, 5, [5]) == -1
    assert quartic_symbol(-3, 13, [13]) == -1


@pytest.mark.parametrize(
    "a, d, factors",
    [
        (2, 5, [5]),  # non-residue
        (3, 7, [7]),  # 7 = 3 mod 4
        (5, 5, [5]),  # not coprime
        (1, 65, [5, 5]),  # repeated factor
        (1, 65, [5, 17]),  # wrong product
    ],
)
def test_quartic_precondition_errors(a, d, factors):
    with pytest.raises(SymbolError):
        quartic_symbol(a, d, factors)


def test_quartic_of_square_is_legendre():
    for p in SMALL_PRIMES:
        if p % 4 != 1:
            continue
        for a in range(1, p):
            assert quartic_symbol(a * a, p, [p]) == jacobi(a, p)


def test_quartic_of_fourth_power_is_one():
    rng = random.Random(2)
    ps = [p for p in SMALL_PRIMES if p % 4 == 1]
    for _ in range(200):
        fs = rng.sample(ps, rng.randint(1, 3))
        d = 1
        for p in fs:
            d *= p
        a = rng.randint(1, 10**6)
        if all(a % p for p in fs):
            assert quartic_symbol(a**4, d, fs) == 1


def test_quartic_multiplicative():
    rng = random.Random(3)
    ps = [p for p in SMALL_PRIMES if p % 4 == 1]
    checked = 0
    while checked < 300:
        fs = rng.sample(ps, rng.randint(1, 2))
        d = fs[0] * (fs[1] if len(fs) > 1 else 1)
        a, b = rng.randint(-500, 500), rng.randint(-500, 500)
        if not all(a % p and b % p and jacobi(a, p) == 1 and jacobi(b, p) == 1 for p in fs):
            continue
        assert quartic_symbol(a * b, d, fs) == quartic_symbol(a, d, fs) * quartic_symbol(b, d, fs)
        checked += 1


def test_hilbert_examples():
    assert hilbert_odd(5, 3, 7) == 1
    assert hilbert_odd(7, 7, 7) == -1
    assert hilbert_odd(5, -15, 5) == -1


def test_hilbert_errors():
    with pytest.raises(SymbolError):
        hilbert_odd(0, 3, 5)
    with pytest.raises(SymbolError):
        hilbert_odd(3, 5, 2)


def test_hilbert_symmetric_and_bimultiplicative():
    rng = random.Random(4)
    for _ in range(2000):
        p = rng.choice(SMALL_PRIMES[:15])
        a, b, c = (rng.choice([-1, 1]) * rng.randint(1, 400) for _ in range(3))
        assert hilbert_odd(a, b, p) == hilbert_odd(b, a, p)
        assert hilbert_odd(a * c, b, p) == hilbert_odd(a, b, p) * hilbert_odd(c, b, p)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_hilbert_against_solvability_sample(p):
    for a in range(-12, 13):
        for b in range(-12, 13):
            if a and b and a % (p * p) and b % (p * p):
                assert hilbert_odd(a, b, p) == hilbert_by_solvability(a, b, p), (a, b, p)


def test_xi():
    assert xi(1) == 0
    assert xi(-1) == 1
    for s in (1, -1):
        for t in (1, -1):
            assert xi(s * t) == xi(s) ^ xi(t)
    with pytest.raises(SymbolError):
        xi(0)
