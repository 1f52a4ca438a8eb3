"""4-rank and 8-rank of the class group of Q(sqrt(-p_1...p_t)).

Fields are restricted to p_1, ..., p_{t-1} = 1 mod 4 and p_t = 3 mod 4, so
the discriminant is -p_1...p_t. Elements of C[2] are represented by
divisors of p_1...p_{t-1} (a bitmask over the first t-1 primes).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import gcd, isqrt, prod
from typing import Iterator, Sequence

from .gf2 import BitMatrix, kernel_basis, rank
from .quadform import Classification, QuadForm, classify, predicted_nullities
from .symbols import hilbert_odd, is_prime, quartic_symbol, xi

DEFAULT_MAX_ABS_DELTA = 2**31


class FieldError(ValueError):
    """The prime list does not describe a field of the supported shape."""


class SolutionNotFound(RuntimeError):
    """No primitive solution of x^2 + |D| y^2 = 4 a z^2 inside the search bound."""


def max_abs_delta() -> int:
    raw = os.environ.get("REDEI8_MAX_DELTA")
    return int(raw) if raw else DEFAULT_MAX_ABS_DELTA


@dataclass(frozen=True)
class FieldSpec:
    primes: tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.primes)

    @property
    def delta(self) -> int:
        return -prod(self.primes)

    @property
    def split_primes(self) -> tuple[int, ...]:
        """p_1, ..., p_{t-1}: the primes that index divisors."""
        return self.primes[:-1]

    def divisor(self, mask: int) -> "Divisor":
        if mask < 0 or mask >> (self.t - 1):
            raise ValueError(f"mask {mask:#x} out of range for t = {self.t}")
        return Divisor(mask, prod(p for i, p in enumerate(self.split_primes) if (mask >> i) & 1))

    def divisor_primes(self, d: "Divisor") -> list[int]:
        return [p for i, p in enumerate(self.split_primes) if (d.mask >> i) & 1]

    def divisor_from_value(self, value: int) -> "Divisor":
        mask = 0
        rest = value
        for i, p in enumerate(self.split_primes):
            if rest % p == 0:
                mask |= 1 << i
                rest //= p
        if rest != 1 or value <= 0:
            raise ValueError(f"{value} is not a positive squarefree divisor of {prod(self.split_primes)}")
        return Divisor(mask, value)


@dataclass(frozen=True)
class Divisor:
    mask: int
    value: int

    def __add__(self, other: "Divisor") -> "Divisor":
        g = gcd(self.value, other.value)
        return Divisor(self.mask ^ other.mask, self.value * other.value // (g * g))


def validate_field(primes: Sequence[int], bound: int | None = None) -> FieldSpec:
    primes = tuple(int(p) for p in primes)
    if not primes:
        raise FieldError("need at least one prime")
    for p in primes:
        if p < 2 or not is_prime(p):
            raise FieldError(f"{p} is not prime")
    if len(set(primes)) != len(primes):
        raise FieldError(f"repeated prime in {list(primes)}")
    if 2 in primes:
        raise FieldError("2 is not allowed")
    threes = [i for i, p in enumerate(primes) if p % 4 == 3]
    if len(threes) != 1:
        raise FieldError(f"need exactly one prime = 3 mod 4, found {len(threes)}")
    if threes[0] != len(primes) - 1:
        raise FieldError(f"the prime = 3 mod 4 ({primes[threes[0]]}) must come last")
    bound = max_abs_delta() if bound is None else bound
    if prod(primes) > bound:
        raise FieldError(f"|discriminant| {prod(primes)} exceeds the bound {bound} (see REDEI8_MAX_DELTA)")
    return FieldSpec(primes)


def hilbert_character_matrix(f: FieldSpec) -> BitMatrix:
    """t x t matrix of xi((p_i, Delta)_{p_j}) over all t primes."""
    rows = []
    for pi in f.primes:
        r = 0
        for j, pj in enumerate(f.primes):
            r |= xi(hilbert_odd(pi, f.delta, pj)) << j
        rows.append(r)
    return BitMatrix(f.t, f.t, tuple(rows))


def redei_matrix(f: FieldSpec) -> BitMatrix:
    s = f.t - 1
    rows = []
    for pi in f.split_primes:
        r = 0
        for j, pj in enumerate(f.split_primes):
            r |= xi(hilbert_odd(pi, f.delta, pj)) << j
        rows.append(r)
    return BitMatrix(s, s, tuple(rows))


@dataclass(frozen=True)
class RedeiData:
    m4: BitMatrix
    r2: int
    r4: int
    v0_basis: tuple[Divisor, ...]


def four_rank(f: FieldSpec) -> RedeiData:
    m4 = redei_matrix(f)
    basis = tuple(f.divisor(v.bits) for v in kernel_basis(m4))
    return RedeiData(m4, f.t - 1, f.t - 1 - rank(m4), basis)


def v0_elements(f: FieldSpec, data: RedeiData | None = None) -> Iterator[tuple[int, Divisor]]:
    """Every element of V_0 as (coordinate mask over v0_basis, divisor)."""
    data = data or four_rank(f)
    basis = data.v0_basis
    for coords in range(1 << len(basis)):
        d = f.divisor(0)
        for i, b in enumerate(basis):
            if (coords >> i) & 1:
                d = d + b
        yield coords, d


def in_v0(f: FieldSpec, d: Divisor) -> bool:
    return all(hilbert_odd(d.value, f.delta, p) == 1 for p in f.split_primes)


def qb_quartic(f: FieldSpec, d: Divisor) -> int:
    """Q_B(D) = xi((Delta/D | D)_4)."""
    if d.value == 1:
        return 0
    if not in_v0(f, d):
        raise ValueError(f"divisor {d.value} is not in V_0 for {list(f.primes)}")
    return xi(quartic_symbol(f.delta // d.value, d.value, f.divisor_primes(d)))


def solution_bound(delta: int) -> int:
    return isqrt(-delta // 3) + 1


def iter_primitive_solutions(delta: int, a: int, zmax: int | None = None) -> Iterator[tuple[int, int, int]]:
    """Primitive (x, y, z), x > 0, y >= 0, z > 0, with x^2 + |Delta| y^2 = 4 a z^2, by ascending z then y."""
    n = -delta
    zmax = solution_bound(delta) if zmax is None else zmax
    for z in range(1, zmax + 1):
        four_az2 = 4 * a * z * z
        y = 0
        while n * y * y <= four_az2:
            r = four_az2 - n * y * y
            x = isqrt(r)
            if x > 0 and x * x == r and gcd(gcd(x, y), z) == 1:
                yield x, y, z
            y += 1


def find_primitive_solution(delta: int, a: int) -> tuple[int, int, int]:
    if delta >= 0 or a <= 0 or delta % a:
        raise ValueError(f"need delta < 0 and a positive divisor of |delta|, got {delta}, {a}")
    for sol in iter_primitive_solutions(delta, a):
        return sol
    raise SolutionNotFound(
        f"no primitive solution of x^2 + {-delta} y^2 = 4*{a}*z^2 with z <= {solution_bound(delta)}"
    )


def pairing(f: FieldSpec, z: int, d: Divisor) -> int:
    """xi(prod_{p | D} (z, Delta)_p): the genus character of D at an ideal of norm z."""
    s = 1
    for p in f.divisor_primes(d):
        s *= hilbert_odd(z, f.delta, p)
    return xi(s)


def b_entry(f: FieldSpec, d_row: Divisor, d_col: Divisor) -> int:
    _, _, z = find_primitive_solution(f.delta, d_row.value)
    return pairing(f, z, d_col)


@dataclass(frozen=True)
class EightRankReport:
    field: FieldSpec
    redei: RedeiData
    qb: QuadForm
    b_matrix: BitMatrix
    r8: int
    predicted: frozenset[int]
    rho: int
    log2_zero_bound: int
    classification: Classification
    solutions: tuple[tuple[int, int, int], ...] = ()

    @property
    def r2(self) -> int:
        return self.redei.r2

    @property
    def r4(self) -> int:
        return self.redei.r4


def b_matrix(f: FieldSpec, data: RedeiData) -> tuple[BitMatrix, tuple[tuple[int, int, int], ...]]:
    """The pairing matrix over v0_basis: row i uses a square root of basis divisor i."""
    basis = data.v0_basis
    sols = tuple(find_primitive_solution(f.delta, d.value) for d in basis)
    rows = []
    for (_, _, z) in sols:
        r = 0
        for j, dc in enumerate(basis):
            r |= pairing(f, z, dc) << j
        rows.append(r)
    return BitMatrix(len(basis), len(basis), tuple(rows)), sols


def quartic_form(f: FieldSpec, data: RedeiData | None = None) -> QuadForm:
    """Q_B on V_0 rebuilt from quartic symbols alone (no Diophantine solutions)."""
    data = data or four_rank(f)
    basis = data.v0_basis
    n = len(basis)
    vals = [qb_quartic(f, d) for d in basis]
    rows = []
    for i in range(n):
        r = vals[i] << i
        for j in range(i + 1, n):
            if qb_quartic(f, basis[i] + basis[j]) ^ vals[i] ^ vals[j]:
                r |= 1 << j
        rows.append(r)
    return QuadForm(n, tuple(rows))


def eight_rank_report(f: FieldSpec) -> EightRankReport:
    data = four_rank(f)
    bm, sols = b_matrix(f, data)
    qb = QuadForm.from_bilinear(bm)
    c = classify(qb)
    return EightRankReport(
        field=f,
        redei=data,
        qb=qb,
        b_matrix=bm,
        r8=data.r4 - rank(bm),
        predicted=frozenset(predicted_nullities(qb)),
        rho=c.rho,
        log2_zero_bound=c.zero_count.bit_length() - 1,
        classification=c,
        solutions=sols,
    )
