"""Class groups of negative discriminants from reduced binary quadratic forms.

This is the ground truth the Redei computations are checked against: forms
(a, b, c) with b^2 - 4ac = Delta, Gauss composition, and the 2-power ranks
read off from the images of repeated squaring.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

from . import kernels
from .symbols import jacobi

GENUS_WINDOW = 20
GENUS_WINDOW_CAP = 320


@dataclass(frozen=True, order=True)
class BQForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def reduced(self) -> "BQForm":
        a, b, c = self.a, self.b, self.c
        if a <= 0 or self.discriminant >= 0:
            raise ValueError(f"{self} is not positive definite")
        while True:
            if not -a < b <= a:
                r = (a - b) // (2 * a)
                b, c = b + 2 * r * a, a * r * r + b * r + c
            if a > c or (a == c and b < 0):
                a, b, c = c, -b, a
                continue
            return BQForm(a, b, c)

    def inverse(self) -> "BQForm":
        return BQForm(self.a, -self.b, self.c).reduced()

    def represents(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y


def _check_delta(delta: int) -> None:
    if delta >= 0 or delta % 4 != 1:
        raise ValueError(f"discriminant must be negative and 1 mod 4, got {delta}")


def identity_form(delta: int) -> BQForm:
    _check_delta(delta)
    return BQForm(1, 1, (1 - delta) // 4)


def reduced_forms(delta: int) -> list[BQForm]:
    _check_delta(delta)
    return sorted(BQForm(*abc) for abc in kernels.reduced_forms(delta))


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def compose(f: BQForm, g: BQForm, delta: int) -> BQForm:
    """Reduced representative of the product class (Dirichlet composition)."""
    a1, b1, _ = f.a, f.b, f.c
    a2, b2, _ = g.a, g.b, g.c
    e = (b1 + b2) // 2
    g1, u1, v1 = _xgcd(a1, a2)
    h, u2, w = _xgcd(g1, e)
    # u*a1 + v*a2 + w*e = h
    u, v = u2 * u1, u2 * v1
    a3 = a1 * a2 // (h * h)
    big_b = (u * a1 * b2 + v * a2 * b1 + w * (b1 * b2 + delta) // 2) // h
    b3 = big_b % (2 * a3)
    c3 = (b3 * b3 - delta) // (4 * a3)
    return BQForm(a3, b3, c3).reduced()


class ClassGroupTable:
    """The class group of discriminant Delta as indexed reduced forms."""

    def __init__(self, delta: int):
        _check_delta(delta)
        self.delta = delta
        self.forms = reduced_forms(delta)
        self.index = {f: i for i, f in enumerate(self.forms)}
        self.identity = self.index[identity_form(delta)]

    @property
    def h(self) -> int:
        return len(self.forms)

    def mul(self, i: int, j: int) -> int:
        return self.index[compose(self.forms[i], self.forms[j], self.delta)]

    @cached_property
    def square_map(self) -> list[int]:
        return [self.mul(i, i) for i in range(self.h)]

    @cached_property
    def compose_table(self) -> list[list[int]]:
        """Full h x h multiplication table (quadratic in h; build only when needed)."""
        return [[self.mul(i, j) for j in range(self.h)] for i in range(self.h)]

    def inverse(self, i: int) -> int:
        return self.index[self.forms[i].inverse()]

    def power(self, i: int, k: int) -> int:
        acc, base = self.identity, i
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def order(self, i: int) -> int:
        k, acc = 1, i
        while acc != self.identity:
            acc = self.mul(acc, i)
            k += 1
        return k


def two_power_ranks(table: ClassGroupTable) -> tuple[int, ...]:
    """(r_2, r_4, r_8, ...) up to and including the first zero.

    r_{2^k} = log2(#S_{k-1} / #S_k) with S_j the image of x -> x^(2^j).
    """
    sq = table.square_map
    current = set(range(table.h))
    ranks = []
    while True:
        nxt = {sq[i] for i in current}
        ratio, rem = divmod(len(current), len(nxt))
        if rem or ratio & (ratio - 1):
            raise AssertionError(f"squaring image ratio {len(current)}/{len(nxt)} is not a power of 2")
        r = ratio.bit_length() - 1
        ranks.append(r)
        if r == 0:
            return tuple(ranks)
        current = nxt


def rank_at(ranks: tuple[int, ...], k: int) -> int:
    """r_{2^k} from a two_power_ranks tuple (zero past its end)."""
    return ranks[k - 1] if k - 1 < len(ranks) else 0


def two_part_invariants(ranks: tuple[int, ...]) -> list[int]:
    """Orders of the cyclic factors of the 2-Sylow subgroup, ascending."""
    out = []
    for k in range(1, len(ranks) + 1):
        exact = rank_at(ranks, k) - rank_at(ranks, k + 1)
        out.extend([2**k] * exact)
    return out


def _coprime_value(form: BQForm, delta: int) -> int:
    window = GENUS_WINDOW
    while window <= GENUS_WINDOW_CAP:
        best = None
        for x in range(-window, window + 1):
            for y in range(0, window + 1):
                if x == 0 and y == 0:
                    continue
                m = form.represents(x, y)
                if gcd(m, delta) == 1 and (best is None or m < best):
                    best = m
        if best is not None:
            return best
        window *= 2
    raise RuntimeError(f"no value of {form} prime to {delta} with |x|, |y| <= {GENUS_WINDOW_CAP}")


def genus_character(form: BQForm, d, delta: int) -> int:
    """Genus character chi_D at the class of ``form``; D is a positive divisor of |Delta| or a Divisor."""
    return jacobi(_coprime_value(form, delta), getattr(d, "value", d))
