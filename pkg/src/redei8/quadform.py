"""Quadratic forms on F_2^n.

A form is stored by its upper-triangular coefficient rows: bit j of
``upper[i]`` (j >= i) is the coefficient of x_i x_j, so
Q(x) = sum_{i <= j} U_ij x_i x_j.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from . import kernels
from .gf2 import BitMatrix, BitVector, kernel_basis, parity, rank, span

MAX_BRUTEFORCE_DIM = 8
MAX_ENUM_DIM = 4


@dataclass(frozen=True)
class QuadForm:
    n: int
    upper: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("dimension must be nonnegative")
        upper = tuple(self.upper) if self.upper else (0,) * self.n
        if len(upper) != self.n:
            raise ValueError(f"expected {self.n} coefficient rows, got {len(upper)}")
        for i, r in enumerate(upper):
            if r < 0 or r >> self.n or r & ((1 << i) - 1):
                raise ValueError(f"row {i} ({r:#x}) is not upper triangular in dimension {self.n}")
        object.__setattr__(self, "upper", upper)

    @classmethod
    def from_lists(cls, coeffs: Sequence[Sequence[int]]) -> "QuadForm":
        """Build from an n x n 0/1 array; entries below the diagonal must be 0."""
        m = BitMatrix.from_lists(coeffs) if coeffs else BitMatrix(0, 0)
        if m.rows != m.cols:
            raise ValueError("coefficient matrix must be square")
        return cls(m.rows, m.data)

    @classmethod
    def from_bilinear(cls, b: BitMatrix) -> "QuadForm":
        """The form x -> x^T B x."""
        if b.rows != b.cols:
            raise ValueError("bilinear form must be square")
        n = b.rows
        bt = b.transpose().data
        rows = []
        for i in range(n):
            above = ~((1 << (i + 1)) - 1)
            rows.append(((b.data[i] ^ bt[i]) & above) | (b.data[i] & (1 << i)))
        return cls(n, tuple(rows))

    @classmethod
    def zero(cls, n: int) -> "QuadForm":
        return cls(n)

    def __call__(self, x: int | BitVector) -> int:
        return evaluate(self, x)

    def diagonal(self) -> int:
        return sum(((r >> i) & 1) << i for i, r in enumerate(self.upper))

    def to_lists(self) -> list[list[int]]:
        return BitMatrix(self.n, self.n, self.upper).to_lists()

    def __add__(self, other: "QuadForm") -> "QuadForm":
        return direct_sum(self, other)


I = QuadForm(1, (1,))
X = QuadForm(2, (0b10, 0))
Y = QuadForm(2, (0b11, 0b10))


def O(n: int) -> QuadForm:  # noqa: E743 - matches the usual name of the zero form
    return QuadForm.zero(n)


def evaluate(q: QuadForm, x: int | BitVector) -> int:
    if isinstance(x, BitVector):
        if x.n != q.n:
            raise ValueError(f"dimension mismatch: form has {q.n}, vector has {x.n}")
        x = x.bits
    elif x < 0 or x >> q.n:
        raise ValueError(f"vector {x:#x} out of range for dimension {q.n}")
    val = 0
    for i, r in enumerate(q.upper):
        if (x >> i) & 1:
            val ^= parity(r & x)
    return val


def _polar_rows(q: QuadForm) -> list[int]:
    rows = [0] * q.n
    for i, r in enumerate(q.upper):
        r &= ~(1 << i)
        rows[i] |= r
        j = 0
        while r:
            if r & 1:
                rows[j] |= 1 << i
            r >>= 1
            j += 1
    return rows


def polar_form(q: QuadForm) -> BitMatrix:
    """Alternating matrix of (x, y) -> Q(x + y) + Q(x) + Q(y)."""
    return BitMatrix(q.n, q.n, tuple(_polar_rows(q)))


def polar(q: QuadForm, x: int, y: int) -> int:
    return evaluate(q, x ^ y) ^ evaluate(q, x) ^ evaluate(q, y)


def radical(q: QuadForm) -> list[BitVector]:
    return kernel_basis(polar_form(q))


def direct_sum(q1: QuadForm, q2: QuadForm) -> QuadForm:
    shift = q1.n
    return QuadForm(q1.n + q2.n, q1.upper + tuple(r << shift for r in q2.upper))


def direct_sum_all(forms: Sequence[QuadForm]) -> QuadForm:
    out = QuadForm(0)
    for f in forms:
        out = direct_sum(out, f)
    return out


def compose_linear(q: QuadForm, u: BitMatrix) -> QuadForm:
    """The form x -> Q(U x); U is n x m, the result lives on F_2^m."""
    if u.rows != q.n:
        raise ValueError(f"change of basis has {u.rows} rows, form has dimension {q.n}")
    cols = u.transpose().data
    m = u.cols
    rows = []
    for i in range(m):
        r = evaluate(q, cols[i]) << i
        for j in range(i + 1, m):
            if polar(q, cols[i], cols[j]):
                r |= 1 << j
        rows.append(r)
    return QuadForm(m, tuple(rows))


class FormType(str, enum.Enum):
    TYPE1 = "Type1"
    TYPE2_1 = "Type2.1"
    TYPE2_2 = "Type2.2"


@dataclass(frozen=True)
class Classification:
    n: int
    rank: int
    defect: int
    k: int
    form_type: FormType
    arf: int | None
    rho: int
    zero_count: int

    def expected_zero_count(self) -> int:
        """#Q^-1(0) from the closed formula for this type and isotropy index."""
        half = 1 << self.n  # work in units of 1/2 so n = 0 stays integral
        if self.form_type is FormType.TYPE1:
            twice = half
        elif self.form_type is FormType.TYPE2_1:
            twice = half + (1 << self.rho)
        else:
            twice = half - (1 << (self.rho + 1))
        return twice // 2


def classify(q: QuadForm) -> Classification:
    """Rank, defect, type (by zero-count vote), Arf invariant and isotropy index."""
    n = q.n
    zero_count, rad_dim, defect = kernels.form_stats(q.upper, n)
    rk = (n - rad_dim) + defect
    k = (rk - defect) // 2
    twice = 2 * zero_count
    if twice == 1 << n:
        form_type, arf, rho = FormType.TYPE1, None, k + (n - rk)
    elif twice > 1 << n:
        form_type, arf, rho = FormType.TYPE2_1, 0, k + (n - rk)
    else:
        form_type, arf, rho = FormType.TYPE2_2, 1, k - 1 + (n - rk)
    return Classification(n, rk, defect, k, form_type, arf, rho, zero_count)


def is_hyperbolic_plane(q: QuadForm, c: Classification | None = None) -> bool:
    """True when Q is isomorphic to X (x1 x2 on F_2^2)."""
    if q.n != 2:
        return False
    c = c or classify(q)
    return c.rank == 2 and c.form_type is FormType.TYPE2_1


def zero_count_bruteforce(q: QuadForm) -> int:
    return sum(1 for x in range(1 << q.n) if not evaluate(q, x))


def isotropy_index_bruteforce(q: QuadForm) -> int:
    """Largest dimension of a subspace on which Q vanishes, by exhaustive search.

    Subspaces are grown one vector at a time with basis vectors taken in
    increasing order, which reaches every subspace (take each new vector to
    be the smallest element outside the current span).
    """
    n = q.n
    if n > MAX_BRUTEFORCE_DIM:
        raise ValueError(f"brute-force isotropy search is limited to n <= {MAX_BRUTEFORCE_DIM}")
    zeros = {x for x in range(1 << n) if not evaluate(q, x)}
    best = 0

    def grow(sub: set[int], dim: int, last: int, compat: list[int]) -> None:
        nonlocal best
        if dim > best:
            best = dim
        if best == n:
            return
        # any isotropic W containing sub lies inside sub + compat
        bound = (len(sub) + len(compat)).bit_length() - 1
        if bound <= best:
            return
        for v in compat:
            if v <= last:
                continue
            new_sub = sub | {v ^ s for s in sub}
            new_compat = [w for w in compat if w not in new_sub and all((w ^ s) in zeros for s in new_sub)]
            grow(new_sub, dim + 1, v, new_compat)
            if best == n:
                return

    grow({0}, 0, 0, sorted(zeros - {0}))
    return best


def nullity_set(rho: int, r: int, is_x: bool = False) -> set[int]:
    """Admissible nullities {a : 0 <= a <= rho}, with the parity and X restrictions."""
    if rho < 0 or r < 0:
        raise ValueError("rho and r must be nonnegative")
    if rho > r:
        raise ValueError(f"isotropy index {rho} exceeds dimension {r}")
    if is_x:
        if (rho, r) != (1, 2):
            raise ValueError("the X exception needs rho = 1, r = 2")
        return {1}
    if rho == r:
        return {a for a in range(rho + 1) if a % 2 == r % 2}
    return set(range(rho + 1))


def predicted_nullities(q: QuadForm) -> set[int]:
    c = classify(q)
    return nullity_set(c.rho, q.n, is_hyperbolic_plane(q, c))


def enumerate_bilinear_nullities(q: QuadForm, allow_n5: bool = False) -> set[int]:
    """{n - rank(B) : B an n x n matrix with x^T B x = Q(x)}, by visiting all 2^(n^2) matrices."""
    n = q.n
    limit = 5 if allow_n5 else MAX_ENUM_DIM
    if n > limit:
        raise ValueError(f"bilinear enumeration is limited to n <= {limit} (n = 5 needs allow_n5)")
    if n == 0:
        return {0}
    mask = kernels.bilinear_nullity_mask(q.diagonal(), _polar_rows(q), n)
    return {a for a in range(n + 1) if (mask >> a) & 1}


def induces(b: BitMatrix, q: QuadForm) -> bool:
    return QuadForm.from_bilinear(b) == q


def bilinear_nullity(b: BitMatrix) -> int:
    return b.cols - rank(b)


def canonical_form(n: int, rk: int, form_type: FormType) -> QuadForm:
    """X^k + I + O (Type1), X^k + O (Type2.1) or X^(k-1) + Y + O (Type2.2) in paired coordinates.

    Coordinates are ordered x_1..x_k, x_{k+1}..x_{2k}, then the I coordinate
    (Type1), then the zero block.
    """
    rows = [0] * n
    if form_type is FormType.TYPE1:
        k = (rk - 1) // 2
        rows[2 * k] |= 1 << (2 * k)
    else:
        k = rk // 2
    for i in range(k):
        rows[i] |= 1 << (k + i)
    if form_type is FormType.TYPE2_2:
        rows[k - 1] |= 1 << (k - 1)
        rows[2 * k - 1] |= 1 << (2 * k - 1)
    return QuadForm(n, tuple(rows))


def canonical_basis(q: QuadForm) -> tuple[BitMatrix, QuadForm]:
    """Invertible U (columns = new basis) with Q(U x) equal to the canonical form of Q's class.

    Symplectic reduction of the polar form into hyperbolic pairs, then each
    pair is normalised to X or Y, pairs of Y's are traded for X + X, and a Y
    next to an anisotropic radical vector becomes an X.
    """
    n = q.n

    def b(x: int, y: int) -> int:
        return polar(q, x, y)

    rest = [1 << i for i in range(n)]
    pairs: list[tuple[int, int]] = []
    while True:
        hit = next(((i, j) for i in range(len(rest)) for j in range(i + 1, len(rest))
                    if b(rest[i], rest[j])), None)
        if hit is None:
            break
        i, j = hit
        u, v = rest[i], rest[j]
        others = [w for idx, w in enumerate(rest) if idx not in (i, j)]
        rest = [w ^ (u if b(w, v) else 0) ^ (v if b(w, u) else 0) for w in others]
        pairs.append((u, v))
    rad = rest

    def normalise(u: int, v: int) -> tuple[int, int, bool]:
        for cand, other in ((u, v), (v, u), (u ^ v, v)):
            if not evaluate(q, cand):
                if evaluate(q, other):
                    other ^= cand
                return cand, other, True
        return u, v, False

    xs: list[tuple[int, int]] = []
    ys: list[tuple[int, int]] = []
    for u, v in pairs:
        u, v, is_x = normalise(u, v)
        (xs if is_x else ys).append((u, v))

    # split the radical into one anisotropic vector (if any) and zeros
    aniso = next((r for r in rad if evaluate(q, r)), None)
    rad_zero = [r ^ aniso if (aniso is not None and evaluate(q, r)) else r for r in rad if r != aniso]

    if aniso is not None:
        for u, v in ys:
            u ^= aniso
            u, v, is_x = normalise(u, v)
            assert is_x
            xs.append((u, v))
        ys = []
    while len(ys) >= 2:
        (u1, v1), (u2, v2) = ys.pop(), ys.pop()
        u = u1 ^ u2
        v = v1
        if evaluate(q, v):
            v ^= u
        w1, w2 = u2, v2
        w1 ^= (u if b(w1, v) else 0) ^ (v if b(w1, u) else 0)
        w2 ^= (u if b(w2, v) else 0) ^ (v if b(w2, u) else 0)
        xs.append((u, v))
        a1, a2, is_x = normalise(w1, w2)
        assert is_x
        xs.append((a1, a2))

    ordered = xs + ys
    k = len(ordered)
    cols = [u for u, _ in ordered] + [v for _, v in ordered]
    if aniso is not None:
        cols.append(aniso)
        form_type = FormType.TYPE1
        rk = 2 * k + 1
    else:
        form_type = FormType.TYPE2_2 if ys else FormType.TYPE2_1
        rk = 2 * k
    cols += rad_zero
    u_mat = BitMatrix(n, n, tuple(cols)).transpose() if n else BitMatrix(0, 0)
    return u_mat, canonical_form(n, rk, form_type)
