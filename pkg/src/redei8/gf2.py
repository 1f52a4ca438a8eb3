"""Dense linear algebra over F_2 on int bitsets.

Rows and vectors are Python ints; bit ``j`` holds coordinate ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels


@dataclass(frozen=True)
class BitVector:
    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("dimension must be nonnegative")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bits {self.bits:#x} do not fit in dimension {self.n}")

    @classmethod
    def from_list(cls, entries: Sequence[int]) -> "BitVector":
        bits = 0
        for j, e in enumerate(entries):
            if e & 1:
                bits |= 1 << j
        return cls(len(entries), bits)

    @classmethod
    def unit(cls, n: int, j: int) -> "BitVector":
        return cls(n, 1 << j)

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.n:
            raise IndexError(f"coordinate {j} out of range for dimension {self.n}")
        return (self.bits >> j) & 1

    def __len__(self) -> int:
        return self.n

    def __add__(self, other: "BitVector") -> "BitVector":
        _check_same(self.n, other.n)
        return BitVector(self.n, self.bits ^ other.bits)

    def dot(self, other: "BitVector") -> int:
        _check_same(self.n, other.n)
        return parity(self.bits & other.bits)

    def to_list(self) -> list[int]:
        return [(self.bits >> j) & 1 for j in range(self.n)]

    def is_zero(self) -> bool:
        return self.bits == 0


@dataclass(frozen=True)
class BitMatrix:
    """``rows`` x ``cols`` matrix stored as a tuple of row bitmasks."""

    rows: int
    cols: int
    data: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("dimensions must be nonnegative")
        data = tuple(self.data) if self.data else (0,) * self.rows
        if len(data) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(data)}")
        for r in data:
            if r < 0 or r >> self.cols:
                raise ValueError(f"row {r:#x} does not fit in {self.cols} columns")
        object.__setattr__(self, "data", data)

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], cols: int | None = None) -> "BitMatrix":
        if cols is None:
            cols = len(entries[0]) if entries else 0
        data = []
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged matrix")
            data.append(BitVector.from_list(row).bits)
        return cls(len(entries), cols, tuple(data))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "BitMatrix":
        return cls(rows, rows if cols is None else cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry {ij} out of range for {self.rows}x{self.cols}")
        return (self.data[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.data]

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.data[i])

    def transpose(self) -> "BitMatrix":
        out = [0] * self.cols
        for i, r in enumerate(self.data):
            j = 0
            while r:
                if r & 1:
                    out[j] |= 1 << i
                r >>= 1
                j += 1
        return BitMatrix(self.cols, self.rows, tuple(out))

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return BitMatrix(self.rows, self.cols, tuple(a ^ b for a, b in zip(self.data, other.data)))

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for r in self.data:
            acc = 0
            k = 0
            while r:
                if r & 1:
                    acc ^= other.data[k]
                r >>= 1
                k += 1
            out.append(acc)
        return BitMatrix(self.rows, other.cols, tuple(out))

    def diagonal(self) -> int:
        """Diagonal as a bitmask (square matrices only)."""
        if self.rows != self.cols:
            raise ValueError("diagonal of a non-square matrix")
        return sum(((r >> i) & 1) << i for i, r in enumerate(self.data))


def parity(x: int) -> int:
    return bin(x).count("1") & 1


def _check_same(a: int, b: int) -> None:
    if a != b:
        raise ValueError(f"dimension mismatch: {a} != {b}")


def rank(m: BitMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.cols <= 64:
        return kernels.rank_rows(m.data, m.cols)
    return kernels.python_backend.rank_rows(m.data, m.cols)


def nullity(m: BitMatrix) -> int:
    return m.cols - rank(m)


def rref(m: BitMatrix) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    work = [r for r in m.data if r]
    pivots: list[int] = []
    top = 0
    for col in range(m.cols):
        bit = 1 << col
        pivot = next((i for i in range(top, len(work)) if work[i] & bit), None)
        if pivot is None:
            continue
        work[top], work[pivot] = work[pivot], work[top]
        for i in range(len(work)):
            if i != top and work[i] & bit:
                work[i] ^= work[top]
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return work[:top], pivots


def kernel_basis(m: BitMatrix) -> list[BitVector]:
    """Basis of {v : M v = 0}, one vector per pivot-free column, in column order.

    The vector for free column f has a 1 at f, zeros at the other free
    columns, and whatever the reduced rows force at the pivot columns.
    """
    rows, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        bits = 1 << f
        for r, p in zip(rows, pivots):
            if (r >> f) & 1:
                bits |= 1 << p
        basis.append(BitVector(m.cols, bits))
    return basis


def matvec(m: BitMatrix, v: BitVector) -> BitVector:
    _check_same(m.cols, v.n)
    out = 0
    for i, r in enumerate(m.data):
        if parity(r & v.bits):
            out |= 1 << i
    return BitVector(m.rows, out)


def is_symmetric(m: BitMatrix) -> bool:
    return m.rows == m.cols and m.transpose().data == m.data


def is_alternating(m: BitMatrix) -> bool:
    return is_symmetric(m) and m.diagonal() == 0


def span(vectors: Iterable[int]) -> set[int]:
    """All F_2-combinations of the given bitmasks."""
    out = {0}
    for v in vectors:
        if v not in out:
            out |= {v ^ s for s in out}
    return out


def is_independent(vectors: Sequence[BitVector]) -> bool:
    if not vectors:
        return True
    m = BitMatrix(len(vectors), vectors[0].n, tuple(v.bits for v in vectors))
    return rank(m) == len(vectors)
