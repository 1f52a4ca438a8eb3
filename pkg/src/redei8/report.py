"""Per-field reports, the JSON-lines record format, and range scans."""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import isqrt
from typing import Iterator

from .bqf import ClassGroupTable, rank_at, two_part_invariants, two_power_ranks
from .redei import FieldSpec, eight_rank_report

# Keys are written in exactly this order.
RECORD_KEYS = (
    "primes", "delta", "r2", "r4", "r8", "rho", "predicted",
    "qb_diagonal", "b_matrix", "oracle", "consistent",
)
ORACLE_KEYS = ("h", "r2", "r4", "r8", "elementary_divisor_2part")


@dataclass(frozen=True)
class OracleRecord:
    h: int
    r2: int
    r4: int
    r8: int
    elementary_divisor_2part: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "h": self.h,
            "r2": self.r2,
            "r4": self.r4,
            "r8": self.r8,
            "elementary_divisor_2part": list(self.elementary_divisor_2part),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "OracleRecord":
        return cls(d["h"], d["r2"], d["r4"], d["r8"], tuple(d["elementary_divisor_2part"]))


@dataclass(frozen=True)
class FieldReport:
    primes: tuple[int, ...]
    delta: int
    r2: int
    r4: int
    r8: int
    rho: int
    predicted: tuple[int, ...]
    qb_diagonal: tuple[int, ...]
    b_matrix: tuple[tuple[int, ...], ...]
    oracle: OracleRecord | None
    consistent: bool

    def to_dict(self) -> dict:
        return {
            "primes": list(self.primes),
            "delta": self.delta,
            "r2": self.r2,
            "r4": self.r4,
            "r8": self.r8,
            "rho": self.rho,
            "predicted": list(self.predicted),
            "qb_diagonal": list(self.qb_diagonal),
            "b_matrix": [list(r) for r in self.b_matrix],
            "oracle": None if self.oracle is None else self.oracle.to_dict(),
            "consistent": self.consistent,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "FieldReport":
        if tuple(d) != RECORD_KEYS:
            raise ValueError(f"unexpected keys {list(d)}")
        return cls(
            primes=tuple(d["primes"]),
            delta=d["delta"],
            r2=d["r2"],
            r4=d["r4"],
            r8=d["r8"],
            rho=d["rho"],
            predicted=tuple(d["predicted"]),
            qb_diagonal=tuple(d["qb_diagonal"]),
            b_matrix=tuple(tuple(r) for r in d["b_matrix"]),
            oracle=None if d["oracle"] is None else OracleRecord.from_dict(d["oracle"]),
            consistent=d["consistent"],
        )

    @classmethod
    def from_json(cls, line: str) -> "FieldReport":
        return cls.from_dict(json.loads(line))


def oracle_record(delta: int) -> OracleRecord:
    table = ClassGroupTable(delta)
    ranks = two_power_ranks(table)
    return OracleRecord(
        h=table.h,
        r2=rank_at(ranks, 1),
        r4=rank_at(ranks, 2),
        r8=rank_at(ranks, 3),
        elementary_divisor_2part=tuple(two_part_invariants(ranks)),
    )


def field_report(f: FieldSpec, with_oracle: bool = False) -> FieldReport:
    rep = eight_rank_report(f)
    oracle = oracle_record(f.delta) if with_oracle else None
    consistent = rep.r8 in rep.predicted
    if oracle is not None:
        consistent = consistent and (oracle.r2, oracle.r4, oracle.r8) == (rep.r2, rep.r4, rep.r8)
    n = rep.qb.n
    return FieldReport(
        primes=f.primes,
        delta=f.delta,
        r2=rep.r2,
        r4=rep.r4,
        r8=rep.r8,
        rho=rep.rho,
        predicted=tuple(sorted(rep.predicted)),
        qb_diagonal=tuple((rep.qb.upper[i] >> i) & 1 for i in range(n)),
        b_matrix=tuple(tuple(r) for r in rep.b_matrix.to_lists()),
        oracle=oracle,
        consistent=consistent,
    )


def _factor(m: int, small_primes: list[int]) -> list[int] | None:
    """Distinct prime factors of m by trial division; None if m is not squarefree."""
    out = []
    for p in small_primes:
        if p * p > m:
            break
        if m % p == 0:
            m //= p
            if m % p == 0:
                return None
            out.append(p)
    if m > 1:
        out.append(m)
    return out


def _primes_up_to(n: int) -> list[int]:
    sieve = bytearray([1]) * (n + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [p for p in range(n + 1) if sieve[p]]


def iter_fields(max_abs_delta: int, t: int | None = None) -> Iterator[FieldSpec]:
    """Fields of the supported shape with |Delta| <= max_abs_delta, ascending |Delta|.

    Primes = 1 mod 4 are listed in increasing order, followed by the prime = 3 mod 4.
    """
    small = _primes_up_to(isqrt(max(max_abs_delta, 4)) + 1)
    for m in range(3, max_abs_delta + 1, 4):
        ps = _factor(m, small)
        if ps is None or 2 in ps:
            continue
        threes = [p for p in ps if p % 4 == 3]
        if len(threes) != 1:
            continue
        if t is not None and len(ps) != t:
            continue
        yield FieldSpec(tuple(sorted(p for p in ps if p % 4 == 1)) + (threes[0],))
