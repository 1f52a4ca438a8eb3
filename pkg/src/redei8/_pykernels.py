"""Pure-Python versions of the hot loops.

Every function here has a twin in ``_ckernels.pyx`` with the same
signature and results; ``redei8.kernels`` picks one at import time.
Matrices are passed as lists of row bitmasks (bit j of row i is entry (i, j)).
"""

from __future__ import annotations

from math import isqrt

BACKEND = "python"


def rank_rows(rows, ncols):
    """Rank over GF(2) of the matrix whose rows are the given bitmasks."""
    work = [r for r in rows if r]
    rank = 0
    for col in range(ncols):
        bit = 1 << col
        pivot = None
        for idx in range(rank, len(work)):
            if work[idx] & bit:
                pivot = idx
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        prow = work[rank]
        for idx in range(len(work)):
            if idx != rank and work[idx] & bit:
                work[idx] ^= prow
        rank += 1
        if rank == len(work):
            break
    return rank


def _polar_rows(upper, n):
    polar = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if (upper[i] >> j) & 1:
                polar[i] |= 1 << j
                polar[j] |= 1 << i
    return polar


def form_stats(upper, n):
    """Walk all of F_2^n once for the form with upper-triangular rows ``upper``.

    Returns ``(zero_count, radical_dim, defect)``: the size of Q^-1(0), the
    dimension of the radical of the polar form, and 1 if Q is nonzero on
    that radical.
    """
    polar = _polar_rows(upper, n)
    zeros = 0
    radical = 0
    defect = 0
    for x in range(1 << n):
        q = 0
        in_rad = True
        for i in range(n):
            if (x >> i) & 1:
                q ^= bin(upper[i] & x).count("1") & 1
            if bin(polar[i] & x).count("1") & 1:
                in_rad = False
        if not q:
            zeros += 1
        if in_rad:
            radical += 1
            if q:
                defect = 1
    return zeros, radical.bit_length() - 1, defect


def bilinear_nullity_mask(diag, polar, n):
    """Bitmask of nullities n - rank(B) over every n x n matrix B inducing Q.

    All 2^(n*n) matrices are visited; B is kept when its diagonal equals
    ``diag`` and B + B^T equals the alternating matrix ``polar``.
    """
    full = (1 << n) - 1
    mask = 0
    for code in range(1 << (n * n)):
        rows = [(code >> (i * n)) & full for i in range(n)]
        ok = True
        for i in range(n):
            ri = rows[i]
            if ((ri >> i) & 1) != ((diag >> i) & 1):
                ok = False
                break
            for j in range(i + 1, n):
                if ((ri >> j) ^ (rows[j] >> i)) & 1 != (polar[i] >> j) & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            mask |= 1 << (n - rank_rows(rows, n))
    return mask


def reduced_forms(delta):
    """Reduced primitive positive definite forms (a, b, c) with b^2 - 4ac = delta."""
    from math import gcd

    out = []
    amax = isqrt(-delta // 3)
    for a in range(1, amax + 1):
        four_a = 4 * a
        b = delta & 1
        while b <= a:
            num = b * b - delta
            if num % four_a == 0:
                c = num // four_a
                if c >= a and gcd(gcd(a, b), c) == 1:
                    out.append((a, b, c))
                    if b and b != a and c != a:
                        out.append((a, -b, c))
            b += 2
    return out
