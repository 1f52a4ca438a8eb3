# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the loops in ``_pykernels``; same signatures, same results."""

from libc.stdint cimport uint64_t, int64_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

BACKEND = "cython"

cdef enum:
    MAXDIM = 64


cdef int _rank(uint64_t* work, int nrows, int ncols) nogil:
    cdef int rank = 0, col, idx, pivot
    cdef uint64_t bit, prow, tmp
    for col in range(ncols):
        bit = (<uint64_t>1) << col
        pivot = -1
        for idx in range(rank, nrows):
            if work[idx] & bit:
                pivot = idx
                break
        if pivot < 0:
            continue
        tmp = work[rank]
        work[rank] = work[pivot]
        work[pivot] = tmp
        prow = work[rank]
        for idx in range(nrows):
            if idx != rank and (work[idx] & bit):
                work[idx] ^= prow
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_rows(rows, int ncols):
    cdef uint64_t work[MAXDIM]
    cdef int nrows = 0
    if ncols > MAXDIM:
        raise ValueError("at most 64 columns")
    for r in rows:
        if r:
            if nrows == MAXDIM:
                # more rows than columns: rank is capped anyway, compact first
                nrows = _rank(work, nrows, ncols)
            work[nrows] = <uint64_t>r
            nrows += 1
    return _rank(work, nrows, ncols)


def form_stats(upper, int n):
    cdef uint64_t up[MAXDIM]
    cdef uint64_t pol[MAXDIM]
    cdef int i, j, q, in_rad, defect = 0
    cdef int64_t zeros = 0, radical = 0
    cdef uint64_t x, total
    if n > 30:
        raise ValueError("form_stats enumerates 2^n vectors; n <= 30")
    for i in range(n):
        up[i] = <uint64_t>upper[i]
        pol[i] = 0
    for i in range(n):
        for j in range(i + 1, n):
            if (up[i] >> j) & 1:
                pol[i] |= (<uint64_t>1) << j
                pol[j] |= (<uint64_t>1) << i
    total = (<uint64_t>1) << n
    with nogil:
        x = 0
        while x < total:
            q = 0
            in_rad = 1
            for i in range(n):
                if (x >> i) & 1:
                    q ^= __builtin_popcountll(up[i] & x) & 1
                if __builtin_popcountll(pol[i] & x) & 1:
                    in_rad = 0
            if q == 0:
                zeros += 1
            if in_rad:
                radical += 1
                if q:
                    defect = 1
            x += 1
    rdim = 0
    while (1 << rdim) < radical:
        rdim += 1
    return int(zeros), rdim, defect


def bilinear_nullity_mask(uint64_t diag, polar, int n):
    cdef uint64_t pol[8]
    cdef uint64_t rows[8]
    cdef uint64_t work[8]
    cdef uint64_t code, total, full
    cdef int i, j, ok
    cdef uint64_t mask = 0
    if n > 6:
        raise ValueError("bilinear enumeration is limited to n <= 6")
    for i in range(n):
        pol[i] = <uint64_t>polar[i]
    full = ((<uint64_t>1) << n) - 1
    total = (<uint64_t>1) << (n * n)
    with nogil:
        code = 0
        while code < total:
            ok = 1
            for i in range(n):
                rows[i] = (code >> (i * n)) & full
            for i in range(n):
                if ((rows[i] >> i) & 1) != ((diag >> i) & 1):
                    ok = 0
                    break
                for j in range(i + 1, n):
                    if (((rows[i] >> j) ^ (rows[j] >> i)) & 1) != ((pol[i] >> j) & 1):
                        ok = 0
                        break
                if not ok:
                    break
            if ok:
                for i in range(n):
                    work[i] = rows[i]
                mask |= (<uint64_t>1) << (n - _rank(work, n, n))
            code += 1
    return int(mask)


cdef int64_t _gcd(int64_t a, int64_t b) nogil:
    cdef int64_t t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


def reduced_forms(int64_t delta):
    cdef int64_t a, b, c, num, four_a, amax
    out = []
    amax = 0
    while (amax + 1) * (amax + 1) * 3 <= -delta:
        amax += 1
    for a in range(1, amax + 1):
        four_a = 4 * a
        b = delta & 1
        while b <= a:
            num = b * b - delta
            if num % four_a == 0:
                c = num // four_a
                if c >= a and _gcd(_gcd(a, b), c) == 1:
                    out.append((a, b, c))
                    if b and b != a and c != a:
                        out.append((a, -b, c))
            b += 2
    return out
