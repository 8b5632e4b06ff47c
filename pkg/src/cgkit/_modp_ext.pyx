# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular row reduction for primes below 2**63."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

ctypedef unsigned long long u64

cdef extern from *:
    """
    typedef unsigned __int128 cg_u128;
    static inline unsigned long long cg_mulmod(unsigned long long a,
                                               unsigned long long b,
                                               unsigned long long m) {
        return (unsigned long long)(((cg_u128)a * b) % m);
    }
    """
    u64 cg_mulmod(u64 a, u64 b, u64 m) nogil


cdef u64 _powmod(u64 a, u64 e, u64 m) nogil:
    cdef u64 r = 1
    a %= m
    while e:
        if e & 1:
            r = cg_mulmod(r, a, m)
        a = cg_mulmod(a, a, m)
        e >>= 1
    return r


cdef class _Echelon:
    cdef u64 *piv          # pivot rows, row-major, ncols wide, pivot normalized to 1
    cdef long *row_of_col  # pivot row index for each column or -1
    cdef u64 *buf
    cdef long ncols, rank
    cdef u64 p

    def __cinit__(self, long ncols, u64 p):
        cdef long c
        self.ncols = ncols
        self.p = p
        self.rank = 0
        self.piv = <u64 *> malloc(max(ncols, 1) * max(ncols, 1) * sizeof(u64))
        self.row_of_col = <long *> malloc(max(ncols, 1) * sizeof(long))
        self.buf = <u64 *> malloc(max(ncols, 1) * sizeof(u64))
        if not self.piv or not self.row_of_col or not self.buf:
            raise MemoryError()
        for c in range(ncols):
            self.row_of_col[c] = -1

    def __dealloc__(self):
        free(self.piv)
        free(self.row_of_col)
        free(self.buf)

    cdef void _load(self, row):
        cdef long c
        memset(self.buf, 0, self.ncols * sizeof(u64))
        for c in range(self.ncols):
            self.buf[c] = <u64> (row[c] % self.p)

    cdef bint _reduce_insert(self) nogil:
        # reduce buf; if it survives, append it as a pivot row; return True if new pivot
        cdef long c, t, r
        cdef u64 f, inv, p = self.p
        cdef u64 *prow
        for c in range(self.ncols):
            f = self.buf[c]
            if f == 0:
                continue
            r = self.row_of_col[c]
            if r < 0:
                inv = _powmod(f, p - 2, p)
                prow = self.piv + self.rank * self.ncols
                for t in range(c):
                    prow[t] = 0
                for t in range(c, self.ncols):
                    prow[t] = cg_mulmod(self.buf[t], inv, p)
                self.row_of_col[c] = self.rank
                self.rank += 1
                return True
            prow = self.piv + r * self.ncols
            for t in range(c, self.ncols):
                if prow[t]:
                    self.buf[t] = (self.buf[t] + p - cg_mulmod(f, prow[t], p)) % p
        return False

    cdef bint add(self, row):
        self._load(row)
        return self._reduce_insert()


def rank_mod(rows, long ncols, u64 p):
    cdef _Echelon e = _Echelon(ncols, p)
    for r in rows:
        if e.rank == ncols:
            break
        e.add(r)
    return e.rank


def in_span_mod(rows, vec, long ncols, u64 p):
    cdef _Echelon e = _Echelon(ncols, p)
    for r in rows:
        if e.rank == ncols:
            return True
        e.add(r)
    return not e.add(vec)
