# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernels.

Same surface and results as ``_kernels_py``. The modular kernels run on C
``long long`` buffers and require ``p < 2**31`` so a product of two residues
fits in 63 bits; the caller routes larger moduli to the pure-Python kernels.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memmove
from math import gcd

MAX_MODULUS = 2 ** 31


cdef inline long long _inv(long long a, long long p):
    cdef long long result = 1, base = a % p, e = p - 2
    while e > 0:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def rref_modp(rows, Py_ssize_t ncols, long long p):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t i, j, k, r, c
    cdef long long f, inv, x
    cdef long long *a
    cdef long long *prow
    cdef long long *row
    cdef long long *tmp
    pivots = []
    if nrows == 0 or ncols == 0:
        return [[x % p for x in rr] for rr in rows], pivots
    a = <long long *> malloc(nrows * ncols * sizeof(long long))
    tmp = <long long *> malloc(ncols * sizeof(long long))
    if a == NULL or tmp == NULL:
        free(a)
        free(tmp)
        raise MemoryError()
    try:
        for i in range(nrows):
            rr = rows[i]
            for j in range(ncols):
                a[i * ncols + j] = rr[j] % p
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            k = r
            while k < nrows and a[k * ncols + c] == 0:
                k += 1
            if k == nrows:
                continue
            if k != r:
                memmove(tmp, &a[r * ncols], ncols * sizeof(long long))
                memmove(&a[r * ncols], &a[k * ncols], ncols * sizeof(long long))
                memmove(&a[k * ncols], tmp, ncols * sizeof(long long))
            prow = &a[r * ncols]
            inv = _inv(prow[c], p)
            if inv != 1:
                for j in range(c, ncols):
                    prow[j] = prow[j] * inv % p
            for i in range(nrows):
                if i == r:
                    continue
                row = &a[i * ncols]
                f = row[c]
                if f:
                    for j in range(c, ncols):
                        x = (row[j] - f * prow[j]) % p
                        if x < 0:
                            x += p
                        row[j] = x
            pivots.append(c)
            r += 1
        out = [[a[i * ncols + j] for j in range(ncols)] for i in range(nrows)]
    finally:
        free(a)
        free(tmp)
    return out, pivots


cdef class ModpEchelon:
    """Incremental echelon basis over F_p on a fixed ``ncols x ncols`` buffer."""

    cdef readonly Py_ssize_t ncols
    cdef readonly long long p
    cdef Py_ssize_t _rank
    cdef long long *_buf
    cdef Py_ssize_t *_piv
    cdef long long *_tmp

    def __cinit__(self, Py_ssize_t ncols, long long p):
        self.ncols = ncols
        self.p = p
        self._rank = 0
        cdef Py_ssize_t cap = ncols if ncols > 0 else 1
        self._buf = <long long *> malloc(cap * cap * sizeof(long long))
        self._piv = <Py_ssize_t *> malloc(cap * sizeof(Py_ssize_t))
        self._tmp = <long long *> malloc(cap * sizeof(long long))
        if self._buf == NULL or self._piv == NULL or self._tmp == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self._buf)
        free(self._piv)
        free(self._tmp)

    @property
    def rank(self):
        return self._rank

    cdef void _load(self, row):
        cdef Py_ssize_t j
        cdef long long p = self.p
        for j in range(self.ncols):
            self._tmp[j] = row[j] % p

    cdef void _reduce_tmp(self):
        cdef Py_ssize_t i, j, c
        cdef Py_ssize_t n = self.ncols
        cdef long long p = self.p
        cdef long long f, x
        cdef long long *v = self._tmp
        cdef long long *b
        for i in range(self._rank):
            c = self._piv[i]
            f = v[c]
            if f:
                b = &self._buf[i * n]
                for j in range(c, n):
                    x = (v[j] - f * b[j]) % p
                    if x < 0:
                        x += p
                    v[j] = x

    def reduce(self, row):
        self._load(row)
        self._reduce_tmp()
        return [self._tmp[j] for j in range(self.ncols)]

    def add(self, row):
        """Insert ``row``; return True iff it raised the rank."""
        cdef Py_ssize_t n = self.ncols
        cdef Py_ssize_t c, j, k
        cdef long long inv, p = self.p
        if len(row) != n:
            raise ValueError("dimension mismatch")
        if self._rank == n:
            return False
        self._load(row)
        self._reduce_tmp()
        c = 0
        while c < n and self._tmp[c] == 0:
            c += 1
        if c == n:
            return False
        inv = _inv(self._tmp[c], p)
        if inv != 1:
            for j in range(c, n):
                self._tmp[j] = self._tmp[j] * inv % p
        k = 0
        while k < self._rank and self._piv[k] < c:
            k += 1
        if k < self._rank:
            memmove(&self._buf[(k + 1) * n], &self._buf[k * n],
                    (self._rank - k) * n * sizeof(long long))
            memmove(&self._piv[k + 1], &self._piv[k],
                    (self._rank - k) * sizeof(Py_ssize_t))
        memmove(&self._buf[k * n], self._tmp, n * sizeof(long long))
        self._piv[k] = c
        self._rank += 1
        return True

    def rows(self):
        cdef Py_ssize_t i, j, n = self.ncols
        return [[self._buf[i * n + j] for j in range(n)] for i in range(self._rank)]

    def pivots(self):
        return [self._piv[i] for i in range(self._rank)]


cdef class IntEchelon:
    """Fraction-free incremental echelon basis of integer rows (Python ints)."""

    cdef readonly Py_ssize_t ncols
    cdef list _rows
    cdef list _pivots

    def __init__(self, Py_ssize_t ncols):
        self.ncols = ncols
        self._rows = []
        self._pivots = []

    @property
    def rank(self):
        return len(self._rows)

    cpdef list reduce(self, row):
        cdef Py_ssize_t j, c, i
        cdef Py_ssize_t n = self.ncols
        cdef list v = list(row)
        cdef list b
        cdef object f, e, g
        for i in range(len(self._rows)):
            b = <list> self._rows[i]
            c = <Py_ssize_t> self._pivots[i]
            f = v[c]
            if f:
                e = b[c]
                if e != 1:
                    for j in range(c):
                        if v[j]:
                            v[j] = e * v[j]
                for j in range(c, n):
                    v[j] = e * v[j] - f * b[j]
                g = gcd(*v)
                if g > 1:
                    v = [x // g for x in v]
        return v

    def add(self, row):
        """Insert ``row``; return True iff it raised the rank."""
        cdef Py_ssize_t n = self.ncols
        cdef Py_ssize_t c, k
        cdef list v
        if len(row) != n:
            raise ValueError("dimension mismatch")
        if len(self._rows) == n:
            return False
        v = self.reduce(row)
        c = 0
        while c < n and not v[c]:
            c += 1
        if c == n:
            return False
        g = gcd(*v)
        if v[c] < 0:
            g = -g
        if g != 1:
            v = [x // g for x in v]
        k = 0
        while k < len(self._pivots) and self._pivots[k] < c:
            k += 1
        self._rows.insert(k, v)
        self._pivots.insert(k, c)
        return True

    def rows(self):
        return [list(r) for r in self._rows]

    def pivots(self):
        return list(self._pivots)
