"""Pure-Python elimination kernels.

This module mirrors ``_kernels.pyx`` function for function. It is used when
the compiled extension is unavailable or when ``LGPIDEAL_PURE_PYTHON`` is set.

Rows are plain lists: residues in ``[0, p)`` for the modular kernels and
arbitrary Python ints for :class:`IntEchelon`.
"""

from __future__ import annotations

from math import gcd


def rref_modp(rows, ncols, p):
    """Reduced row echelon form over F_p.

    Pivot search scans columns left to right and rows top to bottom, taking
    the first nonzero entry.

    Returns:
        (reduced rows, pivot columns). Zero rows are kept at the bottom.
    """
    a = [[x % p for x in r] for r in rows]
    nrows = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        k = r
        while k < nrows and a[k][c] == 0:
            k += 1
        if k == nrows:
            continue
        if k != r:
            a[r], a[k] = a[k], a[r]
        prow = a[r]
        inv = pow(prow[c], p - 2, p)
        if inv != 1:
            for j in range(c, ncols):
                prow[j] = prow[j] * inv % p
        for i in range(nrows):
            if i == r:
                continue
            row = a[i]
            f = row[c]
            if f:
                for j in range(c, ncols):
                    row[j] = (row[j] - f * prow[j]) % p
        pivots.append(c)
        r += 1
    return a, pivots


class ModpEchelon:
    """Incremental echelon basis over F_p.

    Stored rows have a leading 1 at their pivot and are kept sorted by pivot.
    """

    def __init__(self, ncols, p):
        self.ncols = ncols
        self.p = p
        self._rows = []
        self._pivots = []

    @property
    def rank(self):
        return len(self._rows)

    def reduce(self, row):
        p = self.p
        ncols = self.ncols
        v = [x % p for x in row]
        for b, c in zip(self._rows, self._pivots):
            f = v[c]
            if f:
                for j in range(c, ncols):
                    v[j] = (v[j] - f * b[j]) % p
        return v

    def add(self, row):
        """Insert ``row``; return True iff it raised the rank."""
        if len(row) != self.ncols:
            raise ValueError("dimension mismatch")
        if len(self._rows) == self.ncols:
            return False
        v = self.reduce(row)
        for c in range(self.ncols):
            if v[c]:
                break
        else:
            return False
        p = self.p
        inv = pow(v[c], p - 2, p)
        if inv != 1:
            v = [x * inv % p for x in v]
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


class IntEchelon:
    """Incremental echelon basis of integer rows spanning a subspace of Q^n.

    Elimination is fraction-free: ``v <- b[c]*v - v[c]*b`` followed by
    division by the row content, so entries stay integral. The stored rows
    are primitive with a positive pivot entry.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self._rows = []
        self._pivots = []

    @property
    def rank(self):
        return len(self._rows)

    def reduce(self, row):
        ncols = self.ncols
        v = list(row)
        for b, c in zip(self._rows, self._pivots):
            f = v[c]
            if f:
                e = b[c]
                if e != 1:
                    for j in range(c):
                        if v[j]:
                            v[j] = e * v[j]
                for j in range(c, ncols):
                    v[j] = e * v[j] - f * b[j]
                g = gcd(*v)
                if g > 1:
                    v = [x // g for x in v]
        return v

    def add(self, row):
        """Insert ``row``; return True iff it raised the rank."""
        if len(row) != self.ncols:
            raise ValueError("dimension mismatch")
        if len(self._rows) == self.ncols:
            return False
        v = self.reduce(row)
        for c in range(self.ncols):
            if v[c]:
                break
        else:
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
