"""Independent brute-force oracles.

Nothing here imports the package's linear algebra: ranks come from sympy
(over Q) or a naive modular elimination, partitions from exhaustive labelling.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import comb

import sympy


def rank_q(rows, ncols):
    if not rows:
        return 0
    return sympy.Matrix([[sympy.Rational(Fraction(x).numerator, Fraction(x).denominator)
                          for x in r] for r in rows]).rank()


def rank_p(rows, ncols, p):
    a = [[x % p for x in r] for r in rows]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c] * pow(a[r][c], -1, p) % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
    return r


def rank(rows, ncols, p=None):
    return rank_q(rows, ncols) if p is None else rank_p(rows, ncols, p)


def monomials(n, deg):
    """All exponent vectors, in lex-descending order, via product()."""
    out = [e for e in product(range(deg + 1), repeat=n + 1) if sum(e) == deg]
    return sorted(out, reverse=True)


def moment(ts, n, p=None):
    pts = [[t ** i for i in range(n + 1)] for t in ts]
    return pts if p is None else [[x % p for x in r] for r in pts]


def eval_rows(points, deg, n, p=None):
    rows = []
    for pt in points:
        row = []
        for e in monomials(n, deg):
            v = 1
            for x, k in zip(pt, e):
                v *= x ** k
            row.append(v if p is None else v % p)
        rows.append(row)
    return rows


def ideal_dim(points, deg, n, p=None):
    return comb(n + deg, n) - rank(eval_rows(points, deg, n, p), comb(n + deg, n), p)


def is_lgp(points, n, p=None):
    k = min(n + 1, len(points))
    return all(rank([points[i] for i in s], n + 1, p) == k
               for s in combinations(range(len(points)), k))


def set_partitions_equal(d, m, n):
    """Unordered partitions of range(d) into m blocks of size n, by labelling."""
    seen = set()
    for labels in product(range(m), repeat=d):
        blocks = [tuple(i for i in range(d) if labels[i] == b) for b in range(m)]
        if all(len(b) == n for b in blocks):
            seen.add(frozenset(blocks))
    return seen


def evaluate(coeffs, n, deg, point, p=None):
    total = 0
    for c, e in zip(coeffs, monomials(n, deg)):
        v = Fraction(c)
        for x, k in zip(point, e):
            v *= Fraction(x) ** k
        total += v
    return total if p is None else total % p
