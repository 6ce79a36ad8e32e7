"""Completely decomposable forms vanishing on a point set.

A completely decomposable form is a product of linear forms. For points in
linearly general position such a form of degree l vanishing on the set
induces an assignment of the points to its l factors, each factor carrying
at most n points. Everything here is organised around that correspondence.

The span of all such forms is computed from block assignments: for each
unordered assignment of the points to l blocks of size 0..n, the products
h_1 * ... * h_l with h_i ranging over a basis of the linear forms vanishing
on block i. Multiplication is multilinear in the factors, so these products
span the same space as every product with h_i vanishing on block i, and every
decomposable form arises from some assignment since a nonzero linear form
vanishes on at most n points of the set.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, zip_longest
from math import comb, factorial
from typing import Iterator, Sequence

from .exact_linalg import Echelon, ExactMatrix, FieldSpec, rref
from .graded_poly import (
    PolyVec,
    generated_ranks,
    ideal_piece,
    mul_linear_ints,
)
from .proj_geometry import Point, PointSet, extend_lgp, is_lgp, linear_forms_vanishing_on

__all__ = [
    "Partition",
    "Generator",
    "Certificate",
    "split_degree",
    "partitions_equal_blocks",
    "block_assignments",
    "sigma_generators",
    "phi_span_basis",
    "generating_set",
    "decompose_in_sum",
    "degree_table",
]


def split_degree(n: int, l: int) -> int:
    """Degree (ln)! / ((n!)^l l!) of the variety of completely decomposable l-forms."""
    if n < 1 or l < 1:
        raise ValueError("need n >= 1 and l >= 1")
    return factorial(l * n) // (factorial(n) ** l * factorial(l))


@dataclass(frozen=True)
class Partition:
    """Unordered partition of ``0..d-1`` into sorted blocks ordered by minimum."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        prev_min = -1
        for b in self.blocks:
            if not b:
                raise ValueError("empty block")
            if list(b) != sorted(set(b)):
                raise ValueError("blocks must be sorted without repeats")
            if b[0] <= prev_min:
                raise ValueError("blocks must be ordered by their minimum")
            prev_min = b[0]
            if seen & set(b):
                raise ValueError("blocks overlap")
            seen.update(b)
        if seen != set(range(len(seen))):
            raise ValueError("blocks must cover 0..d-1")

    @classmethod
    def of(cls, blocks: Sequence[Sequence[int]]) -> "Partition":
        """Canonicalize arbitrary block order."""
        bs = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0])
        return cls(tuple(bs))

    @property
    def d(self) -> int:
        return sum(len(b) for b in self.blocks)

    def max_block(self) -> int:
        return max((len(b) for b in self.blocks), default=0)

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]


def partitions_equal_blocks(d: int, m: int, n: int) -> Iterator[Partition]:
    """Every partition of ``0..d-1`` into m blocks of exactly n points.

    The block holding the smallest unassigned index is chosen first, its
    companions in lexicographic order.
    """
    if d != m * n or m < 1 or n < 1:
        raise ValueError("need d = m*n")

    def rec(remaining: tuple[int, ...], acc: list):
        if not remaining:
            yield Partition(tuple(acc))
            return
        anchor, rest = remaining[0], remaining[1:]
        for comp in combinations(rest, n - 1):
            cs = set(comp)
            acc.append((anchor, *comp))
            yield from rec(tuple(x for x in rest if x not in cs), acc)
            acc.pop()

    yield from rec(tuple(range(d)), [])


def block_assignments(d: int, l: int, n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Unordered assignments of ``0..d-1`` to at most l nonempty blocks of size <= n.

    The remaining l - k blocks of an assignment with k nonempty blocks are
    empty, so they are left implicit. Larger blocks are tried first.
    """

    def rec(remaining: tuple[int, ...], acc: list):
        if not remaining:
            yield tuple(acc)
            return
        free = l - len(acc)
        if free == 0 or len(remaining) > free * n:
            return
        anchor, rest = remaining[0], remaining[1:]
        for size in range(min(n, len(remaining)), 0, -1):
            for comp in combinations(rest, size - 1):
                cs = set(comp)
                acc.append((anchor, *comp))
                yield from rec(tuple(x for x in rest if x not in cs), acc)
                acc.pop()

    yield from rec(tuple(range(d)), [])


def _int_coeffs(f: PolyVec) -> list[int]:
    return list(f.integral())


def _modulus(field: FieldSpec) -> int | None:
    return None if field.is_rational else field.modulus


def _require_lgp(gamma: PointSet):
    if not is_lgp(gamma):
        raise ValueError("point set is not in linearly general position")


def sigma_generators(gamma: PointSet, m: int) -> list[tuple[PolyVec, Partition]]:
    """One product of hyperplane equations per partition into m blocks of n points."""
    n, d = gamma.n, len(gamma)
    if m < 2:
        raise ValueError("need m >= 2")
    if d != m * n:
        raise ValueError(f"need d = m*n, got d={d}, m={m}, n={n}")
    _require_lgp(gamma)
    p = _modulus(gamma.field)
    out = []
    hyperplane: dict[tuple[int, ...], list[int]] = {}
    for part in partitions_equal_blocks(d, m, n):
        hs = []
        for b in part.blocks:
            h = hyperplane.get(b)
            if h is None:
                (form,) = linear_forms_vanishing_on(gamma, b)
                h = hyperplane[b] = _int_coeffs(form)
            hs.append(h)
        acc = hs[0]
        for deg, h in enumerate(hs[1:], start=1):
            acc = mul_linear_ints(acc, h, n, deg, p)
        out.append((PolyVec._from_ints(acc, m, n, gamma.field), part))
    return out


@lru_cache(maxsize=256)
def _phi_span(gamma: PointSet, l: int) -> tuple[PolyVec, ...]:
    n, f = gamma.n, gamma.field
    p = _modulus(f)
    e = Echelon(comb(n + l, n), f)
    variables = [[1 if i == v else 0 for i in range(n + 1)] for v in range(n + 1)]

    def emit(acc, deg):
        # empty blocks are free linear factors: multiply by every monomial
        for mono in combinations_with_replacement(range(n + 1), l - deg):
            v, dv = acc, deg
            for var in mono:
                v = variables[var] if v is None else mul_linear_ints(v, variables[var], n, dv, p)
                dv += 1
            e.add(v)

    for blocks in block_assignments(len(gamma), l, n):
        factors = [[_int_coeffs(h) for h in linear_forms_vanishing_on(gamma, b)]
                   for b in blocks]

        def rec(i, acc, deg):
            if i == len(factors):
                emit(acc, deg)
                return
            for h in factors[i]:
                rec(i + 1, h if acc is None else mul_linear_ints(acc, h, n, deg, p), deg + 1)

        rec(0, None, 0)
    return tuple(PolyVec(l, n, tuple(r), f) for r in e.basis())


def phi_span_basis(gamma: PointSet, l: int) -> list[PolyVec]:
    """Canonical basis of the span of completely decomposable l-forms vanishing on ``gamma``.

    Empty when ``l * n < d``: no l hyperplanes cover the set.
    """
    _require_lgp(gamma)
    if l < 1:
        raise ValueError("need l >= 1")
    return list(_phi_span(gamma, l))


@dataclass(frozen=True)
class Generator:
    """A degree-m certificate generator and where it came from.

    ``partition`` indexes the points ``point_set.points + augmented``.
    """

    form: PolyVec
    partition: Partition
    augmented: tuple[Point, ...] = ()

    def to_json(self) -> dict:
        return {"blocks": self.partition.to_json(),
                "augmented": [p.to_json() for p in self.augmented],
                "coeffs": [self.form.field.to_str(c) for c in self.form.coeffs]}


@dataclass(frozen=True)
class Certificate:
    point_set: PointSet
    m: int
    generators: tuple[Generator, ...]
    lower_degree_basis: tuple[PolyVec, ...]
    verification: tuple[dict, ...] = dc_field(default=())

    @property
    def epsilon(self) -> int:
        return self.m * self.point_set.n - len(self.point_set)

    def all_generators(self) -> list[PolyVec]:
        """Lower-degree basis, then the degree-m forms.

        The forms of the different augmented families are interleaved: one
        family alone spans a proper subspace of I(gamma)_m, so this order
        lets slice computations reach full rank (and stop) early.
        """
        families: dict[tuple, list[PolyVec]] = {}
        for g in self.generators:
            families.setdefault(g.augmented, []).append(g.form)
        mixed = [f for group in zip_longest(*families.values()) for f in group if f is not None]
        return list(self.lower_degree_basis) + mixed

    @property
    def passed(self) -> bool:
        return all(row["equal"] for row in self.verification)

    def to_json(self) -> dict:
        ps = self.point_set
        return {
            "field": ps.field.to_json(),
            "n": ps.n,
            "points": [p.to_json() for p in ps.points],
            "m": self.m,
            "generators": [g.to_json() for g in self.generators],
            "lower_degree_basis": [b.to_json() for b in self.lower_degree_basis],
            "verification": [dict(r) for r in self.verification],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Certificate":
        ps = PointSet.from_json(obj)
        f, n, m = ps.field, ps.n, int(obj["m"])
        gens = []
        for g in obj["generators"]:
            aug = tuple(Point(tuple(f.coerce(x) for x in c), f) for c in g["augmented"])
            gens.append(Generator(PolyVec.from_coeffs(m, n, g["coeffs"], f),
                                  Partition.of(g["blocks"]), aug))
        lower = tuple(PolyVec.from_json(b, f) for b in obj["lower_degree_basis"])
        return cls(ps, m, tuple(gens), lower, tuple(obj.get("verification", ())))


def degree_table(gamma: PointSet, gens: Sequence[PolyVec], degrees: Sequence[int]) -> list[dict]:
    """Compare dim I(gamma)_t with the degree-t slice of the ideal generated by ``gens``."""
    if not degrees:
        return []
    top = max(degrees)
    dims = {t: len(ideal_piece(gamma, t)) for t in range(1, top + 1)}
    # every generator vanishes on gamma, so dim I(gamma)_t bounds each slice
    generated = generated_ranks(gens, top, gamma.n, gamma.field, dims)
    rows = []
    for t in degrees:
        a = dims[t]
        b = generated.get(t, 0)
        rows.append({"deg": t, "dim_ideal": a, "dim_generated": b, "equal": a == b})
    return rows


def generating_set(gamma: PointSet, m: int) -> Certificate:
    """Lower-degree ideal pieces plus completely decomposable m-forms generating I(gamma).

    For d = m*n the m-forms are the hyperplane products over all partitions
    into blocks of n points. Otherwise, with eps = m*n - d, eps + 1 new points
    are appended and the point set with the j-th new point removed (mn points)
    contributes its partition products, for each j.
    """
    n, d = gamma.n, len(gamma)
    if m < 2:
        raise ValueError("need m >= 2")
    if d > m * n:
        raise ValueError("degree too small for this d")
    _require_lgp(gamma)
    eps = m * n - d
    gens: list[Generator] = []
    if eps == 0:
        gens = [Generator(form, part) for form, part in sigma_generators(gamma, m)]
    else:
        aug = extend_lgp(gamma, eps + 1).points[d:]
        for j in range(eps + 1):
            extra = aug[:j] + aug[j + 1:]
            gj = gamma.extended(extra)
            gens.extend(Generator(form, part, extra) for form, part in sigma_generators(gj, m))
    lower = tuple(b for t in range(1, m) for b in ideal_piece(gamma, t))
    draft = Certificate(gamma, m, tuple(gens), lower)
    table = degree_table(gamma, draft.all_generators(), range(1, m + 3))
    return replace(draft, verification=tuple(table))


def _solve_in_sum(targets: Sequence[PolyVec], b1: Sequence[PolyVec], b2: Sequence[PolyVec]):
    """Canonical solutions of F = sum a_i b1_i + sum c_j b2_j for each target F."""
    f = targets[0].field
    cols = [v.coeffs for v in b1] + [v.coeffs for v in b2]
    k = len(cols)
    size = len(targets[0].coeffs)
    rows = []
    for r in range(size):
        rows.append(tuple(c[r] for c in cols) + tuple(t.coeffs[r] for t in targets))
    red, piv, _ = rref(ExactMatrix(f, k + len(targets), tuple(rows)))
    if piv and piv[-1] >= k:
        return None
    sols = []
    for j in range(len(targets)):
        x = [f.zero] * k
        for i, c in enumerate(piv):
            x[c] = red.rows[i][k + j]
        sols.append(x)
    return sols


def _combine(basis: Sequence[PolyVec], xs: Sequence, zero: PolyVec) -> PolyVec:
    f = zero.field
    acc = [f.zero] * len(zero.coeffs)
    for x, v in zip(xs, basis):
        if x:
            acc = [f.add(a, f.mul(x, c)) for a, c in zip(acc, v.coeffs)]
    return PolyVec(zero.degree, zero.n, tuple(acc), f)


def decompose_many(forms: Sequence[PolyVec], gamma1: PointSet, gamma2: PointSet,
                   l: int) -> list[tuple[PolyVec, PolyVec]]:
    """:func:`decompose_in_sum` for several forms with one elimination."""
    if not forms:
        return []
    for F in forms:
        if F.degree != l or F.n != gamma1.n:
            raise ValueError("degree mismatch")
        if F.field != gamma1.field or gamma1.field != gamma2.field:
            raise ValueError("field mismatch")
    b1 = ideal_piece(gamma1, l)
    b2 = ideal_piece(gamma2, l)
    zero = PolyVec.zero(l, gamma1.n, gamma1.field)
    if not b1 and not b2:
        if all(F.is_zero() for F in forms):
            return [(zero, zero) for _ in forms]
        raise ValueError("sum decomposition failed")
    sols = _solve_in_sum(forms, b1, b2)
    if sols is None:
        raise ValueError("sum decomposition failed")
    out = []
    for F, x in zip(forms, sols):
        F1 = _combine(b1, x[:len(b1)], zero)
        F2 = _combine(b2, x[len(b1):], zero)
        if F1 + F2 != F:
            raise ValueError("sum decomposition failed")
        out.append((F1, F2))
    return out


def decompose_in_sum(F: PolyVec, gamma1: PointSet, gamma2: PointSet,
                     l: int) -> tuple[PolyVec, PolyVec]:
    """Write F = F1 + F2 with F1 in I(gamma1)_l and F2 in I(gamma2)_l.

    The solution with all free coordinates zero is returned; it is one of
    many since the two pieces intersect.
    """
    (pair,) = decompose_many([F], gamma1, gamma2, l)
    return pair
