"""Points of P^n, moment-curve configurations and linearly general position."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence

from .exact_linalg import QQ, Echelon, ExactMatrix, FieldSpec, nullspace_basis
from .graded_poly import PolyVec

__all__ = [
    "Point",
    "PointSet",
    "normalize_point",
    "is_lgp",
    "moment_curve_points",
    "moment_point",
    "linear_forms_vanishing_on",
    "extend_lgp",
]


@dataclass(frozen=True)
class Point:
    """Homogeneous coordinates with first nonzero coordinate equal to 1."""

    coords: tuple
    field: FieldSpec = QQ

    def __post_init__(self):
        lead = next((x for x in self.coords if x), None)
        if lead is None:
            raise ValueError("not a projective point")
        if lead != 1:
            raise ValueError("point is not normalized; use normalize_point")

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash(self.coords)
            object.__setattr__(self, "_hash", h)
            return h

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    def to_json(self) -> list[str]:
        return [self.field.to_str(x) for x in self.coords]


def normalize_point(raw: Iterable, field: FieldSpec = QQ) -> Point:
    """Scale ``raw`` so its first nonzero coordinate is 1."""
    c = [field.coerce(x) for x in raw]
    lead = next((x for x in c if x), None)
    if lead is None:
        raise ValueError("not a projective point")
    inv = field.inv(lead)
    return Point(tuple(field.mul(x, inv) for x in c), field)


@dataclass(frozen=True)
class PointSet:
    """An ordered set of distinct points of P^n over one field."""

    n: int
    field: FieldSpec
    points: tuple[Point, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ambient dimension must be at least 1")
        seen = set()
        for p in self.points:
            if p.field != self.field:
                raise ValueError("field mismatch")
            if len(p.coords) != self.n + 1:
                raise ValueError(f"point {p.coords} is not in P^{self.n}")
            if p.coords in seen:
                raise ValueError("duplicate point")
            seen.add(p.coords)

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash((self.n, self.field, self.points))
            object.__setattr__(self, "_hash", h)
            return h

    @classmethod
    def from_coords(cls, n: int, coords: Iterable[Sequence],
                    field: FieldSpec = QQ) -> "PointSet":
        return cls(n, field, tuple(normalize_point(c, field) for c in coords))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i) -> Point:
        return self.points[i]

    @property
    def d(self) -> int:
        return len(self.points)

    def subset(self, indices: Iterable[int]) -> "PointSet":
        return PointSet(self.n, self.field, tuple(self.points[i] for i in indices))

    def without(self, indices: Iterable[int]) -> "PointSet":
        drop = set(indices)
        return PointSet(self.n, self.field,
                        tuple(p for i, p in enumerate(self.points) if i not in drop))

    def extended(self, points: Iterable[Point]) -> "PointSet":
        return PointSet(self.n, self.field, self.points + tuple(points))

    def coordinate_matrix(self, indices: Iterable[int] | None = None) -> ExactMatrix:
        idx = range(len(self.points)) if indices is None else indices
        return ExactMatrix(self.field, self.n + 1, tuple(self.points[i].coords for i in idx))

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "n": self.n,
                "points": [p.to_json() for p in self.points]}

    @classmethod
    def from_json(cls, obj: dict) -> "PointSet":
        try:
            field = FieldSpec.from_json(obj["field"])
            n = obj["n"]
            pts = obj["points"]
        except (KeyError, TypeError):
            raise ValueError("point-set JSON needs 'field', 'n' and 'points'") from None
        if not isinstance(n, int) or isinstance(n, bool):
            raise ValueError("'n' must be an integer")
        for c in pts:
            if not isinstance(c, list) or not all(isinstance(x, str) for x in c):
                raise ValueError("coordinates must be lists of decimal strings")
        return cls.from_coords(n, pts, field)


def _independent(gamma: PointSet, indices: Sequence[int]) -> bool:
    e = Echelon(gamma.n + 1, gamma.field)
    for i in indices:
        if not e.add(gamma.points[i].coords):
            return False
    return True


@lru_cache(maxsize=1024)
def is_lgp(gamma: PointSet) -> bool:
    """True iff every min(n+1, d) of the points are linearly independent."""
    d = len(gamma)
    k = min(gamma.n + 1, d)
    return all(_independent(gamma, s) for s in combinations(range(d), k))


def moment_point(t, n: int, field: FieldSpec = QQ) -> Point:
    t = field.coerce(t)
    c = [field.one]
    for _ in range(n):
        c.append(field.mul(c[-1], t))
    return Point(tuple(c), field)


def moment_curve_points(n: int, params: Sequence, field: FieldSpec = QQ) -> PointSet:
    """Points (1, t, t^2, ..., t^n) for pairwise distinct parameters t."""
    vals = [field.coerce(t) for t in params]
    if len(set(vals)) != len(vals):
        raise ValueError("moment-curve parameters must be pairwise distinct")
    return PointSet(n, field, tuple(moment_point(t, n, field) for t in vals))


def _primitive(v: Sequence, field: FieldSpec) -> tuple:
    if field.is_rational:
        fr = [Fraction(x) for x in v]
        den = lcm(*(x.denominator for x in fr))
        ints = [int(x * den) for x in fr]
        g = gcd(*ints)
        lead = next(x for x in ints if x)
        if lead < 0:
            g = -g
        return tuple(Fraction(x // g) for x in ints)
    lead = next(x for x in v if x)
    inv = field.inv(lead)
    return tuple(field.mul(x, inv) for x in v)


def linear_forms_vanishing_on(gamma: PointSet, block: Iterable[int]) -> list[PolyVec]:
    """Canonical basis of the linear forms vanishing on the points ``block``.

    Each form is normalized: primitive integer coefficients with positive
    leading coefficient over Q, leading coefficient 1 over F_p.
    """
    block = sorted(block)
    if len(block) > gamma.n:
        raise ValueError("block has more than n points")
    return list(_vanishing_forms(gamma, tuple(block)))


@lru_cache(maxsize=65536)
def _vanishing_forms(gamma: PointSet, block: tuple[int, ...]) -> tuple[PolyVec, ...]:
    f = gamma.field
    if not block:
        return tuple(PolyVec(1, gamma.n, tuple(f.one if i == v else f.zero
                                                for i in range(gamma.n + 1)), f)
                     for v in range(gamma.n + 1))
    if not _independent(gamma, block):
        raise ValueError("block not independent")
    kernel = nullspace_basis(gamma.coordinate_matrix(block))
    return tuple(PolyVec(1, gamma.n, _primitive(v, f), f) for v in kernel)


def _lgp_with(gamma: PointSet, new_index: int) -> bool:
    """LGP test for a set whose points other than ``new_index`` are already LGP."""
    d = len(gamma)
    k = min(gamma.n + 1, d)
    others = [i for i in range(d) if i != new_index]
    return all(_independent(gamma, (*s, new_index)) for s in combinations(others, k - 1))


def extend_lgp(gamma: PointSet, count: int) -> PointSet:
    """Append ``count`` points keeping linearly general position.

    Candidates are the moment points t = 0, 1, 2, ... in order; the first one
    that is new and keeps the union in general position is taken.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    if not is_lgp(gamma):
        raise ValueError("input set is not in linearly general position")
    f = gamma.field
    limit = None if f.is_rational else f.modulus
    present = {p.coords for p in gamma.points}
    out = gamma
    t = 0
    for _ in range(count):
        while True:
            if limit is not None and t >= limit:
                raise ValueError("field too small")
            cand = moment_point(t, gamma.n, f)
            t += 1
            if cand.coords in present:
                continue
            trial = out.extended([cand])
            if _lgp_with(trial, len(trial) - 1):
                out = trial
                present.add(cand.coords)
                break
    return out
