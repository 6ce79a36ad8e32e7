"""Graded pieces of S = k[x_0, ..., x_n] as dense coefficient vectors.

Monomials of a fixed degree are ordered lexicographically descending on
their exponent vectors (x_0 > x_1 > ... > x_n), so for n = 2, degree 2 the
order is x0^2, x0x1, x0x2, x1^2, x1x2, x2^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import comb, lcm
from typing import TYPE_CHECKING, Iterable, Sequence

from .exact_linalg import QQ, Echelon, ExactMatrix, FieldSpec, nullspace_basis

if TYPE_CHECKING:
    from .proj_geometry import Point, PointSet

__all__ = [
    "PolyVec",
    "monomial_basis",
    "monomial_index",
    "eval_matrix",
    "ideal_piece",
    "multiply_linear",
    "product_of_linears",
    "ideal_slice_from_generators",
    "generated_slices",
    "generated_ranks",
    "variable",
    "mul_linear_ints",
    "vanishes_on",
]


@lru_cache(maxsize=None)
def monomial_basis(n: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of total ``degree`` in ``n + 1`` variables, canonical order."""
    if n < 0 or degree < 0:
        raise ValueError("need n >= 0 and degree >= 0")

    def rec(nvars, deg):
        if nvars == 1:
            yield (deg,)
            return
        for e in range(deg, -1, -1):
            for rest in rec(nvars - 1, deg - e):
                yield (e,) + rest

    return tuple(rec(n + 1, degree))


@lru_cache(maxsize=None)
def monomial_index(n: int, degree: int) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(monomial_basis(n, degree))}


@lru_cache(maxsize=None)
def _shift_table(n: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """``table[i][v]``: index in degree+1 of monomial i times x_v."""
    up = monomial_index(n, degree + 1)
    out = []
    for mono in monomial_basis(n, degree):
        row = []
        for v in range(n + 1):
            e = list(mono)
            e[v] += 1
            row.append(up[tuple(e)])
        out.append(tuple(row))
    return tuple(out)


@dataclass(frozen=True)
class PolyVec:
    """A form of fixed degree as its coefficients in canonical monomial order."""

    degree: int
    n: int
    coeffs: tuple
    field: FieldSpec = QQ

    def __post_init__(self):
        if len(self.coeffs) != comb(self.n + self.degree, self.n):
            raise ValueError(
                f"expected {comb(self.n + self.degree, self.n)} coefficients, "
                f"got {len(self.coeffs)}")

    @classmethod
    def from_coeffs(cls, degree: int, n: int, coeffs: Iterable,
                    field: FieldSpec = QQ) -> "PolyVec":
        return cls(degree, n, tuple(field.coerce(c) for c in coeffs), field)

    @classmethod
    def from_terms(cls, degree: int, n: int, terms: dict,
                   field: FieldSpec = QQ) -> "PolyVec":
        """Build from ``{exponent tuple: coefficient}``."""
        idx = monomial_index(n, degree)
        c = [field.zero] * len(idx)
        for mono, val in terms.items():
            c[idx[tuple(mono)]] = field.coerce(val)
        return cls(degree, n, tuple(c), field)

    @classmethod
    def zero(cls, degree: int, n: int, field: FieldSpec = QQ) -> "PolyVec":
        return cls(degree, n, (field.zero,) * comb(n + degree, n), field)

    @classmethod
    def _from_ints(cls, raw: Sequence[int], degree: int, n: int,
                   field: FieldSpec) -> "PolyVec":
        """Wrap kernel output (ints, residues over F_p) and keep it as the integral view."""
        if field.is_rational:
            pv = cls(degree, n, tuple(Fraction(x) for x in raw), field)
        else:
            pv = cls(degree, n, tuple(raw), field)
        object.__setattr__(pv, "_integral", tuple(raw))
        return pv

    def integral(self) -> tuple[int, ...]:
        """Coefficients as ints: scaled by the common denominator over Q, residues over F_p.

        Over Q this is a nonzero multiple of the form, which is all that span
        and vanishing computations need.
        """
        try:
            return self._integral
        except AttributeError:
            pass
        if self.field.is_rational:
            den = lcm(*(c.denominator for c in self.coeffs))
            raw = tuple(int(c * den) if den != 1 else int(c) for c in self.coeffs)
        else:
            raw = tuple(self.coeffs)
        object.__setattr__(self, "_integral", raw)
        return raw

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def terms(self) -> dict[tuple[int, ...], object]:
        return {m: c for m, c in zip(monomial_basis(self.n, self.degree), self.coeffs) if c}

    def coeff(self, exponents: Sequence[int]):
        return self.coeffs[monomial_index(self.n, self.degree)[tuple(exponents)]]

    def evaluate(self, coords: Sequence) -> object:
        """Value at a coordinate vector (raw scalars of the same field)."""
        f = self.field
        n1 = self.n + 1
        if len(coords) != n1:
            raise ValueError("dimension mismatch")
        powers = [_powers(x, self.degree, f) for x in coords]
        total = 0
        for mono, c in zip(monomial_basis(self.n, self.degree), self.coeffs):
            if c:
                t = c
                for v in range(n1):
                    e = mono[v]
                    if e:
                        t = t * powers[v][e]
                total += t
        return f.coerce(total) if f.kind == "Fp" else total

    def vanishes_at(self, point) -> bool:
        coords = getattr(point, "coords", point)
        return not self.evaluate(coords)

    def __add__(self, other: "PolyVec") -> "PolyVec":
        self._compatible(other)
        f = self.field
        return PolyVec(self.degree, self.n,
                       tuple(f.add(a, b) for a, b in zip(self.coeffs, other.coeffs)), f)

    def __sub__(self, other: "PolyVec") -> "PolyVec":
        self._compatible(other)
        f = self.field
        return PolyVec(self.degree, self.n,
                       tuple(f.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)), f)

    def scale(self, c) -> "PolyVec":
        f = self.field
        c = f.coerce(c)
        return PolyVec(self.degree, self.n, tuple(f.mul(c, a) for a in self.coeffs), f)

    def _compatible(self, other: "PolyVec"):
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.n != other.n or self.degree != other.degree:
            raise ValueError("degree mismatch")

    def to_json(self) -> dict:
        return {"degree": self.degree, "n": self.n,
                "coeffs": [self.field.to_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict, field: FieldSpec = QQ) -> "PolyVec":
        return cls.from_coeffs(int(obj["degree"]), int(obj["n"]), obj["coeffs"], field)

    def __str__(self):
        parts = []
        for mono, c in self.terms().items():
            mon = "*".join(f"x{v}" + (f"^{e}" if e > 1 else "")
                           for v, e in enumerate(mono) if e) or "1"
            parts.append(f"{c}*{mon}")
        return " + ".join(parts) or "0"


def _powers(x, degree, field):
    out = [field.one]
    for _ in range(degree):
        out.append(field.mul(out[-1], x))
    return out


def variable(v: int, n: int, field: FieldSpec = QQ) -> PolyVec:
    """The linear form x_v."""
    c = [field.zero] * (n + 1)
    c[v] = field.one
    return PolyVec(1, n, tuple(c), field)


@lru_cache(maxsize=4096)
def _int_eval_rows(gamma: "PointSet", degree: int) -> tuple[tuple[int, ...], ...]:
    """Monomial values at integer representatives of the points (residues over F_p)."""
    f = gamma.field
    basis = monomial_basis(gamma.n, degree)
    rows = []
    for pt in gamma.points:
        if f.is_rational:
            den = lcm(*(x.denominator for x in pt.coords))
            c = [int(x * den) for x in pt.coords]
        else:
            c = list(pt.coords)
        row = []
        for mono in basis:
            t = 1
            for v, e in enumerate(mono):
                if e:
                    t *= c[v] ** e
            row.append(t if f.is_rational else t % f.modulus)
        rows.append(tuple(row))
    return tuple(rows)


def vanishes_on(form: PolyVec, gamma: "PointSet") -> bool:
    """True iff ``form`` is zero at every point of ``gamma`` (exact)."""
    if form.n != gamma.n:
        raise ValueError("dimension mismatch")
    if form.field != gamma.field:
        raise ValueError("field mismatch")
    coeffs = form.integral()
    nz = [(i, c) for i, c in enumerate(coeffs) if c]
    p = None if gamma.field.is_rational else gamma.field.modulus
    for row in _int_eval_rows(gamma, form.degree):
        s = sum(c * row[i] for i, c in nz)
        if (s % p if p else s) != 0:
            return False
    return True


def eval_matrix(gamma: "PointSet", degree: int) -> ExactMatrix:
    """Row i holds every canonical degree-``degree`` monomial evaluated at point i."""
    f = gamma.field
    basis = monomial_basis(gamma.n, degree)
    rows = []
    for pt in gamma.points:
        powers = [_powers(x, degree, f) for x in pt.coords]
        row = []
        for mono in basis:
            t = f.one
            for v, e in enumerate(mono):
                if e:
                    t = f.mul(t, powers[v][e])
            row.append(t)
        rows.append(tuple(row))
    return ExactMatrix(f, len(basis), tuple(rows))


@lru_cache(maxsize=4096)
def ideal_piece(gamma: "PointSet", degree: int) -> tuple[PolyVec, ...]:
    """Canonical basis of I(gamma)_degree: the RREF kernel of the evaluation matrix."""
    f = gamma.field
    if len(gamma) == 0:
        ncols = comb(gamma.n + degree, gamma.n)
        ident = ExactMatrix.identity(ncols, f)
        return tuple(PolyVec(degree, gamma.n, r, f) for r in ident.rows)
    return tuple(PolyVec(degree, gamma.n, v, f)
                 for v in nullspace_basis(eval_matrix(gamma, degree)))


def _shift_raw(coeffs: Sequence, n: int, degree: int, v: int, size: int, zero) -> list:
    out = [zero] * size
    for i, c in enumerate(coeffs):
        if c:
            out[_shift_table(n, degree)[i][v]] = c
    return out


def multiply_linear(f: PolyVec, h: PolyVec) -> PolyVec:
    """Product ``h * f`` of a degree-l form and a linear form."""
    if h.degree != 1:
        raise ValueError("degree mismatch: second factor must be linear")
    if f.n != h.n:
        raise ValueError("dimension mismatch")
    if f.field != h.field:
        raise ValueError("field mismatch")
    fld = f.field
    return PolyVec(f.degree + 1, f.n, _mul_linear_raw(f.coeffs, h.coeffs, f.n, f.degree, fld), fld)


def _mul_linear_raw(fc: Sequence, hc: Sequence, n: int, degree: int,
                    field: FieldSpec) -> tuple:
    table = _shift_table(n, degree)
    size = comb(n + degree + 1, n)
    out = [0] * size
    hs = [(v, a) for v, a in enumerate(hc) if a]
    for i, c in enumerate(fc):
        if c:
            t = table[i]
            for v, a in hs:
                out[t[v]] += c * a
    if field.kind == "Fp":
        p = field.modulus
        return tuple(x % p for x in out)
    return tuple(field.coerce(x) for x in out)


def mul_linear_ints(fc: Sequence[int], hc: Sequence[int], n: int, degree: int,
                    p: int | None = None) -> list[int]:
    """Integer product kernel: ``fc`` (degree ``degree``) times linear ``hc``.

    Coefficients are plain ints; reduced mod ``p`` when given.
    """
    table = _shift_table(n, degree)
    out = [0] * comb(n + degree + 1, n)
    hs = [(v, a) for v, a in enumerate(hc) if a]
    for i, c in enumerate(fc):
        if c:
            t = table[i]
            for v, a in hs:
                out[t[v]] += c * a
    if p is not None:
        return [x % p for x in out]
    return out


def product_of_linears(hs: Sequence[PolyVec]) -> PolyVec:
    """Left fold of :func:`multiply_linear` over a nonempty list of linear forms."""
    if not hs:
        raise ValueError("empty product")
    acc = hs[0]
    if acc.degree != 1:
        raise ValueError("degree mismatch: factors must be linear")
    for h in hs[1:]:
        acc = multiply_linear(acc, h)
    return acc


def generated_slices(gens: Sequence[PolyVec], top: int, n: int | None = None,
                     field: FieldSpec | None = None, caps: dict[int, int] | None = None):
    """Yield ``(t, echelon)`` for each degree t up to ``top`` of the ideal <gens>.

    The degree-(t+1) slice is the span of x_v times the degree-t slice plus
    the generators of degree t+1.

    ``caps`` maps t to an upper bound on the slice dimension known in
    advance, typically dim I(G)_t when every generator vanishes on G. Rows
    stop being added once the bound is reached; the reported rank is then
    exact, since it can only grow.
    """
    if not gens:
        return
    n = gens[0].n if n is None else n
    field = gens[0].field if field is None else field
    for g in gens:
        if g.n != n:
            raise ValueError("dimension mismatch")
        if g.field != field:
            raise ValueError("field mismatch")
    by_deg: dict[int, list[PolyVec]] = {}
    for g in gens:
        by_deg.setdefault(g.degree, []).append(g)
    start = min(by_deg)
    prev = None
    for t in range(start, top + 1):
        e = Echelon(comb(n + t, n), field)
        cap = e.ncols if caps is None else caps.get(t, e.ncols)
        if prev is not None:
            size = e.ncols
            for row in prev.raw_rows():
                if e.rank >= cap:
                    break
                for v in range(n + 1):
                    e.add(_shift_raw(row, n, t - 1, v, size, 0))
        for g in by_deg.get(t, ()):
            if e.rank >= cap:
                break
            e.add(g.integral())
        yield t, e
        prev = e


# Prime just below 2**31, so the compiled modular kernel applies.
_SHADOW_PRIME = 2147483647


def generated_ranks(gens: Sequence[PolyVec], top: int, n: int,
                    field: FieldSpec, caps: dict[int, int]) -> dict[int, int]:
    """Exact dimensions of the degree-t slices of <gens>, for t up to ``top``.

    ``caps[t]`` must bound the slice dimension from above (dim I(G)_t when
    all generators vanish on G). Over Q the chain is first run on the
    integral views reduced mod a large prime: a rank mod p never exceeds the
    rank over Q, so reaching every cap proves the ranks exactly. Otherwise
    the computation is repeated over Q.
    """
    if field.is_rational and gens:
        shadow = FieldSpec.prime(_SHADOW_PRIME)
        reduced = [PolyVec._from_ints([c % _SHADOW_PRIME for c in g.integral()],
                                      g.degree, n, shadow) for g in gens]
        ranks = {t: e.rank for t, e in generated_slices(reduced, top, n, shadow, caps)}
        if all(ranks.get(t, 0) >= caps[t] for t in caps if t <= top):
            return ranks
    return {t: e.rank for t, e in generated_slices(gens, top, n, field, caps)}


def ideal_slice_from_generators(gens: Sequence[PolyVec], t: int, n: int | None = None,
                                field: FieldSpec | None = None) -> list[PolyVec]:
    """Canonical basis of the degree-t piece of the ideal generated by ``gens``."""
    if not gens:
        return []
    if max(g.degree for g in gens) > t:
        raise ValueError("t must be at least the largest generator degree")
    n = gens[0].n if n is None else n
    field = gens[0].field if field is None else field
    last = None
    for _, e in generated_slices(gens, t, n, field):
        last = e
    return [PolyVec(t, n, r, field) for r in last.basis()]
