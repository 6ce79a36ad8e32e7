"""Exact linear algebra over Q and prime fields F_p.

Scalars are stored raw: :class:`fractions.Fraction` over Q, ``int`` residues
in ``[0, p)`` over F_p. :class:`FieldSpec` owns the arithmetic and the
conversions; :class:`FieldElement` is a thin tagged wrapper for callers who
want field-checked values.

Elimination is deterministic: the pivot of each column is the first nonzero
entry at or below the current row, without magnitude heuristics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from . import _backend
from ._backend import BACKEND

__all__ = [
    "BACKEND",
    "FieldSpec",
    "FieldElement",
    "ExactMatrix",
    "Echelon",
    "QQ",
    "rref",
    "rank",
    "nullspace_basis",
    "in_row_space",
    "span_dim",
    "row_space_basis",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Q (``kind="Q"``) or the prime field F_p (``kind="Fp"``, ``modulus=p``)."""

    kind: str
    modulus: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.modulus is not None:
                raise ValueError("Q takes no modulus")
        elif self.kind == "Fp":
            p = self.modulus
            if not isinstance(p, int) or p < 3 or not _is_prime(p):
                raise ValueError(f"modulus must be an odd prime, got {p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("Q")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("Fp", p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``"q"`` or ``"fp:<p>"`` (case-insensitive)."""
        t = text.strip().lower()
        if t in ("q", "qq", "rationals"):
            return cls.rationals()
        if t.startswith("fp:"):
            try:
                p = int(t[3:])
            except ValueError:
                raise ValueError(f"bad field {text!r}") from None
            return cls.prime(p)
        raise ValueError(f"bad field {text!r}; expected 'q' or 'fp:<prime>'")

    @property
    def is_rational(self) -> bool:
        return self.kind == "Q"

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "Q" else self.modulus

    @property
    def label(self) -> str:
        return "Q" if self.kind == "Q" else f"Fp:{self.modulus}"

    def __str__(self):
        return self.label

    # -- scalars ---------------------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def coerce(self, x):
        """Convert an int, Fraction, decimal string or FieldElement to a raw scalar."""
        if isinstance(x, FieldElement):
            if x.field != self:
                raise ValueError("field mismatch")
            return x.value
        if isinstance(x, float):
            raise TypeError("floating point values are not accepted")
        if isinstance(x, str):
            try:
                x = Fraction(x.strip())
            except (ValueError, ZeroDivisionError):
                raise ValueError(f"bad scalar {x!r}") from None
        if self.kind == "Q":
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise TypeError(f"cannot coerce {type(x).__name__} to Q")
        p = self.modulus
        if isinstance(x, int):
            return x % p
        if isinstance(x, Fraction):
            den = x.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            return x.numerator * pow(den, p - 2, p) % p
        raise TypeError(f"cannot coerce {type(x).__name__} to F_{p}")

    def add(self, a, b):
        return a + b if self.kind == "Q" else (a + b) % self.modulus

    def sub(self, a, b):
        return a - b if self.kind == "Q" else (a - b) % self.modulus

    def mul(self, a, b):
        return a * b if self.kind == "Q" else a * b % self.modulus

    def neg(self, a):
        return -a if self.kind == "Q" else (-a) % self.modulus

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "Q":
            return 1 / a
        return pow(a, self.modulus - 2, self.modulus)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_str(self, a) -> str:
        return str(a)

    def from_str(self, s: str):
        return self.coerce(s)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        if self.kind == "Q":
            return {"kind": "Q"}
        return {"kind": "Fp", "p": self.modulus}

    @classmethod
    def from_json(cls, obj) -> "FieldSpec":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ValueError("field must be an object with a 'kind' key")
        if obj["kind"] == "Q":
            return cls.rationals()
        if obj["kind"] == "Fp":
            p = obj.get("p")
            if isinstance(p, str):
                p = int(p)
            return cls.prime(p)
        raise ValueError(f"unknown field kind {obj['kind']!r}")


QQ = FieldSpec.rationals()


@dataclass(frozen=True)
class FieldElement:
    """A scalar tagged with its field. Arithmetic refuses to mix fields."""

    value: object
    field: FieldSpec

    @classmethod
    def of(cls, x, field: FieldSpec) -> "FieldElement":
        return cls(field.coerce(x), field)

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("field mismatch")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return FieldElement(self.field.add(self.value, self._other(other)), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field.sub(self.value, self._other(other)), self.field)

    def __rsub__(self, other):
        return FieldElement(self.field.sub(self._other(other), self.value), self.field)

    def __mul__(self, other):
        return FieldElement(self.field.mul(self.value, self._other(other)), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field.div(self.value, self._other(other)), self.field)

    def __neg__(self):
        return FieldElement(self.field.neg(self.value), self.field)

    def __bool__(self):
        return bool(self.value)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.value), self.field)

    def __str__(self):
        return self.field.to_str(self.value)


def _coerce_row(row, field: FieldSpec) -> tuple:
    return tuple(field.coerce(x) for x in row)


@dataclass(frozen=True)
class ExactMatrix:
    """Dense immutable matrix of raw scalars in ``field``."""

    field: FieldSpec
    ncols: int
    rows: tuple

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], field: FieldSpec = QQ,
                  ncols: int | None = None) -> "ExactMatrix":
        data = tuple(_coerce_row(r, field) for r in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols required for a matrix without rows")
            ncols = len(data[0])
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        return cls(field, ncols, data)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: FieldSpec = QQ) -> "ExactMatrix":
        z = field.zero
        return cls(field, ncols, tuple((z,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int, field: FieldSpec = QQ) -> "ExactMatrix":
        return cls(field, n, tuple(
            tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.rows[i][j], self.field)

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product ``self @ v``."""
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        f = self.field
        vv = _coerce_row(v, f)
        out = []
        for r in self.rows:
            s = sum(a * b for a, b in zip(r, vv) if a and b)
            out.append(f.coerce(s) if f.kind == "Fp" else Fraction(s))
        return tuple(out)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.field, len(self.rows), tuple(zip(*self.rows))
                           if self.rows else tuple(() for _ in range(self.ncols)))

    def to_strings(self) -> list[list[str]]:
        return [[self.field.to_str(x) for x in r] for r in self.rows]


def _check_same_field(items) -> FieldSpec | None:
    field = None
    for x in items:
        if isinstance(x, FieldElement):
            if field is None:
                field = x.field
            elif field != x.field:
                raise ValueError("field mismatch")
    return field


def _rref_rational(rows: list[list[Fraction]], ncols: int):
    a = [list(r) for r in rows]
    nrows = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        k = r
        while k < nrows and not a[k][c]:
            k += 1
        if k == nrows:
            continue
        a[r], a[k] = a[k], a[r]
        prow = a[r]
        piv = prow[c]
        if piv != 1:
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] = prow[j] / piv
        for i in range(nrows):
            if i == r:
                continue
            row = a[i]
            f = row[c]
            if f:
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: ExactMatrix) -> tuple[ExactMatrix, list[int], int]:
    """Reduced row echelon form.

    Returns:
        ``(rref, pivot_columns, rank)``.
    """
    _check_same_field(x for r in m.rows for x in r)
    f = m.field
    if f.is_rational:
        out, piv = _rref_rational([list(r) for r in m.rows], m.ncols)
    else:
        out, piv = _backend.rref_modp([list(r) for r in m.rows], m.ncols, f.modulus)
    return ExactMatrix(f, m.ncols, tuple(tuple(r) for r in out)), piv, len(piv)


def nullspace_basis(m: ExactMatrix) -> list[tuple]:
    """Canonical kernel basis read off the RREF, one vector per free column."""
    red, piv, _ = rref(m)
    f = m.field
    pivset = set(piv)
    basis = []
    for free in range(m.ncols):
        if free in pivset:
            continue
        v = [f.zero] * m.ncols
        v[free] = f.one
        for i, c in enumerate(piv):
            x = red.rows[i][free]
            if x:
                v[c] = f.neg(x)
        basis.append(tuple(v))
    return basis


class Echelon:
    """Streaming span accumulator over ``field``.

    Rows are reduced as they arrive, so only the current echelon basis is
    kept in memory. Over Q the rows are scaled to integers and handled by the
    fraction-free kernel; the canonical basis is recovered exactly at the end.
    """

    def __init__(self, ncols: int, field: FieldSpec = QQ):
        self.ncols = ncols
        self.field = field
        if field.is_rational:
            self._k = _backend.int_echelon(ncols)
        else:
            self._k = _backend.modp_echelon(ncols, field.modulus)

    @property
    def rank(self) -> int:
        return self._k.rank

    def _prep(self, row):
        if self.field.is_rational:
            if all(isinstance(x, int) for x in row):
                return list(row)
            fr = [Fraction(x) for x in row]
            den = lcm(*(x.denominator for x in fr)) if fr else 1
            return [int(x * den) for x in fr]
        return list(row)

    def add(self, row: Sequence) -> bool:
        """Add a raw row; return True iff it is independent of the rows so far."""
        if len(row) != self.ncols:
            raise ValueError("dimension mismatch")
        return self._k.add(self._prep(row))

    def extend(self, rows: Iterable[Sequence]) -> int:
        for r in rows:
            self.add(r)
        return self.rank

    def contains(self, row: Sequence) -> bool:
        if len(row) != self.ncols:
            raise ValueError("dimension mismatch")
        return not any(self._k.reduce(self._prep(row)))

    def raw_rows(self) -> list[list]:
        """Echelon rows as stored (integers over Q, residues over F_p)."""
        return self._k.rows()

    def basis(self) -> list[tuple]:
        """Canonical basis of the span: the nonzero rows of its RREF."""
        rows = self._k.rows()
        if not rows:
            return []
        if self.field.is_rational:
            out, piv = _rref_rational([[Fraction(x) for x in r] for r in rows], self.ncols)
            return [tuple(r) for r in out[:len(piv)]]
        out, piv = _backend.rref_modp(rows, self.ncols, self.field.modulus)
        return [tuple(r) for r in out[:len(piv)]]


def _field_of(vectors, field: FieldSpec | None) -> FieldSpec:
    tagged = _check_same_field(x for v in vectors for x in v)
    if field is None:
        return tagged or QQ
    if tagged is not None and tagged != field:
        raise ValueError("field mismatch")
    return field


def _raw(v, field: FieldSpec):
    return [field.coerce(x) for x in v]


def rank(m: ExactMatrix) -> int:
    e = Echelon(m.ncols, m.field)
    return e.extend(m.rows)


def span_dim(vectors: Sequence[Sequence], field: FieldSpec | None = None) -> int:
    """Exact rank of the stacked vectors."""
    if not vectors:
        return 0
    field = _field_of(vectors, field)
    ncols = len(vectors[0])
    e = Echelon(ncols, field)
    for v in vectors:
        if len(v) != ncols:
            raise ValueError("dimension mismatch")
        e.add(_raw(v, field))
    return e.rank


def row_space_basis(vectors: Sequence[Sequence], ncols: int,
                    field: FieldSpec | None = None) -> list[tuple]:
    field = _field_of(vectors, field)
    e = Echelon(ncols, field)
    for v in vectors:
        e.add(_raw(v, field))
    return e.basis()


def in_row_space(v: Sequence, basis: Sequence[Sequence],
                 field: FieldSpec | None = None) -> bool:
    """True iff ``v`` lies in the span of ``basis``, decided by rank comparison."""
    field = _field_of([v, *basis], field)
    for b in basis:
        if len(b) != len(v):
            raise ValueError("dimension mismatch")
    e = Echelon(len(v), field)
    for b in basis:
        e.add(_raw(b, field))
    before = e.rank
    e.add(_raw(v, field))
    return e.rank == before
