"""Executable checks of the generation results, with exact dimension evidence.

Every check returns a :class:`VerifyReport`. Evidence rows are dicts with a
``name``, the computed ``value``, the ``expected`` value and ``equal``; a
report passes iff every row is equal. A failing report means a bug, since the
statements checked are theorems.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .exact_linalg import Echelon, ExactMatrix, FieldSpec, rank
from .graded_poly import PolyVec, generated_ranks, ideal_piece, mul_linear_ints, vanishes_on
from .proj_geometry import PointSet, is_lgp, linear_forms_vanishing_on
from .split_gens import (
    Certificate,
    decompose_many,
    generating_set,
    phi_span_basis,
    split_degree,
)

__all__ = [
    "VerifyReport",
    "verify_span_theorem",
    "verify_multiplication",
    "verify_main",
    "verify_lemma_sum",
    "check_certificate",
    "quadric_rank",
]


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class VerifyReport:
    claim: str
    parameters: dict
    evidence: tuple
    passed: bool

    @classmethod
    def build(cls, claim: str, parameters: dict, evidence: Sequence[dict]) -> "VerifyReport":
        ev = tuple(evidence)
        return cls(claim, parameters, ev, all(r["equal"] for r in ev))

    def to_json(self) -> dict:
        return {"claim": self.claim, "parameters": dict(self.parameters),
                "evidence": [dict(r) for r in self.evidence], "passed": self.passed}


def _row(name: str, value, expected, **extra) -> dict:
    return {"name": name, "value": value, "expected": expected,
            "equal": value == expected, **extra}


def _params(gamma: PointSet, **kw) -> dict:
    return {"n": gamma.n, "d": len(gamma), "field": gamma.field.label, **kw}


def _require_lgp(gamma: PointSet):
    if not is_lgp(gamma):
        raise ValueError("point set is not in linearly general position")


def _vanish_count(forms: Sequence[PolyVec], gamma: PointSet) -> int:
    return sum(vanishes_on(f, gamma) for f in forms)


def verify_span_theorem(gamma: PointSet, l: int) -> VerifyReport:
    """Decomposable l-forms vanishing on gamma: none below ceil(d/n), spanning at or above."""
    _require_lgp(gamma)
    n, d = gamma.n, len(gamma)
    threshold = _ceil_div(d, n)
    basis = phi_span_basis(gamma, l)
    dim_ideal = len(ideal_piece(gamma, l))
    span = len(basis)
    ev = []
    if l < threshold:
        ev.append(_row("phi_span_dim", span, 0, deg=l, branch="empty"))
    else:
        ev.append(_row("phi_span_dim", span, dim_ideal, deg=l, branch="spans"))
        ev.append(_row("dim_ideal", dim_ideal, comb(n + l, n) - d, deg=l))
        ev.append(_row("phi_basis_vanishing", _vanish_count(basis, gamma), span, deg=l))
    return VerifyReport.build("span", _params(gamma, l=l), ev)


def verify_multiplication(gamma: PointSet, m: int) -> VerifyReport:
    """Linear multiples of decomposable m-forms span I(gamma)_{m+1}."""
    n, d = gamma.n, len(gamma)
    if m < 2:
        raise ValueError("need m >= 2")
    if d > m * n:
        raise ValueError("degree too small for this d")
    _require_lgp(gamma)
    f = gamma.field
    p = None if f.is_rational else f.modulus
    e = Echelon(comb(n + m + 1, n), f)
    variables = [[1 if i == v else 0 for i in range(n + 1)] for v in range(n + 1)]
    for g in phi_span_basis(gamma, m):
        gc = g.integral()
        for x in variables:
            e.add(mul_linear_ints(gc, x, n, m, p))
    dim_ideal = len(ideal_piece(gamma, m + 1))
    ev = [
        _row("s1_phi_span_dim", e.rank, dim_ideal, deg=m + 1),
        _row("dim_ideal", dim_ideal, comb(n + m + 1, n) - d, deg=m + 1),
    ]
    return VerifyReport.build("mult", _params(gamma, m=m), ev)


def _proportional(a: Sequence[int], b: Sequence[int]) -> bool:
    """Equal up to a nonzero scalar; integral views over Q carry a scale."""
    ia = next((i for i, x in enumerate(a) if x), None)
    ib = next((i for i, x in enumerate(b) if x), None)
    if ia is None or ia != ib:
        return False
    return all(x * b[ia] == y * a[ia] for x, y in zip(a, b))


def check_certificate(cert: Certificate) -> list[dict]:
    """Evidence that each generator is what its provenance says it is.

    Rebuilds every degree-m generator as the product of the hyperplanes
    through its blocks, checks that it vanishes on the point set, and bounds
    the generator count.
    """
    gamma, m = cert.point_set, cert.m
    n = gamma.n
    p = None if gamma.field.is_rational else gamma.field.modulus
    total = len(cert.generators)
    rebuilt = 0
    vanish = 0
    extended: dict[tuple, PointSet] = {}
    for g in cert.generators:
        gj = extended.get(g.augmented)
        if gj is None:
            gj = extended[g.augmented] = gamma.extended(g.augmented)
        part = g.partition
        ok = part.d == len(gj) and len(part.blocks) == m and part.max_block() == n
        if ok:
            acc = None
            for deg, b in enumerate(part.blocks):
                forms = linear_forms_vanishing_on(gj, b)
                if len(forms) != 1:
                    ok = False
                    break
                h = forms[0].integral()
                acc = list(h) if acc is None else mul_linear_ints(acc, h, n, deg, p)
            ok = ok and _proportional(acc, g.form.integral())
        rebuilt += ok
        vanish += vanishes_on(g.form, gamma)
    bound = (cert.epsilon + 1) * split_degree(n, m)
    return [
        _row("generators_rebuilt", rebuilt, total),
        _row("generators_vanishing", vanish, total),
        _row("generator_count_within_bound", total <= bound, True, count=total, bound=bound),
        _row("lower_basis_vanishing", _vanish_count(cert.lower_degree_basis, gamma),
             len(cert.lower_degree_basis)),
    ]


def verify_main(gamma: PointSet, m: int, max_degree: int | None = None,
                certificate: Certificate | None = None) -> VerifyReport:
    """I(gamma) is generated by I(gamma)_{<m} and decomposable m-forms, slice by slice."""
    if max_degree is None:
        max_degree = m + 2
    if max_degree < m + 1:
        raise ValueError("max_degree must be at least m+1")
    cert = generating_set(gamma, m) if certificate is None else certificate
    gens = cert.all_generators()
    dims = {t: len(ideal_piece(gamma, t)) for t in range(1, max_degree + 1)}
    # the slice ranks stop at dim I(gamma)_t; that early exit is sound only
    # together with the vanishing rows from check_certificate below
    generated = generated_ranks(gens, max_degree, gamma.n, gamma.field, dims)
    ev = []
    for t in range(m, max_degree + 1):
        ev.append(_row("dim_generated", generated.get(t, 0), dims[t], deg=t))
    ev.extend(check_certificate(cert))
    return VerifyReport.build("main", _params(gamma, m=m, max_degree=max_degree), ev)


def verify_lemma_sum(gamma0: PointSet, x_index: int, y_index: int, l: int) -> VerifyReport:
    """I(G)_l = I(G+x)_l + I(G+y)_l where G is gamma0 minus two points x, y."""
    n = gamma0.n
    size = len(gamma0)
    if x_index == y_index:
        raise ValueError("x and y must be distinct")
    for i in (x_index, y_index):
        if not 0 <= i < size:
            raise ValueError(f"index {i} out of range")
    d = size - 2
    if l < _ceil_div(d + 1, n):
        raise ValueError(f"need l >= ceil((d+1)/n) = {_ceil_div(d + 1, n)}")
    _require_lgp(gamma0)
    g1 = gamma0.without([x_index])
    g2 = gamma0.without([y_index])
    g = gamma0.without([x_index, y_index])
    c = comb(n + l, n)
    i1, i2, i = ideal_piece(g1, l), ideal_piece(g2, l), ideal_piece(g, l)
    e = Echelon(c, gamma0.field)
    e.extend(v.coeffs for v in i1)
    e.extend(v.coeffs for v in i2)
    ev = [
        _row("dim_sum", e.rank, len(i)),
        _row("dim_I_gamma", len(i), c - d),
        _row("dim_I_gamma1", len(i1), c - (d + 1)),
        _row("dim_I_gamma2", len(i2), c - (d + 1)),
        _row("dim_I_gamma0", len(ideal_piece(gamma0, l)), c - (d + 2)),
    ]
    pairs = decompose_many(list(i), g1, g2, l)
    ok = sum(vanishes_on(a, g1) and vanishes_on(b, g2) and a + b == F
             for (a, b), F in zip(pairs, i))
    ev.append(_row("decompositions_valid", ok, len(i)))
    return VerifyReport.build(
        "lemma-sum", _params(gamma0, l=l, x=x_index, y=y_index), ev)


def quadric_rank(q: PolyVec) -> int:
    """Rank of the symmetric matrix of a quadratic form."""
    if q.degree != 2:
        raise ValueError("degree mismatch: expected a quadric")
    f: FieldSpec = q.field
    if f.characteristic == 2:
        raise ValueError("rank undefined in char 2 via symmetric matrix")
    n1 = q.n + 1
    half = f.inv(f.coerce(2))
    g = [[f.zero] * n1 for _ in range(n1)]
    for mono, c in q.terms().items():
        vs = [v for v, e in enumerate(mono) for _ in range(e)]
        a, b = vs
        if a == b:
            g[a][a] = c
        else:
            g[a][b] = g[b][a] = f.mul(c, half)
    return rank(ExactMatrix(f, n1, tuple(tuple(r) for r in g)))
