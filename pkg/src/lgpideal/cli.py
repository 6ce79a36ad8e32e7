"""Command-line front end.

Exit status: 0 on success or when every check passed, 1 when a check failed
(or ``check-lgp`` answered false), 2 on bad input with a one-line
diagnostic on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from math import comb
from pathlib import Path

from . import jsonio
from .exact_linalg import FieldSpec
from .graded_poly import ideal_piece
from .proj_geometry import PointSet, is_lgp, moment_curve_points
from .split_gens import generating_set, sigma_generators, split_degree
from .verifier import (
    VerifyReport,
    verify_lemma_sum,
    verify_main,
    verify_multiplication,
    verify_span_theorem,
)

DEFAULT_PRIME = 32003
CLAIMS = ("span", "mult", "main", "lemma-sum")
CSV_HEADER = ["n", "d", "m", "field", "claim", "passed"]


class CliError(Exception):
    pass


def choose_params(d: int, field: FieldSpec, seed: int | None) -> list[int]:
    """Moment parameters 0..d-1, or d distinct seeded random ones (sorted)."""
    if seed is None:
        return list(range(d))
    rng = random.Random(f"{seed}:{d}:{field.label}")
    pool = range(field.modulus) if not field.is_rational else range(-100, 101)
    if d > len(pool):
        raise CliError("field too small for the requested number of points")
    return sorted(rng.sample(pool, d))


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_points(args) -> PointSet:
    if getattr(args, "input", None):
        return PointSet.from_json(jsonio.read(args.input))
    if args.n is None or args.d is None:
        raise CliError("need --input or both --n and --d")
    field = FieldSpec.parse(args.field)
    return moment_curve_points(args.n, choose_params(args.d, field, args.seed), field)


def _degree(args, *names) -> int:
    for name in names:
        v = getattr(args, name, None)
        if v is not None:
            return v
    raise CliError(f"need --{names[0]}")


# -- commands -----------------------------------------------------------------


def cmd_points_gen(args) -> int:
    if args.n < 1 or args.d < 0:
        raise CliError("need n >= 1 and d >= 0")
    field = FieldSpec.parse(args.field)
    gamma = moment_curve_points(args.n, choose_params(args.d, field, args.seed), field)
    _emit(jsonio.dumps(gamma.to_json()), args.output)
    return 0


def cmd_check_lgp(args) -> int:
    ok = is_lgp(_load_points(args))
    print("true" if ok else "false")
    return 0 if ok else 1


def cmd_ideal_dim(args) -> int:
    gamma = _load_points(args)
    l = _degree(args, "l")
    if l < 0:
        raise CliError("need l >= 0")
    print(len(ideal_piece(gamma, l)))
    return 0


def cmd_split_count(args) -> int:
    print(split_degree(args.n, args.l))
    return 0


def cmd_split_sigma(args) -> int:
    gamma = _load_points(args)
    m = _degree(args, "m")
    gens = sigma_generators(gamma, m)
    out = {
        "field": gamma.field.to_json(),
        "n": gamma.n,
        "m": m,
        "generators": [{"blocks": part.to_json(), "augmented": [],
                        "coeffs": [gamma.field.to_str(c) for c in form.coeffs]}
                       for form, part in gens],
    }
    _emit(jsonio.dumps(out), args.output)
    return 0


def cmd_gens_make(args) -> int:
    gamma = _load_points(args)
    cert = generating_set(gamma, _degree(args, "m"))
    _emit(jsonio.dumps(cert.to_json()), args.output)
    return 0 if cert.passed else 1


def run_verify(gamma: PointSet, target: str, degree: int, max_degree: int | None = None,
               x: int | None = None, y: int | None = None) -> VerifyReport:
    if target == "span":
        return verify_span_theorem(gamma, degree)
    if target == "mult":
        return verify_multiplication(gamma, degree)
    if target == "main":
        return verify_main(gamma, degree, max_degree)
    if target == "lemma-sum":
        d = len(gamma)
        x = d - 2 if x is None else x
        y = d - 1 if y is None else y
        return verify_lemma_sum(gamma, x, y, degree)
    raise CliError(f"unknown target {target!r}")


def cmd_verify(args) -> int:
    gamma = _load_points(args)
    report = run_verify(gamma, args.target, _degree(args, "m", "l"),
                        args.max_degree, args.x, args.y)
    _emit(jsonio.dumps(report.to_json()), args.output)
    return 0 if report.passed else 1


# -- grid ---------------------------------------------------------------------


def _field_tag(field: FieldSpec) -> str:
    return "Q" if field.is_rational else f"Fp{field.modulus}"


def run_cell(n: int, d: int, m: int, field_text: str, seed: int | None) -> dict:
    """All four claims for one grid cell. Errors are recorded, not raised."""
    field = FieldSpec.parse(field_text)
    result = {"n": n, "d": d, "m": m, "field": field.label, "reports": {}, "certificate": None}
    try:
        gamma = moment_curve_points(n, choose_params(d, field, seed), field)
    except (ValueError, CliError) as exc:
        for claim in CLAIMS:
            result["reports"][claim] = _error_report(claim, n, d, m, field, exc)
        return result
    cert = None

    def span():
        rows = []
        for l in range(1, m + 1):
            rows.extend(verify_span_theorem(gamma, l).evidence)
        return VerifyReport.build("span", {"n": n, "d": d, "field": field.label, "m": m}, rows)

    def main():
        nonlocal cert
        cert = generating_set(gamma, m)
        return verify_main(gamma, m, certificate=cert)

    steps = {
        "span": span,
        "mult": lambda: verify_multiplication(gamma, m),
        "main": main,
        "lemma-sum": lambda: verify_lemma_sum(gamma, d - 2, d - 1, m),
    }
    for claim in CLAIMS:
        try:
            result["reports"][claim] = steps[claim]().to_json()
        except (ValueError, CliError) as exc:
            result["reports"][claim] = _error_report(claim, n, d, m, field, exc)
    if cert is not None:
        result["certificate"] = cert.to_json()
    return result


def _error_report(claim, n, d, m, field, exc) -> dict:
    return {"claim": claim, "parameters": {"n": n, "d": d, "m": m, "field": field.label},
            "evidence": [], "error": str(exc), "passed": False}


def grid_cells(ns, ms, ds, fields):
    """Valid cells and skipped cells (with reasons), both in canonical order."""
    cells, skipped = [], []
    for n in sorted(set(ns)):
        for m in sorted(set(ms)):
            dvals = ds if ds is not None else range((m - 1) * n + 1, m * n + 1)
            for d in sorted(set(dvals)):
                for f in fields:
                    if d > m * n:
                        skipped.append((n, d, m, f, "d > mn"))
                    elif d < 2 or m < 2:
                        skipped.append((n, d, m, f, "need d >= 2 and m >= 2"))
                    else:
                        cells.append((n, d, m, f))
    return cells, skipped


def run_grid(ns, ms, ds, fields, seed=None, jobs=1, out_dir=None):
    """Run every cell; return (csv text, results, skipped)."""
    labels = [FieldSpec.parse(f).label for f in fields]
    cells, skipped = grid_cells(ns, ms, ds, labels)
    args = [(n, d, m, f, seed) for n, d, m, f in cells]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(run_cell, *zip(*args)))
    else:
        results = [run_cell(*a) for a in args]
    results.sort(key=lambda r: (r["n"], r["d"], r["m"], r["field"]))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in results:
        for claim in CLAIMS:
            passed = r["reports"][claim]["passed"]
            w.writerow([r["n"], r["d"], r["m"], r["field"], claim, "true" if passed else "false"])
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for r in results:
            stem = f"n{r['n']}_d{r['d']}_m{r['m']}_{_field_tag(FieldSpec.parse(r['field']))}"
            if r["certificate"] is not None:
                jsonio.write(r["certificate"], out / f"cert_{stem}.json")
            for claim in CLAIMS:
                jsonio.write(r["reports"][claim], out / f"report_{stem}_{claim}.json")
        (out / "summary.csv").write_text(buf.getvalue(), encoding="utf-8")
    return buf.getvalue(), results, skipped


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def cmd_grid(args) -> int:
    fields = [f for f in args.fields.split(",") if f.strip()]
    text, results, skipped = run_grid(args.n, args.m, args.d, fields, args.seed,
                                      args.jobs, args.out_dir)
    for n, d, m, f, why in skipped:
        print(f"skipped n={n} d={d} m={m} field={f}: {why}", file=sys.stderr)
    if args.csv:
        Path(args.csv).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    ok = all(rep["passed"] for r in results for rep in r["reports"].values())
    return 0 if ok else 1


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lgpideal", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def points_opts(sp, need_input=False):
        sp.add_argument("--input", "-i", required=need_input, help="point-set JSON file")
        if not need_input:
            sp.add_argument("--n", type=int)
            sp.add_argument("--d", type=int)
            sp.add_argument("--field", default="q", help="'q' or 'fp:<prime>' (default q)")
            sp.add_argument("--seed", type=int)

    sp = sub.add_parser("points-gen", help="write moment-curve points as JSON")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--field", default="q")
    sp.add_argument("--seed", type=int, help="pick distinct random parameters")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_points_gen)

    sp = sub.add_parser("check-lgp", help="exit 0 iff the points are in general position")
    points_opts(sp)
    sp.set_defaults(func=cmd_check_lgp)

    sp = sub.add_parser("ideal-dim", help="print dim I(G)_l")
    points_opts(sp)
    sp.add_argument("--l", type=int, required=True)
    sp.set_defaults(func=cmd_ideal_dim)

    sp = sub.add_parser("split-count", help="print (ln)!/((n!)^l l!)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.set_defaults(func=cmd_split_count)

    sp = sub.add_parser("split-sigma", help="hyperplane products over equal-block partitions")
    points_opts(sp)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_split_sigma)

    sp = sub.add_parser("gens-make", help="write a generator certificate")
    points_opts(sp)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_gens_make)

    sp = sub.add_parser("verify", help="run one check and write its report")
    points_opts(sp)
    sp.add_argument("--target", choices=CLAIMS, required=True)
    sp.add_argument("--m", type=int)
    sp.add_argument("--l", type=int)
    sp.add_argument("--max-degree", type=int)
    sp.add_argument("--x", type=int, help="lemma-sum: first removed index (default d-2)")
    sp.add_argument("--y", type=int, help="lemma-sum: second removed index (default d-1)")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("grid", help="run all checks over a parameter grid")
    sp.add_argument("--n", type=_int_list, default=[2, 3, 4])
    sp.add_argument("--m", type=_int_list, default=[2, 3])
    sp.add_argument("--d", type=_int_list, default=None,
                    help="point counts (default (m-1)n+1..mn per cell)")
    sp.add_argument("--fields", default=f"q,fp:{DEFAULT_PRIME}")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--csv", help="summary CSV path (default stdout)")
    sp.add_argument("--out-dir", help="directory for certificates, reports and summary.csv")
    sp.set_defaults(func=cmd_grid)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ValueError, TypeError, ZeroDivisionError, KeyError, OSError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"lgpideal {args.command}: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
