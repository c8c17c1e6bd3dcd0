"""Command-line front end: ``ecmds search|build|verify|sweep``.

Exit codes: 0 pass, 1 verification failure, 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from typing import Sequence

from . import analysis
from .analysis import BudgetExceeded, table1_length
from .code import CodeError, LinearCode, build_code_even, build_code_odd, dumps, extend_code, loads
from .ec import (
    Curve,
    CurveError,
    Point,
    Subgroup,
    format_point,
    index2_subgroup,
    new_curve,
    parse_point,
    search_curve,
    subgroup_generated,
    waterhouse_max_even_N,
)
from .func import FunctionError
from .gf import FieldCtx, FieldError, field_of_order, format_poly

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class JobSpec:
    """Everything needed to reproduce one code bit for bit."""

    q: int
    k: int
    modulus: str | None = None
    curve: Sequence[str] | None = None
    target_N: int | None = None
    subgroup: int = 0
    generators: Sequence[str] | None = None
    P: str | None = None
    Q: str | None = None
    extend: bool = False
    methods: Sequence[str] = analysis.METHODS
    seed: int = 0
    budget: int = analysis.DEFAULT_BUDGET
    workers: int = 1


@dataclass
class Setup:
    ctx: FieldCtx
    curve: Curve
    H: Subgroup
    P: Point | None
    Q: Point
    notes: list[str] = field(default_factory=list)


def setup_curve(q: int, modulus: str | None = None, curve: Sequence[str] | None = None, target_N: int | None = None) -> Curve:
    F = field_of_order(q, modulus)
    if curve is not None:
        coeffs = [F(c).value for c in curve]
        if len(coeffs) != 5:
            raise CurveError("a curve needs five coefficients a1 a2 a3 a4 a6")
        return new_curve(F, *coeffs)
    return search_curve(F, target_N)


def setup(job: JobSpec) -> Setup:
    E = setup_curve(job.q, job.modulus, job.curve, job.target_N)
    S = E.structure
    if job.generators:
        H = subgroup_generated(S, [parse_point(E, g) for g in job.generators])
        if H.index != 2:
            raise CurveError(f"generators span a subgroup of order {len(H)}, not {S.N // 2}")
    else:
        H = index2_subgroup(S, job.subgroup)
    if job.Q is not None:
        Q = parse_point(E, job.Q)
    else:
        Q = next(R for R in E.points if R not in H)
    P = None
    if job.k % 2 == 0:
        P = parse_point(E, job.P) if job.P is not None else E.infinity
    return Setup(E.ctx, E, H, P, Q)


def build(job: JobSpec) -> LinearCode:
    s = setup(job)
    if job.k % 2:
        if job.extend:
            raise CodeError("extension applies to even k only")
        C = build_code_odd(job.k, s.H, s.Q)
    else:
        C = build_code_even(job.k, s.H, s.P, s.Q)
        if job.extend:
            C = extend_code(C)
    C.meta["job"] = {k: (list(v) if isinstance(v, tuple) else v) for k, v in asdict(job).items()}
    return C


def search_report(q: int, target_N: int | None = None, modulus: str | None = None) -> dict:
    E = setup_curve(q, modulus, None, target_N)
    S = E.structure
    return {
        "q": q,
        "modulus": format_poly(E.ctx.modulus),
        "curve": [str(c) for c in E.coefficients],
        "equation": E.equation(),
        "N": S.N,
        "group": S.describe(),
        "generators": [format_point(g) for g in S.gens],
    }


def sweep(qs: Sequence[int], kmax: int = 8) -> list[dict]:
    """Lengths against the table formulas and Schur dimensions for 2 < k <= min(kmax, n/2)."""
    rows = []
    for q in qs:
        E = setup_curve(q)
        N = E.order
        H = index2_subgroup(E.structure)
        Q = next(R for R in E.points if R not in H)
        row = {
            "q": q,
            "N": N,
            "N_max": waterhouse_max_even_N(q),
            "n": N // 2,
            "table1": table1_length(q),
            "codes": [],
        }
        row["length_ok"] = row["n"] == row["table1"] and N == row["N_max"]
        for k in range(3, kmax + 1):
            n = N // 2 if k % 2 else N // 2 - 1
            if 2 * k > n:
                continue
            try:
                C = build_code_odd(k, H, Q) if k % 2 else build_code_even(k, H, E.infinity, Q)
            except (CodeError, FunctionError) as exc:
                row["codes"].append({"k": k, "n": n, "error": str(exc)})
                continue
            rep = analysis.schur_square(C)[1]
            ok = rep.dim_square == min(2 * k, n) and rep.dim_square != 2 * k - 1
            row["codes"].append(
                {"k": k, "n": n, "schur": rep.dim_square, "verdict": rep.verdict, "ok": ok}
            )
        rs_n = min(q, row["n"])
        rs_k = 3
        ctl = analysis.schur_square(analysis.rs_control_code(E.ctx, rs_n, rs_k))[1]
        row["rs_control"] = {"n": rs_n, "k": rs_k, "schur": ctl.dim_square, "ok": ctl.dim_square == min(2 * rs_k - 1, rs_n)}
        rows.append(row)
    return rows


# -- argparse plumbing --------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ecmds", description="MDS codes from index-2 subgroups of elliptic curves")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--modulus")
        p.add_argument("--curve", nargs=5, metavar="A", help="a1 a2 a3 a4 a6 in field notation")
        p.add_argument("--target-n", type=int, dest="target_N")

    p = sub.add_parser("search", help="find a curve and print its group")
    common(p)
    p.add_argument("--format", choices=("text", "structured"), default="text")

    p = sub.add_parser("build", help="construct a code and emit its generator matrix")
    common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--subgroup", default="0", help="selector 0..2, or generator points separated by ';'")
    p.add_argument("--P")
    p.add_argument("--Q")
    p.add_argument("--extend", action="store_true")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--verify", action="store_true", help="run the checks before emitting")
    p.add_argument("--methods", default=",".join(analysis.METHODS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--budget", type=int, default=analysis.DEFAULT_BUDGET)

    p = sub.add_parser("verify", help="check a matrix file for MDS and Schur rank")
    p.add_argument("matrix", help="matrix file, or - for stdin")
    p.add_argument("--q", type=int)
    p.add_argument("--modulus")
    p.add_argument("--methods", default="minors,bruteforce,schur")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sample", type=int, help="sample this many subsets when over budget")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--budget", type=int, default=analysis.DEFAULT_BUDGET)

    p = sub.add_parser("sweep", help="lengths and Schur dimensions over several fields")
    p.add_argument("--q", type=int, nargs="+", default=[4, 7, 8, 9, 11, 13, 16, 49])
    p.add_argument("--k", type=int, default=8, help="largest k")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    return ap


def _methods(text: str) -> tuple[str, ...]:
    return tuple(m.strip() for m in text.split(",") if m.strip())


def _emit_reports(rep, schur, fmt: str) -> str:
    if fmt == "structured":
        out = {"mds": rep.to_record(), "schur": schur.to_record() if schur else None}
        return json.dumps(out, indent=2, sort_keys=True) + "\n"
    s = rep.summary()
    if schur is not None:
        s += "\n" + schur.summary()
    return s + "\n"


def _cmd_search(a) -> int:
    rep = search_report(a.q, a.target_N, a.modulus)
    if a.format == "structured":
        print(json.dumps(rep, indent=2))
    else:
        print(f"{rep['equation']} over F_{rep['q']}: N = {rep['N']}, {rep['group']}")
        print("generators: " + ", ".join(rep["generators"]))
    return EXIT_OK


def _cmd_build(a) -> int:
    sel, gens = 0, None
    if a.subgroup.strip().lstrip("-").isdigit():
        sel = int(a.subgroup)
    else:
        gens = [g.strip() for g in a.subgroup.split(";") if g.strip()]
    job = JobSpec(
        q=a.q, k=a.k, modulus=a.modulus, curve=a.curve, target_N=a.target_N, subgroup=sel,
        generators=gens, P=a.P, Q=a.Q, extend=a.extend, methods=_methods(a.methods),
        seed=a.seed, budget=a.budget, workers=a.workers,
    )
    C = build(job)
    sys.stdout.write(dumps(C, a.format))
    if a.verify:
        rep, schur = analysis.verify(C, job.methods, job.budget, None, job.seed, job.workers)
        sys.stderr.write(_emit_reports(rep, schur, "text"))
        return EXIT_OK if rep.passed else EXIT_FAIL
    return EXIT_OK


def _cmd_verify(a) -> int:
    text = sys.stdin.read() if a.matrix == "-" else open(a.matrix).read()
    ctx = field_of_order(a.q, a.modulus) if a.q else None
    C = loads(text, ctx)
    rep, schur = analysis.verify(C, _methods(a.methods), a.budget, a.sample, a.seed, a.workers)
    sys.stdout.write(_emit_reports(rep, schur, a.format))
    return EXIT_OK if rep.passed else EXIT_FAIL


def _cmd_sweep(a) -> int:
    rows = sweep(a.q, a.k)
    ok = all(r["length_ok"] and r["rs_control"]["ok"] and all(c.get("ok") for c in r["codes"]) for r in rows)
    if a.format == "structured":
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'q':>4} {'N':>4} {'n':>4} {'table':>6}  Schur dims (k:dim)")
        for r in rows:
            dims = " ".join(
                f"{c['k']}:{c.get('schur', 'err')}{'' if c.get('ok') else '!'}" for c in r["codes"]
            )
            mark = "" if r["length_ok"] else "  length mismatch"
            print(f"{r['q']:>4} {r['N']:>4} {r['n']:>4} {r['table1']:>6}  {dims}{mark}")
    return EXIT_OK if ok else EXIT_FAIL


def main(argv: Sequence[str] | None = None) -> int:
    a = _parser().parse_args(argv)
    handler = {"search": _cmd_search, "build": _cmd_build, "verify": _cmd_verify, "sweep": _cmd_sweep}[a.cmd]
    try:
        return handler(a)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (FieldError, CurveError, CodeError, FunctionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
