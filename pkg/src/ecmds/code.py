"""Evaluation codes C_L(D, G) on index-2 subgroups, their extension, and matrix I/O."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import linalg
from .ec import Curve, Point, Subgroup, format_point
from .func import Divisor, RRBasis, rr_basis_kQ, rr_basis_mixed
from .gf import FieldCtx, FieldError, format_poly, make_field, parse_poly, prime_power

__all__ = [
    "CodeError",
    "Construction",
    "LinearCode",
    "build_code_odd",
    "build_code_even",
    "extend_code",
    "evaluation_code",
    "rank",
    "rref",
    "minor_nonsingular",
    "format_matrix",
    "to_record",
    "dumps",
    "loads",
    "matrix_from_strings",
]

rank = linalg.rank
minor_nonsingular = linalg.minor_nonsingular


def rref(F: FieldCtx, M) -> np.ndarray:
    return linalg.rref(F, M)[0]


class CodeError(ValueError):
    pass


@dataclass
class Construction:
    """Live objects behind a constructed code, needed by the group-law checks."""

    kind: str  # "odd", "even", "extended" or "custom"
    curve: Curve
    H: Subgroup
    D: tuple[Point, ...]
    G: Divisor
    basis: RRBasis
    Q: Point
    P: Point | None = None


@dataclass
class LinearCode:
    ctx: FieldCtx
    gen: np.ndarray
    meta: dict[str, Any] = field(default_factory=dict)
    construction: Construction | None = field(default=None, repr=False)

    def __post_init__(self):
        self.gen = linalg.as_matrix(self.gen)
        k, n = self.gen.shape
        if not 1 <= k <= n:
            raise CodeError(f"generator matrix shape {k}x{n} is not a code")
        if linalg.rank(self.ctx, self.gen) != k:
            raise CodeError("generator matrix does not have full row rank")

    @property
    def k(self) -> int:
        return self.gen.shape[0]

    @property
    def n(self) -> int:
        return self.gen.shape[1]

    def standard_form(self) -> np.ndarray:
        return rref(self.ctx, self.gen)

    def rows(self) -> list[list[str]]:
        return [[self.ctx.render(int(c)) for c in row] for row in self.gen]


def _construction_meta(kind: str, k: int, H: Subgroup, D, G: Divisor, basis: RRBasis, P, Q) -> dict:
    curve = H.parent.curve
    ctx = curve.ctx
    n = len(D)
    return {
        "construction": kind,
        "q": ctx.q,
        "modulus": format_poly(ctx.modulus),
        "curve": [str(c) for c in curve.coefficients],
        "equation": curve.equation(),
        "N": H.parent.N,
        "group": H.parent.describe(),
        "H_order": len(H),
        "H": [format_point(R) for R in H.members],
        "D": [format_point(R) for R in D],
        "G": repr(G),
        "P": format_point(P) if P is not None else None,
        "Q": format_point(Q),
        "basis": [repr(f) for f in basis.basis],
        "parity": "odd" if k % 2 else "even",
        "extended": kind == "extended",
        "n": n,
        "k": k,
        "designed_distance": n - k + 1,
    }


def build_code_odd(k: int, H: Subgroup, Q: Point) -> LinearCode:
    """C_L(D, kQ) with D the sum of all points of H (length N/2)."""
    if k % 2 == 0:
        raise CodeError(f"odd construction needs odd k, got {k}")
    n = len(H)
    if not 1 < k < n:
        raise CodeError(f"need 1 < k < n = {n}, got k = {k}")
    if Q in H:
        raise CodeError(f"Q = {format_point(Q)} lies in H")
    basis = rr_basis_kQ(k, Q)
    D = tuple(H.members)
    gen = basis.evaluation_matrix(D)
    meta = _construction_meta("odd", k, H, D, basis.G, basis, None, Q)
    return LinearCode(H.parent.curve.ctx, gen, meta, Construction("odd", H.parent.curve, H, D, basis.G, basis, Q))


def build_code_even(k: int, H: Subgroup, P: Point, Q: Point) -> LinearCode:
    """C_L(D, (k-1)P + Q) with D = H minus P (length N/2 - 1)."""
    if k % 2:
        raise CodeError(f"even construction needs even k, got {k}")
    n = len(H) - 1
    if not 1 < k < n:
        raise CodeError(f"need 1 < k < n = {n}, got k = {k}")
    if P not in H:
        raise CodeError(f"P = {format_point(P)} is not in H")
    if Q in H:
        raise CodeError(f"Q = {format_point(Q)} lies in H")
    basis = rr_basis_mixed(k, P, Q)
    D = tuple(R for R in H.members if R != P)
    gen = basis.evaluation_matrix(D)
    meta = _construction_meta("even", k, H, D, basis.G, basis, P, Q)
    return LinearCode(H.parent.curve.ctx, gen, meta, Construction("even", H.parent.curve, H, D, basis.G, basis, Q, P))


def evaluation_code(basis: RRBasis, D: Sequence[Point], H: Subgroup, Q: Point, P: Point | None = None) -> LinearCode:
    """C_L(D, G) for an arbitrary basis and point list, without the subgroup and pole preconditions.

    Useful for probes such as G = kQ with Q in H; Supp(G) must still avoid D.
    """
    D = tuple(D)
    clash = set(basis.G.support()) & set(D)
    if clash:
        raise CodeError(f"D meets Supp(G) at {sorted(format_point(R) for R in clash)}")
    gen = basis.evaluation_matrix(D)
    meta = _construction_meta("custom", len(basis), H, D, basis.G, basis, P, Q)
    return LinearCode(H.parent.curve.ctx, gen, meta, Construction("custom", H.parent.curve, H, D, basis.G, basis, Q, P))


def extend_code(C: LinearCode) -> LinearCode:
    """Append the column (0, ..., 0, 1): a 1 in the row of g, the last basis element."""
    if C.construction is None or C.construction.kind != "even":
        raise CodeError("only codes from build_code_even can be extended")
    col = np.zeros((C.k, 1), dtype=np.int64)
    col[-1, 0] = 1
    gen = np.hstack([C.gen, col])
    meta = dict(C.meta, construction="extended", extended=True, n=C.n + 1, designed_distance=C.n + 1 - C.k + 1)
    con = C.construction
    return LinearCode(
        C.ctx, gen, meta, Construction("extended", con.curve, con.H, con.D, con.G, con.basis, con.Q, con.P)
    )


# -- matrix emission ------------------------------------------------------------


def format_matrix(F: FieldCtx, M) -> str:
    cells = [[F.render(int(c)) for c in row] for row in linalg.as_matrix(M)]
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def to_record(C: LinearCode) -> dict:
    F = C.ctx
    return {
        "q": F.q,
        "p": F.p,
        "m": F.m,
        "modulus": format_poly(F.modulus),
        "n": C.n,
        "k": C.k,
        "rows": C.rows(),
        "meta": C.meta,
    }


def dumps(C: LinearCode, fmt: str = "text") -> str:
    if fmt == "structured":
        return json.dumps(to_record(C), indent=2, sort_keys=True) + "\n"
    if fmt != "text":
        raise CodeError(f"unknown format {fmt!r}")
    F = C.ctx
    head = f"# q={F.q} modulus={format_poly(F.modulus)} n={C.n} k={C.k}\n"
    return head + format_matrix(F, C.gen) + "\n"


def _field_from_header(q: int, modulus: str | None) -> FieldCtx:
    p, m = prime_power(q)
    return make_field(p, m, parse_poly(modulus, p) if modulus else None)


def loads(text: str, ctx: FieldCtx | None = None) -> LinearCode:
    """Parse either emit format. Text grids need a ``# q=... modulus=...`` header or ``ctx``."""
    s = text.strip()
    if s.startswith("{"):
        rec = json.loads(s)
        F = ctx or _field_from_header(int(rec["q"]), rec.get("modulus"))
        rows = rec["rows"]
        meta = rec.get("meta") or {}
    else:
        header: dict[str, str] = {}
        rows = []
        for line in s.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for tok in line[1:].split():
                    if "=" in tok:
                        key, val = tok.split("=", 1)
                        header[key] = val
                continue
            rows.append(line.replace(",", " ").split())
        if ctx is None:
            if "q" not in header:
                raise CodeError("text matrix needs a '# q=... modulus=...' header")
            ctx = _field_from_header(int(header["q"]), header.get("modulus"))
        F = ctx
        meta = {}
    if not rows or len({len(r) for r in rows}) != 1:
        raise CodeError("matrix rows are empty or ragged")
    try:
        gen = np.array([[F.parse(str(c)).value for c in row] for row in rows], dtype=np.int64)
    except FieldError as exc:
        raise CodeError(str(exc)) from exc
    return LinearCode(F, gen, dict(meta))


def matrix_from_strings(F: FieldCtx, rows: Sequence[Sequence[str]]) -> np.ndarray:
    return np.array([[F.parse(c).value for c in row] for row in rows], dtype=np.int64)
