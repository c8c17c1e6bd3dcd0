"""MDS verification, Schur squares and the Reed-Solomon inequivalence test.

Three independent MDS checks are offered: the group-law criterion on
(k-1)-subsets of the evaluation points, nonsingularity of every k x k
minor, and exhaustive minimum distance. All of them are exponential, so
each takes a ``budget``; over budget they raise :class:`BudgetExceeded`
unless a seeded ``sample`` size is given.
"""

from __future__ import annotations

import functools
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Any, Iterator, Sequence

import numpy as np

from . import linalg
from .code import CodeError, LinearCode
from .ec import Point, Subgroup, add, format_point, scalar_mul
from .gf import FieldCtx, make_field, prime_power

__all__ = [
    "BudgetExceeded",
    "MethodResult",
    "MdsReport",
    "SchurReport",
    "BoundReport",
    "DEFAULT_BUDGET",
    "DEFAULT_SAMPLE",
    "mds_structural",
    "mds_lemma2_exhaustive",
    "min_distance_bruteforce",
    "mds_by_minors",
    "schur_square",
    "rs_control_code",
    "mec_bound_check",
    "table1_length",
    "verify",
]

DEFAULT_BUDGET = 10**7
DEFAULT_SAMPLE = 10**5
_CHUNK = 1 << 15


class BudgetExceeded(RuntimeError):
    def __init__(self, what: str, needed: int, budget: int):
        super().__init__(f"{what}: {needed} cases exceed budget {budget}")
        self.needed = needed
        self.budget = budget


@dataclass
class MethodResult:
    name: str
    passed: bool
    checked: int
    sampled: bool = False
    witness: Any = None

    def __str__(self) -> str:
        how = "sampled" if self.sampled else "exhaustive"
        s = f"{self.name}: {'pass' if self.passed else 'FAIL'} ({self.checked} {how})"
        if self.witness is not None:
            s += f" witness={self.witness}"
        return s


@dataclass
class MdsReport:
    n: int
    k: int
    claimed_d: int
    verified_d: int | None = None
    methods: list[MethodResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        ok = all(m.passed for m in self.methods)
        if self.verified_d is not None:
            ok = ok and self.verified_d == self.claimed_d
        return ok

    def merge(self, other: MdsReport) -> MdsReport:
        vd = self.verified_d if self.verified_d is not None else other.verified_d
        return MdsReport(self.n, self.k, self.claimed_d, vd, self.methods + other.methods)

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "claimed_d": self.claimed_d,
            "verified_d": self.verified_d,
            "passed": self.passed,
            "methods": [
                {
                    "name": m.name,
                    "passed": m.passed,
                    "checked": m.checked,
                    "sampled": m.sampled,
                    "witness": m.witness,
                }
                for m in self.methods
            ],
        }

    def summary(self) -> str:
        lines = [f"[{self.n}, {self.k}] code, MDS distance {self.claimed_d}"]
        if self.verified_d is not None:
            lines.append(f"  minimum distance (exhaustive): {self.verified_d}")
        lines += [f"  {m}" for m in self.methods]
        lines.append(f"  MDS: {'pass' if self.passed else 'FAIL'}")
        return "\n".join(lines)


@dataclass
class SchurReport:
    n: int
    k: int
    dim_square: int
    expected: int
    rs_baseline: int
    verdict: str

    def to_record(self) -> dict:
        return dict(self.__dict__)

    def summary(self) -> str:
        return (
            f"  Schur square: dim {self.dim_square} (min(2k, n) = {self.expected}, "
            f"GRS would give {self.rs_baseline}) -> {self.verdict}"
        )


@dataclass
class BoundReport:
    status: str  # "pass", "fail" or "skipped"
    note: str

    def __bool__(self) -> bool:
        return self.status != "fail"


# -- group-law criteria ---------------------------------------------------------


def mds_structural(k: int, H: Subgroup, Q: Point, P: Point | None = None) -> bool:
    """[k]Q outside H (odd k), or [k-1]P + Q outside H (even k, P given)."""
    if P is None:
        return scalar_mul(k, Q) not in H
    return add(scalar_mul(k - 1, P), Q) not in H


def _combinations(n: int, r: int, total: int, budget: int, sample: int | None, seed: int, what: str):
    """Index arrays of r-subsets of range(n), in chunks; exhaustive or seeded sample."""
    if total <= budget:
        it = itertools.combinations(range(n), r)
        while True:
            block = list(itertools.islice(it, _CHUNK))
            if not block:
                return
            yield np.array(block, dtype=np.int64).reshape(len(block), r), False
    if sample is None:
        raise BudgetExceeded(what, total, budget)
    rng = np.random.default_rng(seed)
    left = sample
    while left > 0:
        m = min(left, _CHUNK)
        keys = rng.random((m, n))
        yield np.sort(np.argsort(keys, axis=1)[:, :r], axis=1), True
        left -= m


def mds_lemma2_exhaustive(
    C: LinearCode, budget: int = DEFAULT_BUDGET, sample: int | None = None, seed: int = 0
) -> MdsReport:
    """Check every (k-1)-subset S of Supp(D): G - sum(S) is off D or lands in S."""
    con = C.construction
    if con is None or con.kind == "extended":
        raise CodeError("the group criterion needs an evaluation code with its construction")
    S = con.H.parent
    d1, d2 = S.d1, S.d2
    k = C.k
    n = len(con.D)
    D_coords = np.array([S.coords[R] for R in con.D], dtype=np.int64)
    D_codes = D_coords[:, 0] * d2 + D_coords[:, 1]
    on_D = np.zeros(S.N, dtype=bool)
    on_D[D_codes] = True
    gi, gj = S.coords[con.G.point_sum()]
    checked, sampled = 0, False
    for block, smp in _combinations(n, k - 1, comb(n, k - 1), budget, sample, seed, "lemma-2 subsets"):
        sampled |= smp
        si = (gi - D_coords[block, 0].sum(axis=1)) % d1
        sj = (gj - D_coords[block, 1].sum(axis=1)) % d2
        code = si * d2 + sj
        in_subset = (D_codes[block] == code[:, None]).any(axis=1)
        bad = on_D[code] & ~in_subset
        checked += len(block)
        if bad.any():
            row = int(np.argmax(bad))
            witness = {
                "subset": [format_point(con.D[i]) for i in block[row]],
                "residual": format_point(S.point_at(int(si[row]), int(sj[row]))),
            }
            res = MethodResult("lemma2", False, checked, sampled, witness)
            return MdsReport(C.n, C.k, C.n - C.k + 1, None, [res])
    return MdsReport(C.n, C.k, C.n - C.k + 1, None, [MethodResult("lemma2", True, checked, sampled)])


# -- linear-algebra criteria ------------------------------------------------------


def _messages(F: FieldCtx, k: int) -> Iterator[np.ndarray]:
    """Projective representatives: first nonzero coordinate equal to 1."""
    q = F.q
    for lead in range(k):
        free = k - 1 - lead
        total = q**free
        for start in range(0, total, _CHUNK):
            idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
            msg = np.zeros((len(idx), k), dtype=np.int64)
            msg[:, lead] = 1
            for pos in range(k - 1, lead, -1):
                msg[:, pos] = idx % q
                idx = idx // q
            yield msg


def min_distance_bruteforce(C: LinearCode, budget: int = DEFAULT_BUDGET) -> int:
    F = C.ctx
    if F.q**C.k > budget:
        raise BudgetExceeded("codeword enumeration", F.q**C.k, budget)
    best = C.n
    for msg in _messages(F, C.k):
        acc = np.zeros((len(msg), C.n), dtype=np.int64)
        for i in range(C.k):
            acc = F.add_arr(acc, F.mul_arr(msg[:, i : i + 1], C.gen[i][None, :]))
        best = min(best, int((acc != 0).sum(axis=1).min()))
    return best


def _minor_block(args) -> tuple[int, list[int] | None]:
    """Worker entry point: scan one block of column subsets, return (count, first bad)."""
    field_key, gen, block = args
    F = _worker_field(*field_key)
    ok = linalg.batch_nonsingular(F, np.transpose(gen[:, block], (1, 0, 2)))
    if ok.all():
        return len(block), None
    return len(block), block[int(np.argmin(ok))].tolist()


@functools.lru_cache(maxsize=8)
def _worker_field(p: int, m: int, modulus: tuple, w: int) -> FieldCtx:
    return make_field(p, m, list(modulus), w)


def mds_by_minors(
    C: LinearCode,
    budget: int = DEFAULT_BUDGET,
    sample: int | None = None,
    seed: int = 0,
    workers: int = 1,
) -> MdsReport:
    """Every k x k minor nonsingular. Blocks are scanned in order, so the witness
    does not depend on ``workers``."""
    F = C.ctx
    key = (F.p, F.m, F.modulus, F.w)
    blocks = _combinations(C.n, C.k, comb(C.n, C.k), budget, sample, seed, "k x k minors")
    checked, bad = 0, None
    jobs = ((key, C.gen, block) for block, _ in blocks)
    if workers > 1:
        pool = ProcessPoolExecutor(max_workers=workers)
        results: Iterator = pool.map(_minor_block, jobs)
    else:
        pool = None
        results = map(_minor_block, jobs)
    try:
        for cnt, witness in results:
            checked += cnt
            if witness is not None:
                bad = witness
                break
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
    sampled = comb(C.n, C.k) > budget
    res = MethodResult("minors", bad is None, checked, sampled, None if bad is None else {"columns": bad})
    return MdsReport(C.n, C.k, C.n - C.k + 1, None, [res])


# -- Schur square --------------------------------------------------------------------


def schur_square(C: LinearCode) -> tuple[np.ndarray, SchurReport]:
    """Row basis of C * C and the Reed-Solomon comparison."""
    F = C.ctx
    G = C.gen
    prods = np.array([F.mul_arr(G[i], G[j]) for i in range(C.k) for j in range(i, C.k)], dtype=np.int64)
    basis = linalg.row_basis(F, prods)
    dim = basis.shape[0]
    k, n = C.k, C.n
    baseline = 2 * k - 1
    verdict = "not-RS-equivalent" if 2 * k <= n and dim != baseline else "inconclusive"
    return basis, SchurReport(n, k, dim, min(2 * k, n), baseline, verdict)


def rs_control_code(F: FieldCtx, n: int, k: int) -> LinearCode:
    """Reed-Solomon code evaluating 1, x, ..., x^{k-1} at 0, 1, w, w^2, ..."""
    if not 1 <= k <= n <= F.q:
        raise CodeError(f"RS code [{n}, {k}] does not exist over F_{F.q}")
    pts = [0] + [F.power_of_w(i) for i in range(n - 1)]
    gen = np.array([[F.pow(a, i) if (a or i) else 1 for a in pts] for i in range(k)], dtype=np.int64)
    return LinearCode(F, gen, {"construction": "reed-solomon", "n": n, "k": k})


# -- bounds -------------------------------------------------------------------------


def table1_length(q: int) -> int:
    """Maximal length of the elliptic MDS codes by field class (index-2 subgroup order)."""
    p, m = prime_power(q)
    r = math.isqrt(q)
    if p != 2:
        return (q + 1) // 2 + r
    if m % 2 == 0:
        return q // 2 + r
    k = (m - 1) // 2
    if math.isqrt(2 ** (2 * k + 3)) % 2 == 0:
        return q // 2 + r
    return (q + 1 + math.isqrt(4 * q)) // 2


def mec_bound_check(C: LinearCode) -> BoundReport:
    """Length bound for elliptic MDS codes; applies only when q >= 289 and 3 <= k <= N/10."""
    q = C.ctx.q
    N = C.meta.get("N")
    if N is None:
        return BoundReport("skipped", "no curve provenance")
    if q < 289:
        return BoundReport("skipped", f"q = {q} < 289")
    if not 3 <= C.k <= N / 10:
        return BoundReport("skipped", f"k = {C.k} outside [3, N/10 = {N / 10:g}]")
    if C.n > N / 2:
        return BoundReport("fail", f"n = {C.n} > N/2 = {N / 2:g}")
    if C.k <= (q + 1 - 2 * math.sqrt(q)) / 2 and C.n > (q + 1) / 2 + math.sqrt(q):
        return BoundReport("fail", f"n = {C.n} > (q+1)/2 + sqrt(q)")
    return BoundReport("pass", f"n = {C.n} <= {min(N / 2, (q + 1) / 2 + math.sqrt(q)):g}")


# -- combined driver -------------------------------------------------------------------

METHODS = ("structural", "lemma2", "minors", "bruteforce", "schur")


def verify(
    C: LinearCode,
    methods: Sequence[str] = METHODS,
    budget: int = DEFAULT_BUDGET,
    sample: int | None = None,
    seed: int = 0,
    workers: int = 1,
) -> tuple[MdsReport, SchurReport | None]:
    """Run the requested checks; group-law methods are skipped for codes without provenance."""
    unknown = set(methods) - set(METHODS)
    if unknown:
        raise ValueError(f"unknown methods {sorted(unknown)}")
    report = MdsReport(C.n, C.k, C.n - C.k + 1)
    con = C.construction
    evaluation = con is not None and con.kind != "extended"
    if "structural" in methods and evaluation:
        ok = mds_structural(C.k, con.H, con.Q, con.P)
        report.methods.append(MethodResult("structural", ok, 1))
    if "lemma2" in methods and evaluation:
        report = report.merge(mds_lemma2_exhaustive(C, budget, sample, seed))
    if "minors" in methods:
        report = report.merge(mds_by_minors(C, budget, sample, seed, workers))
    if "bruteforce" in methods:
        d = min_distance_bruteforce(C, budget)
        report.verified_d = d
        q = C.ctx.q
        report.methods.append(MethodResult("bruteforce", d == C.n - C.k + 1, (q**C.k - 1) // (q - 1)))
    schur = schur_square(C)[1] if "schur" in methods else None
    return report, schur
