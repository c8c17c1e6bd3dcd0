from math import comb

import numpy as np
import pytest

from ecmds.analysis import (
    BudgetExceeded,
    mds_by_minors,
    mds_lemma2_exhaustive,
    mds_structural,
    mec_bound_check,
    min_distance_bruteforce,
    rs_control_code,
    schur_square,
    table1_length,
    verify,
)
from ecmds.cli import JobSpec, build
from ecmds.code import CodeError, LinearCode, build_code_even, build_code_odd, evaluation_code, extend_code, rref
from ecmds.ec import index2_subgroup, parse_point, subgroup_generated
from ecmds.func import rr_basis_kQ
from ecmds.gf import make_field


@pytest.fixture(scope="module")
def c1(ex1):
    E = ex1["E"]
    return build_code_even(4, index2_subgroup(E.structure), E.infinity, parse_point(E, ex1["Q"]))


@pytest.fixture(scope="module")
def c2(ex2):
    E = ex2["E"]
    return build_code_odd(3, subgroup_generated(E.structure, ex2["H_points"]), parse_point(E, ex2["Q"]))


@pytest.fixture(scope="module")
def c3(ex3):
    E = ex3["E"]
    A1, A2 = (parse_point(E, s) for s in ex3["generators"])
    H = subgroup_generated(E.structure, [2 * A1, 7 * A1 + A2])
    return build_code_odd(5, H, A1)


def test_structural_example1(c1, ex1):
    E = ex1["E"]
    con = c1.construction
    assert mds_structural(4, con.H, con.Q, E.infinity)
    assert 3 * E.infinity + con.Q not in con.H


def test_structural_odd_always_true_and_probe_false(ex2):
    E = ex2["E"]
    H = index2_subgroup(E.structure)
    for Q in E.points:
        for k in (3, 5, 7):
            assert mds_structural(k, H, Q) == (Q not in H)


def test_lemma2_example1(c1):
    rep = mds_lemma2_exhaustive(c1)
    assert rep.passed and rep.methods[0].checked == comb(6, 3) == 20


def test_lemma2_probe_with_Q_in_H(ex1):
    E = ex1["E"]
    H = index2_subgroup(E.structure)
    Q = H.members[1]
    D = [R for R in H.members if R != Q]
    C = evaluation_code(rr_basis_kQ(3, Q), D, H, Q)
    rep = mds_lemma2_exhaustive(C)
    assert not rep.passed
    w = rep.methods[0].witness
    assert len(w["subset"]) == 2 and w["residual"] not in w["subset"]
    assert not mds_by_minors(C).passed
    assert min_distance_bruteforce(C) < C.n - C.k + 1
    assert not mds_structural(3, H, Q)


def test_lemma2_skips_extended(c1):
    with pytest.raises(CodeError):
        mds_lemma2_exhaustive(extend_code(c1))
    rep, _ = verify(extend_code(c1), ("structural", "lemma2", "minors"))
    assert [m.name for m in rep.methods] == ["minors"]


def test_bruteforce_fixture_matrices(ex1, ex2):
    assert min_distance_bruteforce(LinearCode(ex1["field"], ex1["M"])) == 3
    assert min_distance_bruteforce(LinearCode(ex2["field"], ex2["M"])) == 6


def test_bruteforce_parity_code():
    F = make_field(5)
    for k in (2, 3, 4):
        G = np.hstack([np.eye(k, dtype=np.int64), np.ones((k, 1), dtype=np.int64)])
        assert min_distance_bruteforce(LinearCode(F, G)) == 2


def test_bruteforce_budget(c3):
    with pytest.raises(BudgetExceeded):
        min_distance_bruteforce(c3)


def test_minors_repeated_column():
    F = make_field(7)
    rep = mds_by_minors(LinearCode(F, [[1, 1, 0, 1], [0, 0, 1, 3]]))
    assert not rep.passed and rep.methods[0].witness == {"columns": [0, 1]}


def test_minors_invariant_under_rref(c2):
    S = LinearCode(c2.ctx, c2.standard_form())
    assert mds_by_minors(S).passed and mds_by_minors(c2).passed


def test_minors_budget_and_sampling(c3):
    with pytest.raises(BudgetExceeded):
        mds_by_minors(c3, budget=1000)
    rep = mds_by_minors(c3, budget=1000, sample=5000, seed=3)
    m = rep.methods[0]
    assert m.passed and m.sampled and m.checked == 5000


def test_minors_workers_agree(c1):
    a = mds_by_minors(c1, workers=1).methods[0]
    b = mds_by_minors(c1, workers=2).methods[0]
    assert (a.passed, a.checked) == (b.passed, b.checked)


def test_schur_examples(c2, c3):
    _, r2 = schur_square(c2)
    assert (r2.dim_square, r2.expected, r2.rs_baseline, r2.verdict) == (6, 6, 5, "not-RS-equivalent")
    _, r3 = schur_square(c3)
    assert (r3.dim_square, r3.rs_baseline, r3.verdict) == (10, 9, "not-RS-equivalent")


def test_schur_repetition_code():
    F = make_field(7)
    _, r = schur_square(LinearCode(F, [[1] * 5]))
    assert r.dim_square == 1 and r.verdict == "inconclusive"


def test_schur_identity_inconclusive():
    F = make_field(5)
    _, r = schur_square(LinearCode(F, np.eye(3, dtype=np.int64)))
    assert r.dim_square == 3 and r.verdict == "inconclusive"


def test_schur_rref_invariance(c1, c2, c3):
    for C in (c1, c2, c3):
        S = LinearCode(C.ctx, rref(C.ctx, C.gen))
        assert schur_square(S)[1].dim_square == schur_square(C)[1].dim_square


@pytest.mark.parametrize("q,n,k", [(7, 7, 3), (8, 8, 4), (9, 8, 3), (49, 32, 5), (13, 10, 5), (11, 11, 6)])
def test_rs_control(q, n, k):
    p = {7: 7, 8: 2, 9: 3, 49: 7, 13: 13, 11: 11}[q]
    m = {7: 1, 8: 3, 9: 2, 49: 2, 13: 1, 11: 1}[q]
    F = make_field(p, m)
    C = rs_control_code(F, n, k)
    assert schur_square(C)[1].dim_square == min(2 * k - 1, n)
    assert mds_by_minors(C).passed


def test_rs_control_too_long():
    with pytest.raises(CodeError):
        rs_control_code(make_field(7), 8, 3)


def test_three_way_agreement(c1, c2):
    for C in (c1, c2):
        rep, _ = verify(C)
        names = {m.name: m.passed for m in rep.methods}
        assert names == {"structural": True, "lemma2": True, "minors": True, "bruteforce": True}
        assert rep.verified_d == C.n - C.k + 1


def test_unknown_method(c1):
    with pytest.raises(ValueError):
        verify(c1, ("magic",))


def test_mec_bound(c3):
    assert mec_bound_check(c3).status == "skipped"
    assert mec_bound_check(LinearCode(c3.ctx, c3.gen)).status == "skipped"
    C = build(JobSpec(q=289, k=3))
    rep = mec_bound_check(C)
    assert rep.status == "pass" and C.n == table1_length(289) == 162


@pytest.mark.parametrize("q,n", [(4, 4), (7, 6), (8, 7), (9, 8), (11, 9), (16, 12), (32, 22), (49, 32), (128, 75)])
def test_table1_lengths(q, n):
    assert table1_length(q) == n


def test_report_rendering(c2):
    rep, schur = verify(c2)
    text = rep.summary() + schur.summary()
    assert "MDS: pass" in text and "not-RS-equivalent" in text
    rec = rep.to_record()
    assert rec["passed"] and rec["verified_d"] == 6
