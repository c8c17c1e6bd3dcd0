"""Randomised invariants over the example curves plus 20 seeded random curves per q <= 13."""

import random

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from ecmds.analysis import mds_by_minors, mds_lemma2_exhaustive, mds_structural, min_distance_bruteforce, verify
from ecmds.code import build_code_even, build_code_odd, evaluation_code
from ecmds.ec import Curve, hasse_bound, index2_subgroups
from ecmds.func import (
    Divisor,
    RationalFunction,
    divisor_of,
    is_principal,
    line_through,
    rr_basis_generic,
    rr_basis_kQ,
    rr_basis_mixed,
    valuation,
)
from ecmds.gf import FieldElement, field_of_order

from conftest import load_example

SMALL_Q = [2, 3, 4, 5, 7, 8, 9, 11, 13]


def _random_curves(q, count=20, seed=0):
    F = field_of_order(q)
    rng = random.Random(seed * 1000 + q)
    out = []
    while len(out) < count:
        coeffs = [rng.randrange(q) for _ in range(5)]
        E = Curve(F, *(FieldElement(F, c) for c in coeffs))
        if E.discriminant():
            out.append(E)
    return out


FIXTURE_CURVES = [load_example(n)["E"] for n in ("example1", "example2", "example3")]
RANDOM_CURVES = [E for q in SMALL_Q for E in _random_curves(q)]
ALL_CURVES = FIXTURE_CURVES + RANDOM_CURVES
CURVE_IDS = [f"{E.ctx.q}:{','.join(str(c) for c in E.coefficients)}" for E in ALL_CURVES]

curve_param = pytest.mark.parametrize("E", ALL_CURVES, ids=CURVE_IDS)


@curve_param
def test_group_axioms(E):
    pts = E.points
    rng = random.Random(hash(CURVE_IDS[ALL_CURVES.index(E)]) & 0xFFFF)
    O = E.infinity
    for _ in range(1000):
        P, Q, R = (rng.choice(pts) for _ in range(3))
        assert (P + Q) + R == P + (Q + R)
        assert P + Q == Q + P
        assert P + O == P
        assert (P + (-P)).is_infinity


@curve_param
def test_hasse_bound(E):
    lo, hi = hasse_bound(E.ctx.q)
    assert lo <= E.order <= hi


def _random_line_product(E, rng, factors):
    pts = E.points
    f = RationalFunction(E, (1,))
    for _ in range(factors):
        P, Q = rng.choice(pts), rng.choice(pts)
        if P.is_infinity and Q.is_infinity:
            continue
        ell = line_through(P, Q)
        f = f * ell if rng.random() < 0.5 else f / ell
    return f


@curve_param
def test_principal_divisor_degree_zero_and_sum_O(E):
    rng = random.Random(7)
    for _ in range(25):
        f = _random_line_product(E, rng, rng.randrange(1, 5))
        if f.is_zero():
            continue
        D = divisor_of(f)
        assert D.degree() == 0
        assert is_principal(D)


def _random_function(E, rng):
    q = E.ctx.q

    def poly(n):
        return tuple(rng.randrange(q) for _ in range(n))

    while True:
        d = poly(rng.randrange(1, 3)) + (1,)
        f = RationalFunction(E, poly(rng.randrange(0, 4)), poly(rng.randrange(0, 3)), d)
        if not f.is_zero():
            return f


@curve_param
def test_valuation_additivity(E):
    rng = random.Random(11)
    pts = E.points
    for _ in range(500):
        f, g = _random_function(E, rng), _random_function(E, rng)
        P = rng.choice(pts)
        assert valuation(f * g, P) == valuation(f, P) + valuation(g, P)


def _random_effective(E, rng, degree):
    coeffs = {}
    for _ in range(degree):
        P = rng.choice(E.points)
        coeffs[P] = coeffs.get(P, 0) + 1
    return Divisor(E, coeffs)


@curve_param
def test_riemann_roch_dimension(E):
    rng = random.Random(13)
    for deg in range(1, 11):
        G = _random_effective(E, rng, deg)
        B = rr_basis_generic(G)
        assert len(B) == deg
        for f in B.basis:
            assert all(valuation(f, P) >= -G[P] for P in E.points)


@curve_param
def test_rr_bases_match_generic_oracle(E):
    rng = random.Random(17)
    pts = E.points
    for _ in range(3):
        Q = rng.choice(pts)
        k = rng.randrange(2, 9)
        B = rr_basis_kQ(k, Q)
        assert B.spans_same(rr_basis_generic(B.G))
    if len(pts) > 1:
        for _ in range(3):
            P, Q = rng.sample(pts, 2)
            k = rng.randrange(2, 9)
            B = rr_basis_mixed(k, P, Q)
            assert B.spans_same(rr_basis_generic(B.G))


EVEN_CURVES = [E for E in ALL_CURVES if E.order % 2 == 0 and E.order >= 8]


@pytest.mark.parametrize("E", EVEN_CURVES, ids=[CURVE_IDS[ALL_CURVES.index(E)] for E in EVEN_CURVES])
def test_three_way_mds_agreement(E):
    rng = random.Random(19)
    S = E.structure
    for H in index2_subgroups(S):
        n = len(H)
        outside = [R for R in E.points if R not in H]
        for k in range(2, min(n - 1, 6)):
            Q = rng.choice(outside)
            if k % 2:
                C = build_code_odd(k, H, Q)
            else:
                C = build_code_even(k, H, rng.choice(H.members), Q)
            if comb_ok(C):
                rep, _ = verify(C, ("structural", "lemma2", "minors", "bruteforce"))
                assert all(m.passed for m in rep.methods), rep.summary()
                assert rep.verified_d == C.n - C.k + 1
        # probes with G = kQ, Q in H: the three exhaustive methods must agree with each other
        Q = rng.choice(H.members)
        for k in (2, 3):
            if n - 1 <= k:
                continue
            D = [R for R in H.members if R != Q]
            C = evaluation_code(rr_basis_kQ(k, Q), D, H, Q)
            if comb_ok(C):
                a = mds_lemma2_exhaustive(C).passed
                b = mds_by_minors(C).passed
                c = min_distance_bruteforce(C) == C.n - C.k + 1
                assert a == b == c
                assert not mds_structural(k, H, Q)


def comb_ok(C):
    return C.ctx.q ** C.k <= 10**6


@settings(max_examples=60, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow])
@given(
    q=st.sampled_from([7, 8, 9, 11, 13, 49]),
    sel=st.integers(0, 2),
    k=st.integers(3, 12),
    skip=st.integers(0, 3),
    qi=st.integers(0, 10**6),
    pi=st.integers(0, 10**6),
)
def test_schur_dimension_randomised(q, sel, k, skip, qi, pi):
    from ecmds.analysis import schur_square
    from ecmds.ec import search_curve, waterhouse_max_even_N

    F = field_of_order(q)
    E = search_curve(F, waterhouse_max_even_N(q), skip=skip)
    subs = index2_subgroups(E.structure)
    H = subs[sel % len(subs)]
    outside = [R for R in E.points if R not in H]
    Q = outside[qi % len(outside)]
    n = len(H) if k % 2 else len(H) - 1
    if not 2 < k < n:
        return
    if k % 2:
        C = build_code_odd(k, H, Q)
    else:
        C = build_code_even(k, H, H.members[pi % len(H)], Q)
    rep = schur_square(C)[1]
    assert rep.dim_square == min(2 * k, n)
    if 2 * k <= n:
        assert rep.verdict == "not-RS-equivalent"
