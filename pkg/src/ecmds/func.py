"""Rational functions, divisors and Riemann-Roch bases on an elliptic curve.

Every function is kept in the unique form ``(a(x) + b(x) y) / d(x)`` with
``gcd(a, b, d) = 1`` and ``d`` monic; ``y^2`` is always reduced through the
curve equation. Valuations at affine points come from local power-series
expansions in a uniformizer (``x - x0`` where the x-map is unramified,
``y - y0`` where it is), and at O from the pole weights 2 for x, 3 for y.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import linalg
from .ec import Curve, Point, add, format_point, neg, scalar_mul
from .gf import FieldCtx, FieldElement
from .poly import (
    Poly,
    deg,
    format_poly,
    monic,
    padd,
    pdivmod,
    peval,
    peval_series,
    pgcd,
    pmul,
    pneg,
    pscale,
    psub,
    sadd,
    series_order,
    smul,
    trim,
)

__all__ = [
    "FunctionError",
    "PoleError",
    "UnsupportedDivisorError",
    "ConstructionError",
    "RationalFunction",
    "Divisor",
    "RRBasis",
    "const",
    "xfun",
    "yfun",
    "evaluate",
    "valuation",
    "divisor_of",
    "is_principal",
    "line_through",
    "translate",
    "rr_basis_kQ",
    "rr_basis_mixed",
    "rr_basis_generic",
    "parse_function",
]


class FunctionError(ValueError):
    pass


class PoleError(FunctionError):
    pass


class UnsupportedDivisorError(FunctionError):
    pass


class ConstructionError(RuntimeError):
    """A basis construction did not reach its required valuation profile."""


def _h(curve: Curve) -> Poly:
    return trim([curve.a3.value, curve.a1.value])


def _f(curve: Curve) -> Poly:
    return trim([curve.a6.value, curve.a4.value, curve.a2.value, 1])


class RationalFunction:
    __slots__ = ("curve", "a", "b", "d")

    def __init__(self, curve: Curve, a: Sequence[int], b: Sequence[int] = (), d: Sequence[int] = (1,)):
        F = curve.ctx
        a, b, d = trim(a), trim(b), trim(d)
        if not d:
            raise ZeroDivisionError("zero denominator")
        if not a and not b:
            d = (1,)
        else:
            g = pgcd(F, pgcd(F, a, b), d)
            if len(g) > 1:
                a, b, d = pdivmod(F, a, g)[0], pdivmod(F, b, g)[0], pdivmod(F, d, g)[0]
        lead = d[-1]
        if lead != 1:
            inv = F.inv(lead)
            a, b, d = pscale(F, a, inv), pscale(F, b, inv), pscale(F, d, inv)
        self.curve = curve
        self.a, self.b, self.d = a, b, d

    # -- structure --

    @property
    def ctx(self) -> FieldCtx:
        return self.curve.ctx

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def is_constant(self) -> bool:
        return not self.b and len(self.a) <= 1 and self.d == (1,)

    def numerator_weight(self) -> int:
        """Pole order at O of the polynomial part ``a + b y``."""
        wa = 2 * deg(self.a) if self.a else -1
        wb = 2 * deg(self.b) + 3 if self.b else -1
        return max(wa, wb)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (self.a, self.b, self.d) == (other.a, other.b, other.d) and self.curve == other.curve

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.d))

    def _other(self, other) -> RationalFunction:
        if isinstance(other, RationalFunction):
            if other.curve is not self.curve and other.curve != self.curve:
                raise FunctionError("functions on different curves")
            return other
        if isinstance(other, (int, FieldElement)):
            return const(self.curve, other)
        return NotImplemented

    # -- arithmetic --

    def __add__(self, other):
        g = self._other(other)
        if g is NotImplemented:
            return NotImplemented
        F = self.ctx
        if self.d == g.d:
            return RationalFunction(self.curve, padd(F, self.a, g.a), padd(F, self.b, g.b), self.d)
        a = padd(F, pmul(F, self.a, g.d), pmul(F, g.a, self.d))
        b = padd(F, pmul(F, self.b, g.d), pmul(F, g.b, self.d))
        return RationalFunction(self.curve, a, b, pmul(F, self.d, g.d))

    __radd__ = __add__

    def __neg__(self):
        F = self.ctx
        return RationalFunction(self.curve, pneg(F, self.a), pneg(F, self.b), self.d)

    def __sub__(self, other):
        g = self._other(other)
        if g is NotImplemented:
            return NotImplemented
        return self + (-g)

    def __rsub__(self, other):
        g = self._other(other)
        if g is NotImplemented:
            return NotImplemented
        return g + (-self)

    def __mul__(self, other):
        g = self._other(other)
        if g is NotImplemented:
            return NotImplemented
        F = self.ctx
        a1, b1, a2, b2 = self.a, self.b, g.a, g.b
        bb = pmul(F, b1, b2)
        # y^2 = f - h y
        a = padd(F, pmul(F, a1, a2), pmul(F, bb, _f(self.curve)))
        b = psub(F, padd(F, pmul(F, a1, b2), pmul(F, a2, b1)), pmul(F, bb, _h(self.curve)))
        return RationalFunction(self.curve, a, b, pmul(F, self.d, g.d))

    __rmul__ = __mul__

    def inv(self) -> RationalFunction:
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        F = self.ctx
        a, b = self.a, self.b
        nrm = norm(self.curve, a, b)
        # 1/(a + b y) = ((a - b h) - b y) / N(a + b y)
        conj_a = psub(F, a, pmul(F, b, _h(self.curve)))
        conj_b = pneg(F, b)
        return RationalFunction(self.curve, pmul(F, conj_a, self.d), pmul(F, conj_b, self.d), nrm)

    def __truediv__(self, other):
        g = self._other(other)
        if g is NotImplemented:
            return NotImplemented
        return self * g.inv()

    def __rtruediv__(self, other):
        g = self._other(other)
        if g is NotImplemented:
            return NotImplemented
        return g * self.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        out = const(self.curve, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, P: Point) -> FieldElement:
        return evaluate(self, P)

    def __repr__(self) -> str:
        F = self.ctx
        terms = []
        for i in range(max(len(self.a), len(self.b)) - 1, -1, -1):
            if i < len(self.b) and self.b[i]:
                mono = "y" if i == 0 else ("x*y" if i == 1 else f"x^{i}*y")
                c = self.b[i]
                terms.append(mono if c == 1 else f"{F.render(c)}*{mono}")
            if i < len(self.a) and self.a[i]:
                terms.append(format_poly(F, (0,) * i + (self.a[i],)))
        num = " + ".join(terms) or "0"
        if self.d == (1,):
            return num
        return f"({num})/({format_poly(F, self.d)})"


def norm(curve: Curve, a: Poly, b: Poly) -> Poly:
    """N(a + b y) = a^2 - a b h - b^2 f, a polynomial in x."""
    F = curve.ctx
    return psub(F, psub(F, pmul(F, a, a), pmul(F, pmul(F, a, b), _h(curve))), pmul(F, pmul(F, b, b), _f(curve)))


def const(curve: Curve, c) -> RationalFunction:
    return RationalFunction(curve, (curve.ctx(c).value,))


def xfun(curve: Curve) -> RationalFunction:
    return RationalFunction(curve, (0, 1))


def yfun(curve: Curve) -> RationalFunction:
    return RationalFunction(curve, (), (1,))


def monomial(curve: Curve, i: int, j: int) -> RationalFunction:
    """x^i y^j for j in {0, 1}; pole order 2i + 3j at O."""
    mono = (0,) * i + (1,)
    return RationalFunction(curve, () if j else mono, mono if j else ())


def monomial_of_pole_order(curve: Curve, m: int) -> RationalFunction:
    if m == 0:
        return const(curve, 1)
    if m == 1 or m < 0:
        raise FunctionError(f"no function has pole order exactly {m} at O")
    return monomial(curve, m // 2, 0) if m % 2 == 0 else monomial(curve, (m - 3) // 2, 1)


# -- local expansions -------------------------------------------------------

_expansions: dict[tuple[Curve, Point], tuple[int, list[int], list[int]]] = {}


def is_ramified(P: Point) -> bool:
    """Whether the x-coordinate map ramifies at P (i.e. P = -P)."""
    c = P.curve
    return not (2 * P.y + c.a1 * P.x + c.a3)


def local_expansion(P: Point, n: int) -> tuple[list[int], list[int]]:
    """Series (X(t), Y(t)) to ``n`` terms in a uniformizer t at affine P."""
    key = (P.curve, P)
    hit = _expansions.get(key)
    if hit is not None and hit[0] >= n:
        return hit[1][:n], hit[2][:n]
    size = max(n, 2 * hit[0] if hit else 8)
    X, Y = _expand(P, size)
    _expansions[key] = (size, X, Y)
    return X[:n], Y[:n]


def _expand(P: Point, n: int) -> tuple[list[int], list[int]]:
    curve = P.curve
    F = curve.ctx
    add, mul, sub = F.add, F.mul, F.sub
    a1, a2, a3, a4, a6 = (c.value for c in curve.coefficients)
    x0, y0 = P.x.value, P.y.value
    h, f = _h(curve), _f(curve)
    s = [0] * n
    if not is_ramified(P):
        # t = x - x0; solve G(x0 + t, y0 + s) = 0 coefficient by coefficient
        c = add(add(mul(2 % F.p, y0), mul(a1, x0)), a3)
        ic = F.inv(c)
        g_y0 = psub(F, padd(F, pscale(F, h, y0), (mul(y0, y0),)), f)
        R = peval_series(F, g_y0, [x0, 1], n)
        for k in range(1, n):
            acc = add(R[k], mul(a1, s[k - 1]))
            for i in range(1, k):
                acc = add(acc, mul(s[i], s[k - i]))
            s[k] = F.neg(mul(acc, ic))
        X = [x0, 1] + [0] * (n - 2)
        Y = [add(y0, s[0])] + s[1:]
        return X[:n], Y
    # u = y - y0; solve G(x0 + s, y0 + u) = 0
    h0 = peval(F, h, x0)
    g_x0 = (F.neg(peval(F, f, x0)), h0, 1)
    R = peval_series(F, trim(g_x0), [y0, 1], n)
    dF = add(add(mul(3 % F.p, mul(x0, x0)), mul(2 % F.p, mul(a2, x0))), a4)
    L0 = sub(mul(a1, y0), dF)
    iL0 = F.inv(L0)
    F2 = add(mul(3 % F.p, x0), a2)
    sq = [0] * n
    for k in range(1, n):
        acc = 0
        for i in range(1, k):
            acc = add(acc, mul(s[i], s[k - i]))
        sq[k] = acc
        cube = 0
        for i in range(1, k):
            cube = add(cube, mul(s[i], sq[k - i]))
        val = sub(add(mul(F2, sq[k]), cube), add(R[k], mul(a1, s[k - 1])))
        s[k] = mul(val, iL0)
    X = [x0] + s[1:]
    Y = [y0, 1] + [0] * (n - 2)
    return X, Y[:n]


def _poly_fn_series(P: Point, a: Poly, b: Poly, n: int) -> list[int]:
    F = P.curve.ctx
    X, Y = local_expansion(P, n)
    out = peval_series(F, a, X, n)
    if b:
        out = sadd(F, out, smul(F, peval_series(F, b, X, n), Y, n), n)
    return out


def _poly_fn_valuation(P: Point, a: Poly, b: Poly) -> tuple[int, list[int]]:
    wa = 2 * deg(a) if a else -1
    wb = 2 * deg(b) + 3 if b else -1
    n = max(wa, wb) + 2
    s = _poly_fn_series(P, a, b, n)
    v = series_order(s)
    if v is None:
        raise FunctionError("series vanished beyond the zero-count bound")
    return v, s


# -- valuation and evaluation -----------------------------------------------


def valuation(f: RationalFunction, P: Point) -> int:
    if f.is_zero():
        raise FunctionError("valuation of the zero function is undefined")
    if P.is_infinity:
        return 2 * deg(f.d) - f.numerator_weight()
    vn, _ = _poly_fn_valuation(P, f.a, f.b)
    vd, _ = _poly_fn_valuation(P, f.d, ())
    return vn - vd


def evaluate(f: RationalFunction, P: Point) -> FieldElement:
    F = f.ctx
    if f.is_zero():
        return F.zero
    if P.is_infinity:
        v = valuation(f, P)
        if v < 0:
            raise PoleError(f"{f!r} has a pole of order {-v} at O")
        if v > 0 or not f.a:
            return F.zero
        return F.element(F.div(f.a[-1], f.d[-1]))
    x0, y0 = P.x.value, P.y.value
    dv = peval(F, f.d, x0)
    if dv:
        num = F.add(peval(F, f.a, x0), F.mul(peval(F, f.b, x0), y0))
        return F.element(F.div(num, dv))
    vn, sn = _poly_fn_valuation(P, f.a, f.b)
    vd, sd = _poly_fn_valuation(P, f.d, ())
    if vn < vd:
        raise PoleError(f"{f!r} has a pole of order {vd - vn} at {format_point(P)}")
    if vn > vd:
        return F.zero
    return F.element(F.div(sn[vn], sd[vd]))


# -- divisors ----------------------------------------------------------------


class Divisor:
    """A finite formal sum of rational points with integer coefficients."""

    __slots__ = ("curve", "coeffs")

    def __init__(self, curve: Curve, coeffs: Mapping[Point, int] | Iterable[tuple[Point, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[Point, int] = {}
        for P, n in items:
            acc[P] = acc.get(P, 0) + int(n)
        self.curve = curve
        self.coeffs = {P: n for P, n in acc.items() if n}

    @classmethod
    def of(cls, *terms: tuple[int, Point]) -> Divisor:
        """``Divisor.of((3, P), (1, Q))`` is 3P + Q."""
        return cls(terms[0][1].curve, [(P, n) for n, P in terms])

    def __getitem__(self, P: Point) -> int:
        return self.coeffs.get(P, 0)

    def degree(self) -> int:
        return sum(self.coeffs.values())

    def support(self) -> list[Point]:
        return sorted(self.coeffs, key=Point.sort_key)

    def items(self):
        return ((P, self.coeffs[P]) for P in self.support())

    def __add__(self, other: Divisor) -> Divisor:
        return Divisor(self.curve, list(self.coeffs.items()) + list(other.coeffs.items()))

    def __neg__(self) -> Divisor:
        return Divisor(self.curve, {P: -n for P, n in self.coeffs.items()})

    def __sub__(self, other: Divisor) -> Divisor:
        return self + (-other)

    def __mul__(self, k: int) -> Divisor:
        return Divisor(self.curve, {P: k * n for P, n in self.coeffs.items()})

    __rmul__ = __mul__

    def is_effective(self) -> bool:
        return all(n >= 0 for n in self.coeffs.values())

    def __ge__(self, other: Divisor) -> bool:
        return (self - other).is_effective()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def point_sum(self) -> Point:
        """The group-law sum of [n_P]P over the support."""
        acc = self.curve.infinity
        for P, n in self.coeffs.items():
            acc = add(acc, scalar_mul(n, P))
        return acc

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for P, n in self.items():
            s = format_point(P)
            parts.append(s if n == 1 else (f"-{s}" if n == -1 else f"{n}{s}"))
        return " + ".join(parts).replace("+ -", "- ")


def divisor_of(f: RationalFunction) -> Divisor:
    if f.is_zero():
        raise FunctionError("the zero function has no divisor")
    curve = f.curve
    F = curve.ctx
    nrm = norm(curve, f.a, f.b)
    coeffs: dict[Point, int] = {}
    zeros_num = zeros_den = 0
    for P in curve.points[1:]:
        x0 = P.x.value
        hit_n = peval(F, nrm, x0) == 0
        hit_d = peval(F, f.d, x0) == 0
        if not hit_n and not hit_d:
            continue
        v = 0
        if hit_n:
            vn = _poly_fn_valuation(P, f.a, f.b)[0]
            zeros_num += vn
            v += vn
        if hit_d:
            vd = _poly_fn_valuation(P, f.d, ())[0]
            zeros_den += vd
            v -= vd
        if v:
            coeffs[P] = v
    if zeros_num != f.numerator_weight() or zeros_den != 2 * deg(f.d):
        raise UnsupportedDivisorError(f"{f!r} has zeros or poles at non-rational places")
    v_inf = valuation(f, curve.infinity)
    if v_inf:
        coeffs[curve.infinity] = v_inf
    D = Divisor(curve, coeffs)
    assert D.degree() == 0
    return D


def is_principal(D: Divisor) -> bool:
    return D.degree() == 0 and D.point_sum().is_infinity


def line_through(P: Point, Q: Point) -> RationalFunction:
    """Chord, tangent or vertical line function realising P + Q in the group law."""
    if P.is_infinity and Q.is_infinity:
        raise FunctionError("no line through O and O")
    curve = P.curve if not P.is_infinity else Q.curve
    F = curve.ctx
    if P.is_infinity:
        P, Q = Q, P
    if Q.is_infinity or Q == neg(P):
        return RationalFunction(curve, (F.neg(P.x.value), 1))
    x1, y1 = P.x, P.y
    a1, a2, a3, a4, a6 = curve.coefficients
    if P == Q:
        den = 2 * y1 + a1 * x1 + a3
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den
    else:
        lam = (Q.y - y1) / (Q.x - x1)
    nu = y1 - lam * x1
    # y - lam x - nu
    return RationalFunction(curve, ((-nu).value, (-lam).value), (1,))


def compose(f: RationalFunction, X: RationalFunction, Y: RationalFunction) -> RationalFunction:
    """f(X, Y) for functions X, Y satisfying the curve equation."""
    curve = f.curve

    def at(poly: Poly) -> RationalFunction:
        acc = RationalFunction(curve, ())
        for c in reversed(poly):
            acc = acc * X + RationalFunction(curve, (c,))
        return acc

    num = at(f.a)
    if f.b:
        num = num + at(f.b) * Y
    return num / at(f.d)


_translations: dict[tuple[Curve, Point], tuple[RationalFunction, RationalFunction]] = {}


def translation_map(Q: Point) -> tuple[RationalFunction, RationalFunction]:
    """Coordinate functions of R -> R - Q."""
    key = (Q.curve, Q)
    if key not in _translations:
        curve = Q.curve
        T = neg(Q)
        x, y = xfun(curve), yfun(curve)
        a1, a2, a3 = curve.a1, curve.a2, curve.a3
        lam = (y - T.y) / (x - T.x)
        nu = (y * T.x - x * T.y) / (T.x - x)
        X = lam * lam + lam * a1 - a2 - x - T.x
        Y = -(lam + a1) * X - nu - a3
        _translations[key] = (X, Y)
    return _translations[key]


def translate(f: RationalFunction, Q: Point) -> RationalFunction:
    """f composed with R -> R - Q; moves poles at O to Q."""
    if Q.is_infinity:
        return f
    X, Y = translation_map(Q)
    return compose(f, X, Y)


# -- Riemann-Roch bases --------------------------------------------------------


@dataclass
class RRBasis:
    G: Divisor
    basis: list[RationalFunction]
    tags: list[dict[Point, int]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.basis)

    def evaluation_matrix(self, points: Sequence[Point]) -> np.ndarray:
        return np.array([[evaluate(f, P).value for P in points] for f in self.basis], dtype=np.int64)

    def spans_same(self, other: RRBasis, points: Sequence[Point] | None = None) -> bool:
        """Row-space equality of evaluation matrices at points off both supports."""
        if points is None:
            bad = set(self.G.support()) | set(other.G.support())
            points = [P for P in self.G.curve.points if P not in bad]
        F = self.G.curve.ctx
        return linalg.same_row_space(F, self.evaluation_matrix(points), other.evaluation_matrix(points))


def _tags(basis: Sequence[RationalFunction], G: Divisor) -> list[dict[Point, int]]:
    return [{P: valuation(f, P) for P in G.support()} for f in basis]


def rr_basis_kQ(k: int, Q: Point) -> RRBasis:
    """{1, f_2, ..., f_k} with v_Q(f_i) = -i, translated from the L(kO) monomials."""
    if k < 2:
        raise FunctionError("k must be at least 2")
    curve = Q.curve
    basis = [translate(monomial_of_pole_order(curve, m), Q) for m in [0] + list(range(2, k + 1))]
    G = Divisor(curve, {Q: k})
    tags = _tags(basis, G)
    for m, t in zip([0] + list(range(2, k + 1)), tags):
        if t[Q] != -m:
            raise ConstructionError(f"pole order {-t[Q]} at Q, expected {m}")
    return RRBasis(G, basis, tags)


def rr_basis_mixed(k: int, P: Point, Q: Point) -> RRBasis:
    """Basis {1, f_2, ..., f_{k-1}, g} of L((k-1)P + Q).

    v_P(f_i) = -i and f_i(Q) != 0; g has simple poles exactly at P and Q.
    """
    if k < 2:
        raise FunctionError("k must be at least 2")
    if P == Q:
        raise FunctionError("P and Q must be distinct")
    curve = P.curve
    G = Divisor(curve, {P: k - 1, Q: 1})
    one = const(curve, 1)
    fs = []
    for i in range(2, k):
        f = translate(monomial_of_pole_order(curve, i), P)
        if not evaluate(f, Q):
            f = f + one
        fs.append(f)
    R = add(P, Q)
    if R.is_infinity or R == P or R == Q:
        pair = rr_basis_generic(Divisor(curve, {P: 1, Q: 1}))
        g = next(b for b in pair.basis if not b.is_constant())
    else:
        g = line_through(R, neg(R)) / line_through(P, Q)
    basis = [one] + fs + [g]
    tags = _tags(basis, G)
    for i, t in zip(range(2, k), tags[1:-1]):
        if t[P] != -i or t[Q] != 0:
            raise ConstructionError(f"f_{i} has valuations {t}")
    if tags[-1][P] != -1 or tags[-1][Q] != -1:
        raise ConstructionError(f"g has valuations {tags[-1]}")
    return RRBasis(G, basis, tags)


def rr_basis_generic(G: Divisor) -> RRBasis:
    """L(G) for effective G by solving local vanishing conditions.

    Candidates are ``phi / d`` with ``d = prod (x - x_P)^{m_P}`` clearing the
    affine poles and ``phi`` running over monomials x^i y^j of bounded weight;
    each affine point above a root of ``d`` contributes linear conditions on
    the low-order coefficients of the local expansion of ``phi``.
    """
    if not G.is_effective():
        raise FunctionError("G must be effective")
    if G.degree() < 1:
        raise FunctionError("deg G must be at least 1")
    curve = G.curve
    F = curve.ctx
    c_inf = G[curve.infinity]
    mult: dict[int, int] = {}
    for P, c in G.coeffs.items():
        if P.is_infinity:
            continue
        e = 2 if is_ramified(P) else 1
        mult[P.x.value] = max(mult.get(P.x.value, 0), -(-c // e))
    d: Poly = (1,)
    for x0, m in sorted(mult.items()):
        for _ in range(m):
            d = pmul(F, d, (F.neg(x0), 1))
    W = c_inf + 2 * deg(d)
    monos = [(0, 0)] + [(w // 2, 0) if w % 2 == 0 else ((w - 3) // 2, 1) for w in range(2, W + 1)]
    rows = []
    for P in curve.points[1:]:
        if P.x.value not in mult:
            continue
        e = 2 if is_ramified(P) else 1
        need = e * mult[P.x.value] - G[P]
        if need <= 0:
            continue
        X, Y = local_expansion(P, need)
        cols = []
        for i, j in monos:
            s = [1] + [0] * (need - 1)
            for _ in range(i):
                s = smul(F, s, X, need)
            if j:
                s = smul(F, s, Y, need)
            cols.append(s)
        for t in range(need):
            rows.append([cols[c][t] for c in range(len(monos))])
    kernel = linalg.nullspace(F, np.array(rows, dtype=np.int64).reshape(len(rows), len(monos)), len(monos))
    basis = []
    for vec in kernel:
        a = [0] * (W // 2 + 1)
        b = [0] * (W // 2 + 1)
        for c, (i, j) in zip(vec.tolist(), monos):
            if j:
                b[i] = c
            else:
                a[i] = c
        basis.append(RationalFunction(curve, a, b, d))
    if len(basis) != G.degree():
        raise ConstructionError(f"dim L(G) = {len(basis)} but deg G = {G.degree()}")
    return RRBasis(G, basis, _tags(basis, G))


# -- parsing -------------------------------------------------------------------

_TERM = re.compile(
    r"^(?P<coef>\d+|w(?:\^\{?-?\d+\}?)?)?\*?"
    r"(?P<x>x(?:\^\{?\d+\}?)?)?\*?"
    r"(?P<y>y(?:\^\{?\d+\}?)?)?$"
)


def _exponent(tok: str | None) -> int:
    if not tok:
        return 0
    m = re.search(r"\^\{?(\d+)\}?", tok)
    return int(m.group(1)) if m else 1


def _parse_sum(curve: Curve, text: str) -> RationalFunction:
    s = text.replace(" ", "").replace("-", "+-")
    x, y = xfun(curve), yfun(curve)
    acc = RationalFunction(curve, ())
    for term in filter(None, s.split("+")):
        sign = 1
        if term.startswith("-"):
            sign, term = -1, term[1:]
        m = _TERM.match(term)
        if not m or not term:
            raise FunctionError(f"cannot parse term {term!r}")
        c = curve.ctx.parse(m.group("coef")) if m.group("coef") else curve.ctx.one
        t = const(curve, c * sign) * (x ** _exponent(m.group("x"))) * (y ** _exponent(m.group("y")))
        acc = acc + t
    return acc


def parse_function(curve: Curve, text: str) -> RationalFunction:
    """Parse ``"(x^2 + w^3xy + 2)/(x + 1)"``; numerator and denominator may use any power of y."""
    s = text.strip()
    depth, split = 0, None
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            split = i
    if split is None:
        return _parse_sum(curve, s.strip("()"))
    num, den = s[:split].strip(), s[split + 1 :].strip()
    return _parse_sum(curve, num.strip("()")) / _parse_sum(curve, den.strip("()"))
