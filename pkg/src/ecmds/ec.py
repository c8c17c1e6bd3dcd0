"""Elliptic curves in general Weierstrass form over small finite fields.

    y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6

The group law uses the full formulas, so characteristic 2 and 3 curves
work without a change of variables. Group structure and index-2
subgroups are found by brute force, which is instant at desk scale.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from sympy import divisors

from .gf import FieldCtx, FieldElement, FieldError, prime_power

__all__ = [
    "CurveError",
    "SingularCurveError",
    "CurveNotFoundError",
    "Curve",
    "Point",
    "GroupStructure",
    "Subgroup",
    "new_curve",
    "add",
    "neg",
    "scalar_mul",
    "point_order",
    "which_index2",
    "count_points",
    "enumerate_points",
    "group_structure",
    "index2_subgroups",
    "index2_subgroup",
    "subgroup_generated",
    "hasse_bound",
    "waterhouse_max_even_N",
    "waterhouse_admissible",
    "search_curve",
    "format_point",
    "parse_point",
]


class CurveError(ValueError):
    pass


class SingularCurveError(CurveError):
    pass


class CurveNotFoundError(CurveError):
    pass


@dataclass(frozen=True, eq=False)
class Curve:
    ctx: FieldCtx
    a1: FieldElement
    a2: FieldElement
    a3: FieldElement
    a4: FieldElement
    a6: FieldElement

    @property
    def coefficients(self) -> tuple[FieldElement, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Curve):
            return NotImplemented
        return self.ctx == other.ctx and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash((self.ctx, tuple(c.value for c in self.coefficients)))

    def __repr__(self) -> str:
        return f"Curve({self.equation()} over F_{self.ctx.q})"

    def equation(self) -> str:
        a1, a2, a3, a4, a6 = self.coefficients

        def term(c: FieldElement, mono: str) -> str | None:
            if not c:
                return None
            if not mono:
                return str(c)
            return mono if c == 1 else f"{c}{mono}"

        lhs = [t for t in ("y^2", term(a1, "xy"), term(a3, "y")) if t]
        rhs = [t for t in ("x^3", term(a2, "x^2"), term(a4, "x"), term(a6, "")) if t]
        return " + ".join(lhs) + " = " + " + ".join(rhs)

    def discriminant(self) -> FieldElement:
        a1, a2, a3, a4, a6 = self.coefficients
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def contains(self, x: FieldElement, y: FieldElement) -> bool:
        a1, a2, a3, a4, a6 = self.coefficients
        return y * y + a1 * x * y + a3 * y == x * x * x + a2 * x * x + a4 * x + a6

    @cached_property
    def infinity(self) -> Point:
        return Point(self, None, None)

    def point(self, x, y) -> Point:
        x, y = self.ctx(x), self.ctx(y)
        if not self.contains(x, y):
            raise CurveError(f"({x}, {y}) is not on {self!r}")
        return Point(self, x, y)

    @cached_property
    def points(self) -> tuple[Point, ...]:
        return tuple(enumerate_points(self))

    @property
    def order(self) -> int:
        return len(self.points)

    @cached_property
    def structure(self) -> GroupStructure:
        return group_structure(self)


@dataclass(frozen=True, eq=False)
class Point:
    """A rational point; ``x is None`` encodes the point at infinity O."""

    curve: Curve
    x: FieldElement | None
    y: FieldElement | None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Point):
            return NotImplemented
        if self.x is None or other.x is None:
            return self.x is None and other.x is None and self.curve == other.curve
        return (
            self.x.value == other.x.value
            and self.y.value == other.y.value
            and self.curve == other.curve
        )

    def __hash__(self) -> int:
        if self.x is None:
            return hash(None)
        return hash((self.x.value, self.y.value))

    def sort_key(self) -> tuple:
        if self.x is None:
            return (0,)
        return (1, self.x.rep, self.y.rep)

    def __add__(self, other: Point) -> Point:
        return add(self, other)

    def __neg__(self) -> Point:
        return neg(self)

    def __sub__(self, other: Point) -> Point:
        return add(self, neg(other))

    def __rmul__(self, n: int) -> Point:
        return scalar_mul(n, self)

    def __repr__(self) -> str:
        return format_point(self)


def new_curve(ctx: FieldCtx, a1=0, a2=0, a3=0, a4=0, a6=0) -> Curve:
    """Construct a curve; coefficients may be ints, ``w^i`` strings or elements."""
    curve = Curve(ctx, *(ctx(c) for c in (a1, a2, a3, a4, a6)))
    if not curve.discriminant():
        raise SingularCurveError(f"{curve.equation()} is singular over F_{ctx.q}")
    return curve


def _check_same(P: Point, Q: Point) -> None:
    if P.curve is not Q.curve and P.curve != Q.curve:
        raise CurveError("points lie on different curves")


def neg(P: Point) -> Point:
    if P.x is None:
        return P
    c = P.curve
    return Point(c, P.x, -P.y - c.a1 * P.x - c.a3)


def add(P: Point, Q: Point) -> Point:
    _check_same(P, Q)
    if P.x is None:
        return Q
    if Q.x is None:
        return P
    c = P.curve
    a1, a2, a3, a4, a6 = c.coefficients
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if not (y1 + y2 + a1 * x2 + a3):
            return c.infinity
        den = 2 * y1 + a1 * x1 + a3
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den
        nu = (-x1 * x1 * x1 + a4 * x1 + 2 * a6 - a3 * y1) / den
    else:
        den = x2 - x1
        lam = (y2 - y1) / den
        nu = (y1 * x2 - y2 * x1) / den
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return Point(c, x3, y3)


def scalar_mul(n: int, P: Point) -> Point:
    if n < 0:
        return scalar_mul(-n, neg(P))
    result = P.curve.infinity
    addend = P
    while n:
        if n & 1:
            result = add(result, addend)
        addend = add(addend, addend)
        n >>= 1
    return result


def hasse_bound(q: int) -> tuple[int, int]:
    """Range of possible point counts, ``|N - (q+1)| <= floor(2 sqrt q)``."""
    t = math.isqrt(4 * q)
    return q + 1 - t, q + 1 + t


def _root_tables(ctx: FieldCtx):
    if ctx.p == 2:
        # z^2 + z = c  ->  roots z, z + 1
        table: dict[int, int] = {}
        for z in range(ctx.q):
            table.setdefault(ctx.add(ctx.mul(z, z), z), z)
        return table
    sqrt: dict[int, int] = {}
    for z in range(ctx.q):
        sqrt.setdefault(ctx.mul(z, z), z)
    return sqrt


def _affine_points(ctx: FieldCtx, coeffs: Sequence[int]) -> Iterable[tuple[int, int]]:
    """All affine solutions as code pairs; pure code arithmetic for speed."""
    a1, a2, a3, a4, a6 = coeffs
    add, mul = ctx.add, ctx.mul
    table = _root_tables(ctx)
    half = ctx.inv(2 % ctx.p) if ctx.p != 2 else 0
    for x in range(ctx.q):
        h = add(mul(a1, x), a3)
        xx = mul(x, x)
        f = add(add(mul(xx, x), mul(a2, xx)), add(mul(a4, x), a6))
        if ctx.p == 2:
            if h == 0:
                yield x, ctx.pow(f, ctx.q // 2)
            else:
                c = ctx.div(f, mul(h, h))
                z = table.get(c)
                if z is not None:
                    yield x, mul(h, z)
                    yield x, mul(h, add(z, 1))
        else:
            # y = (-h +- sqrt(h^2 + 4f)) / 2
            disc = add(mul(h, h), mul(4 % ctx.p, f))
            r = table.get(disc)
            if r is None:
                continue
            yield x, mul(half, ctx.sub(r, h))
            if r:
                yield x, mul(half, ctx.sub(ctx.neg(r), h))


def count_points(ctx: FieldCtx, coeffs: Sequence[int]) -> int:
    return 1 + sum(1 for _ in _affine_points(ctx, coeffs))


def enumerate_points(curve: Curve) -> list[Point]:
    """O first, then affine points ordered by coefficient vectors of (x, y)."""
    ctx = curve.ctx
    pts = [
        Point(curve, FieldElement(ctx, x), FieldElement(ctx, y))
        for x, y in _affine_points(ctx, [c.value for c in curve.coefficients])
    ]
    pts.sort(key=Point.sort_key)
    lo, hi = hasse_bound(ctx.q)
    n = len(pts) + 1
    assert lo <= n <= hi, f"point count {n} violates the Hasse-Weil bound"
    return [curve.infinity] + pts


def point_order(P: Point, N: int | None = None) -> int:
    N = N if N is not None else P.curve.order
    for d in divisors(N):
        if scalar_mul(d, P).is_infinity:
            return d
    raise CurveError(f"order of {P} does not divide {N}")


@dataclass(frozen=True)
class GroupStructure:
    """E(F_q) as Z_{d1} + Z_{d2}; ``coords[P] = (i, j)`` with P = [i]g1 + [j]g2."""

    curve: Curve
    d1: int
    d2: int
    gens: tuple[Point, ...]
    coords: dict[Point, tuple[int, int]] = field(repr=False)
    table: dict[tuple[int, int], Point] = field(repr=False)

    @property
    def N(self) -> int:
        return self.d1 * self.d2

    @property
    def is_cyclic(self) -> bool:
        return self.d1 == 1

    def point_at(self, i: int, j: int) -> Point:
        return self.table[(i % self.d1, j % self.d2)]

    def add_coords(self, a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
        return (a[0] + b[0]) % self.d1, (a[1] + b[1]) % self.d2

    def describe(self) -> str:
        return f"Z_{self.d2}" if self.d1 == 1 else f"Z_{self.d1} + Z_{self.d2}"


def group_structure(curve: Curve) -> GroupStructure:
    pts = curve.points
    N = len(pts)
    orders = {P: point_order(P, N) for P in pts}
    d2 = max(orders.values())
    g2 = next(P for P in pts if orders[P] == d2)
    multiples_g2 = []
    R = curve.infinity
    for _ in range(d2):
        multiples_g2.append(R)
        R = add(R, g2)
    d1 = N // d2
    if d1 == 1:
        gens: tuple[Point, ...] = (g2,)
        g1 = curve.infinity
    else:
        in_g2 = set(multiples_g2)
        g1 = None
        for P in pts:
            if orders[P] != d1:
                continue
            mult, ok = P, True
            for _ in range(d1 - 1):
                if mult in in_g2:
                    ok = False
                    break
                mult = add(mult, P)
            if ok:
                g1 = P
                break
        if g1 is None:
            raise CurveError("no complement generator found")
        gens = (g1, g2)
    coords: dict[Point, tuple[int, int]] = {}
    table: dict[tuple[int, int], Point] = {}
    row = curve.infinity
    for i in range(d1):
        for j, M in enumerate(multiples_g2):
            P = add(row, M)
            if P in coords:
                raise CurveError("generators do not give a direct decomposition")
            coords[P] = (i, j)
            table[(i, j)] = P
        row = add(row, g1)
    if len(coords) != N:
        raise CurveError("coordinate map is not onto")
    if (curve.ctx.q - 1) % d1:
        raise CurveError(f"d1 = {d1} does not divide q - 1")
    return GroupStructure(curve, d1, d2, gens, coords, table)


@dataclass(frozen=True)
class Subgroup:
    parent: GroupStructure
    members: tuple[Point, ...]
    index: int

    @cached_property
    def member_set(self) -> frozenset[Point]:
        return frozenset(self.members)

    def __contains__(self, P: Point) -> bool:
        return P in self.member_set

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @cached_property
    def structure(self) -> tuple[int, int]:
        """Invariant factors (e1, e2) with e1 | e2 and e1 * e2 = |H|."""
        orders = [point_order(P, len(self.members)) for P in self.members]
        e2 = max(orders)
        return len(self.members) // e2, e2


def _characters(S: GroupStructure) -> list[tuple[int, int]]:
    """Nonzero homomorphisms Z_d1 + Z_d2 -> Z_2, (i, j) -> a*i + b*j mod 2."""
    out = []
    for a, b in ((0, 1), (1, 0), (1, 1)):
        if a and S.d1 % 2:
            continue
        if b and S.d2 % 2:
            continue
        out.append((a, b))
    return out


def index2_subgroups(S: GroupStructure) -> list[Subgroup]:
    """All index-2 subgroups in canonical order (kernel of j, of i, of i+j)."""
    if S.N % 2:
        raise CurveError(f"group of odd order {S.N} has no index-2 subgroup")
    pts = S.curve.points
    out = []
    for a, b in _characters(S):
        members = tuple(P for P in pts if (a * S.coords[P][0] + b * S.coords[P][1]) % 2 == 0)
        out.append(Subgroup(S, members, 2))
    return out


def index2_subgroup(S: GroupStructure, selector: int = 0) -> Subgroup:
    subs = index2_subgroups(S)
    if not 0 <= selector < len(subs):
        raise CurveError(f"selector {selector} out of range; {len(subs)} index-2 subgroups exist")
    return subs[selector]


def subgroup_generated(S: GroupStructure, gens: Iterable[Point]) -> Subgroup:
    span = {(0, 0)}
    for g in gens:
        c = S.coords[g]
        frontier = set(span)
        while frontier:
            nxt = {S.add_coords(v, c) for v in frontier} - span
            span |= nxt
            frontier = nxt
    members = tuple(P for P in S.curve.points if S.coords[P] in span)
    return Subgroup(S, members, S.N // len(members))


def which_index2(S: GroupStructure, H: Subgroup) -> int | None:
    """Selector of ``H`` among :func:`index2_subgroups`, or None."""
    for i, cand in enumerate(index2_subgroups(S)):
        if cand.member_set == H.member_set:
            return i
    return None


def waterhouse_max_even_N(q: int) -> int:
    """Largest even point count of an elliptic curve over F_q."""
    p, m = prime_power(q)
    if p != 2:
        return q + 1 + 2 * math.isqrt(q)
    if m % 2 == 0:
        return q + 2 * math.isqrt(q)
    k = (m - 1) // 2
    t = math.isqrt(2 ** (2 * k + 3))  # floor(2^(k+1) * sqrt 2)
    if t % 2 == 0:
        return q + 2 * math.isqrt(q)
    return q + 1 + math.isqrt(4 * q)


def waterhouse_admissible(q: int, N: int) -> bool:
    """Whether some elliptic curve over F_q has exactly N points (Waterhouse)."""
    p, m = prime_power(q)
    beta = q + 1 - N
    if beta * beta > 4 * q:
        return False
    if beta % p:
        return True
    sq = beta * beta
    if sq == 0:
        return m % 2 == 1 or p % 4 != 1
    if sq == q:
        return m % 2 == 0 or p % 3 != 1
    if sq == 4 * q:
        return m % 2 == 0
    if sq == 2 * q:
        return m % 2 == 1 and p == 2
    if sq == 3 * q:
        return m % 2 == 1 and p == 3
    return False


def _coefficient_space(ctx: FieldCtx):
    """Weierstrass coefficient tuples covering every isomorphism class."""
    q = ctx.q
    if ctx.p == 2:
        # ordinary: y^2 + xy = x^3 + a2 x^2 + a6
        for a2, a6 in itertools.product(range(q), repeat=2):
            yield (1, a2, 0, 0, a6)
        # supersingular: y^2 + a3 y = x^3 + a4 x + a6
        for a3, a4, a6 in itertools.product(range(q), repeat=3):
            yield (0, 0, a3, a4, a6)
    elif ctx.p == 3:
        for a2, a4, a6 in itertools.product(range(q), repeat=3):
            yield (0, a2, 0, a4, a6)
    else:
        for a4, a6 in itertools.product(range(q), repeat=2):
            yield (0, 0, 0, a4, a6)


def search_curve(ctx: FieldCtx, target_N: int | None = None, skip: int = 0) -> Curve:
    """First nonsingular curve (deterministic order) with ``target_N`` points.

    ``skip`` returns the (skip+1)-th hit instead, for sampling distinct curves.
    """
    q = ctx.q
    if target_N is None:
        target_N = waterhouse_max_even_N(q)
    lo, hi = hasse_bound(q)
    if not lo <= target_N <= hi:
        raise CurveNotFoundError(f"N = {target_N} outside the Hasse-Weil range [{lo}, {hi}]")
    for coeffs in _coefficient_space(ctx):
        curve = Curve(ctx, *(FieldElement(ctx, c) for c in coeffs))
        if not curve.discriminant():
            continue
        if count_points(ctx, coeffs) == target_N:
            if skip == 0:
                return curve
            skip -= 1
    raise CurveNotFoundError(f"no curve over F_{q} with {target_N} points")


def format_point(P: Point) -> str:
    if P.x is None:
        return "[0 : 1 : 0]"
    return f"[{P.x} : {P.y} : 1]"


_PROJ = re.compile(r"^\[?\s*([^:\]]+?)\s*:\s*([^:\]]+?)\s*:\s*([^:\]]+?)\s*\]?$")


def parse_point(curve: Curve, text: str) -> Point:
    """Parse ``"[w^5 : w : 1]"`` or ``"[0 : 1 : 0]"`` (also ``"O"``)."""
    s = text.strip()
    if s in ("O", "inf", "infinity"):
        return curve.infinity
    m = _PROJ.match(s)
    if not m:
        raise CurveError(f"cannot parse point {text!r}")
    ctx = curve.ctx
    try:
        X, Y, Z = (ctx.parse(g) for g in m.groups())
    except FieldError as exc:
        raise CurveError(str(exc)) from exc
    if not Z:
        if X or not Y:
            raise CurveError(f"{text!r} is not a point of a Weierstrass curve")
        return curve.infinity
    return curve.point(X / Z, Y / Z)
