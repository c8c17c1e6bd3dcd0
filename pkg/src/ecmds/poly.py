"""Dense univariate polynomials over a FieldCtx.

Polynomials are tuples of element codes, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``. Truncated power series use
plain lists of codes of a fixed length.
"""

from __future__ import annotations

from typing import Sequence

from .gf import FieldCtx

Poly = tuple


def trim(a: Sequence[int]) -> Poly:
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return tuple(a[:n])


def deg(a: Poly) -> int:
    return len(a) - 1


def padd(F: FieldCtx, a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(out)


def pneg(F: FieldCtx, a: Poly) -> Poly:
    return tuple(F.neg(c) for c in a)


def psub(F: FieldCtx, a: Poly, b: Poly) -> Poly:
    return padd(F, a, pneg(F, b))


def pscale(F: FieldCtx, a: Poly, c: int) -> Poly:
    if c == 0:
        return ()
    return tuple(F.mul(x, c) for x in a)


def pmul(F: FieldCtx, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    add, mul = F.add, F.mul
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return trim(out)


def pdivmod(F: FieldCtx, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    inv_lead = F.inv(b[-1])
    qt = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c:
            c = F.mul(c, inv_lead)
            qt[i - db] = c
            for j, bc in enumerate(b):
                r[i - db + j] = F.sub(r[i - db + j], F.mul(c, bc))
    return trim(qt), trim(r[:db])


def monic(F: FieldCtx, a: Poly) -> Poly:
    if not a:
        return a
    return pscale(F, a, F.inv(a[-1]))


def pgcd(F: FieldCtx, a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, pdivmod(F, a, b)[1]
    return monic(F, a)


def peval(F: FieldCtx, a: Poly, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def order_at(F: FieldCtx, a: Poly, x0: int) -> int:
    """Multiplicity of ``x0`` as a root of ``a`` (``a`` nonzero)."""
    k = 0
    lin = (F.neg(x0), 1)
    while a and peval(F, a, x0) == 0:
        a = pdivmod(F, a, lin)[0]
        k += 1
    return k


def ppow(F: FieldCtx, a: Poly, e: int) -> Poly:
    out: Poly = (1,)
    for _ in range(e):
        out = pmul(F, out, a)
    return out


def roots(F: FieldCtx, a: Poly) -> list[int]:
    return [x for x in range(F.q) if peval(F, a, x) == 0]


# -- truncated power series ---------------------------------------------------


def smul(F: FieldCtx, a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    out = [0] * n
    add, mul = F.add, F.mul
    for i in range(min(len(a), n)):
        x = a[i]
        if x:
            for j in range(min(len(b), n - i)):
                y = b[j]
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return out


def sadd(F: FieldCtx, a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    return [
        F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)
    ]


def peval_series(F: FieldCtx, a: Poly, s: Sequence[int], n: int) -> list[int]:
    acc = [0] * n
    for c in reversed(a):
        acc = smul(F, acc, s, n)
        acc[0] = F.add(acc[0], c)
    return acc


def series_order(s: Sequence[int]) -> int | None:
    for i, c in enumerate(s):
        if c:
            return i
    return None


def format_poly(F: FieldCtx, a: Poly, var: str = "x") -> str:
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        cs = F.render(c)
        if not mono:
            terms.append(cs)
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{cs}*{mono}")
    return " + ".join(terms) or "0"
