"""Finite fields F_{p^m} for small q.

Elements are stored as integer codes: the polynomial-basis coefficient
vector ``(c0, ..., c_{m-1})`` packed as ``c0 + c1*p + ... + c_{m-1}*p^(m-1)``.
Log/antilog tables with respect to the designated primitive element ``w``
back multiplication, inversion, and the ``w^i`` display notation.
"""

from __future__ import annotations

import re
from functools import cached_property
from typing import Sequence

import numpy as np
from sympy import factorint, isprime

__all__ = [
    "FieldError",
    "FieldCtx",
    "FieldElement",
    "make_field",
    "is_irreducible",
    "parse_poly",
    "format_poly",
    "field_of_order",
    "prime_power",
]

MAX_Q = 1 << 16


class FieldError(ValueError):
    """Invalid field parameters or an undefined field operation."""


# -- polynomials over F_p with int coefficients, low degree first -------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _trim(a)
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _powmod_x(e: int, f: Sequence[int], p: int) -> list[int]:
    """x^e mod f."""
    result = [1]
    base = _pmod([0, 1], f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic ``f`` (coefficients low degree first)."""
    f = _trim([c % p for c in f])
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if _psub(_powmod_x(p**m, f, p), [0, 1], p):
        return False
    for r in factorint(m):
        g = _pgcd(f, _psub(_powmod_x(p ** (m // r), f, p), [0, 1], p), p)
        if len(g) > 1:
            return False
    return True


def _find_factor(f: Sequence[int], p: int) -> list[int] | None:
    m = len(f) - 1
    for deg in range(1, m // 2 + 1):
        for code in range(p**deg):
            g = [(code // p**i) % p for i in range(deg)] + [1]
            if not _pmod(f, g, p):
                return g
    return None


def _monic_in_lex_order(p: int, m: int):
    # lexicographic on (c_{m-1}, ..., c_0)
    for code in range(p**m):
        yield [(code // p**i) % p for i in range(m)] + [1]


_POLY_TERM = re.compile(r"^(\d*)\*?(x(?:\^(\d+))?)?$")


def parse_poly(text: str, p: int | None = None) -> list[int]:
    """Parse ``"x^3+x+1"`` into ``[1, 1, 0, 1]``. Coefficients must be integers."""
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise FieldError("empty polynomial")
    s = s.replace("-", "+-")
    coeffs: dict[int, int] = {}
    for term in s.split("+"):
        if not term:
            continue
        sign = 1
        if term.startswith("-"):
            sign, term = -1, term[1:]
        m = _POLY_TERM.match(term)
        if not m or (not m.group(1) and not m.group(2)):
            raise FieldError(f"cannot parse polynomial term {term!r}")
        c = int(m.group(1)) if m.group(1) else 1
        deg = 0 if not m.group(2) else int(m.group(3) or 1)
        coeffs[deg] = coeffs.get(deg, 0) + sign * c
    out = [0] * (max(coeffs) + 1)
    for d, c in coeffs.items():
        out[d] = c % p if p else c
    return out


def format_poly(f: Sequence[int]) -> str:
    terms = []
    for d in range(len(f) - 1, -1, -1):
        c = f[d]
        if not c:
            continue
        mono = "" if d == 0 else ("x" if d == 1 else f"x^{d}")
        if d == 0:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) or "0"


# -- field context ------------------------------------------------------------


class FieldCtx:
    """The field F_p[x]/(modulus) with a designated primitive element ``w``.

    Immutable after construction. Use :func:`make_field` rather than calling
    this directly; it validates the modulus and finds ``w``.
    """

    def __init__(self, p: int, m: int, modulus: Sequence[int], w: int):
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = tuple(modulus)
        self.w = w
        q = self.q
        self._digits = [tuple((c // p**i) % p for i in range(m)) for c in range(q)]
        self._weights = [p**i for i in range(m)]
        exp = [0] * (2 * (q - 1))
        log = [-1] * q
        cur = 1
        for i in range(q - 1):
            if log[cur] != -1:
                raise FieldError(f"element {w} is not primitive")
            exp[i] = exp[i + q - 1] = cur
            log[cur] = i
            cur = self._raw_mul(cur, w)
        if cur != 1:
            raise FieldError(f"element {w} is not primitive")
        self._exp = exp
        self._log = log
        self._neg = [self._encode([(-d) % p for d in self._digits[c]]) for c in range(q)]
        if p != 2 and q <= 1024:
            dig = np.array(self._digits, dtype=np.int64)
            wts = np.array(self._weights, dtype=np.int64)
            tab = ((dig[:, None, :] + dig[None, :, :]) % p) @ wts
            self._add_np = tab
            self._add = tab.tolist()
        else:
            self._add_np = None
            self._add = None

    # raw coefficient arithmetic, used only while building tables
    def _encode(self, digits: Sequence[int]) -> int:
        return sum(d * w for d, w in zip(digits, self._weights))

    def _raw_mul(self, a: int, b: int) -> int:
        prod = _pmul(list(self._digits[a]), list(self._digits[b]), self.p)
        red = _pmod(prod, self.modulus, self.p)
        return self._encode(red + [0] * (self.m - len(red)))

    def __repr__(self) -> str:
        return f"FieldCtx(q={self.q}, modulus={format_poly(self.modulus)})"

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FieldCtx):
            return NotImplemented
        return (self.p, self.m, self.modulus, self.w) == (other.p, other.m, other.modulus, other.w)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus, self.w))

    # -- scalar ops on codes --

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._add is not None:
            return self._add[a][b]
        p, da, db = self.p, self._digits[a], self._digits[b]
        return sum(((x + y) % p) * w for x, y, w in zip(da, db, self._weights))

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Code of the prime-field constant ``n mod p``."""
        return n % self.p

    def log(self, a: int) -> int:
        if a == 0:
            raise FieldError("discrete log of zero is undefined")
        return self._log[a]

    def power_of_w(self, i: int) -> int:
        return self._exp[i % (self.q - 1)]

    def digits(self, a: int) -> tuple[int, ...]:
        return self._digits[a]

    def is_prime_field(self, a: int) -> bool:
        return a < self.p

    # -- vectorised ops on integer arrays of codes --

    @cached_property
    def _exp_np(self) -> np.ndarray:
        return np.array(self._exp, dtype=np.int64)

    @cached_property
    def _log_np(self) -> np.ndarray:
        out = np.array(self._log, dtype=np.int64)
        out[0] = 0
        return out

    @cached_property
    def _neg_np(self) -> np.ndarray:
        return np.array(self._neg, dtype=np.int64)

    @cached_property
    def _inv_np(self) -> np.ndarray:
        return np.array([0] + [self.inv(a) for a in range(1, self.q)], dtype=np.int64)

    @cached_property
    def _digits_np(self) -> np.ndarray:
        return np.array(self._digits, dtype=np.int64)

    def add_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self._add_np is not None:
            return self._add_np[a, b]
        d = (self._digits_np[a] + self._digits_np[b]) % self.p
        return d @ np.array(self._weights, dtype=np.int64)

    def neg_arr(self, a) -> np.ndarray:
        return self._neg_np[np.asarray(a, dtype=np.int64)]

    def sub_arr(self, a, b) -> np.ndarray:
        return self.add_arr(a, self.neg_arr(b))

    def mul_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self._exp_np[self._log_np[a] + self._log_np[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv_arr(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv_np[a]

    # -- elements --

    def __call__(self, value: int | str | FieldElement) -> FieldElement:
        """Make an element from a prime-field integer or from ``w^i`` notation."""
        if isinstance(value, FieldElement):
            if value.ctx != self:
                raise FieldError("context mismatch")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return FieldElement(self, self.from_int(int(value)))

    def element(self, code: int) -> FieldElement:
        if not 0 <= code < self.q:
            raise FieldError(f"code {code} outside F_{self.q}")
        return FieldElement(self, code)

    def from_rep(self, rep: Sequence[int]) -> FieldElement:
        rep = list(rep) + [0] * (self.m - len(rep))
        if len(rep) != self.m:
            raise FieldError("coefficient vector longer than the extension degree")
        return FieldElement(self, self._encode([c % self.p for c in rep]))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def gen(self) -> FieldElement:
        return FieldElement(self, self.w)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, c) for c in range(self.q)]

    def render(self, code: int) -> str:
        if code < self.p:
            return str(code)
        i = self._log[code]
        return "w" if i == 1 else f"w^{i}"

    def parse(self, text: str) -> FieldElement:
        s = text.strip().replace(" ", "")
        if re.fullmatch(r"-?\d+", s):
            return FieldElement(self, self.from_int(int(s)))
        m = re.fullmatch(r"w(?:\^\{?(-?\d+)\}?)?", s)
        if not m:
            raise FieldError(f"cannot parse field element {text!r}")
        return FieldElement(self, self.power_of_w(int(m.group(1) or 1)))


class FieldElement:
    """An element of a fixed :class:`FieldCtx`, with operator overloads."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldCtx, value: int):
        self.ctx = ctx
        self.value = value

    @property
    def rep(self) -> tuple[int, ...]:
        return self.ctx.digits(self.value)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise FieldError("context mismatch")
            return other.value
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.div(b, self.value))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.value, e))

    def inv(self) -> FieldElement:
        return FieldElement(self.ctx, self.ctx.inv(self.value))

    def dlog(self) -> int:
        return self.ctx.log(self.value)

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.value == other.value and self.ctx == other.ctx
        if isinstance(other, int):
            return self.value == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __repr__(self) -> str:
        return self.ctx.render(self.value)

    __str__ = __repr__

    def sort_key(self) -> tuple[int, ...]:
        return self.rep


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    f = factorint(q)
    if len(f) != 1:
        raise FieldError(f"{q} is not a prime power")
    ((p, m),) = f.items()
    return p, m


def _is_primitive(ctx_p: int, m: int, modulus: Sequence[int], g: int) -> bool:
    q = ctx_p**m
    if g == 0:
        return False
    digits = [(g // ctx_p**i) % ctx_p for i in range(m)]

    def powmod(e: int) -> list[int]:
        result, base = [1], _trim(list(digits))
        while e:
            if e & 1:
                result = _pmod(_pmul(result, base, ctx_p), modulus, ctx_p)
            base = _pmod(_pmul(base, base, ctx_p), modulus, ctx_p)
            e >>= 1
        return result

    if powmod(q - 1) != [1]:
        return False
    return all(powmod((q - 1) // r) != [1] for r in factorint(q - 1))


def make_field(
    p: int,
    m: int = 1,
    modulus: Sequence[int] | str | None = None,
    w: int | Sequence[int] | None = None,
) -> FieldCtx:
    """Build F_{p^m}.

    ``modulus`` is a monic coefficient list (low degree first) or a string
    such as ``"x^3+x+1"``; when omitted the lexicographically smallest monic
    irreducible of degree ``m`` is used. ``w`` is the primitive element as a
    code or coefficient vector; by default the smallest element of full order.
    """
    if not isprime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if m < 1:
        raise FieldError("extension degree must be at least 1")
    if p**m > MAX_Q:
        raise FieldError(f"q = {p}^{m} exceeds supported size {MAX_Q}")
    if isinstance(modulus, str):
        modulus = parse_poly(modulus, p)
    if modulus is None:
        modulus = next(f for f in _monic_in_lex_order(p, m) if is_irreducible(f, p))
    else:
        modulus = _trim([c % p for c in modulus])
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {m}")
        if not is_irreducible(modulus, p):
            factor = _find_factor(modulus, p)
            raise FieldError(
                f"modulus {format_poly(modulus)} is reducible over F_{p}; "
                f"factor {format_poly(factor or [])}"
            )
    q = p**m
    if w is None:
        if q == 2:
            w_code = 1
        else:
            w_code = next(g for g in range(1, q) if _is_primitive(p, m, modulus, g))
    else:
        if isinstance(w, int):
            w_code = w
        else:
            w_code = sum((c % p) * p**i for i, c in enumerate(w))
        if not _is_primitive(p, m, modulus, w_code) and q > 2:
            raise FieldError(f"element with code {w_code} is not primitive")
    return FieldCtx(p, m, modulus, w_code)


def field_of_order(q: int, modulus: Sequence[int] | str | None = None) -> FieldCtx:
    p, m = _prime_power(q)
    return make_field(p, m, modulus)


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p^m``; raises :class:`FieldError` otherwise."""
    return _prime_power(q)
