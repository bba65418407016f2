"""Exact arithmetic in cyclotomic fields Q(zeta_m).

An element is a rational polynomial in ``z`` of degree < phi(m), reduced
modulo the m-th cyclotomic polynomial.  Elements of different orders combine
by lifting both operands to the lcm of their orders.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence, Union

Rational = Union[int, Fraction]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(num: Sequence[int], den: Sequence[int]) -> tuple[list, list]:
    """Integer/rational polynomial long division, coefficients low degree first."""
    num = list(num)
    den = _trim(list(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [0] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    while len(_trim(num)) >= len(den):
        shift = len(num) - len(den)
        factor = Fraction(num[-1], 1) / lead
        if factor.denominator == 1:
            factor = factor.numerator
        quot[shift] = factor
        for i, c in enumerate(den):
            num[shift + i] -= factor * c
        _trim(num)
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _poly_divmod(poly, cyclotomic_polynomial(d))
            assert not _trim(rem)
    return tuple(int(c) for c in _trim(poly))


@lru_cache(maxsize=None)
def _power_table(m: int, top: int) -> tuple[tuple[Fraction, ...], ...]:
    # reduced representatives of z^k for k < top
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rows = []
    cur = [Fraction(0)] * deg
    if deg:
        cur[0] = Fraction(1)
    for _ in range(top):
        rows.append(tuple(cur))
        # multiply by z and reduce using z^deg = -sum(phi[i] z^i)
        carry = cur[-1] if deg else Fraction(0)
        nxt = [Fraction(0)] + cur[:-1] if deg else []
        if carry:
            for i in range(deg):
                nxt[i] -= carry * phi[i]
        cur = nxt
    return tuple(rows)


def _phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


class CyclotomicScalar:
    """Element of Q(zeta_m) stored as reduced coefficients in powers of ``z``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, poly: Sequence[Rational] = ()):
        if order < 1:
            raise ValueError("order must be positive")
        self.order = order
        deg = _phi(order)
        poly = [Fraction(c) for c in poly]
        if len(poly) > deg:
            table = _power_table(order, len(poly))
            red = [Fraction(0)] * deg
            for k, c in enumerate(poly):
                if c:
                    for i, t in enumerate(table[k]):
                        if t:
                            red[i] += c * t
            poly = red
        else:
            poly = poly + [Fraction(0)] * (deg - len(poly))
        self.coeffs = tuple(poly)

    # -- constructors -------------------------------------------------
    @classmethod
    def zeta(cls, order: int, exponent: int = 1) -> "CyclotomicScalar":
        k = exponent % order
        poly = [0] * (k + 1)
        poly[k] = 1
        return cls(order, poly)

    @classmethod
    def rational(cls, value: Rational, order: int = 1) -> "CyclotomicScalar":
        return cls(order, [value])

    # -- helpers ------------------------------------------------------
    def lift(self, order: int) -> "CyclotomicScalar":
        """Embed into Q(zeta_order); ``self.order`` must divide ``order``."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} to {order}")
        step = order // self.order
        poly = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1 if self.coeffs else 1)
        for k, c in enumerate(self.coeffs):
            poly[k * step] = c
        return CyclotomicScalar(order, poly)

    def _coerce(self, other) -> tuple["CyclotomicScalar", "CyclotomicScalar"] | None:
        if isinstance(other, CyclotomicScalar):
            if other.order == self.order:
                return self, other
            m = _lcm(self.order, other.order)
            return self.lift(m), other.lift(m)
        if isinstance(other, (int, Fraction)):
            return self, CyclotomicScalar(self.order, [other])
        return None

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __complex__(self) -> complex:
        w = cmath.exp(2j * cmath.pi / self.order)
        return sum(complex(float(c)) * w**k for k, c in enumerate(self.coeffs))

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CyclotomicScalar(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicScalar(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CyclotomicScalar(a.order, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicScalar(self.order, [c * other for c in self.coeffs])
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        prod = [Fraction(0)] * max(len(a.coeffs) + len(b.coeffs) - 1, 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return CyclotomicScalar(a.order, prod)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicScalar":
        if not self:
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        # extended Euclid: find u with u*self = 1 mod Phi_m
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        r0, r1 = phi, _trim(list(self.coeffs))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, _trim([Fraction(c) for c in r])
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
            if not r1:
                raise ZeroDivisionError("non-invertible element")  # pragma: no cover
        # r1 is a nonzero constant
        c = r1[0]
        return CyclotomicScalar(self.order, [x / c for x in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return CyclotomicScalar(self.order, [c / other for c in self.coeffs])
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicScalar(self.order, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ---------------------------------------------------
    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        # equal values of different orders must hash alike; only rationals are
        # canonical across orders, so everything else shares one bucket
        if self.is_rational():
            return hash(self.to_fraction())
        return hash("cyclotomic")

    # -- display ------------------------------------------------------
    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"CyclotomicScalar({self.order}, {str(self)!r})"


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([Fraction(x) - y for x, y in zip(a, b)])


def parse_scalar(text: str) -> Fraction:
    """Parse a rational serialized as ``"p/q"`` (or an integer)."""
    return Fraction(text.strip())


def format_scalar(value, approx: bool = False) -> str:
    """Exact (or floating preview) string for a Fraction or CyclotomicScalar."""
    if isinstance(value, CyclotomicScalar):
        if value.is_rational():
            value = value.to_fraction()
        elif approx:
            z = complex(value)
            re, im = (0.0 if abs(t) < 1e-12 else t for t in (z.real, z.imag))
            return f"{re:.12g}{im:+.12g}i"
        else:
            return str(value)
    value = Fraction(value)
    if approx:
        return f"{float(value):.12g}"
    return str(value)
