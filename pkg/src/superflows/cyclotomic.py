"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A CycNum of order N is a vector of rational coordinates in the power basis
1, z, ..., z^(phi(N)-1) of Q(zeta_N), kept reduced modulo the N-th cyclotomic
polynomial.  Because Phi_N is the minimal polynomial of zeta_N, the reduced
representation is canonical: two CycNum of the same order are equal exactly
when their coefficient vectors are equal.  Arithmetic between elements of
different orders lifts both operands into Q(zeta_lcm) first.

Coefficients are arbitrary-precision rationals (fractions.Fraction), so
cancellation of root-of-unity sums is exact, never a floating-point call.
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache

__all__ = ["CycNum", "root_of_unity", "cyclotomic_polynomial", "euler_phi"]

_ZERO = Fraction(0)
_ONE = Fraction(1)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi requires n >= 1")
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _int_poly_div_exact(num: list[int], den: tuple[int, ...]) -> list[int]:
    """Exact division of integer polynomials, den monic; remainder must vanish."""
    num = list(num)
    dn = len(den) - 1
    qn = len(num) - 1 - dn
    quot = [0] * (qn + 1)
    for i in range(qn, -1, -1):
        c = num[i + dn]
        quot[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, ascending order, monic of degree phi(n)."""
    if n == 1:
        return (-1, 1)
    poly = [0] * (n + 1)
    poly[0], poly[n] = -1, 1
    for d in _divisors(n):
        if d < n:
            poly = _int_poly_div_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduced_power(n: int, e: int) -> tuple[int, ...]:
    """Coordinates of z^e modulo Phi_n for 0 <= e < n (integer vector)."""
    deg = euler_phi(n)
    if e < deg:
        vec = [0] * deg
        vec[e] = 1
        return tuple(vec)
    phi = cyclotomic_polynomial(n)
    prev = _reduced_power(n, e - 1)
    out = [0] + list(prev[: deg - 1])
    top = prev[deg - 1]
    if top:
        for i in range(deg):
            out[i] -= top * phi[i]
    return tuple(out)


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [(_ZERO + (a[i] if i < len(a) else 0)) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _poly_trim(out)


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    if len(a) < len(b):
        return [], _poly_trim(a)
    inv_lead = 1 / b[-1]
    quot = [_ZERO] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv_lead
        if c:
            quot[i] = c
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return quot, _poly_trim(a)


class CycNum:
    """An element of Q(zeta_N), stored reduced modulo Phi_N.

    Values are immutable; every operation returns a fresh instance.  The
    `order` is the label N of the ambient field, not the conductor of the
    element itself (a rational number can carry any order).
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        if order < 1:
            raise ValueError("order must be a positive integer")
        deg = euler_phi(order)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != deg:
            raise ValueError(f"expected {deg} coordinates for order {order}, got {len(coeffs)}")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CycNum is immutable")

    @staticmethod
    def _raw(order: int, coeffs: tuple) -> "CycNum":
        obj = object.__new__(CycNum)
        object.__setattr__(obj, "order", order)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    @staticmethod
    def rational(value, order: int = 1) -> "CycNum":
        deg = euler_phi(order)
        vec = [_ZERO] * deg
        vec[0] = Fraction(value)
        return CycNum._raw(order, tuple(vec))

    @staticmethod
    def zero(order: int = 1) -> "CycNum":
        return CycNum.rational(0, order)

    @staticmethod
    def one(order: int = 1) -> "CycNum":
        return CycNum.rational(1, order)

    @staticmethod
    def from_powers(order: int, powers: dict) -> "CycNum":
        """Build sum of c * z^e from an {exponent: coefficient} mapping."""
        deg = euler_phi(order)
        out = [_ZERO] * deg
        for e, c in powers.items():
            c = Fraction(c)
            if not c:
                continue
            red = _reduced_power(order, e % order)
            for j, r in enumerate(red):
                if r:
                    out[j] += c * r
        return CycNum._raw(order, tuple(out))

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return self.coeffs[0]

    def lift(self, order: int) -> "CycNum":
        """Re-express this element inside Q(zeta_order); order must be a multiple."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} into order {order}")
        k = order // self.order
        out = [_ZERO] * euler_phi(order)
        for i, c in enumerate(self.coeffs):
            if c:
                red = _reduced_power(order, (i * k) % order)
                for j, r in enumerate(red):
                    if r:
                        out[j] += c * r
        return CycNum._raw(order, tuple(out))

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(value) -> "CycNum | None":
        if isinstance(value, CycNum):
            return value
        if isinstance(value, (int, Fraction)):
            return CycNum.rational(value)
        return None

    def _common(self, other: "CycNum"):
        if self.order == other.order:
            return self, other
        n = math.lcm(self.order, other.order)
        return self.lift(n), other.lift(n)

    def __add__(self, other):
        other = CycNum._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        return CycNum._raw(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum._raw(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = CycNum._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = CycNum._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = CycNum._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        n = a.order
        deg = len(a.coeffs)
        prod = [_ZERO] * (2 * deg - 1 if deg else 1)
        for i, ci in enumerate(a.coeffs):
            if ci:
                for j, cj in enumerate(b.coeffs):
                    if cj:
                        prod[i + j] += ci * cj
        out = list(prod[:deg])
        for e in range(deg, len(prod)):
            c = prod[e]
            if c:
                red = _reduced_power(n, e % n)
                for j, r in enumerate(red):
                    if r:
                        out[j] += c * r
        return CycNum._raw(n, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError(f"division by zero in Q(zeta_{self.order})")
        n = self.order
        r0 = [Fraction(c) for c in cyclotomic_polynomial(n)]
        r1 = _poly_trim(list(self.coeffs))
        s0, s1 = [], [_ONE]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if not r1:
            raise ArithmeticError("gcd with Phi_N is not constant; Phi_N should be irreducible")
        c = r1[0]
        deg = euler_phi(n)
        out = [x / c for x in s1] + [_ZERO] * (deg - len(s1))
        return CycNum._raw(n, tuple(out[:deg]))

    def __truediv__(self, other):
        other = CycNum._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = CycNum._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycNum.one(self.order)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        other = CycNum._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    # equality lifts across orders, so hashing is unsafe; key() serves maps
    __hash__ = None

    def key(self):
        """Hashable identity valid among elements of the same order."""
        return (self.order, self.coeffs)

    # -- numerics ----------------------------------------------------------

    def embed(self) -> complex:
        """Evaluate in C at zeta_N = exp(2*pi*i/N), double precision."""
        n = self.order
        total = 0j
        for i, c in enumerate(self.coeffs):
            if c:
                total += float(c) * cmath.exp(2j * cmath.pi * i / n)
        return total

    def multiplicative_order(self):
        """Smallest k >= 1 with self**k == 1, or None if not a root of unity.

        The roots of unity contained in Q(zeta_N) form the cyclic group of
        order lcm(2, N), so the search is complete once self**lcm(2, N) is
        inspected.
        """
        if self.is_zero():
            raise ValueError("zero has no multiplicative order")
        if abs(abs(self.embed()) - 1.0) > 1e-9:
            return None
        bound = math.lcm(2, self.order)
        if (self ** bound) != 1:
            return None
        for k in _divisors(bound):
            if (self ** k) == 1:
                return k
        raise AssertionError("unreachable: order must divide the torsion bound")

    # -- text form ---------------------------------------------------------

    def to_text(self) -> str:
        """Render as "a0 + a1*z + ...; z = zeta_N"; parse() round-trips exactly."""
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                var = "z" if i == 1 else f"z^{i}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        lhs = " ".join(parts) if parts else "0"
        return f"{lhs}; z = zeta_{self.order}"

    _TERM_RE = re.compile(r"^(?:(\d+(?:/\d+)?)\*?)?(z(?:\^(\d+))?)?$")

    @staticmethod
    def parse(text: str) -> "CycNum":
        head, sep, tail = text.partition(";")
        m = re.fullmatch(r"\s*z\s*=\s*zeta_(\d+)\s*", tail)
        if not sep or not m:
            raise ValueError(f"missing '; z = zeta_N' suffix in {text!r}")
        n = int(m.group(1))
        deg = euler_phi(n)
        coeffs = [_ZERO] * deg
        s = head.strip()
        if s != "0":
            chunks = re.split(r"\s([+-])\s", s)
            terms = [("+", chunks[0])]
            terms += [(chunks[i], chunks[i + 1]) for i in range(1, len(chunks), 2)]
            for sign, term in terms:
                neg = sign == "-"
                if term.startswith("-"):
                    neg = not neg
                    term = term[1:]
                tm = CycNum._TERM_RE.fullmatch(term)
                if not tm or not term:
                    raise ValueError(f"cannot parse term {term!r}")
                mag = Fraction(tm.group(1)) if tm.group(1) else _ONE
                if tm.group(2):
                    i = int(tm.group(3)) if tm.group(3) else 1
                else:
                    i = 0
                if i >= deg:
                    raise ValueError(f"exponent {i} is not reduced for order {n}")
                coeffs[i] += -mag if neg else mag
        return CycNum._raw(n, tuple(coeffs))

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"CycNum({self.to_text()!r})"


def root_of_unity(order: int, power: int = 1) -> CycNum:
    """zeta_order**power in canonical reduced form."""
    if order < 1:
        raise ValueError("order must be a positive integer")
    return CycNum.from_powers(order, {power % order: 1})
