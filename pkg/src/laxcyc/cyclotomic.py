"""Exact arithmetic in the cyclotomic field Q(zeta_p), zeta_p = exp(2*pi*i/p).

Elements are stored in the power basis {1, zeta, ..., zeta^(p-2)} with
rational coordinates; zeta^(p-1) reduces via 1 + zeta + ... + zeta^(p-1) = 0.
For p = 2 the field is just Q (zeta = -1).
"""

from __future__ import annotations

import cmath
from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to a rational")


class Cyclotomic:
    """An element of Q(zeta_p) for prime p >= 2.

    Immutable. Arithmetic is exact; mixing with int/Fraction coerces the
    rational into the constant coordinate.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=None):
        if order < 2:
            raise ValueError("cyclotomic order must be >= 2")
        self.order = order
        n = order - 1
        if coeffs is None:
            cs = [_ZERO] * n
        else:
            cs = [_as_fraction(c) for c in coeffs]
            if len(cs) > n:
                raise ValueError(f"expected <= {n} coordinates, got {len(cs)}")
            cs += [_ZERO] * (n - len(cs))
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rational(cls, order: int, value) -> "Cyclotomic":
        return cls(order, [_as_fraction(value)])

    @classmethod
    def zero(cls, order: int) -> "Cyclotomic":
        return cls(order)

    @classmethod
    def one(cls, order: int) -> "Cyclotomic":
        return cls(order, [_ONE])

    @classmethod
    def zeta(cls, order: int) -> "Cyclotomic":
        return cls.zeta_pow(order, 1)

    @classmethod
    def zeta_pow(cls, order: int, t: int) -> "Cyclotomic":
        """zeta^t, t arbitrary integer (reduced mod order)."""
        t %= order
        n = order - 1
        if t < n:
            cs = [_ZERO] * n
            cs[t] = _ONE
            return cls(order, cs)
        # zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))
        return cls(order, [-_ONE] * n)

    # -- helpers ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise ValueError(
                    f"mixed cyclotomic orders {self.order} and {other.order}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(self.order, other)
        return None

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_part(self) -> Fraction:
        """The value as a Fraction; raises if the element is not rational."""
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.order, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.order, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.order
        n = p - 1
        prod = [_ZERO] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if b == 0:
                    continue
                prod[i + j] += a * b
        # reduce degrees n .. 2n-2: zeta^(p-1+t) = zeta^t * zeta^(p-1)
        #                                      = -(zeta^t + ... + zeta^(t+p-2))
        for deg in range(2 * n - 2, n - 1, -1):
            c = prod[deg]
            if c == 0:
                continue
            prod[deg] = _ZERO
            t = deg - n  # 0 <= t <= n-2, so t+j stays below deg
            for j in range(n):
                prod[t + j] -= c
        return Cyclotomic(p, prod[:n])

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse via the extended Euclidean algorithm
        against Phi_p(x) = 1 + x + ... + x^(p-1)."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_p)")
        if self.is_rational():
            return Cyclotomic.from_rational(self.order, 1 / self.coeffs[0])
        p = self.order
        phi = [_ONE] * p
        r0, r1 = phi, _trim(list(self.coeffs))
        s0, s1 = [], [_ONE]
        while r1:
            q, r = _polydivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _polysub(s0, _polymul(q, s1))
        # r0 = gcd = nonzero constant (Phi_p has no root in Q(zeta_p) factors shared)
        if len(r0) != 1:
            raise ArithmeticError("element not invertible: gcd with Phi_p not constant")
        c = r0[0]
        inv = Cyclotomic(p, [v / c for v in s0[: p - 1]])
        return inv

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = Cyclotomic.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    # -- embedding and I/O ----------------------------------------------

    def embed(self) -> complex:
        """Evaluate at zeta = exp(2*pi*i/p) in double precision."""
        z = cmath.exp(2j * cmath.pi / self.order)
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + complex(c)
        return acc

    def to_json(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_json(cls, order: int, data) -> "Cyclotomic":
        return cls(order, [Fraction(s) for s in data])

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*z" if c != 1 else "z")
            else:
                terms.append(f"{c}*z^{k}" if c != 1 else f"z^{k}")
        return " + ".join(terms) if terms else "0"


# -- small dense univariate polynomial helpers over Fraction ------------


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _polysub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else _ZERO) - (b[i] if i < len(b) else _ZERO) for i in range(n)]
    return _trim(out)


def _polymul(a, b):
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _polydivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [_ZERO] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / b[-1]
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] -= c * bc
        _trim(a)
    return _trim(q), a


def rational_to_json(x: Fraction) -> str:
    x = _as_fraction(x)
    return f"{x.numerator}/{x.denominator}"


def rational_from_json(s: str) -> Fraction:
    return Fraction(s)
