"""Sparse multivariate polynomials in coordinate functions.

Variables are hashable keys, normally triples (i, j, k) naming the
coefficient of x^k in the (i, j) matrix entry (1-indexed i, j). A monomial
is a sorted tuple of (variable, exponent); coefficients are Fraction or
Cyclotomic. CoordPoly behaves like a scalar, so PolyMat works symbolically
with CoordPoly entries.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import Cyclotomic

_F0 = Fraction(0)
_F1 = Fraction(1)
_EMPTY = ()


def _coeff_is_zero(c) -> bool:
    return c == 0


class CoordPoly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if not _coeff_is_zero(c):
                    self.terms[m] = c

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls) -> "CoordPoly":
        return cls()

    @classmethod
    def const(cls, c) -> "CoordPoly":
        return cls({_EMPTY: c})

    @classmethod
    def var(cls, v, c=_F1) -> "CoordPoly":
        return cls({((v, 1),): c})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    def total_degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def monomial_count(self) -> int:
        return len(self.terms)

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CoordPoly):
            return other
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return CoordPoly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            w = out.get(m, _F0) + c
            if _coeff_is_zero(w):
                out.pop(m, None)
            else:
                out[m] = w
        return CoordPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return CoordPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _merge_monomials(m1, m2)
                w = out.get(m, _F0) + c1 * c2
                if _coeff_is_zero(w):
                    out.pop(m, None)
                else:
                    out[m] = w
        return CoordPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            if isinstance(other, int):
                other = Fraction(other)
            return CoordPoly({m: c / other for m, c in self.terms.items()})
        return NotImplemented

    def scale(self, c) -> "CoordPoly":
        if _coeff_is_zero(c):
            return CoordPoly()
        return CoordPoly({m: c * v for m, v in self.terms.items()})

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- calculus ----------------------------------------------------------

    def partial(self, v) -> "CoordPoly":
        out = {}
        for m, c in self.terms.items():
            for idx, (var, exp) in enumerate(m):
                if var == v:
                    if exp == 1:
                        nm = m[:idx] + m[idx + 1 :]
                    else:
                        nm = m[:idx] + ((var, exp - 1),) + m[idx + 1 :]
                    w = out.get(nm, _F0) + c * exp
                    if _coeff_is_zero(w):
                        out.pop(nm, None)
                    else:
                        out[nm] = w
                    break
        return CoordPoly(out)

    def evaluate(self, value_of):
        """Evaluate with value_of(var) supplying scalar values."""
        acc = _F0
        for m, c in self.terms.items():
            term = c
            for var, exp in m:
                val = value_of(var)
                for _ in range(exp):
                    term = term * val
            acc = acc + term
        return acc

    def substitute_zero(self, is_killed) -> "CoordPoly":
        """Set to zero every variable with is_killed(var) true."""
        out = {}
        for m, c in self.terms.items():
            if any(is_killed(var) for var, _ in m):
                continue
            out[m] = out.get(m, _F0) + c
        return CoordPoly(out)

    def map_coeffs(self, func) -> "CoordPoly":
        return CoordPoly({m: func(c) for m, c in self.terms.items()})

    def scale_monomials(self, weight_of) -> "CoordPoly":
        """Multiply each monomial by prod weight_of(var)**exp (used for
        pullbacks along diagonal actions)."""
        out = {}
        for m, c in self.terms.items():
            w = c
            for var, exp in m:
                f = weight_of(var)
                for _ in range(exp):
                    w = w * f
            if not _coeff_is_zero(w):
                out[m] = w
        return CoordPoly(out)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m, c in sorted(self.terms.items()):
            mono = "*".join(
                f"l{var}^{exp}" if exp > 1 else f"l{var}" for var, exp in m
            )
            bits.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(bits)


def _merge_monomials(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    while i < len(m1) and j < len(m2):
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 == v2:
            out.append((v1, e1 + e2))
            i += 1
            j += 1
        elif v1 < v2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


class XYSeries:
    """Polynomial in two formal variables x, y with CoordPoly coefficients,
    stored as {(a, b): CoordPoly} for x^a y^b."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, v in terms.items():
                if not v.is_zero():
                    self.terms[k] = v

    @classmethod
    def monomial(cls, a: int, b: int, coeff: CoordPoly) -> "XYSeries":
        return cls({(a, b): coeff})

    def coeff(self, a: int, b: int) -> CoordPoly:
        return self.terms.get((a, b), CoordPoly.zero())

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "XYSeries") -> "XYSeries":
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k)
            w = v if w is None else w + v
            if w.is_zero():
                out.pop(k, None)
            else:
                out[k] = w
        return XYSeries(out)

    def __sub__(self, other: "XYSeries") -> "XYSeries":
        return self + (-other)

    def __neg__(self) -> "XYSeries":
        return XYSeries({k: -v for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, XYSeries):
            return NotImplemented
        return (self - other).is_zero()

    def shift(self, da: int, db: int) -> "XYSeries":
        return XYSeries({(a + da, b + db): v for (a, b), v in self.terms.items()})

    def mul_xy_poly(self, xy_coeffs) -> "XYSeries":
        """Multiply by a scalar polynomial given as {(a, b): Fraction}."""
        out = XYSeries()
        for (a, b), c in xy_coeffs.items():
            if c == 0:
                continue
            out = out + XYSeries(
                {(a2 + a, b2 + b): v.scale(c) for (a2, b2), v in self.terms.items()}
            )
        return out

    def divexact_xs_minus_ys(self, s: int) -> "XYSeries":
        """Exact division by x^s - y^s; raises if a remainder survives."""
        rem = dict(self.terms)
        quo = {}
        while rem:
            amax = max(a for a, _ in rem)
            if amax < s:
                raise ArithmeticError("division by x^s - y^s leaves a remainder")
            layer = [(a, b) for (a, b) in rem if a == amax]
            for (a, b) in layer:
                c = rem.pop((a, b))
                qk = (a - s, b)
                quo[qk] = quo.get(qk, CoordPoly.zero()) + c
                rk = (a - s, b + s)
                w = rem.get(rk)
                w = c if w is None else w + c
                if w.is_zero():
                    rem.pop(rk, None)
                else:
                    rem[rk] = w
        return XYSeries(quo)
