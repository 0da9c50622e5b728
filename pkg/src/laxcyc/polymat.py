"""Polynomial matrices L(x) with an explicit degree bound, their
characteristic polynomials, trace-power Hamiltonians and the truncation
operator (L(x)/x^j)_+ that drives the Lax equations.

Scalars are duck-typed: Fraction / Cyclotomic in exact mode, complex in
float mode. The degree bound q is part of the data, never inferred.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import Cyclotomic, rational_from_json

_F0 = Fraction(0)
_F1 = Fraction(1)


def is_float_scalar(x) -> bool:
    return isinstance(x, (float, complex))


def scalar_is_zero(x, tol: float = 0.0) -> bool:
    if is_float_scalar(x):
        return abs(x) <= tol
    return x == 0


# -- univariate polynomials as coefficient lists ------------------------


def poly_add(a, b):
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else _F0) + (b[i] if i < len(b) else _F0)
        for i in range(n)
    ]


def poly_sub(a, b):
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else _F0) - (b[i] if i < len(b) else _F0)
        for i in range(n)
    ]


def poly_mul(a, b):
    out = [_F0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if scalar_is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def poly_eval(a, x0):
    acc = _F0
    for c in reversed(a):
        acc = acc * x0 + c
    return acc


def poly_trim(a):
    a = list(a)
    while a and scalar_is_zero(a[-1]):
        a.pop()
    return a


def poly_divmod(a, b):
    """Division with remainder over a field."""
    a = poly_trim(a)
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [_F0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / b[-1]
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] = a[i + k] - c * bc
        a = poly_trim(a)
    return q, a


def poly_gcd(a, b):
    """Monic gcd over a field."""
    a, b = poly_trim(a), poly_trim(b)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def poly_derivative(a):
    return [a[k] * k for k in range(1, len(a))]


# -- polynomial matrices -------------------------------------------------


class PolyMat:
    """A p x p matrix of polynomials with declared degree bound q.

    entries[i][j] is a coefficient list of length exactly q+1
    (entries[i][j][k] = coefficient of x^k).
    """

    __slots__ = ("p", "q", "entries")

    def __init__(self, p: int, q: int, entries):
        if p < 1 or q < 0:
            raise ValueError("need p >= 1 and q >= 0")
        if len(entries) != p or any(len(row) != p for row in entries):
            raise ValueError("entries must be a p x p array")
        self.p = p
        self.q = q
        norm = []
        for row in entries:
            nrow = []
            for e in row:
                e = list(e)
                if len(e) > q + 1:
                    for c in e[q + 1 :]:
                        if not scalar_is_zero(c):
                            raise ValueError("entry degree exceeds declared bound q")
                    e = e[: q + 1]
                e += [_F0] * (q + 1 - len(e))
                nrow.append(e)
            norm.append(nrow)
        self.entries = norm

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, p: int, q: int) -> "PolyMat":
        return cls(p, q, [[[_F0] * (q + 1) for _ in range(p)] for _ in range(p)])

    @classmethod
    def from_coeff_mats(cls, p: int, q: int, mats) -> "PolyMat":
        """Build from a list of constant matrices [L_0, L_1, ..., L_q]."""
        out = cls.zero(p, q)
        for k, m in enumerate(mats):
            for i in range(p):
                for j in range(p):
                    out.entries[i][j][k] = m[i][j]
        return out

    def copy(self) -> "PolyMat":
        return PolyMat(self.p, self.q, [[list(e) for e in row] for row in self.entries])

    # -- basic algebra ----------------------------------------------------

    def __add__(self, other: "PolyMat") -> "PolyMat":
        self._check_shape(other)
        return PolyMat(
            self.p,
            self.q,
            [
                [poly_add(self.entries[i][j], other.entries[i][j]) for j in range(self.p)]
                for i in range(self.p)
            ],
        )

    def __sub__(self, other: "PolyMat") -> "PolyMat":
        self._check_shape(other)
        return PolyMat(
            self.p,
            self.q,
            [
                [poly_sub(self.entries[i][j], other.entries[i][j]) for j in range(self.p)]
                for i in range(self.p)
            ],
        )

    def __neg__(self) -> "PolyMat":
        return self.scale(-_F1)

    def scale(self, c) -> "PolyMat":
        return PolyMat(
            self.p,
            self.q,
            [[[c * x for x in e] for e in row] for row in self.entries],
        )

    def _check_shape(self, other):
        if self.p != other.p or self.q != other.q:
            raise ValueError("shape/degree mismatch")

    def matmul(self, other: "PolyMat") -> "PolyMat":
        if self.p != other.p:
            raise ValueError("size mismatch")
        p = self.p
        qout = self.q + other.q
        out = PolyMat.zero(p, qout)
        for i in range(p):
            for j in range(p):
                acc = [_F0] * (qout + 1)
                for t in range(p):
                    prod = poly_mul(self.entries[i][t], other.entries[t][j])
                    for k, c in enumerate(prod):
                        acc[k] = acc[k] + c
                out.entries[i][j] = acc
        return out

    def pow(self, n: int) -> "PolyMat":
        if n < 0:
            raise ValueError("negative matrix power")
        if n == 0:
            out = PolyMat.zero(self.p, 0)
            for i in range(self.p):
                out.entries[i][i][0] = _F1
            return out
        result = self
        for _ in range(n - 1):
            result = result.matmul(self)
        return result

    def commutator(self, other: "PolyMat") -> "PolyMat":
        return self.matmul(other) - other.matmul(self)

    # -- evaluation and coefficient access --------------------------------

    def eval_at(self, x0):
        return [
            [poly_eval(self.entries[i][j], x0) for j in range(self.p)]
            for i in range(self.p)
        ]

    def coeff_mat(self, k: int):
        if k < 0 or k > self.q:
            return [[_F0] * self.p for _ in range(self.p)]
        return [[self.entries[i][j][k] for j in range(self.p)] for i in range(self.p)]

    def leading(self):
        """L(infinity): the coefficient matrix at the declared bound q."""
        return self.coeff_mat(self.q)

    def trace(self):
        acc = [_F0] * (self.q + 1)
        for i in range(self.p):
            acc = poly_add(acc, self.entries[i][i])
        return acc

    def truncate_div(self, j: int) -> "PolyMat":
        """(L(x)/x^j)_+ = sum_{k>=0} L_{k+j} x^k."""
        if j < 0:
            raise ValueError("j must be >= 0")
        qout = max(self.q - j, 0)
        out = PolyMat.zero(self.p, qout)
        for i in range(self.p):
            for m in range(self.p):
                src = self.entries[i][m]
                for k in range(0, self.q - j + 1):
                    out.entries[i][m][k] = src[k + j]
        return out

    def rebound(self, q_new: int, tol: float = 0.0) -> "PolyMat":
        """Re-declare the degree bound; coefficients above q_new must vanish
        (within tol for float scalars)."""
        if q_new >= self.q:
            out = PolyMat.zero(self.p, q_new)
            for i in range(self.p):
                for j in range(self.p):
                    for k in range(self.q + 1):
                        out.entries[i][j][k] = self.entries[i][j][k]
            return out
        for i in range(self.p):
            for j in range(self.p):
                for k in range(q_new + 1, self.q + 1):
                    if not scalar_is_zero(self.entries[i][j][k], tol):
                        raise DegreeOverflowError(
                            f"coefficient of x^{k} at ({i + 1},{j + 1}) is nonzero"
                        )
        return PolyMat(
            self.p,
            q_new,
            [[e[: q_new + 1] for e in row] for row in self.entries],
        )

    def map_scalars(self, func) -> "PolyMat":
        return PolyMat(
            self.p,
            self.q,
            [[[func(c) for c in e] for e in row] for row in self.entries],
        )

    def to_float(self) -> "PolyMat":
        def conv(c):
            if is_float_scalar(c):
                return complex(c)
            if isinstance(c, Cyclotomic):
                return c.embed()
            return complex(c)

        return self.map_scalars(conv)

    def is_float(self) -> bool:
        return any(
            is_float_scalar(c) for row in self.entries for e in row for c in e
        )

    def __eq__(self, other):
        if not isinstance(other, PolyMat):
            return NotImplemented
        if self.p != other.p:
            return False
        qn = max(self.q, other.q)
        for i in range(self.p):
            for j in range(self.p):
                a = self.entries[i][j]
                b = other.entries[i][j]
                for k in range(qn + 1):
                    ca = a[k] if k <= self.q else _F0
                    cb = b[k] if k <= other.q else _F0
                    if not scalar_is_zero(ca - cb):
                        return False
        return True

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(
            scalar_is_zero(c, tol) for row in self.entries for e in row for c in e
        )

    def max_abs(self) -> float:
        m = 0.0
        for row in self.entries:
            for e in row:
                for c in e:
                    if is_float_scalar(c):
                        v = abs(complex(c))
                    elif isinstance(c, Cyclotomic):
                        v = abs(c.embed())
                    else:
                        v = abs(float(c))
                    m = max(m, v)
        return m

    # -- JSON (see docs/schemas/polymat.json) ------------------------------

    def to_json(self, zeta_order: int | None = None) -> dict:
        if self.is_float():
            ser = lambda c: [complex(c).real, complex(c).imag]
            order = zeta_order or self.p
        else:
            order = zeta_order or self.p
            def ser(c):
                if isinstance(c, Cyclotomic):
                    return c.to_json()
                f = Fraction(c)
                return Cyclotomic.from_rational(order, f).to_json()
        return {
            "p": self.p,
            "q": self.q,
            "zeta_order": order,
            "entries": [[[ser(c) for c in e] for e in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PolyMat":
        p = int(data["p"])
        q = int(data["q"])
        order = int(data.get("zeta_order", p))

        def parse(c):
            # number -> float mode; [re, im] -> float mode;
            # "num/den" -> rational; ["num/den", ...] -> cyclotomic array
            if isinstance(c, (int, float)):
                return complex(c)
            if isinstance(c, str):
                return rational_from_json(c)
            if isinstance(c, list) and c and all(isinstance(v, str) for v in c):
                z = Cyclotomic.from_json(order, c)
                return z.rational_part() if z.is_rational() else z
            if isinstance(c, list) and len(c) == 2 and all(
                isinstance(v, (int, float)) for v in c
            ):
                return complex(c[0], c[1])
            raise ValueError(f"cannot parse coefficient {c!r}")

        entries = [[[parse(c) for c in e] for e in row] for row in data["entries"]]
        return cls(p, q, entries)


class DegreeOverflowError(RuntimeError):
    """Raised when a flow right-hand side exceeds the declared degree bound."""


# -- bivariate polynomials ----------------------------------------------


class BivarPoly:
    """P(x, y) as a sparse table {(i, j): coeff} for x^i y^j."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, v in terms.items():
                if not scalar_is_zero(v):
                    self.terms[k] = v

    @classmethod
    def const(cls, c) -> "BivarPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c=_F1) -> "BivarPoly":
        return cls({(i, j): c})

    def coeff(self, i: int, j: int):
        return self.terms.get((i, j), _F0)

    def is_zero(self) -> bool:
        return not self.terms

    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def deg_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def __add__(self, other: "BivarPoly") -> "BivarPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k, _F0) + v
            if scalar_is_zero(w):
                out.pop(k, None)
            else:
                out[k] = w
        return BivarPoly(out)

    def __sub__(self, other: "BivarPoly") -> "BivarPoly":
        return self + (-other)

    def __neg__(self) -> "BivarPoly":
        return BivarPoly({k: -v for k, v in self.terms.items()})

    def __mul__(self, other: "BivarPoly") -> "BivarPoly":
        out = {}
        for (i1, j1), v1 in self.terms.items():
            for (i2, j2), v2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                w = out.get(k, _F0) + v1 * v2
                if scalar_is_zero(w):
                    out.pop(k, None)
                else:
                    out[k] = w
        return BivarPoly(out)

    def scale(self, c) -> "BivarPoly":
        if scalar_is_zero(c):
            return BivarPoly()
        return BivarPoly({k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return (self - other).is_zero()

    def y_coeff(self, j: int):
        """The x-polynomial multiplying y^j, as a coefficient list."""
        out = [_F0] * (self.deg_x() + 1)
        for (i, jj), v in self.terms.items():
            if jj == j:
                out[i] = v
        return poly_trim(out)

    def x_coeff(self, i: int):
        """The y-polynomial multiplying x^i, as a coefficient list."""
        out = [_F0] * (self.deg_y() + 1)
        for (ii, j), v in self.terms.items():
            if ii == i:
                out[j] = v
        return poly_trim(out)

    def eval(self, x0, y0):
        acc = _F0
        for (i, j), v in self.terms.items():
            acc = acc + v * (x0 ** i) * (y0 ** j)
        return acc

    def subs_y(self, y0):
        """Substitute a scalar for y; returns an x-coefficient list."""
        out = [_F0] * (self.deg_x() + 1)
        for (i, j), v in self.terms.items():
            out[i] = out[i] + v * (y0 ** j)
        return poly_trim(out)

    def subs_x(self, x0):
        """Substitute a scalar for x; returns a y-coefficient list."""
        out = [_F0] * (self.deg_y() + 1)
        for (i, j), v in self.terms.items():
            out[j] = out[j] + v * (x0 ** i)
        return poly_trim(out)

    def exact_div(self, other: "BivarPoly") -> "BivarPoly":
        """Exact division (raises if the division leaves a remainder)."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = BivarPoly(dict(self.terms))
        quot = {}
        lead_key = max(other.terms)  # lex order on (deg_x, deg_y)
        lead_val = other.terms[lead_key]
        while not rem.is_zero():
            rk = max(rem.terms)
            i, j = rk[0] - lead_key[0], rk[1] - lead_key[1]
            if i < 0 or j < 0:
                raise ArithmeticError("exact_div: division leaves a remainder")
            c = rem.terms[rk] / lead_val
            quot[(i, j)] = quot.get((i, j), _F0) + c
            rem = rem - BivarPoly.monomial(i, j, c) * other
        return BivarPoly(quot)

    def divides(self, other: "BivarPoly") -> bool:
        try:
            other.exact_div(self)
            return True
        except ArithmeticError:
            return False

    def map_scalars(self, func) -> "BivarPoly":
        return BivarPoly({k: func(v) for k, v in self.terms.items()})

    def to_json(self) -> list:
        def ser(c):
            if isinstance(c, Cyclotomic):
                return c.to_json()
            if is_float_scalar(c):
                return [complex(c).real, complex(c).imag]
            f = Fraction(c)
            return f"{f.numerator}/{f.denominator}"

        return [[i, j, ser(v)] for (i, j), v in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data, zeta_order: int | None = None) -> "BivarPoly":
        terms = {}
        for i, j, raw in data:
            if isinstance(raw, str):
                c = rational_from_json(raw)
            elif isinstance(raw, list) and all(isinstance(v, str) for v in raw):
                z = Cyclotomic.from_json(zeta_order or len(raw) + 1, raw)
                c = z.rational_part() if z.is_rational() else z
            elif isinstance(raw, list) and len(raw) == 2:
                c = complex(raw[0], raw[1])
            else:
                c = Fraction(raw)
            terms[(int(i), int(j))] = c
        return cls(terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (i, j), v in sorted(self.terms.items()):
            mono = "".join(
                s
                for s in (
                    f"x^{i}" if i > 1 else "x" if i == 1 else "",
                    f"y^{j}" if j > 1 else "y" if j == 1 else "",
                )
                if s
            )
            bits.append(f"({v}){mono}" if mono else f"({v})")
        return " + ".join(bits)


def _det_cofactor(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = BivarPoly()
    for j in range(n):
        entry = rows[0][j]
        if entry.is_zero():
            continue
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        sub = _det_cofactor(minor)
        term = entry * sub
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _det_bareiss(rows):
    """Fraction-free Bareiss elimination over the polynomial domain."""
    n = len(rows)
    m = [[rows[i][j] for j in range(n)] for i in range(n)]
    sign = 1
    prev = BivarPoly.const(_F1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return BivarPoly()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign > 0 else -d


def char_poly(L: PolyMat) -> BivarPoly:
    """det(y*I_p - L(x)), monic of degree p in y."""
    p = L.p
    rows = []
    for i in range(p):
        row = []
        for j in range(p):
            terms = {}
            if i == j:
                terms[(0, 1)] = _F1
            for k, c in enumerate(L.entries[i][j]):
                if not scalar_is_zero(c):
                    terms[(k, 0)] = terms.get((k, 0), _F0) - c
            row.append(BivarPoly(terms))
        rows.append(row)
    if p <= 4:
        return _det_cofactor(rows)
    return _det_bareiss(rows)


def hamiltonian(L: PolyMat, i: int, j: int):
    """H_{i,j}(L) = coefficient of x^j in Tr L(x)^{i+1}, divided by i+1.

    Vanishes outside 0 <= j <= (i+1)q.
    """
    if i < 0:
        raise ValueError("need i >= 0")
    if j < 0 or j > (i + 1) * L.q:
        return _F0
    tr = L.pow(i + 1).trace()
    c = tr[j] if j < len(tr) else _F0
    return c / (i + 1)


def all_char_coeffs(L: PolyMat):
    """The coefficients s_i(x) of char_poly as a dict {(i, j): value} for
    y^{p-i} x^j, i = 1..p. Used for invariant monitoring."""
    cp = char_poly(L)
    out = {}
    for (xi, yj), v in cp.terms.items():
        i = L.p - yj
        if i >= 1:
            out[(i, xi)] = v
    return out


def regularity_check(L: PolyMat, c) -> bool:
    """True iff the minimal polynomial of L(c) has degree p, i.e. the
    matrix powers I, L(c), ..., L(c)^{p-1} are linearly independent."""
    from . import linalg

    p = L.p
    A = L.eval_at(c)
    if any(is_float_scalar(v) for row in A for v in row):
        import numpy as np

        An = np.array([[complex(v) for v in row] for row in A])
        fam = []
        cur = np.eye(p, dtype=complex)
        for _ in range(p):
            fam.append(cur.flatten())
            cur = cur @ An
        return bool(np.linalg.matrix_rank(np.array(fam), tol=1e-9) == p)
    fam = []
    cur = [[_F1 if a == b else _F0 for b in range(p)] for a in range(p)]
    for _ in range(p):
        fam.append([cur[a][b] for a in range(p) for b in range(p)])
        cur = linalg.mat_mul(cur, A)
    return linalg.rank(fam) == p
