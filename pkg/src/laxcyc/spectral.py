"""Spectral curves: degree-pattern membership, the quotient polynomial
Q(x^p, y), genus and Riemann-Hurwitz bookkeeping, squarefreeness and branch
certificates, irreducibility (exact criteria + numerical monodromy), Newton
identities, the trace/char-poly diagram, and Hamiltonian independence."""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from .cyclotomic import Cyclotomic
from .polymat import (
    BivarPoly,
    PolyMat,
    char_poly,
    is_float_scalar,
    poly_derivative,
    poly_gcd,
    poly_trim,
)
from .symmetry import fixed_basis, is_fixed

_F0 = Fraction(0)
_F1 = Fraction(1)


class NonSquarefreeCurveError(ValueError):
    """The y-discriminant vanishes identically: the curve is non-reduced or
    has a repeated component."""


# -- membership and quotient ---------------------------------------------------


def v_membership(P: BivarPoly, p: int, d: int) -> bool:
    """P = y^p + s_1(x) y^{p-1} + ... + s_p(x) with deg s_i <= i*d."""
    if P.deg_y() != p or not P.coeff(0, p) == 1:
        return False
    for (i, j), v in P.terms.items():
        if j == p:
            if i > 0:
                return False
            continue
        if i > (p - j) * d:
            return False
    return True


def quotient_Q(P: BivarPoly, p: int) -> BivarPoly | None:
    """Q with P(x, y) = Q(x^p, y) when every x-exponent is p-divisible,
    else None."""
    out = {}
    for (i, j), v in P.terms.items():
        if i % p != 0:
            return None
        out[(i // p, j)] = v
    return BivarPoly(out)


# -- genus and Riemann-Hurwitz ---------------------------------------------------


@dataclass(frozen=True)
class GenusData:
    p: int
    d: int
    g: int


def genus(p: int, d: int) -> GenusData:
    """g = (1/2)(p-1)(pd-2) for a smooth curve in the degree-d family."""
    if p < 2 or d < 1:
        raise ValueError("need p >= 2 and d >= 1")
    num = (p - 1) * (p * d - 2)
    assert num % 2 == 0
    return GenusData(p=p, d=d, g=num // 2)


def rh_consistency(p: int, d_prime: int) -> bool:
    """Riemann-Hurwitz for the degree-p quotient cover: 2 g_P - 2 =
    p (2 g_Q - 2) + 2p(p-1), with 2p branch points of full index p."""
    g_P = genus(p, p * d_prime).g
    g_Q = genus(p, d_prime).g
    branch_points = 2 * p
    ramification_excess = branch_points * (p - 1)
    return 2 * g_P - 2 == p * (2 * g_Q - 2) + ramification_excess


# -- squarefreeness flags ----------------------------------------------------------


@dataclass
class SplFlags:
    in_v: bool
    q0_squarefree: bool
    qinf_squarefree: bool

    @property
    def passes(self) -> bool:
        return self.in_v and self.q0_squarefree and self.qinf_squarefree


def _squarefree(coeffs) -> bool:
    coeffs = poly_trim(list(coeffs))
    if len(coeffs) <= 1:
        return False  # constant: no roots at all, treat as degenerate
    g = poly_gcd(coeffs, poly_derivative(coeffs))
    return len(g) == 1


def q_at_zero(Q: BivarPoly) -> list:
    return Q.subs_x(_F0)


def q_at_infinity(Q: BivarPoly, p: int, d_prime: int) -> list:
    """sum_i s_i(inf) y^{p-i} where s_i(inf) is the x^{i d'} coefficient."""
    out = [_F0] * (p + 1)
    out[p] = _F1
    for i in range(1, p + 1):
        out[p - i] = Q.coeff(i * d_prime, p - i)
    return poly_trim(out)


def spl_cert(Q: BivarPoly, p: int, d_prime: int) -> SplFlags:
    return SplFlags(
        in_v=v_membership(Q, p, d_prime),
        q0_squarefree=_squarefree(q_at_zero(Q)),
        qinf_squarefree=_squarefree(q_at_infinity(Q, p, d_prime)),
    )


# -- discriminant and branch points --------------------------------------------------


def _embed_scalar(c) -> complex:
    if isinstance(c, Cyclotomic):
        return c.embed()
    if is_float_scalar(c):
        return complex(c)
    return complex(Fraction(c))


def _y_poly_table(P: BivarPoly):
    """P as a list over y-degree of x-coefficient lists."""
    ny = P.deg_y()
    table = [[_F0] * (P.deg_x() + 1) for _ in range(ny + 1)]
    for (i, j), v in P.terms.items():
        table[j][i] = v
    return [poly_trim(row) for row in table]


def resultant_y(P: BivarPoly, R: BivarPoly):
    """res_y(P, R) as an exact x-coefficient list, by evaluation at integer
    points and Lagrange interpolation."""
    a = _y_poly_table(P)
    b = _y_poly_table(R)
    n, m = len(a) - 1, len(b) - 1
    if n < 0 or m < 0:
        return []
    bound = (n + m) * max(P.deg_x(), R.deg_x(), 0) + 1
    xs = []
    k = 0
    while len(xs) < bound + 1:
        xs.append(Fraction(k))
        if k > 0:
            xs.append(Fraction(-k))
        k += 1
    xs = xs[: bound + 1]
    vals = []
    for x0 in xs:
        av = [_poly_eval_frac(row, x0) for row in a]
        bv = [_poly_eval_frac(row, x0) for row in b]
        vals.append(_sylvester_det(av, bv))
    return _lagrange_interpolate(xs, vals)


def _poly_eval_frac(row, x0):
    acc = _F0
    for c in reversed(row):
        acc = acc * x0 + c
    return acc


def _sylvester_det(a, b):
    """Resultant of two scalar-coefficient polynomials (ascending lists)."""
    a = poly_trim(list(a))
    b = poly_trim(list(b))
    n, m = len(a) - 1, len(b) - 1
    if n < 0 or m < 0:
        return _F0
    if n == 0:
        return a[0] ** m
    if m == 0:
        return b[0] ** n
    size = n + m
    rows = []
    for sh in range(m):
        row = [_F0] * size
        for t, c in enumerate(reversed(a)):
            row[sh + t] = c
        rows.append(row)
    for sh in range(n):
        row = [_F0] * size
        for t, c in enumerate(reversed(b)):
            row[sh + t] = c
        rows.append(row)
    return linalg.det(rows)


def _lagrange_interpolate(xs, vals):
    """Exact interpolation through (xs[i], vals[i]); ascending coefficients."""
    n = len(xs)
    acc = [_F0] * n
    for i in range(n):
        num = [_F1]
        den = _F1
        for j in range(n):
            if j == i:
                continue
            num = _poly_mul_frac(num, [-xs[j], _F1])
            den = den * (xs[i] - xs[j])
        scale = vals[i] / den
        for t, c in enumerate(num):
            acc[t] = acc[t] + c * scale
    return poly_trim(acc)


def _poly_mul_frac(a, b):
    out = [_F0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


@dataclass
class BranchData:
    disc_coeffs: list  # exact x-poly of disc_y (resultant with dQ/dy)
    disc_roots: list  # complex roots (branch points of the x-projection)
    fiber_size_zero: int
    fiber_size_infinity: int
    branch_at_zero: bool
    branch_at_infinity: bool

    @property
    def f_branch_count(self) -> int:
        """Branch points of the quotient cover: the fibers over 0 and inf."""
        return self.fiber_size_zero + self.fiber_size_infinity


def branch_points(Q: BivarPoly, p: int, d_prime: int) -> BranchData:
    dQ = BivarPoly(
        {(i, j - 1): v * j for (i, j), v in Q.terms.items() if j >= 1}
    )
    disc = resultant_y(Q, dQ)
    if not disc:
        raise NonSquarefreeCurveError("disc_y vanishes identically")
    croots = np.roots([_embed_scalar(c) for c in reversed(disc)]) if len(disc) > 1 else np.array([])
    q0 = q_at_zero(Q)
    qinf = q_at_infinity(Q, p, d_prime)
    fiber0 = _distinct_root_count(q0)
    fiberinf = _distinct_root_count(qinf)
    return BranchData(
        disc_coeffs=disc,
        disc_roots=[complex(r) for r in croots],
        fiber_size_zero=fiber0,
        fiber_size_infinity=fiberinf,
        branch_at_zero=fiber0 < p,
        branch_at_infinity=fiberinf < p,
    )


def _distinct_root_count(coeffs) -> int:
    coeffs = poly_trim(list(coeffs))
    if len(coeffs) <= 1:
        return 0
    g = poly_gcd(coeffs, poly_derivative(coeffs))
    return (len(coeffs) - 1) - (len(g) - 1)


# -- irreducibility -------------------------------------------------------------------


@dataclass
class CurveCert:
    verdict: str  # IrreducibleExact | IrreducibleMonodromy | Reducible | Unknown
    method: str
    factor: BivarPoly | None = None
    orbits: list | None = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "method": self.method, "detail": self.detail}
        if self.factor is not None:
            out["factor"] = self.factor.to_json()
        if self.orbits is not None:
            out["orbits"] = self.orbits
        return out


SPECIALIZATION_POINTS = (0, 1, -1, 2, -2, 3)


def _all_rational(P: BivarPoly) -> bool:
    for v in P.terms.values():
        if is_float_scalar(v):
            return False
        if isinstance(v, Cyclotomic) and not v.is_rational():
            return False
    return True


def _as_fraction_list(coeffs):
    out = []
    for c in coeffs:
        if isinstance(c, Cyclotomic):
            out.append(c.rational_part())
        else:
            out.append(Fraction(c))
    return out


def _divisors(n: int, limit: int = 200000):
    n = abs(n)
    if n == 0 or n > 10 ** 12:
        return None
    out = []
    k = 1
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            out.append(n // k)
            if len(out) > limit:
                return None
        k += 1
    return sorted(set(out))


def _has_rational_root(coeffs) -> bool | None:
    """Complete rational-root decision for an exact coefficient list; None
    when the divisor enumeration is infeasible."""
    coeffs = poly_trim(_as_fraction_list(coeffs))
    if len(coeffs) <= 1:
        return False
    if coeffs[0] == 0:
        return True  # y = 0 is a root
    den = 1
    for c in coeffs:
        den = den * (c.denominator // _gcd(den, c.denominator))
    ints = [int(c * den) for c in coeffs]
    c0, cn = ints[0], ints[-1]
    d0 = _divisors(c0)
    dn = _divisors(cn)
    if d0 is None or dn is None:
        return None
    for r in d0:
        for s in dn:
            for cand in (Fraction(r, s), Fraction(-r, s)):
                if _poly_eval_frac(coeffs, cand) == 0:
                    return True
    return False


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def irreducible_cert(P: BivarPoly, monodromy_kwargs: dict | None = None) -> CurveCert:
    """Irreducibility verdict for a polynomial monic in y.

    Tries, in order: exact linearity criteria, exact specialization (no root
    in the coefficient field at a rational x0; complete for y-degree <= 3
    with rational coefficients), then numerical monodromy with factor
    reconstruction + exact verification for reducible verdicts.
    """
    p = P.deg_y()
    if p < 1 or not P.coeff(0, p) == 1:
        raise ValueError("P must be monic in y")
    if p == 1:
        return CurveCert("IrreducibleExact", "linear-in-y", detail="degree 1 in y")
    # (a) linear in x: P = A(y) x + B(y), irreducible iff gcd(A, B) constant
    if P.deg_x() == 1:
        A = P.x_coeff(1)
        B = P.x_coeff(0)
        g = poly_gcd(A, B)
        if len(g) == 1:
            return CurveCert(
                "IrreducibleExact", "linear-in-x", detail="gcd of x-coefficients is constant"
            )
        return CurveCert(
            "Reducible",
            "linear-in-x",
            factor=_bivar_from_y_poly(g),
            detail="common factor of the x-coefficients",
        )
    # (b) exact specialization
    if p <= 3 and _all_rational(P):
        for x0 in SPECIALIZATION_POINTS:
            spec = _as_fraction_list(P.subs_x(Fraction(x0)))
            if len(spec) - 1 != p:
                continue
            has_root = _has_rational_root(spec)
            if has_root is False:
                return CurveCert(
                    "IrreducibleExact",
                    "specialization",
                    detail=f"P({x0}, y) has no root in the coefficient field",
                )
    # (c) numerical monodromy
    try:
        mono = monodromy(P, **(monodromy_kwargs or {}))
    except NonSquarefreeCurveError:
        return CurveCert(
            "Unknown",
            "monodromy",
            detail="identically zero y-discriminant (repeated component)",
        )
    except MonodromyFailure as ex:
        return CurveCert("Unknown", "monodromy", detail=str(ex))
    if mono.transitive:
        return CurveCert(
            "IrreducibleMonodromy",
            "monodromy",
            orbits=mono.orbits,
            detail=f"{len(mono.permutations)} loops generate a transitive group",
        )
    factor = _reconstruct_factor(P, mono)
    return CurveCert(
        "Reducible",
        "monodromy",
        factor=factor,
        orbits=mono.orbits,
        detail="monodromy orbits are not transitive"
        + ("" if factor is None else "; exact factor verified"),
    )


def _bivar_from_y_poly(coeffs) -> BivarPoly:
    return BivarPoly({(0, j): c for j, c in enumerate(coeffs)})


class MonodromyFailure(RuntimeError):
    pass


def _cluster_points(points, rel_tol: float = 1e-6):
    """Merge numerically coincident discriminant roots into distinct branch
    points (multiple roots of the discriminant are common)."""
    scale = max((abs(z) for z in points), default=1.0)
    tol = rel_tol * max(1.0, scale)
    out = []
    for z in points:
        for i, w in enumerate(out):
            if abs(z - w) <= tol:
                break
        else:
            out.append(z)
    return out


def _segment_clearance(a: complex, c: complex, b: complex) -> float:
    """Distance from point b to the segment [a, c]."""
    d = c - a
    L2 = (d * d.conjugate()).real
    if L2 == 0:
        return abs(b - a)
    t = ((b - a) * d.conjugate()).real / L2
    t = min(1.0, max(0.0, t))
    return abs(b - (a + t * d))


def _safe_polyline(a: complex, c: complex, obstacles, depth: int = 0):
    """Waypoints from a to c whose segments keep clear of the obstacle
    discs [(center, radius)]; detours sidestep the nearest offender."""
    if depth > 12:
        raise MonodromyFailure("could not route a path around branch points")
    worst = None
    for (b, r) in obstacles:
        clear = _segment_clearance(a, c, b)
        if clear < r and (worst is None or clear < worst[2]):
            worst = (b, r, clear)
    if worst is None:
        return [a, c]
    b, r, _ = worst
    d = c - a
    L2 = (d * d.conjugate()).real
    t = ((b - a) * d.conjugate()).real / max(L2, 1e-300)
    t = min(1.0, max(0.0, t))
    proj = a + t * d
    away = proj - b
    if abs(away) < 1e-12:
        away = 1j * d / max(abs(d), 1e-300)
    w = b + away / abs(away) * (1.6 * r)
    left = _safe_polyline(a, w, [(bb, rr) for (bb, rr) in obstacles if bb != b], depth + 1)
    right = _safe_polyline(w, c, [(bb, rr) for (bb, rr) in obstacles if bb != b], depth + 1)
    return left[:-1] + [w] + right[1:]


def _sample_polyline(points, steps_per_leg: int):
    xs = []
    for a, c in zip(points, points[1:]):
        xs.extend(a + (c - a) * (t / steps_per_leg) for t in range(1, steps_per_leg + 1))
    return xs


@dataclass
class MonodromyResult:
    base_point: complex
    branch_points: list
    permutations: list
    orbits: list
    transitive: bool


def _poly_complex_table(P: BivarPoly):
    ny = P.deg_y()
    table = [[0j] * (P.deg_x() + 1) for _ in range(ny + 1)]
    for (i, j), v in P.terms.items():
        table[j][i] = _embed_scalar(v)
    return table


def _eval_y_poly(table, x: complex):
    return [
        sum(c * x ** k for k, c in enumerate(row)) if row else 0j for row in table
    ]


def _eval_p(cy, y: complex):
    acc = 0j
    for c in reversed(cy):
        acc = acc * y + c
    return acc


def _track_segment(table, dtable, xs, ys, tol: float):
    """Continue the root vector ys along the x-samples xs by Newton
    correction; raises MonodromyFailure on collision or divergence."""
    ys = list(ys)
    for x in xs:
        cy = _eval_y_poly(table, x)
        dy = _eval_y_poly(dtable, x)
        new = []
        for y in ys:
            z = y
            for _ in range(8):
                dv = _eval_p(dy, z)
                if abs(dv) < 1e-14:
                    raise MonodromyFailure("derivative vanished during tracking")
                step = _eval_p(cy, z) / dv
                z = z - step
                if abs(step) < 1e-13:
                    break
            new.append(z)
        for a in range(len(new)):
            for b in range(a + 1, len(new)):
                if abs(new[a] - new[b]) < tol:
                    raise MonodromyFailure(
                        f"roots collided within {tol:g} near x = {x:.6g}"
                    )
        ys = new
    return ys


def monodromy(
    P: BivarPoly,
    circle_steps: int = 256,
    segment_steps: int = 128,
    radius_factor: float = 0.4,
    collision_tol: float = 1e-8,
) -> MonodromyResult:
    """Track the p roots of P(x(t), y) = 0 along loops around every branch
    point; the permutation action is transitive iff the curve is irreducible
    (numerically)."""
    p = P.deg_y()
    table = _poly_complex_table(P)
    dtable = [[c * j for c in table[j]] for j in range(1, len(table))]
    dQ = BivarPoly({(i, j - 1): v * j for (i, j), v in P.terms.items() if j >= 1})
    disc = resultant_y(P, dQ)
    if not disc:
        raise NonSquarefreeCurveError("disc_y vanishes identically")
    if len(disc) == 1:
        # no finite branch points: trivial monodromy group
        perms = []
        orbits = [[t] for t in range(p)]
        return MonodromyResult(1.0 + 0j, [], perms, orbits, transitive=(p == 1))
    raw = [complex(r) for r in np.roots([_embed_scalar(c) for c in reversed(disc)])]
    branch = _cluster_points(raw)
    x0 = complex(1.5 * max(abs(b) for b in branch) + 1.0, 0.0)
    cy0 = _eval_y_poly(table, x0)
    roots0 = [complex(r) for r in np.roots(list(reversed(cy0)))]
    sep = min(
        abs(roots0[a] - roots0[b])
        for a in range(p)
        for b in range(a + 1, p)
    ) if p > 1 else 1.0
    if sep < 10 * collision_tol:
        raise MonodromyFailure("base-point fiber is nearly degenerate")
    radii = []
    for bi, b in enumerate(branch):
        others = [abs(b - c) for jx, c in enumerate(branch) if jx != bi]
        r = radius_factor * min(others) if others else radius_factor * max(1.0, abs(b))
        if r < 100 * collision_tol:
            raise MonodromyFailure("branch points are too close to isolate")
        radii.append(r)
    perms = []
    for bi, b in enumerate(branch):
        r = radii[bi]
        direction = (x0 - b) / abs(x0 - b)
        entry = b + r * direction
        obstacles = [
            (c, 0.8 * radii[jx]) for jx, c in enumerate(branch) if jx != bi
        ]
        waypoints = _safe_polyline(x0, entry, obstacles)
        seg_in = _sample_polyline(waypoints, segment_steps)
        theta0 = cmath.phase(direction)
        circle = [
            b + r * cmath.exp(1j * (theta0 + 2 * cmath.pi * s / circle_steps))
            for s in range(1, circle_steps + 1)
        ]
        seg_out = _sample_polyline(list(reversed(waypoints)), segment_steps)
        ys = _track_segment(table, dtable, seg_in + circle + seg_out, roots0, collision_tol)
        perm = []
        for y in ys:
            dists = [abs(y - r0) for r0 in roots0]
            t = dists.index(min(dists))
            if dists[t] > sep / 2:
                raise MonodromyFailure("end fiber does not match the start fiber")
            perm.append(t)
        if sorted(perm) != list(range(p)):
            raise MonodromyFailure("loop did not induce a permutation")
        perms.append(tuple(perm))
    parent = list(range(p))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in perms:
        for a, bb in enumerate(perm):
            ra, rb = find(a), find(bb)
            if ra != rb:
                parent[ra] = rb
    groups = {}
    for t in range(p):
        groups.setdefault(find(t), []).append(t)
    orbits = sorted(groups.values())
    return MonodromyResult(
        base_point=x0,
        branch_points=branch,
        permutations=perms,
        orbits=orbits,
        transitive=len(orbits) == 1,
    )


def _reconstruct_factor(P: BivarPoly, mono: MonodromyResult) -> BivarPoly | None:
    """From a monodromy orbit, reconstruct a candidate factor numerically
    (symmetric functions of the orbit roots sampled along a real ray),
    rationalize, and verify by exact division. Returns the verified factor
    or None."""
    table = _poly_complex_table(P)
    dtable = [[c * j for c in table[j]] for j in range(1, len(table))]
    p = P.deg_y()
    x0 = mono.base_point
    deg_bound = P.deg_x()
    n_samples = deg_bound + 1
    sample_xs = [x0 + 0.7 * (k + 1) for k in range(n_samples)]
    cy0 = _eval_y_poly(table, x0)
    roots0 = [complex(r) for r in np.roots(list(reversed(cy0)))]
    samples = []
    ys = roots0
    prev = x0
    for xs_target in sample_xs:
        path = [prev + (xs_target - prev) * (t / 32) for t in range(1, 33)]
        try:
            ys = _track_segment(table, dtable, path, ys, 1e-10)
        except MonodromyFailure:
            return None
        samples.append(list(ys))
        prev = xs_target
    for orbit in mono.orbits:
        if len(orbit) == p:
            continue
        coeff_vals = [[] for _ in range(len(orbit) + 1)]
        for s in samples:
            poly = [1.0 + 0j]
            for t in orbit:
                poly = _mul_linear(poly, -s[t])
            for j, c in enumerate(poly):
                coeff_vals[j].append(c)
        cand = {}
        ok = True
        for j, vals in enumerate(coeff_vals):
            xs_r = [x.real for x in sample_xs]
            try:
                fit = np.polynomial.polynomial.polyfit(xs_r, np.array(vals), deg_bound)
            except Exception:
                ok = False
                break
            for i, c in enumerate(fit):
                fr = _rationalize(complex(c))
                if fr is None:
                    ok = False
                    break
                if fr != 0:
                    cand[(i, len(orbit) - j)] = fr
            if not ok:
                break
        if not ok:
            continue
        G = BivarPoly(cand)
        if G.deg_y() < 1 or not G.coeff(0, G.deg_y()) == 1:
            continue
        if _exact_divides_in_y(P, G):
            return G
    return None


def _mul_linear(poly, root):
    # multiply ascending-in-? descending list ... poly is y-descending? keep simple:
    # poly stored descending in y: [1, a, b] = y^2 + a y + b; multiply by (y + root)
    out = [0j] * (len(poly) + 1)
    for i, c in enumerate(poly):
        out[i] += c
        out[i + 1] += c * root
    return out


def _rationalize(c: complex, tol: float = 1e-6, max_den: int = 10 ** 4):
    if abs(c.imag) > tol:
        return None
    fr = Fraction(c.real).limit_denominator(max_den)
    if abs(float(fr) - c.real) > tol * max(1.0, abs(c.real)):
        return None
    return fr


def _exact_divides_in_y(P: BivarPoly, G: BivarPoly) -> bool:
    """Long division of P by G in y (G monic in y, coefficients exact);
    True iff the remainder vanishes."""
    if not _all_rational(P) or not _all_rational(G):
        return False
    rem = {k: Fraction(v) if not isinstance(v, Cyclotomic) else v for k, v in P.terms.items()}
    gy = G.deg_y()
    while rem:
        dy = max(j for (_, j) in rem)
        if dy < gy:
            return False
        layer = [(i, j) for (i, j) in rem if j == dy]
        for (i, j) in layer:
            c = rem.pop((i, j))
            # quotient term c * x^i y^{j-gy}; subtract c x^i y^{j-gy} * G
            for (gi, gj), gv in G.terms.items():
                key = (i + gi, j - gy + gj)
                if key == (i, j):
                    continue
                w = rem.get(key, _F0) + (-c) * gv
                if w == 0:
                    rem.pop(key, None)
                else:
                    rem[key] = w
    return True


# -- Newton identities and the trace diagram ----------------------------------------


def newton_elementary(power_sums):
    """Elementary symmetric e_1..e_n from power sums f_1..f_n via
    k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} f_i. Scalars or BivarPoly."""
    n = len(power_sums)
    use_bivar = any(isinstance(f, BivarPoly) for f in power_sums)
    if use_bivar:
        fs = [
            f if isinstance(f, BivarPoly) else BivarPoly.const(f) for f in power_sums
        ]
        es = [BivarPoly.const(_F1)]
        for k in range(1, n + 1):
            acc = BivarPoly()
            for i in range(1, k + 1):
                term = es[k - i] * fs[i - 1]
                acc = acc + (term if i % 2 == 1 else -term)
            es.append(acc.scale(Fraction(1, k)))
        return es[1:]
    es = [_F1]
    for k in range(1, n + 1):
        acc = _F0
        for i in range(1, k + 1):
            term = es[k - i] * power_sums[i - 1]
            acc = acc + (term if i % 2 == 1 else -term)
        es.append(acc / k)
    return es[1:]


@dataclass
class AlphaChi:
    h_polys: list  # h_i(x) with Tr L^i = i * h_i(x^p)
    Q: BivarPoly
    diagram_commutes: bool


def alpha_and_chi(L: PolyMat, e) -> AlphaChi:
    """alpha_e(L) = ((1/i) Tr L^i with x^p -> x) and chi~_e(L) =
    quotient of the characteristic polynomial; checks the symmetric-function
    diagram s_k = (-1)^k S_k(f_1, ..., f_p) exactly."""
    p = L.p
    if not is_fixed(L, e):
        raise ValueError("L is not fixed under sigma_{Delta_e}")
    cp = char_poly(L)
    Q = quotient_Q(cp, p)
    if Q is None:
        raise AssertionError("char poly of a fixed point must be x^p-invariant")
    fs = []
    h_polys = []
    for i in range(1, p + 1):
        tr = L.pow(i).trace()
        down = [_F0] * ((len(tr) - 1) // p + 1)
        for k, c in enumerate(tr):
            if k % p != 0:
                if not c == 0:
                    raise AssertionError("trace power has a non-p-divisible term")
            else:
                down[k // p] = c
        fs.append(BivarPoly({(k, 0): c for k, c in enumerate(down) if not c == 0}))
        h_polys.append([c / i for c in down])
    es = newton_elementary(fs)
    recon = BivarPoly({(0, p): _F1})
    for k in range(1, p + 1):
        sk = es[k - 1] if k % 2 == 0 else -es[k - 1]
        recon = recon + BivarPoly({(i, p - k): v for (i, _), v in sk.terms.items()})
    return AlphaChi(h_polys=h_polys, Q=Q, diagram_commutes=(recon == Q))


# -- Hamiltonian independence -----------------------------------------------------


def hamiltonian_rank(e, p: int, d_prime: int, L: PolyMat) -> int:
    """Exact rank of the Jacobian of (H_{i,pj})_{0<=i<p, 0<=j<=(i+1)d'}
    with respect to the fixed-basis coordinates at L; generically
    s' = p(p+1)d'/2 + p."""
    d = p * d_prime
    if L.q != d:
        raise ValueError("sample point must carry degree bound p*d'")
    basis = fixed_basis(p, d, e).triples
    powers = [L.pow(i) for i in range(p)]
    rows = []
    for i in range(p):
        Li = powers[i]
        for j in range((i + 1) * d_prime + 1):
            m = p * j
            row = []
            for (a, b, k) in basis:
                idx = m - k
                if 0 <= idx <= Li.q:
                    row.append(Li.entries[b - 1][a - 1][idx])
                else:
                    row.append(_F0)
            rows.append(row)
    return linalg.rank(rows)


def expected_hamiltonian_rank(p: int, d_prime: int) -> int:
    return p * (p + 1) * d_prime // 2 + p
