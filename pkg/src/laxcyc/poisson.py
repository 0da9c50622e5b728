"""The compatible family of Poisson brackets on matrix-coefficient
coordinates, its generating-function identities, the reduced brackets on
fixed loci (two independent routes), and Hamiltonian vector fields.

Coordinate variables are triples (i, j, k) = coefficient of x^k in entry
(i, j), 1-indexed i, j, with the convention that out-of-range variables
are zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coordpoly import CoordPoly, XYSeries
from .cyclotomic import Cyclotomic
from .polymat import PolyMat, hamiltonian as eval_hamiltonian
from .polymat import char_poly  # noqa: F401  (re-exported for symbolic use)

_F0 = Fraction(0)
_F1 = Fraction(1)


@dataclass(frozen=True)
class BracketSpec:
    """Selection of a Poisson structure: either a single index mu in
    [0, q+1], or a polynomial phi(x) = sum c_mu x^mu of degree <= q+1."""

    q: int
    mu: int | None = None
    phi: tuple | None = None  # coefficients (c_0, ..., c_{q+1})

    def __post_init__(self):
        if (self.mu is None) == (self.phi is None):
            raise ValueError("exactly one of mu / phi must be given")
        if self.mu is not None and not 0 <= self.mu <= self.q + 1:
            raise ValueError(f"mu must lie in [0, {self.q + 1}]")
        if self.phi is not None and len(self.phi) > self.q + 2:
            raise ValueError("phi must have degree <= q+1")

    def terms(self) -> list[tuple[int, Fraction]]:
        if self.mu is not None:
            return [(self.mu, _F1)]
        return [(m, c) for m, c in enumerate(self.phi) if not c == 0]

    def is_reduced_admissible(self, p: int) -> bool:
        """phi(x) = x * phi~(x^p): only exponents = 1 (mod p) populated."""
        return all(m % p == 1 for m, _ in self.terms())

    @classmethod
    def single(cls, q: int, mu: int) -> "BracketSpec":
        return cls(q=q, mu=mu)

    @classmethod
    def from_phi_tilde(cls, q: int, p: int, phi_tilde) -> "BracketSpec":
        """phi(x) = x * phi~(x^p) from the coefficients of phi~."""
        coeffs = [_F0] * (q + 2)
        for t, c in enumerate(phi_tilde):
            mu = 1 + p * t
            if mu > q + 1:
                raise ValueError("phi exceeds degree q+1")
            coeffs[mu] = Fraction(c) if isinstance(c, int) else c
        return cls(q=q, phi=tuple(coeffs))


def eta_sign(mu: int, k: int, l: int) -> int:
    if k < mu and l < mu:
        return 1
    if k >= mu and l >= mu:
        return -1
    return 0


def coord_bracket(p: int, q: int, idx1, idx2, mu: int) -> CoordPoly:
    """{l^k_ij, l^l_mn}_mu = eta^kl_mu (l^{k+l+1-mu}_mj d_ni - l^{k+l+1-mu}_in d_jm)."""
    i, j, k = idx1
    m, n, l = idx2
    eta = eta_sign(mu, k, l)
    if eta == 0:
        return CoordPoly.zero()
    r = k + l + 1 - mu
    if r < 0 or r > q:
        return CoordPoly.zero()
    out = CoordPoly.zero()
    if n == i:
        out = out + CoordPoly.var((m, j, r), Fraction(eta))
    if j == m:
        out = out - CoordPoly.var((i, n, r), Fraction(eta))
    return out


def coord_bracket_spec(p: int, q: int, idx1, idx2, spec: BracketSpec) -> CoordPoly:
    out = CoordPoly.zero()
    for mu, c in spec.terms():
        out = out + coord_bracket(p, q, idx1, idx2, mu).scale(c)
    return out


def leibniz_bracket(F: CoordPoly, G: CoordPoly, coord_fn) -> CoordPoly:
    """Extend a coordinate-level bracket to polynomials as a biderivation."""
    out = CoordPoly.zero()
    fvars = sorted(F.variables())
    gvars = sorted(G.variables())
    if not fvars or not gvars:
        return out
    fparts = {u: F.partial(u) for u in fvars}
    gparts = {v: G.partial(v) for v in gvars}
    for u in fvars:
        for v in gvars:
            cb = coord_fn(u, v)
            if cb.is_zero():
                continue
            out = out + fparts[u] * gparts[v] * cb
    return out


def bracket(F: CoordPoly, G: CoordPoly, p: int, q: int, spec: BracketSpec) -> CoordPoly:
    return leibniz_bracket(F, G, lambda u, v: coord_bracket_spec(p, q, u, v, spec))


def jacobiator(F, G, H, p: int, q: int, spec: BracketSpec) -> CoordPoly:
    """{{F,G},H} + {{G,H},F} + {{H,F},G}; identically zero for a Poisson
    bracket."""
    b = lambda a, c: bracket(a, c, p, q, spec)
    return b(b(F, G), H) + b(b(G, H), F) + b(b(H, F), G)


# -- symbolic phase-space objects ------------------------------------------


def symbolic_L(p: int, q: int) -> PolyMat:
    """The generic point of M_{p,q}: entries are coordinate variables."""
    ent = [
        [[CoordPoly.var((i + 1, j + 1, k)) for k in range(q + 1)] for j in range(p)]
        for i in range(p)
    ]
    return PolyMat(p, q, ent)


_HAM_CACHE: dict = {}


def symbolic_hamiltonian(p: int, q: int, i: int, j: int) -> CoordPoly:
    """H_{i,j} as a polynomial in the coordinates (cached)."""
    key = (p, q, i, j)
    if key not in _HAM_CACHE:
        if j < 0 or j > (i + 1) * q:
            _HAM_CACHE[key] = CoordPoly.zero()
        else:
            _HAM_CACHE[key] = eval_hamiltonian(symbolic_L(p, q), i, j)
    return _HAM_CACHE[key]


def point_values(L: PolyMat):
    def value_of(var):
        i, j, k = var
        if k < 0 or k > L.q:
            return _F0
        return L.entries[i - 1][j - 1][k]

    return value_of


# -- generating-function identities -----------------------------------------


def _times_x_minus_y(s: XYSeries) -> XYSeries:
    return s.shift(1, 0) - s.shift(0, 1)


def generating_lemma_check(q: int, s: int) -> bool:
    """The auxiliary identity in arbitrary commuting variables xi^0..xi^q:
    (sum_{k,l<s} - sum_{k,l>=s}) xi^{k+l+1-s} x^k y^l = (xi(y)x^s - xi(x)y^s)/(x-y)."""
    lhs = XYSeries()
    for k in range(q + 1):
        for l in range(q + 1):
            if k < s and l < s:
                sign = 1
            elif k >= s and l >= s:
                sign = -1
            else:
                continue
            r = k + l + 1 - s
            if r < 0 or r > q:
                continue
            lhs = lhs + XYSeries.monomial(k, l, CoordPoly.var(("xi", r), Fraction(sign)))
    rhs = XYSeries()
    for i in range(q + 1):
        xi = CoordPoly.var(("xi", i))
        rhs = rhs + XYSeries.monomial(s, i, xi)  # xi(y) x^s
        rhs = rhs - XYSeries.monomial(i, s, xi)  # -xi(x) y^s
    return _times_x_minus_y(lhs) == rhs


def generating_identity_check(p: int, q: int, mu: int) -> bool:
    """eq. {l_ij(x), l_mn(y)}_mu * (x - y) against the closed form, for all
    index quadruples; exact."""
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            for m in range(1, p + 1):
                for n in range(1, p + 1):
                    lhs = XYSeries()
                    for k in range(q + 1):
                        for l in range(q + 1):
                            cb = coord_bracket(p, q, (i, j, k), (m, n, l), mu)
                            if not cb.is_zero():
                                lhs = lhs + XYSeries.monomial(k, l, cb)
                    rhs = XYSeries()
                    if j == m:
                        rhs = rhs + _ell_pair_series(i, n, q, mu)
                    if n == i:
                        rhs = rhs - _ell_pair_series(m, j, q, mu)
                    if not _times_x_minus_y(lhs) == rhs:
                        return False
    return True


def _ell_pair_series(a: int, b: int, q: int, mu: int) -> XYSeries:
    """l_ab(x) y^mu - l_ab(y) x^mu as an XYSeries."""
    out = XYSeries()
    for k in range(q + 1):
        v = CoordPoly.var((a, b, k))
        out = out + XYSeries.monomial(k, mu, v)
        out = out - XYSeries.monomial(mu, k, v)
    return out


def zeta_partial_fraction_check(p: int, l: int) -> bool:
    """sum_{k=1..p} zeta^{kl}/(t - zeta^k) = p t^{l-1}/(t^p - 1), verified by
    clearing denominators over Q(zeta_p)."""
    if not 1 <= l <= p:
        raise ValueError("need 1 <= l <= p")
    zero = Cyclotomic.zero(p)
    one = Cyclotomic.one(p)
    lhs = [zero] * p
    for k in range(1, p + 1):
        prod = [one]
        for jj in range(1, p + 1):
            if jj == k:
                continue
            root = Cyclotomic.zeta_pow(p, jj)
            nxt = [zero] * (len(prod) + 1)
            for t, c in enumerate(prod):
                nxt[t + 1] = nxt[t + 1] + c
                nxt[t] = nxt[t] - c * root
            prod = nxt
        w = Cyclotomic.zeta_pow(p, k * l)
        lhs = [a + w * b for a, b in zip(lhs, prod + [zero] * (p - len(prod)))]
    rhs = [zero] * p
    rhs[l - 1] = Cyclotomic.from_rational(p, p)
    return all(a == b for a, b in zip(lhs, rhs))


# -- the twist as a Poisson (non-)automorphism --------------------------------


def sigma_weight(e, p: int):
    e = tuple(v % p for v in e)

    def weight(var):
        i, j, k = var
        return Cyclotomic.zeta_pow(p, k + e[j - 1] - e[i - 1])

    return weight


def sigma_pullback(F: CoordPoly, e, p: int) -> CoordPoly:
    """sigma* F: multiplies each variable by its eigenvalue zeta^{k+e_j-e_i}."""
    return F.scale_monomials(sigma_weight(e, p))


def is_poisson_automorphism(e, mu: int, p: int, q: int) -> bool:
    """sigma*{F,G} = {sigma*F, sigma*G} on all coordinate pairs; the paper
    predicts true iff mu = 1 (mod p)."""
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            for m in range(1, p + 1):
                for n in range(1, p + 1):
                    if j != m and i != n:
                        continue  # bracket vanishes identically
                    for k in range(q + 1):
                        for l in range(q + 1):
                            cb = coord_bracket(p, q, (i, j, k), (m, n, l), mu)
                            lhs = sigma_pullback(cb, e, p)
                            w = sigma_weight(e, p)
                            factor = w((i, j, k)) * w((m, n, l))
                            rhs = cb.scale(factor)
                            if not lhs == rhs:
                                return False
    return True


# -- reduced brackets on a fixed locus ----------------------------------------


def admissible(e, p: int):
    e = tuple(v % p for v in e)

    def ok(var) -> bool:
        i, j, k = var
        return (k + e[j - 1] - e[i - 1]) % p == 0

    return ok


def restrict_to_fixed(F: CoordPoly, e, p: int) -> CoordPoly:
    adm = admissible(e, p)
    return F.substitute_zero(lambda v: not adm(v))


def reduced_via_extension(e, idx1, idx2, mu: int, p: int, q: int) -> CoordPoly:
    """{b~^k_ij, l^l_mn}_mu restricted to the fixed locus. The invariant
    average b~ of an eigenfunction coordinate is the coordinate itself when
    admissible and zero otherwise, so this is the restricted coordinate
    bracket gated on admissibility of idx1."""
    if mu % p != 1:
        raise ValueError("extension route requires mu = 1 (mod p)")
    adm = admissible(e, p)
    if not adm(idx1):
        return CoordPoly.zero()
    return restrict_to_fixed(coord_bracket(p, q, idx1, idx2, mu), e, p)


def _angle(i: int, p: int) -> int:
    """<i>: the representative of i in {1, ..., p} modulo p."""
    return (i - 1) % p + 1


_RED_CACHE: dict = {}


def _reduced_series(e, i, j, m, n, spec: BracketSpec, p: int, q: int) -> XYSeries:
    key = (tuple(e), i, j, m, n, tuple(spec.terms()), p, q)
    if key in _RED_CACHE:
        return _RED_CACHE[key]
    ee = tuple(v % p for v in e)
    adm = admissible(ee, p)

    def b_series_x(a: int, b: int) -> XYSeries:
        out = {}
        for k in range(q + 1):
            if adm((a, b, k)):
                out[(k, 0)] = CoordPoly.var((a, b, k))
        return XYSeries(out)

    def b_series_y(a: int, b: int) -> XYSeries:
        out = {}
        for k in range(q + 1):
            if adm((a, b, k)):
                out[(0, k)] = CoordPoly.var((a, b, k))
        return XYSeries(out)

    a1 = _angle(ee[m - 1] - ee[n - 1], p)
    a2 = _angle(ee[j - 1] - ee[i - 1] + 1, p)
    phi_y = {(0, mu): c for mu, c in spec.terms()}
    phi_x = {(mu, 0): c for mu, c in spec.terms()}

    def f_series(a: int, b: int) -> XYSeries:
        t1 = b_series_x(a, b).shift(p - a1, a1 - 1).mul_xy_poly(phi_y)
        t2 = b_series_y(a, b).shift(p - a2, a2 - 1).mul_xy_poly(phi_x)
        return t1 - t2

    num = XYSeries()
    if j == m:
        num = num + f_series(i, n)
    if i == n:
        num = num - f_series(m, j)
    series = num.divexact_xs_minus_ys(p)
    _RED_CACHE[key] = series
    return series


def reduced_coord_bracket(e, idx1, idx2, spec: BracketSpec, p: int, q: int) -> CoordPoly:
    """{b^k_ij, b^l_mn}^red_phi from the closed generating-function formula
    with the <.> exponent bookkeeping; requires phi(x) = x*phi~(x^p)."""
    if not spec.is_reduced_admissible(p):
        raise ValueError("reduced bracket needs phi(x) = x * phi~(x^p)")
    adm = admissible(e, p)
    if not (adm(idx1) and adm(idx2)):
        return CoordPoly.zero()
    i, j, k = idx1
    m, n, l = idx2
    series = _reduced_series(e, i, j, m, n, spec, p, q)
    return series.coeff(k, l)


def reduced_bracket_fn(e, spec: BracketSpec, p: int, q: int):
    return lambda u, v: reduced_coord_bracket(e, u, v, spec, p, q)


def reduced_bracket(F: CoordPoly, G: CoordPoly, e, spec: BracketSpec, p: int, q: int) -> CoordPoly:
    return leibniz_bracket(F, G, reduced_bracket_fn(e, spec, p, q))


# -- Hamiltonian vector fields --------------------------------------------------


def hamiltonian_vf(L: PolyMat, i: int, j: int, mu: int) -> PolyMat:
    """The tangent vector -{l^k_ab, H_{i,j-1+mu}}_mu at L, assembled as a
    matrix; equals [L, (L^i/x^j)_+] for admissible indices."""
    p, q = L.p, L.q
    H = symbolic_hamiltonian(p, q, i, j - 1 + mu)
    vals = point_values(L)
    out = PolyMat.zero(p, q)
    gvars = sorted(H.variables())
    gparts = {v: H.partial(v).evaluate(vals) for v in gvars}
    for a in range(1, p + 1):
        for b in range(1, p + 1):
            for k in range(q + 1):
                acc = _F0
                for v in gvars:
                    cb = coord_bracket(p, q, (a, b, k), v, mu)
                    if cb.is_zero():
                        continue
                    acc = acc + gparts[v] * cb.evaluate(vals)
                out.entries[a - 1][b - 1][k] = -acc
    return out


def reduced_hamiltonian_vf(B: PolyMat, e, i: int, pj: int, spec: BracketSpec) -> PolyMat:
    """-{b^k_ab, H_{i,pj}}^red_phi at a fixed-locus point B."""
    p, q = B.p, B.q
    H = restrict_to_fixed(symbolic_hamiltonian(p, q, i, pj), e, p)
    vals = point_values(B)
    fn = reduced_bracket_fn(e, spec, p, q)
    adm = admissible(e, p)
    out = PolyMat.zero(p, q)
    gvars = sorted(H.variables())
    gparts = {v: H.partial(v).evaluate(vals) for v in gvars}
    for a in range(1, p + 1):
        for b in range(1, p + 1):
            for k in range(q + 1):
                if not adm((a, b, k)):
                    continue
                acc = _F0
                for v in gvars:
                    cb = fn((a, b, k), v)
                    if cb.is_zero():
                        continue
                    acc = acc + gparts[v] * cb.evaluate(vals)
                out.entries[a - 1][b - 1][k] = -acc
    return out


def is_casimir(H: CoordPoly, p: int, q: int, spec: BracketSpec) -> bool:
    """True iff {H, l^k_ij}_spec = 0 identically for every coordinate."""
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            for k in range(q + 1):
                g = CoordPoly.var((i, j, k))
                if not bracket(H, g, p, q, spec).is_zero():
                    return False
    return True


def predicted_casimir_js(i: int, q: int, mu: int) -> set:
    """Index set {0..mu-1} + {iq+mu..(i+1)q} where H_{i,j} is a Casimir of
    the mu-bracket."""
    return set(range(0, mu)) | set(range(i * q + mu, (i + 1) * q + 1))


def bracket_table_rows(p: int, q: int, mu: int) -> list:
    """All coordinate brackets as CSV-ready rows
    (i, j, k, m, n, l, mu, result)."""
    rows = []
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            for k in range(q + 1):
                for m in range(1, p + 1):
                    for n in range(1, p + 1):
                        for l in range(q + 1):
                            cb = coord_bracket(p, q, (i, j, k), (m, n, l), mu)
                            rows.append((i, j, k, m, n, l, mu, repr(cb)))
    return rows
