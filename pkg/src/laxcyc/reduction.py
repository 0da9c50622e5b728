"""Momentum-map machinery on the enlarged fixed locus: the trace-constrained
space of degree-(d+p) fixed matrices, the degree-d embedding, the comomentum
map sending centralizer generators to top coefficients, and the identity
checks that make the quotient Poisson structure legitimate."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import poisson
from .coordpoly import CoordPoly
from .polymat import PolyMat
from .symmetry import (
    centralizer_data,
    fixed_basis,
    is_fixed,
    random_fixed_matrix,
)

_F0 = Fraction(0)
_F1 = Fraction(1)


@dataclass(frozen=True)
class PhiSpec:
    """phi(x) = x * phi~(x^p) with phi~ of degree d'+1 and nonzero top
    coefficient; the admissible bracket pencil for the momentum map."""

    d_prime: int
    tilde_coeffs: tuple  # c'_0 .. c'_{d'+1}

    def __post_init__(self):
        if len(self.tilde_coeffs) != self.d_prime + 2:
            raise ValueError("phi~ must have exactly d'+2 coefficients")
        if self.tilde_coeffs[-1] == 0:
            raise ValueError("leading coefficient c'_{d'+1} must be nonzero")

    @classmethod
    def default(cls, d_prime: int) -> "PhiSpec":
        """phi~(x) = x^{d'+1}: the minimal admissible choice."""
        return cls(d_prime, tuple([_F0] * (d_prime + 1) + [_F1]))

    @property
    def top(self):
        return self.tilde_coeffs[-1]

    def bracket_spec(self, p: int, q: int) -> poisson.BracketSpec:
        return poisson.BracketSpec.from_phi_tilde(q, p, list(self.tilde_coeffs))


class NotInImageError(ValueError):
    pass


def extended_degree(p: int, d: int) -> int:
    return d + p


def embed_eta(B: PolyMat, d: int, e) -> PolyMat:
    """Re-type B in M^{Delta_e}_{p,d} as a point of the enlarged space with
    degree bound d+p (the trace constraint holds automatically since the
    new top coefficients vanish)."""
    if B.q != d:
        raise ValueError("B must carry degree bound d")
    if not is_fixed(B, e):
        raise NotInImageError("B is not fixed under sigma_{Delta_e}")
    return B.rebound(d + B.p)


def eta_image_constraints(p: int, d: int, e):
    """The admissible coordinates that vanish exactly on the image of the
    degree-d embedding: (i, j, d+p) on T_0 and (i, j, d+p-k), 1 <= k <= p-1,
    on T_plus/T_minus."""
    cd = centralizer_data(e)
    cons = [(i, j, d + p) for (i, j) in cd.t0]
    for (i, j) in cd.t_plus + cd.t_minus:
        cons.extend((i, j, d + p - k) for k in range(1, p))
    return cons


def is_in_eta_image(B_ext: PolyMat, d: int, e) -> bool:
    p = B_ext.p
    if B_ext.q != d + p:
        raise ValueError("extended point must carry degree bound d+p")
    if not is_fixed(B_ext, e):
        return False
    for (i, j, k) in eta_image_constraints(p, d, e):
        if not B_ext.entries[i - 1][j - 1][k] == 0:
            return False
    return True


def trace_top_coefficient(B: PolyMat):
    """H_{0,q}(B): the x^q coefficient of Tr B."""
    return B.trace()[B.q]


def is_extended_point(B: PolyMat, e) -> bool:
    return is_fixed(B, e) and trace_top_coefficient(B) == 0


def random_extended_point(p: int, d: int, e, rng) -> PolyMat:
    """Random rational element of the enlarged space: fixed under the twist,
    with the top trace coefficient balanced to zero on the (p,p) diagonal
    slot (always admissible at degree d+p when p | d)."""
    if d % p != 0:
        raise ValueError("the enlarged-space construction assumes p | d")
    B = random_fixed_matrix(p, d + p, e, rng)
    top = d + p
    diag_sum = _F0
    for i in range(p - 1):
        diag_sum = diag_sum + B.entries[i][i][top]
    B.entries[p - 1][p - 1][top] = -diag_sum
    assert is_extended_point(B, e)
    return B


def comoment(e, pair, phi: PhiSpec, p: int, d: int) -> CoordPoly:
    """The comomentum of the centralizer generator at (i, j) in T_0:
    the function B -> b^{d+p}_{ji}(B) / c'_{d'+1}."""
    i, j = pair
    cd = centralizer_data(e)
    if (i, j) not in cd.t0:
        raise ValueError(f"({i},{j}) is not in T_0")
    return CoordPoly.var((j, i, d + p)) / phi.top


def comoment_of_matrix(e, E, phi: PhiSpec, p: int, d: int) -> CoordPoly:
    """Comomentum of a Lie-algebra element supported on T_0."""
    cd = centralizer_data(e)
    t0 = set(cd.t0)
    out = CoordPoly.zero()
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            c = E[i - 1][j - 1]
            if c == 0:
                continue
            if (i, j) not in t0:
                raise ValueError("Lie element not supported on T_0")
            out = out + CoordPoly.var((j, i, d + p), Fraction(c) if isinstance(c, int) else c)
    return out / phi.top


def _mat_commutator_const(E, F, p: int):
    out = [[_F0] * p for _ in range(p)]
    for i in range(p):
        for j in range(p):
            acc = _F0
            for t in range(p):
                acc = acc + E[i][t] * F[t][j] - F[i][t] * E[t][j]
            out[i][j] = acc
    return out


def lie_homo_check(e, phi: PhiSpec, p: int, d: int, rng, samples: int = 20) -> bool:
    """{mu~(E), mu~(F)}^red_phi = mu~([E, F]) for all T_0 generator pairs,
    verified symbolically and at random extended points."""
    q = d + p
    spec = phi.bracket_spec(p, q)
    cd = centralizer_data(e)
    pts = [random_extended_point(p, d, e, rng) for _ in range(samples)]
    for (i, j) in cd.t0:
        for (k, l) in cd.t0:
            lhs = poisson.reduced_coord_bracket(
                e, (j, i, q), (l, k, q), spec, p, q
            ) / (phi.top * phi.top)
            E = _unit(p, i, j)
            F = _unit(p, k, l)
            rhs = comoment_of_matrix(e, _mat_commutator_const(E, F, p), phi, p, d)
            if lhs == rhs:
                continue
            # the identity may use the trace constraint: compare at samples
            for B in pts:
                vals = poisson.point_values(B)
                if not lhs.evaluate(vals) == rhs.evaluate(vals):
                    return False
    return True


def _unit(p: int, i: int, j: int):
    m = [[_F0] * p for _ in range(p)]
    m[i - 1][j - 1] = _F1
    return m


def b_bracket_identity_check(e, phi: PhiSpec, p: int, d: int) -> bool:
    """(1/c') {b_ij(x), b^{p+d}_mn}^red_phi = -d_jm b_in(x) + d_in b_mj(x),
    as an exact identity of coordinate polynomials."""
    q = d + p
    spec = phi.bracket_spec(p, q)
    adm = poisson.admissible(e, p)
    cd = centralizer_data(e)
    for (m, n) in cd.t0:
        for i in range(1, p + 1):
            for j in range(1, p + 1):
                for k in range(q + 1):
                    if not adm((i, j, k)):
                        continue
                    lhs = poisson.reduced_coord_bracket(
                        e, (i, j, k), (m, n, q), spec, p, q
                    ) / phi.top
                    rhs = CoordPoly.zero()
                    if j == m and adm((i, n, k)):
                        rhs = rhs - CoordPoly.var((i, n, k))
                    if i == n and adm((m, j, k)):
                        rhs = rhs + CoordPoly.var((m, j, k))
                    if not lhs == rhs:
                        return False
    return True


def infinitesimal_action_check(e, phi: PhiSpec, B: PolyMat) -> bool:
    """X_E(B) = [B, E] against -({b_ij(x), mu~(E)}^red_phi(B))_{ij} for every
    T_0 generator, computed through independent routes."""
    p = B.p
    d = B.q - p
    q = B.q
    if not is_extended_point(B, e):
        raise ValueError("B must lie in the enlarged trace-constrained space")
    spec = phi.bracket_spec(p, q)
    vals = poisson.point_values(B)
    cd = centralizer_data(e)
    adm = poisson.admissible(e, p)
    for (n, m) in cd.t0:
        E = _unit(p, n, m)
        commutator = _const_commutator(B, E)
        mu_var = (m, n, q)  # mu~(E_nm) = b^{d+p}_mn / c'
        for i in range(1, p + 1):
            for j in range(1, p + 1):
                for k in range(q + 1):
                    if not adm((i, j, k)):
                        if not commutator.entries[i - 1][j - 1][k] == 0:
                            return False
                        continue
                    br = poisson.reduced_coord_bracket(e, (i, j, k), mu_var, spec, p, q)
                    rhs = -(br.evaluate(vals) / phi.top)
                    if not commutator.entries[i - 1][j - 1][k] == rhs:
                        return False
    return True


def _const_commutator(B: PolyMat, E) -> PolyMat:
    p = B.p
    out = PolyMat.zero(p, B.q)
    for k in range(B.q + 1):
        Bk = B.coeff_mat(k)
        for i in range(p):
            for j in range(p):
                acc = _F0
                for t in range(p):
                    acc = acc + Bk[i][t] * E[t][j] - E[i][t] * Bk[t][j]
                out.entries[i][j][k] = acc
    return out


def casimir_certificate(e, d_prime: int, i: int, m: int, rng, samples: int = 5) -> str:
    """Certificate kind for the reduced flow (i, pm) on image points:
    ZeroField when the truncation vanishes (m >= i*d'+1), TangentToOrbits
    when it lies in the T_0 span (m = i*d'), NotCasimirRange otherwise."""
    p = len(e)
    d = p * d_prime
    cd = centralizer_data(e)
    t0 = set(cd.t0)

    def classify(trunc: PolyMat) -> str:
        if trunc.is_zero():
            return "ZeroField"
        for a in range(1, p + 1):
            for b in range(1, p + 1):
                for kk, c in enumerate(trunc.entries[a - 1][b - 1]):
                    if c == 0:
                        continue
                    if kk > 0 or (a, b) not in t0:
                        return "NotCasimirRange"
        return "TangentToOrbits"

    kinds = set()
    for _ in range(samples):
        B = random_fixed_matrix(p, d, e, rng)
        ext = embed_eta(B, d, e)
        kinds.add(classify(ext.pow(i).truncate_div(p * m)))
    if len(kinds) != 1:
        return "NotCasimirRange"
    return kinds.pop()


def casimir_expected(d_prime: int, i: int, m: int) -> str:
    if m >= i * d_prime + 1:
        return "ZeroField"
    if m == i * d_prime:
        return "TangentToOrbits"
    return "NotCasimirRange"


def image_tangency_check(e, d_prime: int, i: int, m: int, rng, samples: int = 5) -> bool:
    """The reduced flow (i, pm) evaluated at image points keeps all image
    constraints (the image is linear, so tangency = membership of the RHS)."""
    from .flows import reduced_lax_rhs

    p = len(e)
    d = p * d_prime
    for _ in range(samples):
        B = random_fixed_matrix(p, d, e, rng)
        ext = embed_eta(B, d, e)
        rhs = reduced_lax_rhs(ext, e, i, p * m)
        for (a, b, k) in eta_image_constraints(p, d, e):
            if not rhs.entries[a - 1][b - 1][k] == 0:
                return False
    return True


def g_invariance_check(e, i: int, j: int, rng, samples: int = 5, d: int | None = None) -> bool:
    """H_{i,j}(g B g^{-1}) = H_{i,j}(B) exactly for random centralizer
    elements (T_0 block matrices, plus the cyclic generators when e is the
    full-period class)."""
    from .polymat import hamiltonian
    from .symmetry import adjoint_action, dk_star_generator, omega, random_centralizer_element, random_dk_star_element

    p = len(e)
    if j % p != 0:
        raise ValueError("quotient Hamiltonians carry p-divisible x-indices")
    if d is None:
        # smallest p-multiple degree bound with (i+1)d >= j
        d = max(p, p * (-(-j // (p * (i + 1)))))
    gs = []
    for _ in range(samples):
        gs.append(random_centralizer_element(e, rng))
    if tuple(e) == omega(p):
        for k in range(p):
            gs.append(dk_star_generator(p, k))
            gs.append(random_dk_star_element(p, k, rng))
    for _ in range(samples):
        B = random_fixed_matrix(p, d, e, rng)
        h0 = hamiltonian(B, i, j)
        for g in gs:
            if not hamiltonian(adjoint_action(g, B), i, j) == h0:
                return False
    return True
