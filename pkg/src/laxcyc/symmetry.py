"""The order-p twist sigma_e(L)(x) = Delta_e^{-1} L(zeta x) Delta_e, torsion
classification in PGL_p, the representative set E of residue classes, fixed
loci and their bases, centralizer structure, and the conjugator solver."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from . import linalg
from .cyclotomic import Cyclotomic
from .polymat import PolyMat, is_float_scalar

_F0 = Fraction(0)
_F1 = Fraction(1)


class NotPrimeError(ValueError):
    pass


class TorsionError(ValueError):
    """Input matrix is not p-torsion in PGL_p (its p-th power is not scalar)."""


class AmbiguousStabilizerError(RuntimeError):
    """The intertwiner space has dimension > 1 (reducible characteristic
    polynomial or violated precondition)."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def require_prime(p: int):
    if not is_prime(p):
        raise NotPrimeError(f"p = {p} is not prime")


def omega(p: int) -> tuple:
    return tuple(range(p))


def zero_vector(p: int) -> tuple:
    return (0,) * p


# -- multiplicity vectors and the representative set E -------------------


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _cyclic_shifts(mu: tuple):
    p = len(mu)
    return [tuple(mu[(i + c) % p] for i in range(p)) for c in range(p)]


def _mu_representative(mu: tuple) -> tuple:
    # lexicographic maximum within the cyclic-shift class (deterministic pick)
    return max(_cyclic_shifts(mu))


def _s_map(mu: tuple) -> tuple:
    """e_j = i on the block of mu_i consecutive positions."""
    e = []
    for i, m in enumerate(mu):
        e.extend([i] * m)
    return tuple(e)


def multiplicity_vector(e) -> tuple:
    p = len(e)
    mu = [0] * p
    for v in e:
        mu[v % p] += 1
    return tuple(mu)


def enumerate_E(p: int) -> list[tuple]:
    """The representative set E built from cyclic-shift classes of
    multiplicity vectors; |E| = (1/p)(C(2p-1, p-1) - 1) + 1 for prime p."""
    require_prime(p)
    reps = {_mu_representative(mu) for mu in _compositions(p, p)}
    classes = [_s_map(mu) for mu in sorted(reps, reverse=True)]
    return classes


def expected_E_count(p: int) -> int:
    from math import comb

    return (comb(2 * p - 1, p - 1) - 1) // p + 1


def canonicalize(e) -> tuple:
    """The unique member of E equivalent to e under e_i -> c + e_{sigma(i)}."""
    return _s_map(_mu_representative(multiplicity_vector(e)))


def brute_force_class_count(p: int) -> int:
    """Independent orbit count over (Z/pZ)^p under shift + permutation.

    Exponential in p; intended for p in {2, 3} cross-checks only.
    """
    seen = set()
    vecs = list(_compositions_base(p))
    for v in vecs:
        key = max(tuple(sorted((x + c) % p for x in v)) for c in range(p))
        seen.add(key)
    return len(seen)


def _compositions_base(p: int):
    def rec(k):
        if k == 0:
            yield ()
            return
        for rest in rec(k - 1):
            for v in range(p):
                yield rest + (v,)

    return rec(p)


def brute_force_canonicalize(e) -> tuple:
    """Orbit enumeration over all p * p! shift/permutation combinations."""
    p = len(e)
    best = None
    for c in range(p):
        for sigma in permutations(range(p)):
            cand = canonicalize(tuple((c + e[s]) % p for s in sigma))
            if best is None:
                best = cand
            elif cand != best:
                raise AssertionError("orbit produced two canonical forms")
    return best


# -- the twist and its fixed loci -----------------------------------------


def sigma_action(e, L: PolyMat) -> PolyMat:
    """Delta_e^{-1} L(zeta x) Delta_e: multiplies the x^k coefficient of
    entry (i, j) by zeta^(k + e_j - e_i)."""
    p = L.p
    if len(e) != p:
        raise ValueError("length of e must equal matrix size")
    if L.is_float():
        import cmath

        zpow = [cmath.exp(2j * cmath.pi * t / p) for t in range(p)]
    else:
        zpow = [Cyclotomic.zeta_pow(p, t) for t in range(p)]
    out = L.copy()
    for i in range(p):
        for j in range(p):
            ent = out.entries[i][j]
            for k in range(L.q + 1):
                t = (k + e[j] - e[i]) % p
                if t:
                    ent[k] = zpow[t] * ent[k]
                # t == 0: multiply by 1, keep scalar type unchanged
    return out


def is_fixed(L: PolyMat, e, tol: float = 0.0) -> bool:
    """Exact membership in the fixed locus M^{Delta_e} (tolerance only
    consulted for float scalars)."""
    p = L.p
    for i in range(p):
        for j in range(p):
            for k in range(L.q + 1):
                if (k + e[j] - e[i]) % p != 0:
                    c = L.entries[i][j][k]
                    if is_float_scalar(c):
                        if abs(c) > tol:
                            return False
                    elif not c == 0:
                        return False
    return True


@dataclass
class FixedBasis:
    e: tuple
    d: int
    triples: list  # (i, j, k), 1-indexed positions, k = x-power

    @property
    def dim(self) -> int:
        return len(self.triples)


def fixed_basis(p: int, d: int, e) -> FixedBasis:
    """Monomial basis of M^{Delta_e}_{p,d}: triples (i, j, k) with
    k = e_i - e_j (mod p)."""
    e = tuple(v % p for v in e)
    triples = [
        (i + 1, j + 1, k)
        for k in range(d + 1)
        for i in range(p)
        for j in range(p)
        if (k - (e[i] - e[j])) % p == 0
    ]
    return FixedBasis(e=e, d=d, triples=triples)


def basis_monomial(p: int, d: int, triple) -> PolyMat:
    i, j, k = triple
    m = PolyMat.zero(p, d)
    m.entries[i - 1][j - 1][k] = _F1
    return m


def random_fixed_matrix(p: int, d: int, e, rng, num_range: int = 9, den_range: int = 4) -> PolyMat:
    """Random rational point of M^{Delta_e}_{p,d}; coordinates are
    num/den with num in [-num_range, num_range], den in [1, den_range]."""
    m = PolyMat.zero(p, d)
    for (i, j, k) in fixed_basis(p, d, e).triples:
        m.entries[i - 1][j - 1][k] = Fraction(
            rng.randint(-num_range, num_range), rng.randint(1, den_range)
        )
    return m


def random_rational_matrix(p: int, q: int, rng) -> PolyMat:
    m = PolyMat.zero(p, q)
    for i in range(p):
        for j in range(p):
            for k in range(q + 1):
                m.entries[i][j][k] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return m


# -- torsion classification ------------------------------------------------


def _mat_pow(A, n: int):
    p = len(A)
    out = linalg.identity(p)
    for _ in range(n):
        out = linalg.mat_mul(out, A)
    return out


def _scalar_of(A, p: int):
    """If A = c*I return c, else None (exact scalars)."""
    c = A[0][0]
    for i in range(p):
        for j in range(p):
            want = c if i == j else _F0
            if not A[i][j] == want:
                return None
    return c


def classify_torsion(delta, p: int) -> tuple:
    """Map a p-torsion representative in GL_p to its class in E.

    Exact path: verify delta^p = c*I, normalize c to 1 (rational p-th root
    when needed), read eigenvalue multiplicities against {zeta^t} by exact
    kernel ranks. Falls back to the float path when c has no usable exact
    root. Raises TorsionError if delta^p is not scalar.
    """
    require_prime(p)
    if any(is_float_scalar(v) for row in delta for v in row):
        return _classify_torsion_float(delta, p)
    Ap = _mat_pow(delta, p)
    c = _scalar_of(Ap, p)
    if c is None:
        raise TorsionError("delta^p is not a scalar matrix")
    if c == 0:
        raise TorsionError("delta is singular")
    if not c == 1:
        root = _rational_pth_root(c, p)
        if root is None:
            emb = [[_embed_scalar(v, p) for v in row] for row in delta]
            return _classify_torsion_float(emb, p)
        delta = [[v / root for v in row] for row in delta]
    mults = []
    zeta_id = linalg.identity(p)
    for t in range(p):
        zt = Cyclotomic.zeta_pow(p, t)
        shifted = [
            [delta[i][j] - (zt if i == j else 0) for j in range(p)] for i in range(p)
        ]
        mults.append(p - linalg.rank(shifted))
    if sum(mults) != p:
        raise TorsionError("delta is not diagonalizable with p-th root eigenvalues")
    e = []
    for t, m in enumerate(mults):
        e.extend([t] * m)
    return canonicalize(tuple(e))


def _embed_scalar(v, p: int) -> complex:
    if isinstance(v, Cyclotomic):
        return v.embed()
    return complex(v)


def _rational_pth_root(c, p: int):
    """A rational r with r^p = c, if one exists (c rational)."""
    if isinstance(c, Cyclotomic):
        if not c.is_rational():
            return None
        c = c.rational_part()
    c = Fraction(c)
    if c == 0:
        return None
    sign = 1
    if c < 0:
        if p % 2 == 0:
            return None
        sign = -1
        c = -c

    def iroot(n: int):
        if n == 0:
            return 0
        r = round(n ** (1.0 / p))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand ** p == n:
                return cand
        return None

    rn = iroot(c.numerator)
    rd = iroot(c.denominator)
    if rn is None or rd is None:
        return None
    return Fraction(sign * rn, rd)


def _classify_torsion_float(delta, p: int, tol: float = 1e-6) -> tuple:
    import cmath

    import numpy as np

    A = np.array([[complex(v) for v in row] for row in delta])
    Ap = np.linalg.matrix_power(A, p)
    c = np.trace(Ap) / p
    if abs(c) < 1e-12 or np.max(np.abs(Ap - c * np.eye(p))) > tol * max(1.0, abs(c)):
        raise TorsionError("delta^p is not a scalar matrix (float check)")
    A = A / c ** (1.0 / p)  # principal branch
    eigs = np.linalg.eigvals(A)
    e = []
    for lam in eigs:
        t = round(p * cmath.phase(lam) / (2 * cmath.pi)) % p
        if abs(lam - cmath.exp(2j * cmath.pi * t / p)) > 1e-4:
            raise TorsionError(f"eigenvalue {lam} is not near a p-th root of unity")
        e.append(t)
    return canonicalize(tuple(e))


def delta_matrix(p: int, e):
    """diag(zeta^{e_1}, ..., zeta^{e_p}) over Q(zeta_p)."""
    return [
        [Cyclotomic.zeta_pow(p, e[i]) if i == j else Cyclotomic.zero(p) for j in range(p)]
        for i in range(p)
    ]


# -- the conjugator solver --------------------------------------------------


def tau(L: PolyMat) -> PolyMat:
    """tau(L)(x) = L(zeta x)."""
    p = L.p
    if L.is_float():
        import cmath

        zpow = [cmath.exp(2j * cmath.pi * t / p) for t in range(p)]
    else:
        zpow = [Cyclotomic.zeta_pow(p, t) for t in range(p)]
    out = L.copy()
    for i in range(p):
        for j in range(p):
            ent = out.entries[i][j]
            for k in range(L.q + 1):
                t = k % p
                if t:
                    ent[k] = zpow[t] * ent[k]
    return out


@dataclass
class ConjugatorResult:
    status: str  # "symmetric" or "not-symmetric"
    g: list | None = None  # p x p matrix over Q(zeta_p), class in PGL_p
    e: tuple | None = None


def conjugator(L: PolyMat) -> ConjugatorResult:
    """Solve tau(L) X = X L for X in Mat_p.

    With irreducible characteristic polynomial the solution space is at most
    one-dimensional; a 1-dimensional space spanned by an invertible X yields
    the torsion class g with tau(L) = g L g^{-1}.
    """
    p, q = L.p, L.q
    tL = tau(L)
    # unknowns X_{ab} flattened a*p+b; equations indexed by (i, j, k)
    rows = []
    for i in range(p):
        for j in range(p):
            for k in range(q + 1):
                row = [_F0] * (p * p)
                for a in range(p):
                    # tau(L)_{ia} X_{aj}
                    row[a * p + j] = row[a * p + j] + tL.entries[i][a][k]
                    # - X_{ia} L_{aj}
                    row[i * p + a] = row[i * p + a] - L.entries[a][j][k]
                rows.append(row)
    kern = linalg.kernel_basis(rows)
    if len(kern) == 0:
        return ConjugatorResult(status="not-symmetric")
    if len(kern) > 1:
        raise AmbiguousStabilizerError(
            f"intertwiner space has dimension {len(kern)}"
        )
    X = [[kern[0][a * p + b] for b in range(p)] for a in range(p)]
    if linalg.det(X) == 0:
        return ConjugatorResult(status="not-symmetric")
    e = classify_torsion(X, p)
    return ConjugatorResult(status="symmetric", g=X, e=e)


# -- centralizer structure ---------------------------------------------------


@dataclass
class CentralizerData:
    e: tuple
    t0: list  # (i, j) 1-indexed with e_i = e_j
    t_plus: list  # e_i < e_j
    t_minus: list  # e_i > e_j
    lie_basis: list  # matrices spanning Lie G_{Delta_e} mod C*I

    @property
    def lie_dim(self) -> int:
        return len(self.lie_basis)


def centralizer_data(e) -> CentralizerData:
    p = len(e)
    e = tuple(v % p for v in e)
    t0, tp, tm = [], [], []
    for i in range(p):
        for j in range(p):
            if e[i] == e[j]:
                t0.append((i + 1, j + 1))
            elif e[i] < e[j]:
                tp.append((i + 1, j + 1))
            else:
                tm.append((i + 1, j + 1))
    basis = []
    for (i, j) in t0:
        if i == j:
            continue
        m = [[_F0] * p for _ in range(p)]
        m[i - 1][j - 1] = _F1
        basis.append(m)
    # diagonal part mod C*I: E_ii - E_pp for i < p
    for i in range(p - 1):
        m = [[_F0] * p for _ in range(p)]
        m[i][i] = _F1
        m[p - 1][p - 1] = -_F1
        basis.append(m)
    assert len(basis) == len(t0) - 1
    return CentralizerData(e=e, t0=t0, t_plus=tp, t_minus=tm, lie_basis=basis)


def dk_star_generator(p: int, k: int):
    """The 0/1 matrix supported on {(i, j) : i - j = k (mod p)}; a
    representative of the D_k^* component of G_{Delta_omega}."""
    return [
        [_F1 if (i - j - k) % p == 0 else _F0 for j in range(p)] for i in range(p)
    ]


def random_centralizer_element(e, rng):
    """Random invertible matrix supported on T_0 (a Lie G_{Delta_e}
    exponential surrogate); retries until invertible."""
    p = len(e)
    cd = centralizer_data(e)
    for _ in range(64):
        m = [[_F0] * p for _ in range(p)]
        for (i, j) in cd.t0:
            m[i - 1][j - 1] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        if not linalg.det(m) == 0:
            return m
    raise RuntimeError("failed to sample an invertible centralizer element")


def random_dk_star_element(p: int, k: int, rng):
    """Random element of D_k^*: nonzero entries exactly on i - j = k (mod p)."""
    m = [[_F0] * p for _ in range(p)]
    for i in range(p):
        for j in range(p):
            if (i - j - k) % p == 0:
                v = _F0
                while v == 0:
                    v = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                m[i][j] = v
    return m


def adjoint_action(g, L: PolyMat) -> PolyMat:
    """Ad(g)(L) = g L g^{-1}, computed exactly."""
    ginv = linalg.inverse(g)
    p = L.p
    out = PolyMat.zero(p, L.q)
    for k in range(L.q + 1):
        Lk = L.coeff_mat(k)
        M = linalg.mat_mul(linalg.mat_mul(g, Lk), ginv)
        for i in range(p):
            for j in range(p):
                out.entries[i][j][k] = M[i][j]
    return out


def commutes_projectively(g, h, p: int) -> bool:
    """True iff g h g^{-1} h^{-1} is scalar (commutation in PGL_p)."""
    m = linalg.mat_mul(linalg.mat_mul(g, h), linalg.inverse(linalg.mat_mul(h, g)))
    lam = None
    for i in range(p):
        for j in range(p):
            if i == j:
                if lam is None:
                    lam = m[i][j]
                elif not m[i][j] == lam:
                    return False
            elif not m[i][j] == 0:
                return False
    return True
