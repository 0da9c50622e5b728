import random
from fractions import Fraction

import pytest

from laxcyc import linalg, symmetry as sym
from laxcyc.cyclotomic import Cyclotomic
from laxcyc.polymat import PolyMat, char_poly
from laxcyc.symmetry import omega, zero_vector

F = Fraction


@pytest.mark.parametrize("p,count", [(2, 2), (3, 4), (5, 26)])
def test_enumerate_E_counts(p, count):
    E = sym.enumerate_E(p)
    assert len(E) == count == sym.expected_E_count(p)
    assert zero_vector(p) in E
    assert sym.canonicalize(omega(p)) in E


@pytest.mark.parametrize("p", [2, 3])
def test_enumerate_E_matches_brute_force(p):
    assert sym.brute_force_class_count(p) == sym.expected_E_count(p)


def test_enumerate_E_rejects_composite():
    with pytest.raises(sym.NotPrimeError):
        sym.enumerate_E(4)


def test_canonicalize_examples():
    rep = sym.canonicalize((1, 0))
    assert rep == sym.canonicalize((0, 1))
    for c in range(3):
        assert sym.canonicalize((c, c, c)) == zero_vector(3)
    e = (1, 0, 2)
    assert sym.canonicalize(sym.canonicalize(e)) == sym.canonicalize(e)


def test_canonicalize_constant_on_orbits(rng):
    for p in (2, 3):
        for _ in range(10):
            e = tuple(rng.randrange(p) for _ in range(p))
            assert sym.brute_force_canonicalize(e) == sym.canonicalize(e)


def test_sigma_action_fixed_point(standard_L):
    assert sym.sigma_action(omega(2), standard_L) == standard_L
    assert sym.is_fixed(standard_L, omega(2))


def test_sigma_action_e_zero_is_tau(rng):
    L = sym.random_rational_matrix(3, 2, rng)
    assert sym.sigma_action(zero_vector(3), L) == sym.tau(L)


def test_sigma_action_order_p(rng):
    for p, e in [(2, (0, 1)), (3, (0, 0, 2))]:
        L = sym.random_rational_matrix(p, 3, rng)
        cur = L
        for _ in range(p):
            cur = sym.sigma_action(e, cur)
        assert cur == L


def test_sigma_eigenvalue_on_monomials():
    p, d, e = 3, 4, (0, 1, 1)
    for k in range(d + 1):
        for i in range(1, p + 1):
            for j in range(1, p + 1):
                mono = sym.basis_monomial(p, d, (i, j, k))
                moved = sym.sigma_action(e, mono)
                w = Cyclotomic.zeta_pow(p, k + e[j - 1] - e[i - 1])
                assert moved.entries[i - 1][j - 1][k] == w


def test_fixed_basis_examples():
    fb = sym.fixed_basis(2, 2, omega(2))
    assert sorted(fb.triples) == sorted(
        [(1, 1, 0), (2, 2, 0), (1, 2, 1), (2, 1, 1), (1, 1, 2), (2, 2, 2)]
    )
    assert sym.fixed_basis(3, 6, zero_vector(3)).dim == 27
    assert sym.fixed_basis(3, 6, omega(3)).dim == 21


@pytest.mark.parametrize("p", [2, 3, 5])
def test_fixed_space_dimension_formulas(p):
    for d in range(1, 11):
        assert sym.fixed_basis(p, d, zero_vector(p)).dim == (d // p + 1) * p * p
        assert sym.fixed_basis(p, d, omega(p)).dim == (d + 1) * p


def test_fixed_basis_is_exactly_the_fixed_monomials():
    p, d = 2, 3
    for e in (zero_vector(p), omega(p)):
        triples = set(sym.fixed_basis(p, d, e).triples)
        for k in range(d + 1):
            for i in range(1, p + 1):
                for j in range(1, p + 1):
                    mono = sym.basis_monomial(p, d, (i, j, k))
                    assert (sym.sigma_action(e, mono) == mono) == ((i, j, k) in triples)


def test_classify_torsion_identity_and_swap():
    I2 = [[F(1), F(0)], [F(0), F(1)]]
    assert sym.classify_torsion(I2, 2) == (0, 0)
    swap = [[F(0), F(1)], [F(1), F(0)]]
    assert sym.classify_torsion(swap, 2) == sym.canonicalize((0, 1))


def test_classify_torsion_diagonal():
    for p in (3, 5):
        for e in sym.enumerate_E(p):
            assert sym.classify_torsion(sym.delta_matrix(p, e), p) == sym.canonicalize(e)


def test_classify_torsion_cyclic_permutation():
    for p in (2, 3, 5):
        assert sym.classify_torsion(sym.dk_star_generator(p, 1), p) == sym.canonicalize(omega(p))


def test_classify_torsion_scalar_multiple():
    # 4*I is torsion in PGL_2 with a rational square root of the scalar
    m = [[F(0), F(2)], [F(2), F(0)]]
    assert sym.classify_torsion(m, 2) == sym.canonicalize((0, 1))


def test_classify_torsion_rejects_non_torsion():
    with pytest.raises(sym.TorsionError):
        sym.classify_torsion([[F(1), F(1)], [F(0), F(1)]], 2)


def test_classify_torsion_float_path():
    import cmath

    z = cmath.exp(2j * cmath.pi / 3)
    m = [[z, 0j, 0j], [0j, 1 + 0j, 0j], [0j, 0j, 1 + 0j]]
    assert sym.classify_torsion(m, 3) == sym.canonicalize((1, 0, 0))


def test_conjugator_standard(standard_L):
    res = sym.conjugator(standard_L)
    assert res.status == "symmetric"
    assert res.e == sym.canonicalize(omega(2))
    assert sym.tau(standard_L) == sym.adjoint_action(res.g, standard_L)
    g2 = linalg.mat_mul(res.g, res.g)
    assert sym._scalar_of(g2, 2) is not None


def test_conjugator_tau_fixed_is_identity_class(rng):
    # a tau-fixed matrix with irreducible char poly: conjugator must be scalar
    L = PolyMat(2, 2, [[[0, 0, 1], [1, 0, 0]], [[2, 0, 0], [0, 0, 3]]])
    assert sym.is_fixed(L, zero_vector(2))
    res = sym.conjugator(L)
    assert res.status == "symmetric"
    assert res.e == zero_vector(2)


def test_conjugator_generic_not_symmetric(rng):
    L = sym.random_rational_matrix(2, 2, rng)
    assert sym.conjugator(L).status == "not-symmetric"


def test_conjugator_p3(rng):
    m = PolyMat.zero(3, 3)
    for i in range(1, 4):
        for j in range(1, 4):
            if i != j:
                m.entries[i - 1][j - 1][(i - j) % 3] = F(1)
    m.entries[0][0][3] = F(1)
    assert sym.is_fixed(m, omega(3))
    res = sym.conjugator(m)
    assert res.status == "symmetric"
    assert res.e == sym.canonicalize(omega(3))


def test_quotient_injectivity(rng):
    # L1 = g L2 g^{-1} with both fixed forces g into the centralizer class
    p, e = 2, omega(2)
    L2 = PolyMat(2, 2, [[[0, 0, 0], [0, 1, 0]], [[0, 2, 0], [0, 0, 1]]])
    assert sym.is_fixed(L2, e)
    g = sym.random_centralizer_element(e, rng)
    L1 = sym.adjoint_action(g, L2)
    assert sym.is_fixed(L1, e)
    # solve L1 X = X L2 and verify the 1-dim solution commutes with Delta_e
    rows = []
    q = 2
    for i in range(p):
        for j in range(p):
            for k in range(q + 1):
                row = [F(0)] * (p * p)
                for a in range(p):
                    row[a * p + j] += L1.entries[i][a][k]
                    row[i * p + a] -= L2.entries[a][j][k]
                rows.append(row)
    kern = linalg.kernel_basis(rows)
    assert len(kern) == 1
    X = [[kern[0][a * p + b] for b in range(p)] for a in range(p)]
    delta = sym.delta_matrix(p, e)
    assert sym.commutes_projectively(X, delta, p)


def test_dk_star_stabilizes_fixed_locus(rng):
    p, d, e = 3, 3, omega(3)
    for k in range(p):
        g = sym.random_dk_star_element(p, k, rng)
        B = sym.random_fixed_matrix(p, d, e, rng)
        assert sym.is_fixed(sym.adjoint_action(g, B), e)


def test_centralizer_data():
    cd = sym.centralizer_data(omega(2))
    assert cd.t_plus == [(1, 2)] and cd.t_minus == [(2, 1)]
    assert cd.lie_dim == 1
    cd0 = sym.centralizer_data(zero_vector(3))
    assert cd0.lie_dim == 8 and len(cd0.t0) == 9
    cdm = sym.centralizer_data((0, 0, 1))
    assert len(cdm.t0) == 5 and cdm.lie_dim == 4


def test_standard_instance_char_poly_irreducible(standard_L):
    from laxcyc.spectral import irreducible_cert

    assert irreducible_cert(char_poly(standard_L)).verdict.startswith("Irreducible")
