import random
from fractions import Fraction

import pytest

from laxcyc import poisson as po
from laxcyc.coordpoly import CoordPoly
from laxcyc.polymat import PolyMat
from laxcyc.symmetry import omega, random_fixed_matrix, random_rational_matrix, zero_vector

F = Fraction


def _rand_var(rng, p, q):
    return CoordPoly.var((rng.randint(1, p), rng.randint(1, p), rng.randint(0, q)))


def test_coord_bracket_examples():
    assert po.coord_bracket(2, 2, (1, 1, 0), (1, 2, 0), 1) == -CoordPoly.var((1, 2, 0))
    assert po.coord_bracket(2, 2, (1, 1, 0), (1, 2, 0), 0) == CoordPoly.var((1, 2, 1))
    # both deltas vanish
    assert po.coord_bracket(3, 2, (1, 2, 0), (3, 3, 1), 1).is_zero()
    # out-of-range superscript gives zero
    assert po.coord_bracket(2, 2, (1, 1, 2), (1, 2, 2), 1).is_zero()


def test_eta_sign_table():
    assert po.eta_sign(1, 0, 0) == 1
    assert po.eta_sign(1, 1, 1) == -1
    assert po.eta_sign(1, 0, 1) == 0
    assert po.eta_sign(0, 0, 0) == -1


def test_leibniz_example():
    spec = po.BracketSpec.single(2, 1)
    F_ = CoordPoly.var((1, 1, 0)) * CoordPoly.var((1, 2, 0))
    G = CoordPoly.var((1, 2, 0))
    assert po.bracket(F_, G, 2, 2, spec) == -(G * G)
    assert po.bracket(F_, F_, 2, 2, spec).is_zero()
    assert po.bracket(CoordPoly.const(F(7)), G, 2, 2, spec).is_zero()


@pytest.mark.parametrize("p,q", [(2, 2), (2, 4), (3, 3)])
def test_antisymmetry_and_jacobi(p, q, rng):
    for mu in range(q + 2):
        spec = po.BracketSpec.single(q, mu)
        for _ in range(60):
            a, b, c = (_rand_var(rng, p, q) for _ in range(3))
            assert po.bracket(a, b, p, q, spec) == -po.bracket(b, a, p, q, spec)
            assert po.jacobiator(a, b, c, p, q, spec).is_zero()


def test_pencil_compatibility(rng):
    p, q = 2, 3
    for _ in range(5):
        phi = [F(0)] * (q + 2)
        phi[rng.randrange(q + 2)] = F(rng.randint(1, 9))
        phi[rng.randrange(q + 2)] = F(rng.randint(1, 9))
        spec = po.BracketSpec(q=q, phi=tuple(phi))
        for _ in range(40):
            a, b, c = (_rand_var(rng, p, q) for _ in range(3))
            assert po.jacobiator(a, b, c, p, q, spec).is_zero()


@pytest.mark.parametrize("p,q", [(2, 2), (2, 3), (3, 2)])
def test_generating_identity(p, q):
    for mu in range(q + 2):
        assert po.generating_identity_check(p, q, mu)


def test_generating_lemma():
    for q in (2, 3):
        for s in range(q + 2):
            assert po.generating_lemma_check(q, s)


def test_zeta_partial_fraction_hand_cases():
    # p=2, l=1: -1/(t+1) + 1/(t-1) = 2/(t^2-1)
    assert po.zeta_partial_fraction_check(2, 1)
    # p=2, l=2: 1/(t+1) + 1/(t-1) = 2t/(t^2-1)
    assert po.zeta_partial_fraction_check(2, 2)
    for l in (1, 2, 3):
        assert po.zeta_partial_fraction_check(3, l)
    with pytest.raises(ValueError):
        po.zeta_partial_fraction_check(3, 4)


def test_sigma_pullback_eigenvalues():
    p, q, e = 3, 2, (0, 1, 1)
    w = po.sigma_weight(e, p)
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            for k in range(q + 1):
                v = CoordPoly.var((i, j, k))
                assert po.sigma_pullback(v, e, p) == v.scale(w((i, j, k)))


@pytest.mark.parametrize("p,q", [(2, 3), (3, 4)])
def test_poisson_automorphism_criterion(p, q):
    for e in (zero_vector(p), omega(p)):
        for mu in range(q + 2):
            assert po.is_poisson_automorphism(e, mu, p, q) == (mu % p == 1)


def test_casimir_ranges_p2_q2():
    spec = po.BracketSpec.single(2, 1)
    expected = po.predicted_casimir_js(1, 2, 1)
    assert expected == {0, 3, 4}
    for j in range(5):
        H = po.symbolic_hamiltonian(2, 2, 1, j)
        assert po.is_casimir(H, 2, 2, spec) == (j in expected)


def test_reduced_bracket_antisymmetry_and_delta_structure():
    e, p, q = omega(2), 2, 2
    spec = po.BracketSpec.from_phi_tilde(q, p, [1])
    idx = (1, 2, 1)
    assert (
        po.reduced_coord_bracket(e, idx, idx, spec, p, q).is_zero()
    )
    # j != m and i != n: zero by the delta structure
    assert po.reduced_coord_bracket(omega(3), (1, 2, 1), (3, 3, 0), po.BracketSpec.from_phi_tilde(3, 3, [1]), 3, 3).is_zero()


@pytest.mark.parametrize("p,q", [(2, 2), (2, 4)])
def test_reduced_routes_agree(p, q):
    e = omega(p)
    adm = po.admissible(e, p)
    allvars = [
        (i, j, k)
        for i in range(1, p + 1)
        for j in range(1, p + 1)
        for k in range(q + 1)
        if adm((i, j, k))
    ]
    spec = po.BracketSpec.from_phi_tilde(q, p, [1])
    for u in allvars:
        for v in allvars:
            assert po.reduced_coord_bracket(e, u, v, spec, p, q) == po.reduced_via_extension(e, u, v, 1, p, q)


def test_reduced_e_zero_restricts_plain_bracket():
    p, q, e = 2, 2, zero_vector(2)
    spec = po.BracketSpec.from_phi_tilde(q, p, [1])
    adm = po.admissible(e, p)
    allvars = [
        (i, j, k)
        for i in range(1, p + 1)
        for j in range(1, p + 1)
        for k in range(q + 1)
        if adm((i, j, k))
    ]
    for u in allvars:
        for v in allvars:
            direct = po.restrict_to_fixed(po.coord_bracket(p, q, u, v, 1), e, p)
            assert po.reduced_coord_bracket(e, u, v, spec, p, q) == direct


def test_reduced_bracket_rejects_bad_phi():
    spec = po.BracketSpec.single(2, 2)  # mu = 2 is not 1 mod 2
    with pytest.raises(ValueError):
        po.reduced_coord_bracket(omega(2), (1, 1, 0), (1, 1, 0), spec, 2, 2)
    with pytest.raises(ValueError):
        po.reduced_via_extension(omega(2), (1, 1, 0), (1, 1, 0), 2, 2, 2)


def test_reduced_jacobi_on_admissible_triples(rng):
    p, q, e = 2, 4, omega(2)
    spec = po.BracketSpec.from_phi_tilde(q, p, [1])
    adm = po.admissible(e, p)
    allvars = [
        (i, j, k)
        for i in range(1, p + 1)
        for j in range(1, p + 1)
        for k in range(q + 1)
        if adm((i, j, k))
    ]
    fn = po.reduced_bracket_fn(e, spec, p, q)
    for _ in range(40):
        a, b, c = (CoordPoly.var(allvars[rng.randrange(len(allvars))]) for _ in range(3))
        j1 = po.leibniz_bracket(po.leibniz_bracket(a, b, fn), c, fn)
        j2 = po.leibniz_bracket(po.leibniz_bracket(b, c, fn), a, fn)
        j3 = po.leibniz_bracket(po.leibniz_bracket(c, a, fn), b, fn)
        assert (j1 + j2 + j3).is_zero()


def test_hamiltonian_vf_matches_lax(standard_L):
    rhs = standard_L.commutator(standard_L.truncate_div(1).rebound(2)).rebound(2)
    assert po.hamiltonian_vf(standard_L, 1, 1, 1) == rhs
    assert po.hamiltonian_vf(standard_L, 1, 1, 2) == rhs  # multi-Hamiltonian


def test_hamiltonian_vf_i_zero_vanishes(standard_L):
    for j in range(3):
        assert po.hamiltonian_vf(standard_L, 0, j, 1).is_zero()


def test_involutivity_small():
    p, q = 2, 2
    for (i, j) in [(0, 1), (1, 1), (1, 2)]:
        for (k, l) in [(0, 2), (1, 3)]:
            Hi = po.symbolic_hamiltonian(p, q, i, j)
            Hk = po.symbolic_hamiltonian(p, q, k, l)
            for mu in range(q + 2):
                spec = po.BracketSpec.single(q, mu)
                assert po.bracket(Hi, Hk, p, q, spec).is_zero()


def test_bracket_table_rows():
    rows = po.bracket_table_rows(2, 1, 1)
    assert len(rows) == 64
    # every row is (i,j,k,m,n,l,mu,result)
    i, j, k, m, n, l, mu, res = rows[0]
    assert mu == 1 and isinstance(res, str)
