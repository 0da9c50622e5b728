from fractions import Fraction

import pytest

from laxcyc import poisson as po, reduction as red
from laxcyc.coordpoly import CoordPoly
from laxcyc.polymat import PolyMat
from laxcyc.symmetry import omega, random_fixed_matrix

F = Fraction


def test_phispec_validation():
    with pytest.raises(ValueError):
        red.PhiSpec(1, (F(1), F(0), F(0)))  # zero leading coefficient
    with pytest.raises(ValueError):
        red.PhiSpec(1, (F(1), F(1)))  # wrong length
    phi = red.PhiSpec.default(2)
    assert phi.top == 1 and len(phi.tilde_coeffs) == 4


def test_eta_image_constraints_p2():
    cons = red.eta_image_constraints(2, 2, omega(2))
    assert sorted(cons) == sorted([(1, 1, 4), (2, 2, 4), (1, 2, 3), (2, 1, 3)])


def test_embed_eta_round_trip(rng):
    e = omega(2)
    B = random_fixed_matrix(2, 2, e, rng)
    ext = red.embed_eta(B, 2, e)
    assert ext.q == 4
    assert red.is_in_eta_image(ext, 2, e)
    assert red.is_extended_point(ext, e)
    zero = red.embed_eta(PolyMat.zero(2, 2), 2, e)
    assert red.is_in_eta_image(zero, 2, e)


def test_embed_eta_rejects_unfixed(rng):
    from laxcyc.symmetry import random_rational_matrix

    with pytest.raises(red.NotInImageError):
        red.embed_eta(random_rational_matrix(2, 2, rng), 2, omega(2))


def test_single_constraint_violations_are_rejected(rng):
    e = omega(2)
    B = random_fixed_matrix(2, 2, e, rng)
    ext = red.embed_eta(B, 2, e)
    for (i, j, k) in red.eta_image_constraints(2, 2, e):
        bad = ext.copy()
        bad.entries[i - 1][j - 1][k] = F(1)
        assert not red.is_in_eta_image(bad, 2, e)


def test_comoment_indexing(rng):
    e, p, d = omega(2), 2, 2
    phi = red.PhiSpec.default(1)
    cm = red.comoment(e, (1, 1), phi, p, d)
    assert cm == CoordPoly.var((1, 1, 4))
    with pytest.raises(ValueError):
        red.comoment(e, (1, 2), phi, p, d)  # (1,2) not in T_0 for omega
    # trace comomentum vanishes on the enlarged space and on the image
    B = red.random_extended_point(p, d, e, rng)
    vals = po.point_values(B)
    total = CoordPoly.zero()
    for i in (1, 2):
        total = total + red.comoment(e, (i, i), phi, p, d)
    assert total.evaluate(vals) == 0
    img = red.embed_eta(random_fixed_matrix(p, d, e, rng), d, e)
    ivals = po.point_values(img)
    for i in (1, 2):
        assert red.comoment(e, (i, i), phi, p, d).evaluate(ivals) == 0


@pytest.mark.parametrize("p,d_prime", [(2, 1), (2, 2), (3, 1)])
def test_lie_homo(p, d_prime, rng):
    phi = red.PhiSpec.default(d_prime)
    assert red.lie_homo_check(omega(p), phi, p, p * d_prime, rng, samples=6)


def test_lie_homo_non_omega_class(rng):
    phi = red.PhiSpec.default(1)
    assert red.lie_homo_check((0, 0, 1), phi, 3, 3, rng, samples=4)


@pytest.mark.parametrize("p,d_prime", [(2, 1), (2, 2), (3, 1)])
def test_b_bracket_identity(p, d_prime):
    phi = red.PhiSpec.default(d_prime)
    assert red.b_bracket_identity_check(omega(p), phi, p, p * d_prime)


def test_b_bracket_identity_general_phi():
    phi = red.PhiSpec(1, (F(2), F(-1), F(3)))
    assert red.b_bracket_identity_check(omega(2), phi, 2, 2)


@pytest.mark.parametrize("p,d_prime", [(2, 1), (3, 1)])
def test_infinitesimal_action(p, d_prime, rng):
    e = omega(p)
    phi = red.PhiSpec.default(d_prime)
    for _ in range(3):
        B = red.random_extended_point(p, p * d_prime, e, rng)
        assert red.infinitesimal_action_check(e, phi, B)


def test_infinitesimal_action_identity_element(rng):
    # E = I: [B, I] = 0 and the comomentum of I vanishes on the space
    e, p, d = omega(2), 2, 2
    B = red.random_extended_point(p, d, e, rng)
    comm = red._const_commutator(B, [[F(1), F(0)], [F(0), F(1)]])
    assert comm.is_zero()


def test_casimir_certificates(rng):
    e = omega(2)
    assert red.casimir_certificate(e, 2, 1, 3, rng) == "ZeroField"
    assert red.casimir_certificate(e, 2, 1, 2, rng) == "TangentToOrbits"
    assert red.casimir_certificate(e, 2, 1, 1, rng) == "NotCasimirRange"
    assert red.casimir_certificate(e, 2, 0, 1, rng) == "ZeroField"
    assert red.casimir_expected(2, 1, 3) == "ZeroField"
    assert red.casimir_expected(2, 1, 2) == "TangentToOrbits"
    assert red.casimir_expected(2, 1, 1) == "NotCasimirRange"


def test_casimir_certificates_p3(rng):
    e = omega(3)
    assert red.casimir_certificate(e, 1, 1, 2, rng, samples=3) == "ZeroField"
    assert red.casimir_certificate(e, 1, 1, 1, rng, samples=3) == "TangentToOrbits"
    assert red.casimir_certificate(e, 1, 2, 2, rng, samples=2) == "TangentToOrbits"


def test_image_tangency(rng):
    assert red.image_tangency_check(omega(2), 1, 1, 0, rng, samples=3)
    assert red.image_tangency_check(omega(2), 1, 1, 1, rng, samples=3)
    assert red.image_tangency_check(omega(3), 1, 1, 1, rng, samples=2)


def test_g_invariance(rng):
    assert red.g_invariance_check(omega(2), 1, 2, rng, samples=3)
    assert red.g_invariance_check(omega(3), 1, 3, rng, samples=2)
    assert red.g_invariance_check((0, 0, 1), 1, 3, rng, samples=2)
    with pytest.raises(ValueError):
        red.g_invariance_check(omega(2), 1, 3, rng)  # j not divisible by p
