from fractions import Fraction

import pytest

from laxcyc import flows, poisson as po
from laxcyc.polymat import PolyMat
from laxcyc.symmetry import is_fixed, omega, random_fixed_matrix, random_rational_matrix

F = Fraction


def test_lax_rhs_trivial_cases(standard_L):
    assert flows.lax_rhs(standard_L, 0, 1).is_zero()
    assert flows.lax_rhs(standard_L, 1, 0).is_zero()
    assert flows.lax_rhs(standard_L, 2, 0).is_zero()


def test_lax_rhs_12_expansion(standard_L):
    # (L^2/x^2)_+ = [[1, x], [x, 1+x^2]]
    t = standard_L.pow(2).truncate_div(2)
    assert t.entries[0][0][0] == 1
    assert t.entries[0][1][1] == 1
    assert t.entries[1][0][1] == 1
    assert t.entries[1][1][0] == 1 and t.entries[1][1][2] == 1
    rhs = flows.lax_rhs(standard_L, 1, 2)
    assert rhs == po.hamiltonian_vf(standard_L, 1, 2, 1)


def test_lax_rhs_index_bounds(standard_L):
    with pytest.raises(ValueError):
        flows.lax_rhs(standard_L, 1, 5)


def test_vf_consistency_random(rng):
    for _ in range(5):
        L = random_rational_matrix(2, 2, rng)
        for mu in range(4):
            assert flows.vf_consistency_check(L, 1, 1, mu)
    assert flows.vf_consistency_check(random_rational_matrix(2, 2, rng), 0, 0, 1)


def test_reduced_lax_rhs_fixed_locus(rng):
    e = omega(3)
    B = random_fixed_matrix(3, 3, e, rng)
    rhs = flows.reduced_lax_rhs(B, e, 1, 3)
    assert is_fixed(rhs, e)
    assert flows.reduced_lax_rhs(B, e, 0, 3).is_zero()
    with pytest.raises(ValueError):
        flows.reduced_lax_rhs(B, e, 1, 2)  # not a multiple of p
    with pytest.raises(ValueError):
        flows.reduced_lax_rhs(random_rational_matrix(3, 3, rng), e, 1, 3)


def test_reduced_vf_consistency(rng):
    e = omega(3)
    B = random_fixed_matrix(3, 3, e, rng)
    assert flows.reduced_vf_consistency_check(B, e, 1, 1)


def test_isospectrality_symbolic():
    for (p, q, i, j) in [(2, 2, 1, 1), (2, 3, 1, 2), (3, 2, 1, 1), (3, 2, 2, 2)]:
        derivs = flows.symbolic_char_coeff_derivatives(p, q, i, j)
        assert derivs and all(v.is_zero() for v in derivs.values())


def test_commuting_vector_fields(rng):
    # [X_{1,1}, X_{1,2}] = 0 at random points (a consequence of involutivity)
    from laxcyc.coordpoly import CoordPoly

    p, q = 2, 2
    L = po.symbolic_L(p, q)
    t1 = L.truncate_div(1)
    t2 = L.truncate_div(2)
    rhs1 = L.matmul(t1) - t1.matmul(L)
    rhs2 = L.matmul(t2) - t2.matmul(L)

    def apply_field(rhs, G):
        acc = CoordPoly.zero()
        for var in G.variables():
            a, b, k = var
            comp = rhs.entries[a - 1][b - 1][k]
            if isinstance(comp, Fraction):
                continue
            acc = acc + G.partial(var) * comp
        return acc

    for _ in range(20):
        M = random_rational_matrix(p, q, rng)
        vals = po.point_values(M)
        for a in range(1, p + 1):
            for b in range(1, p + 1):
                for k in range(q + 1):
                    coord = CoordPoly.var((a, b, k))
                    f1 = apply_field(rhs1, coord)
                    f2 = apply_field(rhs2, coord)
                    lie = apply_field(rhs1, f2) - apply_field(rhs2, f1)
                    assert lie.evaluate(vals) == 0


def test_integrate_zero_field(standard_L):
    cfg = flows.FlowConfig(i=0, j=1, t_end=0.3, h=0.01)
    traj, rep = flows.integrate(standard_L, cfg)
    assert rep.max_drift == 0.0
    assert traj.rows[0] == traj.rows[-1]


def test_integrate_drift_and_halving(standard_L):
    cfg = flows.FlowConfig(i=1, j=2, t_end=1.0, h=0.05)
    _, rep = flows.integrate(standard_L, cfg)
    cfg2 = flows.FlowConfig(i=1, j=2, t_end=1.0, h=0.025)
    _, rep2 = flows.integrate(standard_L, cfg2)
    assert rep.max_drift <= 1e-8
    assert rep2.max_drift * 8 <= rep.max_drift


def test_integrate_tangency(rng):
    e = omega(2)
    B = random_fixed_matrix(2, 2, e, rng)
    cfg = flows.FlowConfig(i=1, j=2, t_end=0.5, h=1e-2, e=e)
    _, rep = flows.integrate(B, cfg)
    assert rep.fixed_locus_deviation <= 1e-8


def test_integrate_instability_aborts():
    # a coarse step on a strongly moving point must trip the hard cap rather
    # than report garbage
    L = PolyMat(2, 2, [[[5, 5, 5], [5, 5, 5]], [[5, 5, 5], [-5, -5, -5]]])
    cfg = flows.FlowConfig(i=1, j=1, t_end=40.0, h=2.0)
    with pytest.raises(flows.FlowInstabilityError):
        flows.integrate(L, cfg)


def test_trajectory_csv(standard_L):
    cfg = flows.FlowConfig(i=1, j=2, t_end=0.05, h=0.01)
    traj, _ = flows.integrate(standard_L, cfg)
    text = traj.csv()
    lines = text.strip().split("\n")
    assert lines[0].startswith("t,")
    assert len(lines) == len(traj.times) + 1
