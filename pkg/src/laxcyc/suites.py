"""Verification suites: seeded, deterministic batteries of exact and float
checks, reported as machine-readable ledgers. The service and the CLI both
run suites through this module."""

from __future__ import annotations

import random
import time
from fractions import Fraction

from . import flows, poisson, reduction, spectral, symmetry
from .coordpoly import CoordPoly
from .polymat import BivarPoly, PolyMat
from .symmetry import omega

__version__ = "0.1.0"

SUITE_NAMES = ("symmetry", "poisson", "flows", "reduction", "spectral")

_F = Fraction


class _Ledger:
    def __init__(self):
        self.checks = []

    def add(self, name: str, ok, mode: str = "exact", tolerance="exact", detail: str = "", repro=None):
        verdict = "PASS" if ok is True else ("FAIL" if ok is False else "UNKNOWN")
        entry = {
            "name": name,
            "verdict": verdict,
            "mode": mode,
            "tolerance": tolerance,
        }
        if detail:
            entry["detail"] = detail
        if verdict == "FAIL" and repro is not None:
            entry["repro"] = repro
        self.checks.append(entry)


def _report(suite: str, params: dict, seed: int, ledger: _Ledger, t0: float) -> dict:
    summary = {"pass": 0, "fail": 0, "unknown": 0}
    for c in ledger.checks:
        summary[c["verdict"].lower()] += 1
    return {
        "schema": "laxcyc-report/1",
        "suite": suite,
        "params": params,
        "seed": seed,
        "checks": ledger.checks,
        "summary": summary,
        "version": __version__,
        "timing_s": round(time.perf_counter() - t0, 3),
    }


def run_suite(suite: str, seed: int = 0, **params) -> dict:
    if suite == "all":
        t0 = time.perf_counter()
        merged = _Ledger()
        for name in SUITE_NAMES:
            sub = run_suite(name, seed=seed, **params)
            for c in sub["checks"]:
                c = dict(c)
                c["name"] = f"{name}/{c['name']}"
                merged.checks.append(c)
        return _report("all", params, seed, merged, t0)
    fn = {
        "symmetry": suite_symmetry,
        "poisson": suite_poisson,
        "flows": suite_flows,
        "reduction": suite_reduction,
        "spectral": suite_spectral,
    }.get(suite)
    if fn is None:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITE_NAMES + ('all',)}")
    return fn(seed=seed, **params)


# -- symmetry ------------------------------------------------------------------


def suite_symmetry(p: int = 3, d: int | None = None, seed: int = 0, **_) -> dict:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    led = _Ledger()
    d = d if d is not None else 2 * p
    led.add(
        f"E-count formula p={p}",
        len(symmetry.enumerate_E(p)) == symmetry.expected_E_count(p),
    )
    if p <= 3:
        led.add(
            f"E-count brute force p={p}",
            symmetry.brute_force_class_count(p) == symmetry.expected_E_count(p),
        )
    ok = True
    for dd in range(1, 11):
        ok = ok and symmetry.fixed_basis(p, dd, symmetry.zero_vector(p)).dim == (dd // p + 1) * p * p
        ok = ok and symmetry.fixed_basis(p, dd, omega(p)).dim == (dd + 1) * p
    led.add(f"fixed-space dimensions p={p}, d<=10", ok)
    ok = True
    for _ in range(25):
        e = tuple(rng.randrange(p) for _ in range(p))
        c = symmetry.canonicalize(e)
        ok = ok and c in symmetry.enumerate_E(p) and symmetry.canonicalize(c) == c
    led.add("canonicalize lands in E and is idempotent", ok)
    ok = True
    for e in (symmetry.zero_vector(p), omega(p)):
        fb = symmetry.fixed_basis(p, d, e)
        trs = set(fb.triples)
        for k in range(d + 1):
            for i in range(1, p + 1):
                for j in range(1, p + 1):
                    mono = symmetry.basis_monomial(p, d, (i, j, k))
                    fixed = symmetry.sigma_action(e, mono) == mono
                    ok = ok and (fixed == ((i, j, k) in trs))
    led.add("sigma fixes exactly the basis monomials", ok)
    L = _standard_symmetric_instance(p)
    res = symmetry.conjugator(L)
    ok = res.status == "symmetric" and res.e == symmetry.canonicalize(omega(p))
    if ok:
        ok = symmetry.tau(L) == symmetry.adjoint_action(res.g, L)
        gp = symmetry._mat_pow(res.g, p)
        ok = ok and symmetry._scalar_of(gp, p) is not None
    led.add("conjugator recovers the twist on the standard instance", ok)
    g = symmetry.random_rational_matrix(p, L.q, rng)
    led.add(
        "generic matrix has no twist conjugator",
        symmetry.conjugator(g).status == "not-symmetric",
    )
    ok = symmetry.classify_torsion(symmetry.delta_matrix(p, omega(p)), p) == symmetry.canonicalize(omega(p))
    ok = ok and symmetry.classify_torsion(symmetry.dk_star_generator(p, 1), p) == symmetry.canonicalize(omega(p))
    ident = [[_F(1) if a == b else _F(0) for b in range(p)] for a in range(p)]
    ok = ok and symmetry.classify_torsion(ident, p) == symmetry.zero_vector(p)
    led.add("torsion classification of diagonal/permutation representatives", ok)
    ok = True
    for e in (omega(p),):
        L2 = symmetry.random_fixed_matrix(p, p, e, rng)
        h = symmetry.random_centralizer_element(e, rng)
        moved = symmetry.adjoint_action(h, L2)
        kern_ok = True
        try:
            res2 = symmetry.conjugator(moved)
            kern_ok = res2.status == "symmetric"
        except symmetry.AmbiguousStabilizerError:
            kern_ok = None
        delta = symmetry.delta_matrix(p, e)
        comm_ok = symmetry.commutes_projectively(h, delta, p)
        ok = ok and comm_ok and (kern_ok is not False)
    led.add("centralizer elements preserve the fixed locus and commute with the twist class", ok)
    return _report("symmetry", {"p": p, "d": d}, seed, led, t0)


def _standard_symmetric_instance(p: int) -> PolyMat:
    """A fixed-locus point with irreducible characteristic polynomial:
    x^k on the cyclic pattern plus an x^p top term on the diagonal."""
    if p == 2:
        return PolyMat(2, 2, [[[0, 0, 0], [0, 1, 0]], [[0, 1, 0], [0, 0, 1]]])
    q = p
    m = PolyMat.zero(p, q)
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            if i == j:
                continue
            k = (i - j) % p
            m.entries[i - 1][j - 1][k] = _F(1)
    m.entries[0][0][p] = _F(1)
    return m


# -- poisson ---------------------------------------------------------------------


def suite_poisson(p: int = 2, q: int = 2, seed: int = 0, samples: int = 200, **_) -> dict:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    led = _Ledger()

    def rand_var():
        return CoordPoly.var((rng.randint(1, p), rng.randint(1, p), rng.randint(0, q)))

    for mu in range(q + 2):
        spec = poisson.BracketSpec.single(q, mu)
        ok = True
        bad = None
        for _ in range(samples):
            F, G, H = rand_var(), rand_var(), rand_var()
            if not poisson.bracket(F, G, p, q, spec) == -poisson.bracket(G, F, p, q, spec):
                ok, bad = False, (repr(F), repr(G))
                break
            if not poisson.jacobiator(F, G, H, p, q, spec).is_zero():
                ok, bad = False, (repr(F), repr(G), repr(H))
                break
        led.add(f"antisymmetry+Jacobi mu={mu} ({samples} triples)", ok, repro=bad)
    ca, cb = _F(rng.randint(1, 9)), _F(rng.randint(1, 9))
    phi = [_F(0)] * (q + 2)
    phi[rng.randrange(q + 2)] = ca
    phi[rng.randrange(q + 2)] = cb
    spec = poisson.BracketSpec(q=q, phi=tuple(phi))
    ok = all(
        poisson.jacobiator(rand_var(), rand_var(), rand_var(), p, q, spec).is_zero()
        for _ in range(max(20, samples // 4))
    )
    led.add("pencil compatibility (random linear combination is Poisson)", ok)
    for mu in range(q + 2):
        led.add(f"generating identity mu={mu}", poisson.generating_identity_check(p, q, mu))
        led.add(f"auxiliary polynomial identity s={mu}", poisson.generating_lemma_check(q, mu))
    led.add(
        f"zeta partial fractions l=1..{p}",
        all(poisson.zeta_partial_fraction_check(p, l) for l in range(1, p + 1)),
    )
    for e_name, e in (("0", symmetry.zero_vector(p)), ("omega", omega(p))):
        ok = all(
            poisson.is_poisson_automorphism(e, mu, p, q) == (mu % p == 1)
            for mu in range(q + 2)
        )
        led.add(f"twist is Poisson automorphism iff mu=1 mod p (e={e_name})", ok)
    if p == 2 and q == 2:
        spec1 = poisson.BracketSpec.single(q, 1)
        ok = True
        for j in range(0, 2 * q + 1):
            H = poisson.symbolic_hamiltonian(p, q, 1, j)
            ok = ok and (poisson.is_casimir(H, p, q, spec1) == (j in poisson.predicted_casimir_js(1, q, 1)))
        led.add("Casimir index ranges (i=1, mu=1)", ok)
    n_inv = 0
    ok = True
    for i in range(p):
        for j in range((i + 1) * q + 1):
            for k in range(p):
                for l in range((k + 1) * q + 1):
                    if (i, j) >= (k, l):
                        continue
                    n_inv += 1
                    Hi = poisson.symbolic_hamiltonian(p, q, i, j)
                    Hk = poisson.symbolic_hamiltonian(p, q, k, l)
                    for mu in range(q + 2):
                        sp = poisson.BracketSpec.single(q, mu)
                        if not poisson.bracket(Hi, Hk, p, q, sp).is_zero():
                            ok = False
    led.add(f"involutivity of all Hamiltonian pairs ({n_inv} pairs, all mu)", ok)
    return _report("poisson", {"p": p, "q": q, "samples": samples}, seed, led, t0)


# -- flows ------------------------------------------------------------------------


def suite_flows(p: int = 2, q: int = 2, seed: int = 0, **_) -> dict:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    led = _Ledger()
    ok = True
    for _ in range(5):
        L = symmetry.random_rational_matrix(p, q, rng)
        for mu in range(q + 2):
            ok = ok and flows.vf_consistency_check(L, 1, 1, mu)
    led.add("hamiltonian_vf = lax_rhs at random points (all mu)", ok)
    d = flows.symbolic_char_coeff_derivatives(p, q, 1, 1)
    led.add("isospectrality: d/dt char coefficients vanish symbolically", all(v.is_zero() for v in d.values()))
    e = omega(p)
    B = symmetry.random_fixed_matrix(p, p * max(1, q // p), e, rng)
    rhs = flows.reduced_lax_rhs(B, e, 1, p)
    led.add("reduced Lax RHS stays in the fixed locus (exact)", symmetry.is_fixed(rhs, e))
    L0 = _standard_symmetric_instance(2) if p == 2 else symmetry.random_fixed_matrix(p, p, e, rng)
    cfg = flows.FlowConfig(i=1, j=1, t_end=0.5, h=1e-2)
    try:
        _, rep = flows.integrate(L0, cfg)
        led.add(
            "RK4 invariant drift within tolerance",
            rep.max_drift <= 1e-8,
            mode="float",
            tolerance=1e-8,
            detail=f"max drift {rep.max_drift:.3e} over {rep.steps} steps",
        )
    except flows.FlowInstabilityError as ex:
        led.add("RK4 invariant drift within tolerance", False, mode="float", tolerance=1e-8, detail=str(ex))
    cfg_t = flows.FlowConfig(i=1, j=p, t_end=0.5, h=1e-2, e=e)
    B0 = symmetry.random_fixed_matrix(p, p, e, rng)
    _, rep_t = flows.integrate(B0, cfg_t)
    led.add(
        "fixed-locus tangency along the reduced flow",
        rep_t.fixed_locus_deviation <= 1e-8,
        mode="float",
        tolerance=1e-8,
        detail=f"max non-admissible coordinate {rep_t.fixed_locus_deviation:.3e}",
    )
    return _report("flows", {"p": p, "q": q}, seed, led, t0)


# -- reduction -----------------------------------------------------------------------


def suite_reduction(p: int = 2, d_prime: int = 1, seed: int = 0, e=None, **_) -> dict:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    led = _Ledger()
    d = p * d_prime
    e = tuple(e) if e is not None else omega(p)
    phi = reduction.PhiSpec.default(d_prime)
    led.add("comomentum is a Lie algebra homomorphism", reduction.lie_homo_check(e, phi, p, d, rng, samples=10))
    led.add("top-coefficient bracket identity (symbolic)", reduction.b_bracket_identity_check(e, phi, p, d))
    ok = all(
        reduction.infinitesimal_action_check(e, phi, reduction.random_extended_point(p, d, e, rng))
        for _ in range(5)
    )
    led.add("infinitesimal action matches the bracket route", ok)
    ok = True
    for i in range(0, p):
        for m in range(0, i * d_prime + 2):
            got = reduction.casimir_certificate(e, d_prime, i, m, rng, samples=3)
            ok = ok and got == reduction.casimir_expected(d_prime, i, m)
    led.add("Casimir certificates over the full index ranges", ok)
    led.add(
        "reduced flows tangent to the embedded image",
        all(reduction.image_tangency_check(e, d_prime, 1, m, rng, samples=3) for m in range(0, d_prime + 2)),
    )
    led.add(
        "quotient Hamiltonians are centralizer-invariant",
        reduction.g_invariance_check(e, 1, p, rng, samples=4, d=d),
    )
    B = reduction.random_extended_point(p, d, e, rng)
    vals = poisson.point_values(B)
    total = CoordPoly.zero()
    for i in range(1, p + 1):
        total = total + reduction.comoment(e, (i, i), phi, p, d)
    led.add("trace comomentum vanishes on the enlarged space", total.evaluate(vals) == 0)
    return _report(
        "reduction", {"p": p, "d_prime": d_prime, "e": list(e)}, seed, led, t0
    )


# -- spectral -------------------------------------------------------------------------


def irreducibility_corpus():
    """10 exactly-understood curves: >=3 reducible, >=5 irreducible,
    >=2 certified by the exact criteria."""
    F = _F
    return [
        ("y2-x2 (split)", BivarPoly({(0, 2): F(1), (2, 0): F(-1)}), "Reducible"),
        (
            "(y-x)(y2-x-1)",
            BivarPoly({(0, 3): F(1), (1, 2): F(-1), (1, 1): F(-1), (0, 1): F(-1), (2, 0): F(1), (1, 0): F(1)}),
            "Reducible",
        ),
        ("y2-x4 (split)", BivarPoly({(0, 2): F(1), (4, 0): F(-1)}), "Reducible"),
        (
            "(y-1)(y2-x2)",
            BivarPoly({(0, 3): F(1), (0, 2): F(-1), (2, 1): F(-1), (2, 0): F(1)}),
            "Reducible",
        ),
        ("y2-x2y-x2", BivarPoly({(0, 2): F(1), (2, 1): F(-1), (2, 0): F(-1)}), "Irreducible"),
        ("y2-x2-x-1", BivarPoly({(0, 2): F(1), (2, 0): F(-1), (1, 0): F(-1), (0, 0): F(-1)}), "Irreducible"),
        ("y3-x2-x-2", BivarPoly({(0, 3): F(1), (2, 0): F(-1), (1, 0): F(-1), (0, 0): F(-2)}), "Irreducible"),
        ("y2-xy-x (x-linear)", BivarPoly({(0, 2): F(1), (1, 1): F(-1), (1, 0): F(-1)}), "Irreducible"),
        ("y3-xy-1", BivarPoly({(0, 3): F(1), (1, 1): F(-1), (0, 0): F(-1)}), "Irreducible"),
        ("y2-x3", BivarPoly({(0, 2): F(1), (3, 0): F(-1)}), "Irreducible"),
    ]


def suite_spectral(p: int = 2, d_prime: int = 2, seed: int = 0, **_) -> dict:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    led = _Ledger()
    ok = all(
        spectral.rh_consistency(pp, dp) for pp in (2, 3, 5, 7) for dp in (1, 2, 3, 4)
    )
    led.add("genus satisfies Riemann-Hurwitz (p in {2,3,5,7}, d' <= 4)", ok)
    e = omega(p)
    ok = True
    for _ in range(20):
        L = symmetry.random_fixed_matrix(p, p * d_prime, e, rng)
        ac = spectral.alpha_and_chi(L, e)
        ok = ok and ac.diagram_commutes and spectral.v_membership(ac.Q, p, d_prime)
    led.add("trace/char-poly diagram commutes on random fixed points", ok)
    ranks_ok = True
    expect = spectral.expected_hamiltonian_rank(p, d_prime)
    for _ in range(10):
        # wide coefficient lattice: degeneracy loci have codimension >= 1
        L = symmetry.random_fixed_matrix(p, p * d_prime, e, rng, num_range=99, den_range=7)
        ranks_ok = ranks_ok and spectral.hamiltonian_rank(e, p, d_prime, L) == expect
    led.add(f"Hamiltonian Jacobian rank = {expect} at random generic points", ranks_ok)
    agree = True
    details = []
    for name, P, truth in irreducibility_corpus():
        cert = spectral.irreducible_cert(P)
        got = "Reducible" if cert.verdict == "Reducible" else (
            "Irreducible" if cert.verdict.startswith("Irreducible") else "Unknown"
        )
        if got != truth:
            agree = False
            details.append(f"{name}: expected {truth}, got {cert.verdict}")
        try:
            mono = spectral.monodromy(P)
            mono_verdict = "Irreducible" if mono.transitive else "Reducible"
            if mono_verdict != truth:
                agree = False
                details.append(f"{name}: monodromy says {mono_verdict}")
        except spectral.NonSquarefreeCurveError:
            agree = False
            details.append(f"{name}: unexpectedly non-squarefree")
    led.add(
        "irreducibility corpus: monodromy agrees with exact verdicts",
        agree,
        mode="float+exact",
        tolerance=1e-8,
        detail="; ".join(details) if details else "10-curve corpus",
    )
    return _report("spectral", {"p": p, "d_prime": d_prime}, seed, led, t0)
