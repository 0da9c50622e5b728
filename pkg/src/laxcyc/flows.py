"""Lax-equation right-hand sides, fixed-step RK4 integration of the flows,
and isospectrality / fixed-locus tangency monitoring."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import poisson
from .polymat import PolyMat, all_char_coeffs, hamiltonian, is_float_scalar
from .symmetry import fixed_basis, is_fixed

_F0 = Fraction(0)


class FlowInstabilityError(RuntimeError):
    pass


def lax_rhs(L: PolyMat, i: int, j: int) -> PolyMat:
    """[L(x), (L^i(x)/x^j)_+]. The result has degree <= q by the Hamiltonian
    structure; this is asserted, not assumed."""
    if i < 0:
        raise ValueError("need i >= 0")
    if j < 0 or j > (i + 1) * L.q:
        raise ValueError(f"flow index j must lie in [0, {(i + 1) * L.q}]")
    Li = L.pow(i)
    trunc = Li.truncate_div(j)
    comm = L.matmul(trunc) - trunc.matmul(L)
    tol = 0.0
    if L.is_float():
        tol = 1e-9 * max(1.0, L.max_abs()) ** (i + 1)
    return comm.rebound(L.q, tol=tol)  # DegreeOverflowError here means a bug


def reduced_lax_rhs(B: PolyMat, e, i: int, pm: int) -> PolyMat:
    """The reduced flow d/dt_{i,pm} B = [B, (B^i/x^{pm})_+] on the fixed
    locus; the flow index must be a multiple of p and the result is checked
    to stay in M^{Delta_e} (exactly in exact mode)."""
    p = B.p
    if pm % p != 0:
        raise ValueError("reduced flow index must be a multiple of p")
    if not is_fixed(B, e, tol=1e-9 if B.is_float() else 0.0):
        raise ValueError("B is not fixed under sigma_{Delta_e}")
    rhs = lax_rhs(B, i, pm)
    if not B.is_float():
        assert is_fixed(rhs, e), "reduced Lax flow left the fixed locus"
    return rhs


def vf_consistency_check(L: PolyMat, i: int, j: int, mu: int) -> bool:
    """hamiltonian_vf(L, i, j, mu) agrees exactly with lax_rhs(L, i, j)."""
    return poisson.hamiltonian_vf(L, i, j, mu) == lax_rhs(L, i, j)


def reduced_vf_consistency_check(B: PolyMat, e, i: int, m: int, n: int = 0) -> bool:
    """-{., H_{i, p(m+n)}}^red_{1+pn} agrees with the reduced Lax flow
    d/dt_{i,pm} at B."""
    p = B.p
    spec = poisson.BracketSpec.from_phi_tilde(B.q, p, [0] * n + [1])
    vf = poisson.reduced_hamiltonian_vf(B, e, i, p * (m + n), spec)
    return vf == reduced_lax_rhs(B, e, i, p * m)


# -- numerical integration -----------------------------------------------------


@dataclass
class FlowConfig:
    i: int
    j: int
    t_end: float
    h: float
    e: tuple | None = None  # enables fixed-locus tangency monitoring
    sample_every: int = 1
    hard_cap: float = 1e-2

    def __post_init__(self):
        if self.h <= 0 or self.t_end < 0:
            raise ValueError("need h > 0 and t_end >= 0")


@dataclass
class InvariantReport:
    drifts: dict  # label -> max relative drift over the trajectory
    fixed_locus_deviation: float | None
    steps: int
    wall_time_s: float

    @property
    def max_drift(self) -> float:
        return max(self.drifts.values(), default=0.0)

    def to_json(self) -> dict:
        out = {
            "drifts": {k: v for k, v in sorted(self.drifts.items())},
            "max_drift": self.max_drift,
            "steps": self.steps,
            "drift_definition": "max_t |v(t)-v(0)| / max(1, |v(0)|)",
        }
        if self.fixed_locus_deviation is not None:
            out["fixed_locus_deviation"] = self.fixed_locus_deviation
        out["wall_time_s"] = self.wall_time_s
        return out


@dataclass
class Trajectory:
    times: list = field(default_factory=list)
    rows: list = field(default_factory=list)  # invariant values per sample
    labels: list = field(default_factory=list)

    def csv(self) -> str:
        head = ",".join(["t"] + self.labels)
        lines = [head]
        for t, row in zip(self.times, self.rows):
            lines.append(",".join([f"{t:.10g}"] + [f"{v:.16e}" for v in row]))
        return "\n".join(lines) + "\n"


def _np_from_polymat(L: PolyMat) -> np.ndarray:
    Lf = L.to_float()
    p, q = L.p, L.q
    arr = np.zeros((q + 1, p, p), dtype=complex)
    for i in range(p):
        for j in range(p):
            for k in range(q + 1):
                arr[k, i, j] = Lf.entries[i][j][k]
    return arr


def _polymat_from_np(arr: np.ndarray) -> PolyMat:
    qp1, p, _ = arr.shape
    return PolyMat(
        p, qp1 - 1, [[[arr[k, i, j] for k in range(qp1)] for j in range(p)] for i in range(p)]
    )


def _np_polymul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    qa, p, _ = A.shape
    qb = B.shape[0]
    out = np.zeros((qa + qb - 1, p, p), dtype=complex)
    for a in range(qa):
        for b in range(qb):
            out[a + b] += A[a] @ B[b]
    return out


def _np_rhs(arr: np.ndarray, i: int, j: int, q: int) -> np.ndarray:
    Li = arr
    if i == 0:
        return np.zeros_like(arr)
    for _ in range(i - 1):
        Li = _np_polymul(Li, arr)
    trunc = Li[j:] if j < Li.shape[0] else np.zeros((1,) + arr.shape[1:], dtype=complex)
    if trunc.shape[0] == 0:
        trunc = np.zeros((1,) + arr.shape[1:], dtype=complex)
    comm = _np_polymul(arr, trunc) - _np_polymul(trunc, arr)
    out = np.zeros_like(arr)
    upto = min(q + 1, comm.shape[0])
    out[:upto] = comm[:upto]
    # any mass beyond the declared bound signals an indexing bug
    if comm.shape[0] > q + 1:
        tail = np.max(np.abs(comm[q + 1 :]))
        scale = max(1.0, float(np.max(np.abs(arr)))) ** (i + 1)
        if tail > 1e-9 * scale:
            raise FlowInstabilityError(
                f"Lax RHS overflowed the degree bound by {tail:.3e}"
            )
    return out


def _invariant_values(arr: np.ndarray):
    """Char-poly coefficients and Hamiltonians of the current state."""
    L = _polymat_from_np(arr)
    p, q = L.p, L.q
    vals = {}
    cc = all_char_coeffs(L)
    for i in range(1, p + 1):
        for xd in range(i * q + 1):
            vals[f"s{i}[x^{xd}]"] = complex(cc.get((i, xd), 0.0))
    for i in range(p):
        for j in range((i + 1) * q + 1):
            vals[f"H[{i},{j}]"] = complex(hamiltonian(L, i, j))
    return vals


def _nonadmissible_mass(arr: np.ndarray, e) -> float:
    qp1, p, _ = arr.shape
    adm = {
        (i, j, k)
        for (i, j, k) in fixed_basis(p, qp1 - 1, e).triples
    }
    worst = 0.0
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            for k in range(qp1):
                if (i, j, k) not in adm:
                    worst = max(worst, abs(arr[k, i - 1, j - 1]))
    return worst


def integrate(L0: PolyMat, cfg: FlowConfig):
    """Classical fixed-step RK4 on the coefficient vector of L; returns
    (Trajectory, InvariantReport). Aborts if any monitored drift exceeds
    cfg.hard_cap."""
    t_start = time.perf_counter()
    q = L0.q
    arr = _np_from_polymat(L0)
    n_steps = int(round(cfg.t_end / cfg.h))
    base = _invariant_values(arr)
    labels = sorted(base)
    traj = Trajectory(labels=labels)
    drifts = {k: 0.0 for k in labels}
    tangency = 0.0 if cfg.e is not None else None

    def record(t, vals):
        traj.times.append(t)
        traj.rows.append([vals[k].real for k in labels])

    record(0.0, base)

    def f(a):
        return _np_rhs(a, cfg.i, cfg.j, q)

    t = 0.0
    for step in range(1, n_steps + 1):
        h = cfg.h
        k1 = f(arr)
        k2 = f(arr + 0.5 * h * k1)
        k3 = f(arr + 0.5 * h * k2)
        k4 = f(arr + h * k3)
        arr = arr + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        t = step * h
        if step % cfg.sample_every == 0 or step == n_steps:
            vals = _invariant_values(arr)
            record(t, vals)
            for k in labels:
                ref = max(1.0, abs(base[k]))
                drifts[k] = max(drifts[k], abs(vals[k] - base[k]) / ref)
            if cfg.e is not None:
                tangency = max(tangency, _nonadmissible_mass(arr, cfg.e))
            worst = max(drifts.values())
            if worst > cfg.hard_cap:
                raise FlowInstabilityError(
                    f"invariant drift {worst:.3e} exceeded hard cap "
                    f"{cfg.hard_cap:.1e} at t={t:.6f} (step {step}); "
                    "reduce the step size"
                )
    report = InvariantReport(
        drifts=drifts,
        fixed_locus_deviation=tangency,
        steps=n_steps,
        wall_time_s=time.perf_counter() - t_start,
    )
    return traj, report


def symbolic_char_coeff_derivatives(p: int, q: int, i: int, j: int):
    """d/dt of every char-poly coefficient along the Lax field, computed by
    the chain rule on symbolic coordinates. All must vanish identically."""
    L = poisson.symbolic_L(p, q)
    rhs = L.matmul(L.pow(i).truncate_div(j)) - L.pow(i).truncate_div(j).matmul(L)
    cp = poisson.char_poly(L)
    out = {}
    for (xd, yd), coeff in cp.terms.items():
        if yd == p:
            continue
        acc = None
        for var in coeff.variables():
            a, b, k = var
            comp = rhs.entries[a - 1][b - 1][k] if k <= rhs.q else None
            if comp is None or (isinstance(comp, Fraction) and comp == 0):
                continue
            term = coeff.partial(var) * comp
            acc = term if acc is None else acc + term
        from .coordpoly import CoordPoly

        out[(xd, yd)] = acc if acc is not None else CoordPoly.zero()
    return out
