"""HTTP service wrapping the core library: classification, fixed-basis and
bracket queries, verification suites, flow integration, and spectral-curve
certificates. The CLI is a thin client of this app."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import flows, poisson, reduction, spectral, suites, symmetry
from .polymat import BivarPoly, PolyMat, char_poly
from .cyclotomic import rational_to_json
from .symmetry import AmbiguousStabilizerError, NotPrimeError, TorsionError

__version__ = suites.__version__

app = FastAPI(
    title="laxcyc",
    version=__version__,
    description=(
        "Cyclic-symmetric polynomial-matrix integrable systems: exact "
        "Poisson/Lax verification and spectral-curve certificates."
    ),
)


def _bad_request(ex: Exception):
    raise HTTPException(status_code=422, detail=str(ex))


def _parse_e(p: int, e) -> tuple:
    if e is None or e == "omega":
        return symmetry.omega(p)
    if e == "zero":
        return symmetry.zero_vector(p)
    return tuple(int(v) % p for v in e)


# -- models ---------------------------------------------------------------------


class HealthResponse(BaseModel):
    status: str
    version: str


class EnumerateERequest(BaseModel):
    p: int = Field(ge=2, description="prime size of the matrices")


class EnumerateEResponse(BaseModel):
    p: int
    count: int
    formula_count: int
    classes: list[list[int]]


class CanonicalizeRequest(BaseModel):
    p: int = Field(ge=2)
    e: list[int]


class CanonicalizeWire(BaseModel):
    e: list[int]


class FixedBasisRequest(BaseModel):
    p: int = Field(ge=2)
    d: int = Field(ge=0)
    e: Any = Field(default="omega", description='"omega", "zero", or a residue list')


class FixedBasisResponse(BaseModel):
    p: int
    d: int
    e: list[int]
    dim: int
    basis: list[tuple[int, int, int]]


class ClassifyRequest(BaseModel):
    p: int = Field(ge=2)
    matrix: list[list[Any]] = Field(description="p x p scalars: 'num/den', cyclotomic string arrays, numbers, or [re, im]")


class ClassifyResponse(BaseModel):
    e: list[int]


class ConjugatorRequest(BaseModel):
    matrix: dict = Field(description="polynomial matrix JSON (see docs/schemas/polymat.json)")


class ConjugatorResponse(BaseModel):
    status: str
    e: Optional[list[int]] = None
    g: Optional[list[list[list[str]]]] = None  # cyclotomic arrays


class BracketTableRequest(BaseModel):
    p: int = Field(ge=2)
    q: int = Field(ge=0)
    mu: int = Field(ge=0)


class BracketTableResponse(BaseModel):
    csv: str
    rows: int


class VerifyRequest(BaseModel):
    suite: str
    seed: int = 0
    params: dict = Field(default_factory=dict)


class FlowRequest(BaseModel):
    matrix: dict
    i: int = Field(ge=0)
    j: int = Field(ge=0)
    t_end: float = 1.0
    step: float = 1e-3
    e: Optional[list[int]] = None
    sample_every: int = 1


class FlowResponse(BaseModel):
    csv: str
    report: dict


class SpectralRequest(BaseModel):
    matrix: Optional[dict] = None
    curve: Optional[dict] = None
    e: Optional[Any] = None
    d_prime: Optional[int] = None


# -- endpoints -------------------------------------------------------------------


@app.get("/api/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/api/enumerate-e", response_model=EnumerateEResponse)
def enumerate_e(req: EnumerateERequest) -> EnumerateEResponse:
    try:
        classes = symmetry.enumerate_E(req.p)
    except NotPrimeError as ex:
        _bad_request(ex)
    return EnumerateEResponse(
        p=req.p,
        count=len(classes),
        formula_count=symmetry.expected_E_count(req.p),
        classes=[list(e) for e in classes],
    )


@app.post("/api/canonicalize", response_model=CanonicalizeWire)
def canonicalize(req: CanonicalizeRequest) -> CanonicalizeWire:
    if len(req.e) != req.p:
        _bad_request(ValueError("e must have length p"))
    return CanonicalizeWire(e=list(symmetry.canonicalize(tuple(v % req.p for v in req.e))))


@app.post("/api/fixed-basis", response_model=FixedBasisResponse)
def fixed_basis_ep(req: FixedBasisRequest) -> FixedBasisResponse:
    try:
        e = _parse_e(req.p, req.e)
        fb = symmetry.fixed_basis(req.p, req.d, e)
    except (ValueError, TypeError) as ex:
        _bad_request(ex)
    return FixedBasisResponse(
        p=req.p, d=req.d, e=list(fb.e), dim=fb.dim, basis=[tuple(t) for t in fb.triples]
    )


def _parse_scalar_grid(p: int, grid):
    fake = {"p": p, "q": 0, "zeta_order": p, "entries": [[[c] for c in row] for row in grid]}
    M = PolyMat.from_json(fake)
    return [[M.entries[i][j][0] for j in range(p)] for i in range(p)]


@app.post("/api/classify-torsion", response_model=ClassifyResponse)
def classify_torsion_ep(req: ClassifyRequest) -> ClassifyResponse:
    try:
        delta = _parse_scalar_grid(req.p, req.matrix)
        e = symmetry.classify_torsion(delta, req.p)
    except (TorsionError, NotPrimeError, ValueError) as ex:
        _bad_request(ex)
    return ClassifyResponse(e=list(e))


@app.post("/api/conjugator", response_model=ConjugatorResponse)
def conjugator_ep(req: ConjugatorRequest) -> ConjugatorResponse:
    try:
        L = PolyMat.from_json(req.matrix)
    except (ValueError, KeyError, TypeError) as ex:
        _bad_request(ex)
    try:
        res = symmetry.conjugator(L)
    except AmbiguousStabilizerError as ex:
        raise HTTPException(status_code=409, detail=f"AmbiguousStabilizer: {ex}")
    if res.status != "symmetric":
        return ConjugatorResponse(status=res.status)
    from .cyclotomic import Cyclotomic

    def ser(v):
        if isinstance(v, Cyclotomic):
            return v.to_json()
        return Cyclotomic.from_rational(L.p, Fraction(v)).to_json()

    return ConjugatorResponse(
        status=res.status,
        e=list(res.e),
        g=[[ser(v) for v in row] for row in res.g],
    )


@app.post("/api/bracket-table", response_model=BracketTableResponse)
def bracket_table(req: BracketTableRequest) -> BracketTableResponse:
    if req.mu > req.q + 1:
        _bad_request(ValueError("mu must be <= q+1"))
    rows = poisson.bracket_table_rows(req.p, req.q, req.mu)
    lines = ["i,j,k,m,n,l,mu,result"]
    lines.extend(",".join(str(v) for v in r[:7]) + "," + '"' + r[7] + '"' for r in rows)
    return BracketTableResponse(csv="\n".join(lines) + "\n", rows=len(rows))


@app.post("/api/verify")
def verify(req: VerifyRequest) -> dict:
    try:
        report = suites.run_suite(req.suite, seed=req.seed, **req.params)
    except (ValueError, TypeError) as ex:
        _bad_request(ex)
    return report


@app.post("/api/flow", response_model=FlowResponse)
def flow(req: FlowRequest) -> FlowResponse:
    try:
        L = PolyMat.from_json(req.matrix)
        cfg = flows.FlowConfig(
            i=req.i,
            j=req.j,
            t_end=req.t_end,
            h=req.step,
            e=tuple(req.e) if req.e is not None else None,
            sample_every=req.sample_every,
        )
    except (ValueError, KeyError, TypeError) as ex:
        _bad_request(ex)
    try:
        traj, rep = flows.integrate(L, cfg)
    except flows.FlowInstabilityError as ex:
        raise HTTPException(status_code=409, detail=str(ex))
    return FlowResponse(csv=traj.csv(), report=rep.to_json())


def _curve_from_json(data: dict) -> tuple[BivarPoly, int, int]:
    p = int(data["p"])
    d_prime = int(data["d_prime"])
    Q = BivarPoly.from_json(data["terms"], zeta_order=p)
    return Q, p, d_prime


@app.post("/api/spectral")
def spectral_ep(req: SpectralRequest) -> dict:
    try:
        if (req.matrix is None) == (req.curve is None):
            raise ValueError("provide exactly one of matrix / curve")
        if req.matrix is not None:
            L = PolyMat.from_json(req.matrix)
            p = L.p
            P = char_poly(L)
            Q = spectral.quotient_Q(P, p)
            if Q is None:
                return {
                    "input": "matrix",
                    "quotient": "NotInvariant",
                    "char_poly": P.to_json(),
                }
            d_prime = req.d_prime if req.d_prime is not None else max(1, -(-L.q // p))
            extra = {}
            if req.e is not None:
                e = _parse_e(p, req.e)
                ac = spectral.alpha_and_chi(L, e)
                extra = {"diagram_commutes": ac.diagram_commutes}
            out = _curve_report(Q, p, d_prime)
            out.update({"input": "matrix", "char_poly": P.to_json(), **extra})
            return out
        Q, p, d_prime = _curve_from_json(req.curve)
        out = _curve_report(Q, p, d_prime)
        out["input"] = "curve"
        return out
    except (ValueError, KeyError, TypeError) as ex:
        _bad_request(ex)


def _curve_report(Q: BivarPoly, p: int, d_prime: int) -> dict:
    flags = spectral.spl_cert(Q, p, d_prime)
    cert = spectral.irreducible_cert(Q)
    g_q = spectral.genus(p, d_prime).g
    g_p = spectral.genus(p, p * d_prime).g
    out = {
        "p": p,
        "d_prime": d_prime,
        "curve": Q.to_json(),
        "v_member": flags.in_v,
        "q0_squarefree": flags.q0_squarefree,
        "qinf_squarefree": flags.qinf_squarefree,
        "genus_quotient": g_q,
        "genus_total": g_p,
        "riemann_hurwitz_ok": spectral.rh_consistency(p, d_prime),
        "cert": cert.to_json(),
    }
    try:
        bd = spectral.branch_points(Q, p, d_prime)
        out["branch"] = {
            "disc_roots": [[r.real, r.imag] for r in bd.disc_roots],
            "fiber_size_zero": bd.fiber_size_zero,
            "fiber_size_infinity": bd.fiber_size_infinity,
            "branch_at_zero": bd.branch_at_zero,
            "branch_at_infinity": bd.branch_at_infinity,
            "f_branch_count": bd.f_branch_count,
        }
        out["branch_csv"] = "re,im\n" + "".join(
            f"{r.real:.16e},{r.imag:.16e}\n" for r in bd.disc_roots
        )
    except spectral.NonSquarefreeCurveError as ex:
        out["branch"] = {"error": str(ex)}
    return out
