"""FastAPI service exposing the certificate builders.

Error mapping: invalid input -> 400, exhausted search budget -> 422 with a
structured detail, internal consistency or theorem violation -> 500 (never
expected; the detail carries the evidence).
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import certs
from .errors import ConsistencyError, SearchBudgetExceeded
from .lattice import GramMatrix, QuadForm
from .schemas import (
    CheckMain1Request,
    CheckMain1Response,
    CircleCertificate,
    CircleRequest,
    CountRepsRequest,
    CountResponse,
    GramPayload,
    PrimeSearchRequest,
    PrimeSearchResponse,
    SphereCertificate,
    SphereRequest,
    SplitRequest,
    SplitResponse,
)

app = FastAPI(
    title="concyclic",
    version="0.1.0",
    description="Exact circles and spheres through exactly n lattice points",
)


@app.exception_handler(ValueError)
async def _invalid_input(request: Request, exc: ValueError):
    return JSONResponse(
        status_code=400,
        content={"detail": {"kind": "invalid-input", "message": str(exc)}},
    )


@app.exception_handler(SearchBudgetExceeded)
async def _budget(request: Request, exc: SearchBudgetExceeded):
    return JSONResponse(
        status_code=422,
        content={"detail": {"kind": "budget-exceeded", "message": str(exc), "bound": exc.bound}},
    )


@app.exception_handler(ConsistencyError)
async def _internal(request: Request, exc: ConsistencyError):
    return JSONResponse(
        status_code=500,
        content={
            "detail": {
                "kind": "internal-consistency",
                "message": str(exc),
                "witness": repr(exc.witness),
            }
        },
    )


def _gram_from_payload(payload: GramPayload) -> GramMatrix:
    return GramMatrix(tuple(tuple(row) for row in payload.entries))


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/circle", response_model=CircleCertificate)
def circle(req: CircleRequest):
    if req.form is not None:
        return certs.circle_certificate(
            form=QuadForm(*req.form), n_points=req.n_points, prime_bound=req.prime_bound
        )
    return certs.circle_certificate(
        gram=_gram_from_payload(req.gram), n_points=req.n_points, prime_bound=req.prime_bound
    )


@app.post("/sphere", response_model=SphereCertificate)
def sphere(req: SphereRequest):
    return certs.sphere_certificate(
        gram=_gram_from_payload(req.gram), n_points=req.n_points, prime_bound=req.prime_bound
    )


@app.post("/count-reps", response_model=CountResponse)
def count_reps(req: CountRepsRequest):
    return certs.count_reps_payload(req.n, req.p, req.k)


@app.post("/prime-search", response_model=PrimeSearchResponse)
def prime_search(req: PrimeSearchRequest):
    return certs.prime_search_payload(req.n, req.a, req.prime_bound)


@app.post("/split", response_model=SplitResponse)
def split(req: SplitRequest):
    return certs.split_payload(req.dk, req.p)


@app.post("/check-main1", response_model=CheckMain1Response)
def check_main1(req: CheckMain1Request):
    return certs.check_main1_payload(req.n, req.p, req.kmax)
