"""HTTP face of the verifier: the same verify/sweep/classify operations
the command-line tool runs locally, behind a small JSON API.

Run it with ``uvicorn twogen.service:app``.  Verdicts are data, not
errors: a certificate whose bound fails to close still comes back with
status 200 and ``"verdict": "inconclusive"``.  Only malformed input
(unknown family, composite field size, unparseable group name) maps to
HTTP 400.
"""

from __future__ import annotations

from datetime import datetime, timezone

from fastapi import FastAPI, HTTPException, Query
from pydantic import BaseModel, Field

from .catalog import catalog_checksum
from .handlers import (
    InputError,
    SweepJob,
    handle_classify,
    handle_sweep,
    handle_verify,
    parse_span,
)

app = FastAPI(
    title="twogen",
    description="exact certification that classical simple groups are "
    "generated by an involution and an element of prime order",
)


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


class VerifyRequest(BaseModel):
    family: str = Field(description="psl, psu, psp, omega+, omega-, or omega-odd")
    n: int = Field(description="dimension of the natural module")
    q: int = Field(description="field size (prime power)")
    small_n: bool = Field(default=False, description="use the sharpened low-dimension route")
    psp4_route: bool = Field(default=False, description="use the order-five route (psp, n = 4)")


class SweepRequest(BaseModel):
    family: str = Field(description="psl, psu, psp, omega+, omega-, or omega-odd")
    n: str = Field(description="dimension span: N, A..B, or comma-separated mix")
    q: str = Field(description="field-size span: N, A..B, or comma-separated mix")
    use_small_n: bool = Field(
        default=True, description="route known hard points through the low-dimension evaluator"
    )
    use_class_size_denominator: bool = Field(
        default=True, description="allow the explicit involution-class denominator retry"
    )
    drop_infeasible_socles: bool = Field(
        default=True,
        description="drop the almost-simple block when no socle admits the verification prime",
    )


class HealthResponse(BaseModel):
    status: str
    catalog_checksum: str


@app.get(path="/healthz", response_model=HealthResponse)
def healthz() -> HealthResponse:
    return HealthResponse(status="ok", catalog_checksum=catalog_checksum())


@app.post(path="/verify")
def verify(request: VerifyRequest) -> dict:
    try:
        _, certificate = handle_verify(
            request.family,
            request.n,
            request.q,
            small_n=request.small_n,
            psp4_route=request.psp4_route,
            generated_at=_utc_now(),
        )
    except InputError as error:
        raise HTTPException(status_code=400, detail=str(error)) from None
    return certificate.payload


@app.post(path="/sweep")
def sweep(request: SweepRequest) -> dict:
    try:
        job = SweepJob.make(
            request.family,
            parse_span(request.n),
            parse_span(request.q),
            emit="json",
            use_small_n=request.use_small_n,
            use_class_size_denominator=request.use_class_size_denominator,
            drop_infeasible_socles=request.drop_infeasible_socles,
        )
        _, payload = handle_sweep(job, generated_at=_utc_now())
    except InputError as error:
        raise HTTPException(status_code=400, detail=str(error)) from None
    return payload


@app.get(path="/classify")
def classify(name: str = Query(description="simple-group name, e.g. PSL3(4) or M11")) -> dict:
    try:
        _, payload = handle_classify(name)
    except InputError as error:
        raise HTTPException(status_code=400, detail=str(error)) from None
    return payload
