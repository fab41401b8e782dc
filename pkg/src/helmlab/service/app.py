"""FastAPI application wrapping the scattering laboratory.

Usage errors (malformed curve/region/candidate grammar, arguments outside
mathematical domains) map to 422; numerical failures (resolution limits,
singular solves, non-convergence) map to 500 with a structured body.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import (
    CurveSpecError,
    DomainError,
    HelmlabError,
    RegionSpecError,
    TruncationError,
)
from . import handlers, schemas

_USAGE_ERRORS = (CurveSpecError, RegionSpecError, DomainError, TruncationError)


def create_app() -> FastAPI:
    app = FastAPI(
        title="helmlab",
        description="Sound-soft obstacle scattering: far fields, uniqueness "
                    "thresholds, supersolution verification, separation sweeps.",
        version="0.1.0",
    )

    @app.exception_handler(HelmlabError)
    async def _helmlab_error(_: Request, exc: HelmlabError) -> JSONResponse:
        status = 422 if isinstance(exc, _USAGE_ERRORS) else 500
        body = schemas.ErrorResponse(error=type(exc).__name__, message=str(exc))
        return JSONResponse(status_code=status, content=body.model_dump())

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/threshold", response_model=schemas.ThresholdResponse)
    def threshold(req: schemas.ThresholdRequest) -> schemas.ThresholdResponse:
        return handlers.threshold(req)

    @app.post("/eig", response_model=schemas.EigResponse)
    def eig(req: schemas.EigRequest) -> schemas.EigResponse:
        return handlers.eig(req)

    @app.post("/verify", response_model=schemas.VerifyResponse,
              response_model_by_alias=True)
    def verify(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
        return handlers.verify(req)

    @app.post("/forward", response_model=schemas.ForwardResponse)
    def forward(req: schemas.ForwardRequest) -> schemas.ForwardResponse:
        return handlers.forward_solve(req)

    @app.post("/sweep", response_model=schemas.SweepResponse)
    def sweep(req: schemas.SweepRequest) -> schemas.SweepResponse:
        return handlers.sweep(req)

    @app.post("/selftest", response_model=schemas.SelfTestResponse)
    def selftest() -> schemas.SelfTestResponse:
        return handlers.selftest()

    return app


app = create_app()
