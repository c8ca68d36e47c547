"""FastAPI application exposing the identification core.

Run with: uvicorn apfid.service.app:app
"""

from __future__ import annotations

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import ApfidError, NoConsistentModelError
from .handlers import handle_identify, handle_simulate, handle_spectrum
from .schemas import (
    HealthResponse,
    IdentifyRequest,
    SimulateRequest,
    SpectrumRequest,
    SpectrumResponse,
)

app = FastAPI(title="apfid", version=__version__)


@app.exception_handler(ApfidError)
async def apfid_error_handler(request: Request, exc: ApfidError) -> JSONResponse:
    detail: dict = {"message": str(exc)}
    status = 400
    if exc.stage:
        detail["stage"] = exc.stage
    if isinstance(exc, NoConsistentModelError):
        status = 422
        detail["residuals"] = {str(g): r for g, r in sorted(exc.residuals.items())}
    line = getattr(exc, "line", None)
    if line is not None:
        detail["line"] = line
    return JSONResponse(status_code=status, content={"detail": detail})


@app.get("/health", response_model=HealthResponse)
async def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/identify")
async def identify(req: IdentifyRequest) -> Response:
    # canonical report bytes straight through, keeping byte determinism
    return Response(content=handle_identify(req), media_type="application/json")


@app.post("/spectrum", response_model=SpectrumResponse)
async def spectrum(req: SpectrumRequest) -> SpectrumResponse:
    s = handle_spectrum(req)
    return SpectrumResponse(
        omegas=[float(w) for w in s.omegas],
        amplitudes=[float(a) for a in s.amplitudes],
        dc=s.dc,
    )


@app.post("/simulate")
async def simulate(req: SimulateRequest) -> Response:
    return Response(content=handle_simulate(req), media_type="text/csv")
