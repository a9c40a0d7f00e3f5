"""HTTP front end over the same handlers the CLI uses.

Run with ``uvicorn rectbeta.service:app``.  Validation problems return 422;
degenerate parameters and route disagreements return 409.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import api

app = FastAPI(title="rectbeta", version="0.1.0")


@app.exception_handler(api.DomainError)
async def _domain_error(request: Request, exc: api.DomainError) -> JSONResponse:
    return JSONResponse(status_code=409, content={"detail": str(exc)})


@app.exception_handler(ValueError)
async def _value_error(request: Request, exc: ValueError) -> JSONResponse:
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/jack", response_model=api.JackResponse)
def jack(req: api.JackRequest) -> api.JackResponse:
    return api.jack(req)


@app.post("/conv-moment", response_model=api.ValueResponse)
def conv_moment(req: api.ConvMomentRequest) -> api.ValueResponse:
    return api.conv_moment(req)


@app.post("/charpoly", response_model=api.CharpolyResponse)
def charpoly(req: api.CharpolyRequest) -> api.CharpolyResponse:
    return api.charpoly(req)


@app.post("/k2m", response_model=api.SequenceResponse)
def k2m(req: api.K2MRequest) -> api.SequenceResponse:
    return api.k2m(req)


@app.post("/m2k", response_model=api.SequenceResponse)
def m2k(req: api.M2KRequest) -> api.SequenceResponse:
    return api.m2k(req)


@app.post("/convolve", response_model=api.SequenceResponse)
def convolve(req: api.ConvolveRequest) -> api.SequenceResponse:
    return api.convolve(req)


@app.post("/laguerre", response_model=api.SequenceResponse)
def laguerre(req: api.LaguerreRequest) -> api.SequenceResponse:
    return api.laguerre(req)


@app.post("/duality", response_model=api.DualityResponse)
def duality(req: api.DualityRequest) -> api.DualityResponse:
    return api.duality_check(req)


@app.post("/mc-verify", response_model=api.McVerifyResponse)
def mc_verify(req: api.McVerifyRequest) -> api.McVerifyResponse:
    return api.mc_verify(req)
