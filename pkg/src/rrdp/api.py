"""HTTP service exposing the toolkit as JSON endpoints.

Stateless and unauthenticated (a local tool): identical requests produce
identical responses, and simulation requests are deterministic given a seed.
Invalid parameters map to 400, infeasible designs to 422 with the best-found
solution in the body, everything unexpected to an opaque 500.  Request bodies
are capped at 1 MiB.  A web UI build at ``frontend/dist`` is served under
``/ui`` when present.
"""

from __future__ import annotations

import os
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from . import service
from .errors import (
    InconsistentHeader,
    InfiniteBudget,
    InvalidParameter,
    NoSolution,
    ParseError,
    RRDesignError,
)

MAX_BODY_BYTES = 1 << 20


def _error_body(code: str, message: str) -> dict:
    return {"schema_version": service.SCHEMA_VERSION, "error": {"code": code, "message": message}}


def create_app() -> FastAPI:
    app = FastAPI(
        title="rrdp",
        summary="Randomized-response survey design under local differential privacy",
        version="0.1.0",
    )

    origins = os.environ.get("RRDP_CORS_ORIGINS", "*").split(",")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=origins,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.middleware("http")
    async def limit_body_size(request: Request, call_next):
        length = request.headers.get("content-length")
        if length and int(length) > MAX_BODY_BYTES:
            return JSONResponse(
                status_code=413,
                content=_error_body("request_too_large", "request body exceeds 1 MiB"),
            )
        return await call_next(request)

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content=_error_body("invalid_parameter", str(exc)))

    @app.exception_handler(RRDesignError)
    async def on_domain_error(request: Request, exc: RRDesignError):
        if isinstance(exc, NoSolution):
            return JSONResponse(status_code=422, content=_error_body("no_solution", str(exc)))
        if isinstance(exc, (InvalidParameter, ParseError, InconsistentHeader, InfiniteBudget)):
            return JSONResponse(
                status_code=400, content=_error_body("invalid_parameter", str(exc))
            )
        return JSONResponse(status_code=400, content=_error_body("invalid_request", str(exc)))

    @app.exception_handler(Exception)
    async def on_unexpected_error(request: Request, exc: Exception):
        # never leak internals
        return JSONResponse(status_code=500, content=_error_body("internal", "internal error"))

    @app.get("/healthz", response_class=PlainTextResponse)
    def healthz() -> str:
        return "ok"

    @app.post("/budget", response_model=service.BudgetResponse)
    def budget(req: service.BudgetRequest):
        return service.compute_budget(req)

    @app.post("/power", response_model=service.PowerResponse)
    def power(req: service.PowerRequest):
        return service.compute_power(req)

    @app.post("/samplesize", response_model=service.SampleSizeResponse)
    def samplesize(req: service.SampleSizeRequest):
        return service.compute_sample_size(req)

    @app.post("/solve-p", response_model=service.SolveParamResponse)
    def solve_p(req: service.SolveParamRequest):
        return service.solve_param(req)

    @app.post("/optimize", response_model=service.OptimizeResponse)
    def optimize(req: service.OptimizeRequest):
        resp = service.run_optimize(req)
        if not resp.solution.feasible:
            # infeasible designs answer 422 with the best-found solution attached
            return JSONResponse(status_code=422, content=resp.model_dump(mode="json"))
        return resp

    @app.post("/feasible", response_model=service.FeasibleResponse)
    def feasible(req: service.FeasibleRequest):
        return service.compute_feasible(req)

    @app.post("/simulate", response_model=service.SimulateResponse)
    def simulate_endpoint(req: service.SimulateRequest):
        return service.run_simulation(req)

    @app.post("/analyze", response_model=service.AnalyzeResponse)
    def analyze(req: service.AnalyzeRequest):
        return service.run_analysis(req)

    @app.post("/curves", response_model=service.CurvesResponse)
    def curves(req: service.CurvesRequest):
        return service.compute_curves(req)

    ui_dir = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if ui_dir.is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


def serve(host: str = "127.0.0.1", port: int = 8000) -> None:
    """Run the service until interrupted."""
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port)
