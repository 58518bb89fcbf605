# app/main.py

import asyncio
import logging

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware

from . import config
from .bench import bench
from .circuit import parse
from .errors import CircuitParseError, SimulationError
from .models import BatchRunRequest, BatchRunResponse, BenchReport, BenchRequest, RunReport, RunRequest
from .simulator import CircuitSimulator
from .utils import timer

logger = logging.getLogger(__name__)

# --- FastAPI App Initialization ---
app = FastAPI(
    title="MPS Circuit Simulator API",
    description="Batch simulation of quantum circuits in the matrix-product-state representation.",
    version="1.0.0"
)

# --- CORS Middleware ---
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


# --- Event Handlers ---
@app.on_event("startup")
async def startup_event():
    config.configure_logging()
    logger.info("Application startup complete.")
    logger.info(
        "Tolerances: rank_tol=%g unitarity_tol=%g canonical_tol=%g, dense limit %d qubits",
        config.RANK_TOL, config.UNITARITY_TOL, config.CANONICAL_TOL, config.DENSE_LIMIT,
    )
    if config.CHI_CAP is not None:
        logger.warning("Running with default chi cap %d: results are truncated.", config.CHI_CAP)


@app.on_event("shutdown")
async def shutdown_event():
    logger.info("Application shutting down.")


def _http_error(e: SimulationError) -> HTTPException:
    status = 400 if isinstance(e, CircuitParseError) else 422
    return HTTPException(status_code=status, detail=str(e))


def simulate(request: RunRequest) -> RunReport:
    """Runs one request synchronously; raises SimulationError on bad input."""
    policy = config.default_policy()
    if request.rank_tol is not None:
        policy = policy.model_copy(update={"rank_tol": request.rank_tol})
    circuit = parse(request.circuit, policy)
    simulator = CircuitSimulator(
        policy,
        chi_cap=request.chi_cap,
        chi_limit=request.chi_limit,
        method=request.method,
    )
    return simulator.run(
        circuit,
        amplitudes=request.amplitudes,
        expectations=request.expectations,
        shots=request.shots,
        seed=request.seed,
        compare_dense=request.compare_dense,
        report_chi=request.report_chi,
        timings=request.timings,
    )


# --- API Endpoints ---
@app.get("/", summary="Root endpoint to check service status")
async def root():
    return {"status": "MPS Circuit Simulator API is running"}


@app.post("/run", response_model=RunReport, summary="Simulate one circuit")
async def run_circuit(request: RunRequest):
    """
    Parses and simulates one circuit from |0...0>.
    - **400**: the circuit text was rejected (message carries the line number).
    - **422**: capacity or other simulation errors.
    """
    try:
        return await asyncio.to_thread(simulate, request)
    except SimulationError as e:
        logger.error("Run failed: %s", e)
        raise _http_error(e)


@app.post("/run/batch", response_model=BatchRunResponse, summary="Simulate a batch of circuits")
async def run_batch(request: BatchRunRequest):
    """
    Simulates every circuit of the batch concurrently, one worker thread each.
    Reports come back in request order; processing_times is keyed by position.
    """
    processing_times = {}

    async def process_single_run(position: int, run: RunRequest) -> RunReport:
        try:
            with timer(f"Run {position}", processing_times, str(position)):
                return await asyncio.to_thread(simulate, run)
        except SimulationError as e:
            logger.error("Run %d of batch failed: %s", position, e)
            raise HTTPException(
                status_code=_http_error(e).status_code,
                detail=f"run {position}: {e}",
            )

    with timer("Total batch time", processing_times, "total", level=logging.INFO):
        tasks = [process_single_run(k, run) for k, run in enumerate(request.runs)]
        reports = await asyncio.gather(*tasks)

    return BatchRunResponse(reports=reports, processing_times=processing_times)


@app.post("/bench", response_model=BenchReport, summary="Measure scaling of a workload family")
async def run_bench(request: BenchRequest):
    try:
        return await asyncio.to_thread(
            bench,
            request.family,
            request.sizes,
            depth=request.depth,
            chi_cap=request.chi_cap,
            seed=request.seed,
            repeats=request.repeats,
        )
    except SimulationError as e:
        logger.error("Bench failed: %s", e)
        raise _http_error(e)
