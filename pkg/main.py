"""
udcodes HTTP service
Exposes decide / count / rho / verify / table over FastAPI with environment configuration
"""
import os
import sys
import logging
from contextlib import asynccontextmanager
from fastapi import FastAPI, HTTPException, Request
from fastapi.concurrency import run_in_threadpool
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from dotenv import load_dotenv

from commands import CommandRunner
from config import validate_environment
from errors import (
    AlphabetMismatchError,
    ConfigurationError,
    PreconditionError,
    SizeLimitError,
    UdCodesError,
    UncoveredFamilyError,
    UndefinedRatioError,
    WordFormatError,
)
from models import (
    CountRequest,
    DecideRequest,
    ErrorResponse,
    OutputDocument,
    RhoRequest,
    TableRequest,
    VerifyRequest,
)
from words import LengthDistribution


# Configure logging
_handlers = [logging.StreamHandler(sys.stdout)]
if os.getenv("LOG_FILE"):
    _handlers.append(logging.FileHandler(os.getenv("LOG_FILE")))
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=_handlers
)
logger = logging.getLogger(__name__)

SERVICE_NAME = "udcodes"
VERSION = "0.1.0"


def http_status_for(error: UdCodesError) -> int:
    """Map a domain error to an HTTP status code"""
    if isinstance(error, SizeLimitError):
        return 413
    if isinstance(error, UncoveredFamilyError):
        return 422
    if isinstance(error, (WordFormatError, AlphabetMismatchError, PreconditionError, UndefinedRatioError)):
        return 400
    return 500


@asynccontextmanager
async def lifespan(app: FastAPI):
    """
    Application lifespan manager for startup and shutdown events
    """
    # Startup
    try:
        app.state.config = validate_environment()
        app.state.runner = CommandRunner(
            budget=app.state.config["budget"],
            workers=app.state.config["threads"],
            decimal_digits=app.state.config["decimal_digits"],
        )
        logger.info(f"{SERVICE_NAME} starting in {app.state.config['environment']} mode")
        logger.info(
            f"Budget {app.state.config['budget']} tuples, {app.state.config['threads']} worker processes"
        )
    except ConfigurationError as e:
        logger.error(f"Configuration Error: {e}")
        logger.error("Application startup failed")
        sys.exit(1)

    yield

    # Shutdown
    logger.info(f"{SERVICE_NAME} shutting down")


# Create FastAPI application with lifespan manager
app = FastAPI(
    title="udcodes",
    description="Unique decodability decisions, exact code counts and prefix-code ratios",
    version=VERSION,
    lifespan=lifespan
)


# Custom exception handlers
@app.exception_handler(RequestValidationError)
async def validation_exception_handler(request: Request, exc: RequestValidationError):
    """Handle Pydantic validation errors"""
    logger.warning(f"Validation error for {request.url}: {exc.errors()}")

    error_details = []
    for error in exc.errors():
        field = " -> ".join(str(loc) for loc in error["loc"])
        error_details.append(f"{field}: {error['msg']}")

    return JSONResponse(
        status_code=400,
        content=ErrorResponse(
            error=f"Validation failed: {'; '.join(error_details)}",
            code=400
        ).model_dump()
    )


@app.exception_handler(UdCodesError)
async def domain_exception_handler(request: Request, exc: UdCodesError):
    """Turn library errors into ErrorResponse bodies"""
    status_code = http_status_for(exc)
    logger.warning(f"{type(exc).__name__} for {request.url}: {exc}")
    return JSONResponse(
        status_code=status_code,
        content=ErrorResponse(
            error=f"{type(exc).__name__}: {exc}",
            code=status_code
        ).model_dump()
    )


@app.exception_handler(HTTPException)
async def http_exception_handler(request: Request, exc: HTTPException):
    """Handle HTTP exceptions with consistent error format"""
    logger.error(f"HTTP {exc.status_code} error for {request.url}: {exc.detail}")

    if isinstance(exc.detail, dict) and "error" in exc.detail:
        return JSONResponse(status_code=exc.status_code, content=exc.detail)

    return JSONResponse(
        status_code=exc.status_code,
        content=ErrorResponse(
            error=str(exc.detail),
            code=exc.status_code
        ).model_dump()
    )


@app.exception_handler(Exception)
async def general_exception_handler(request: Request, exc: Exception):
    """Handle unexpected exceptions"""
    logger.error(f"Unexpected error for {request.url}: {str(exc)}", exc_info=True)

    return JSONResponse(
        status_code=500,
        content=ErrorResponse(
            error="Internal server error occurred",
            code=500
        ).model_dump()
    )


def _runner() -> CommandRunner:
    runner = getattr(app.state, 'runner', None)
    if runner is None:
        raise HTTPException(
            status_code=500,
            detail=ErrorResponse(
                error="Command runner not available",
                code=500
            ).model_dump()
        )
    return runner


@app.get("/health")
async def health_check():
    """Detailed health check endpoint"""
    logger.info("Health check requested")
    config = getattr(app.state, 'config', {})

    return {
        "status": "healthy",
        "service": SERVICE_NAME,
        "version": VERSION,
        "environment": config.get('environment', 'unknown'),
        "budget": config.get('budget'),
        "threads": config.get('threads'),
    }


@app.post("/decide", response_model=OutputDocument)
async def decide_endpoint(request: DecideRequest):
    """
    Decide whether the given words form a uniquely decodable code

    Args:
        request: DecideRequest with alphabet size, words and trace / witness flags

    Returns:
        OutputDocument with is_code, termination and the optional trace and witness
    """
    runner = _runner()
    return await run_in_threadpool(
        runner.decide, request.n, request.words, request.trace, request.witness, request.max_len
    )


@app.post("/count", response_model=OutputDocument)
async def count_endpoint(request: CountRequest):
    """Count codes or prefix codes by formula, census or both"""
    runner = _runner()
    lengths = LengthDistribution(tuple(request.lengths))
    return await run_in_threadpool(runner.count, request.kind, request.n, lengths, request.method)


@app.post("/rho", response_model=OutputDocument)
async def rho_endpoint(request: RhoRequest):
    runner = _runner()
    lengths = LengthDistribution(tuple(request.lengths))
    return await run_in_threadpool(runner.rho, request.n, lengths, request.method, request.cross_check)


@app.post("/verify", response_model=OutputDocument)
async def verify_endpoint(request: VerifyRequest):
    """
    Check a named claim over a grid

    A failing claim is still a successful request; the document status is "fail".
    """
    runner = _runner()
    return await run_in_threadpool(
        runner.verify, request.claim, request.n_max, request.len_max, request.c_max
    )


@app.post("/table", response_model=OutputDocument)
async def table_endpoint(request: TableRequest):
    runner = _runner()
    return await run_in_threadpool(runner.table, request.family, request.n, request.c_max, request.digits)


if __name__ == "__main__":
    import uvicorn

    # Load environment for development
    load_dotenv()

    try:
        config = validate_environment()
        environment = config.get('environment', 'development')

        reload = environment == 'development'
        log_level = "debug" if environment == 'development' else "info"

        logger.info(f"Starting {SERVICE_NAME} in {environment} mode")

        uvicorn.run(
            "main:app",
            host="0.0.0.0",
            port=int(os.getenv("PORT", "8000")),
            reload=reload,
            log_level=log_level
        )

    except ConfigurationError as e:
        logger.error(f"Configuration Error: {e}")
        logger.error("Please check your .env file and try again")
        sys.exit(1)
