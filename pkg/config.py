"""
Configuration defaults and environment loading
"""
import os
from typing import Optional

from dotenv import load_dotenv

from errors import ConfigurationError


# Library defaults; the CLI uses these directly and never reads the environment
DEFAULT_BUDGET = 2 ** 22
DEFAULT_DECIMAL_DIGITS = 12
DEFAULT_ORACLE_STATE_BUDGET = 10 ** 6


def default_threads() -> int:
    """Available parallelism, at least 1"""
    return os.cpu_count() or 1


def get_engine_config() -> dict:
    """
    Get engine configuration from environment variables

    Returns:
        Dictionary with raw (unvalidated) configuration values
    """
    return {
        "budget": os.getenv("UDCODES_BUDGET"),
        "threads": os.getenv("UDCODES_THREADS"),
        "decimal_digits": os.getenv("UDCODES_DECIMAL_DIGITS"),
        "environment": os.getenv("ENVIRONMENT", "development"),
    }


def _positive_int(name: str, raw: Optional[str], default: int) -> int:
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}")
    if value < 1:
        raise ConfigurationError(f"{name} must be positive, got {value}")
    return value


def validate_environment() -> dict:
    """
    Validate environment variables and return configuration

    Returns:
        Dictionary with validated configuration

    Raises:
        ConfigurationError: If a variable is set to an invalid value
    """
    # Load environment variables from .env file
    load_dotenv()

    raw = get_engine_config()

    return {
        "budget": _positive_int("UDCODES_BUDGET", raw["budget"], DEFAULT_BUDGET),
        "threads": _positive_int("UDCODES_THREADS", raw["threads"], default_threads()),
        "decimal_digits": _positive_int(
            "UDCODES_DECIMAL_DIGITS", raw["decimal_digits"], DEFAULT_DECIMAL_DIGITS
        ),
        "environment": raw["environment"],
    }
