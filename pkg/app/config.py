# app/config.py

import logging
import os
import sys
from typing import Optional

from dotenv import load_dotenv

from .errors import ConfigError

# Load environment variables from .env file
load_dotenv()

logger = logging.getLogger(__name__)

STRICT_CONFIG = os.getenv("MPS_STRICT_CONFIG", "False").lower() == "true"

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _read_env(name: str, default, cast):
    """
    Reads one typed setting from the environment.
    Falls back to the default when the value is malformed, unless
    MPS_STRICT_CONFIG is set, in which case the error is raised.
    """
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = cast(raw)
    except (TypeError, ValueError) as e:
        logger.error("Invalid value %r for %s: %s", raw, name, e)
        if STRICT_CONFIG:
            raise ConfigError(f"invalid value {raw!r} for {name}") from e
        logger.warning("MPS_STRICT_CONFIG is False. Using default %s=%r.", name, default)
        return default
    return value


def _positive_int(raw: str) -> int:
    value = int(raw)
    if value < 1:
        raise ValueError("must be >= 1")
    return value


def _positive_float(raw: str) -> float:
    value = float(raw)
    if not value > 0:
        raise ValueError("must be > 0")
    return value


RANK_TOL = _read_env("MPS_RANK_TOL", 1e-12, _positive_float)
UNITARITY_TOL = _read_env("MPS_UNITARITY_TOL", 1e-8, _positive_float)
CANONICAL_TOL = _read_env("MPS_CANONICAL_TOL", 1e-10, _positive_float)
DENSE_LIMIT = _read_env("MPS_DENSE_LIMIT", 14, _positive_int)
CHI_CAP: Optional[int] = _read_env("MPS_CHI_CAP", None, _positive_int)
LOG_LEVEL = os.getenv("MPS_LOG_LEVEL", "INFO").upper()


def default_policy():
    """Tolerance policy assembled from the environment."""
    from .engine.numerics import TolerancePolicy

    return TolerancePolicy(
        rank_tol=RANK_TOL,
        unitarity_tol=UNITARITY_TOL,
        canonical_tol=CANONICAL_TOL,
    )


def configure_logging(level: Optional[str] = None) -> None:
    """
    Installs one stderr handler on the root logger; safe to call twice.
    A repeat call rebinds the handler to the current sys.stderr.
    """
    root = logging.getLogger()
    handler = next((h for h in root.handlers if getattr(h, "_mps_handler", False)), None)
    if handler is None:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._mps_handler = True
        root.addHandler(handler)
    else:
        handler.setStream(sys.stderr)
    root.setLevel(level or LOG_LEVEL)
