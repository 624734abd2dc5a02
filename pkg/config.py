# config.py - Environment configuration and logging setup
import logging
import os
import sys
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from jacobi_models import ConfigError

# Load environment variables
load_dotenv()

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class Settings(BaseModel):
    """Runtime settings read from EXTREMAL_ZEROS_* environment variables"""
    threads: int = Field(default=0, ge=0)          # 0 = one worker per CPU
    digits: int = Field(default=12, ge=1, le=40)   # significant digits in output
    k_max: int = Field(default=12, ge=2, le=64)    # default power-sum cap, exact path
    log_level: str = "WARNING"


def load_settings(environ: Optional[dict] = None) -> Settings:
    """Read settings from the environment (or a mapping, for tests)"""
    env = os.environ if environ is None else environ
    raw = {
        "threads": env.get("EXTREMAL_ZEROS_THREADS", "0"),
        "digits": env.get("EXTREMAL_ZEROS_DIGITS", "12"),
        "k_max": env.get("EXTREMAL_ZEROS_K_MAX", "12"),
        "log_level": env.get("EXTREMAL_ZEROS_LOG_LEVEL", "WARNING").upper(),
    }
    try:
        settings = Settings(**raw)
    except ValidationError as exc:
        raise ConfigError(f"invalid EXTREMAL_ZEROS_* configuration: {exc}") from exc
    if not isinstance(logging.getLevelName(settings.log_level), int):
        raise ConfigError(f"unknown log level {settings.log_level!r}")
    return settings


def resolve_threads(requested: int) -> int:
    """Worker count for grid runs; 0 means one per CPU"""
    if requested < 0:
        raise ConfigError(f"thread count must be >= 0, got {requested}")
    if requested == 0:
        return os.cpu_count() or 1
    return requested


def configure_logging(level: str) -> None:
    """Install one stderr handler on the root logger"""
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(level)
