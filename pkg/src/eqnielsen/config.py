# src/eqnielsen/config.py
import logging
import os
from dataclasses import dataclass, replace
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from .errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_COSET_CAP = 50_000
DEFAULT_COVER_SEARCH_CAP = 64
DEFAULT_BRUTE_FORCE_CAP = 5_000
DEFAULT_THREADS = 1
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

ENV_VARS = {
    "coset_cap": "NF_COSET_CAP",
    "cover_search_cap": "NF_COVER_SEARCH_CAP",
    "brute_force_cap": "NF_BRUTE_FORCE_CAP",
    "threads": "NF_THREADS",
}


@dataclass(frozen=True)
class EngineConfig:
    coset_cap: int = DEFAULT_COSET_CAP
    cover_search_cap: int = DEFAULT_COVER_SEARCH_CAP
    brute_force_cap: int = DEFAULT_BRUTE_FORCE_CAP
    threads: int = DEFAULT_THREADS
    log_level: str = "INFO"

    def with_overrides(self, **overrides: Optional[Any]) -> "EngineConfig":
        """Return a copy with every non-None override applied and validated."""
        changes = {k: _positive_int(k, v) for k, v in overrides.items() if v is not None}
        return replace(self, **changes)


def _positive_int(name: str, value: Any) -> int:
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    if isinstance(value, float) and value != number:
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    if number < 1:
        raise ConfigError(f"{name} must be >= 1, got {number}")
    return number


def load_config(environ: Optional[Dict[str, str]] = None) -> EngineConfig:
    """
    Build the engine configuration from the environment (after reading .env).

    Args:
        environ: mapping to read instead of os.environ (tests)

    Returns:
        Validated EngineConfig
    """
    if environ is None:
        load_dotenv()
        environ = dict(os.environ)

    values: Dict[str, Any] = {}
    for field_name, var in ENV_VARS.items():
        raw = environ.get(var, "").strip()
        if raw:
            values[field_name] = _positive_int(var, raw)

    level = environ.get("NF_LOG_LEVEL", "INFO").strip().upper() or "INFO"
    if level not in LOG_LEVELS:
        raise ConfigError(f"NF_LOG_LEVEL must be a logging level name, got {level!r}")

    cfg = EngineConfig(log_level=level, **values)
    logger.debug(f"Engine config: {cfg}")
    return cfg
