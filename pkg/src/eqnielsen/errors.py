"""
Exception hierarchy for the equivariant Nielsen engine.

Every error carries the process exit code the CLI reports for it.
"""

from typing import Optional


class EngineError(Exception):
    """Base class for all engine failures."""

    exit_code: int = 5


class InputError(EngineError):
    """Malformed problem file, out-of-range index, or a map/action that breaks an invariant."""

    exit_code = 2


class ConfigError(InputError):
    """Invalid configuration value (environment, options block or flag)."""


class ResourceCapError(EngineError):
    """A configured resource cap was exceeded."""

    exit_code = 3


class CosetOverflow(ResourceCapError):
    """Coset enumeration for a component's fundamental group exceeded the cap."""

    def __init__(self, component: Optional[str] = None, cap: Optional[int] = None):
        self.component = component
        self.cap = cap
        where = f" for component {component}" if component else ""
        limit = f" (cap {cap} cosets)" if cap is not None else ""
        super().__init__(f"pi1 not finite within cap{where}{limit}")


class CoverSearchTooLarge(ResourceCapError):
    """Minimum-cover search for N^G has more candidate classes than allowed."""


class BruteForceTooLarge(ResourceCapError):
    """Full-matrix Reidemeister trace would exceed the configured size cap."""


class OracleMismatch(EngineError):
    """An independent verifier disagrees with the engine."""

    exit_code = 4


class InternalConsistencyError(EngineError):
    """A bug trap fired: two computations that must agree did not."""

    exit_code = 5
