"""
Helpers for reading lifespan state from a FastMCP context.
"""

from typing import TYPE_CHECKING, Any

from ..models.classes import CohomologyClass

if TYPE_CHECKING:
    from fastmcp import Context

    from ..core.config import FibernormConfig
    from ..core.database import FibrationDatabase


def _lifespan_value(ctx: "Context", key: str) -> Any:
    """
    Fetch ``key`` from the lifespan yield dict.

    The lifespan dict lives at ctx.request_context.lifespan_context.
    """
    if ctx is None:
        raise RuntimeError("No context: tools must be called with ctx")

    request_ctx = ctx.request_context
    if request_ctx is None:
        raise RuntimeError("No request context: the server lifespan has not run")

    lifespan_ctx = getattr(request_ctx, 'lifespan_context', None)
    if isinstance(lifespan_ctx, dict):
        value = lifespan_ctx.get(key)
        if value is None:
            raise RuntimeError(f"{key} not found in lifespan_context. Keys: {list(lifespan_ctx.keys())}")
        return value
    if lifespan_ctx is not None and hasattr(lifespan_ctx, key):
        return getattr(lifespan_ctx, key)

    raise RuntimeError(
        f"Cannot find {key} in context. "
        f"request_context type: {type(request_ctx).__name__}"
    )


def get_database(ctx: "Context") -> "FibrationDatabase":
    """Database loaded (or generated) by the server lifespan."""
    return _lifespan_value(ctx, "database")


def get_settings(ctx: "Context") -> "FibernormConfig":
    return _lifespan_value(ctx, "config")


def parse_phi(phi: str) -> CohomologyClass:
    """Parse a tool argument like ``"2,1"`` or ``"(2,1)"``."""
    return CohomologyClass.parse(phi)
