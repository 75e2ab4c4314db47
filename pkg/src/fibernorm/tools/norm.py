"""
Thurston norm and stretch factor tools.
"""

from fastmcp import Context
from pydantic import Field

from ..core.norm import (
    CANONICAL_THETA,
    fiber_rank,
    fibered_face,
    in_cone_over_F,
    is_fibered,
    is_primitive,
    largest_root,
    specialize,
    thurston_norm,
)
from ..models.base import ResponseFormat
from ..server import mcp
from ..utils.api_helpers import get_settings, parse_phi
from ..utils.error_handling import handle_fibernorm_errors
from ..utils.formatting import format_response


@mcp.tool(
    name="fibernorm_norm",
    description="Thurston norm data for a cohomology class phi=(a,b) of the simplest pseudo-Anosov braid complement: norm max(|2a|,|2b|), primitivity, fiberedness, whether phi lies in the cone over the face F, and the fiber rank. REQUIRED: phi as 'a,b' (e.g. '2,1'). Optional: format ('markdown', 'json' or 'text').",
    annotations={
        "readOnlyHint": True,
        "destructiveHint": False,
        "idempotentHint": True,
        "openWorldHint": False
    }
)
@handle_fibernorm_errors
async def fibernorm_norm(
    phi: str = Field(description="Cohomology class as 'a,b', e.g. '2,1'"),
    format: ResponseFormat = Field(default=ResponseFormat.MARKDOWN, description="Output format"),
    ctx: Context = None
) -> str:
    """
    Classify a cohomology class.

    Example use cases:
        - "Is (2,1) a fibered class?"
        - "What is the rank of the fiber for phi=(3,1)?"
    """
    cls = parse_phi(phi)
    fibered = is_fibered(cls)
    face = fibered_face(cls)
    data = {
        "phi": str(cls),
        "thurston_norm": thurston_norm(cls),
        "primitive": is_primitive(cls),
        "fibered": fibered,
        "face": face.value if face else None,
        "in_cone_over_F": in_cone_over_F(cls),
        "fiber_rank": fiber_rank(cls) if fibered else None,
    }
    return format_response(data, f"Thurston norm of {cls}", format)


@mcp.tool(
    name="fibernorm_stretch",
    description="Specialize the Teichmüller polynomial 1 - t(1+u+u^-1) + t^2 at phi=(a,b) and return the polynomial and its largest root, the stretch factor of the monodromy of phi. REQUIRED: phi as 'a,b' with a > |b|. Optional: tolerance (default from server config), format.",
    annotations={
        "readOnlyHint": True,
        "destructiveHint": False,
        "idempotentHint": True,
        "openWorldHint": False
    }
)
@handle_fibernorm_errors
async def fibernorm_stretch(
    phi: str = Field(description="Cohomology class as 'a,b' in the cone over F"),
    tolerance: float | None = Field(None, gt=0, description="Root tolerance (default 1e-9)"),
    format: ResponseFormat = Field(default=ResponseFormat.MARKDOWN, description="Output format"),
    ctx: Context = None
) -> str:
    """
    Compute the specialized polynomial and stretch factor.

    Example use cases:
        - "What is the stretch factor of the (2,1) fibration?"
        - "Show Theta specialized at (1,0)"
    """
    cls = parse_phi(phi)
    tol = tolerance if tolerance is not None else get_settings(ctx).tolerance
    polynomial = specialize(CANONICAL_THETA, cls)
    data = {
        "phi": str(cls),
        "polynomial": str(polynomial),
        "coefficients": polynomial.coefficient_string(),
        "stretch_factor": largest_root(polynomial, tol),
    }
    return format_response(data, f"Stretch factor of {cls}", format)
