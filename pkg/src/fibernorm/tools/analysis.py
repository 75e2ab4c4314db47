"""
Distortion report tool.
"""

from fastmcp import Context
from pydantic import Field

from ..core.analysis import distortion_report
from ..core.database import canonical_entry
from ..models.base import ResponseFormat
from ..server import mcp
from ..utils.api_helpers import get_settings
from ..utils.error_handling import handle_fibernorm_errors
from ..utils.formatting import format_response, truncate_response


@mcp.tool(
    name="fibernorm_distortion",
    description="Exponential distortion table for the canonical fibration: for N = 0..n_max, the exact key length l(N), the ratio l(N)/l(N-1), the prediction 2.618^N and the raw conjugate length 1+2N. Optional: n_max (default 12, at most 20), format. Rows stop early if the letter budget runs out.",
    annotations={
        "readOnlyHint": True,
        "destructiveHint": False,
        "idempotentHint": True,
        "openWorldHint": False
    }
)
@handle_fibernorm_errors
async def fibernorm_distortion(
    n_max: int = Field(default=12, ge=0, le=20, description="Largest N in the table"),
    format: ResponseFormat = Field(default=ResponseFormat.MARKDOWN, description="Output format"),
    ctx: Context = None
) -> str:
    """
    Measure fiber length growth against the stretch factor.

    Example use cases:
        - "How fast do key lengths grow with N?"
    """
    report = distortion_report(
        canonical_entry(), n_max, max_letters=get_settings(ctx).max_letters
    )
    if format == ResponseFormat.JSON:
        return format_response(report, format_type=format)
    text = format_response(list(report.rows), "Distortion of the fiber subgroup", format)
    if report.truncated:
        text += f"\n\nTable truncated: {report.reason}"
    return truncate_response(text)
