"""
Fibration database and keymap tools.
"""

from fastmcp import Context
from pydantic import Field

from ..core.database import keymap, keymap_denominator
from ..models.base import ResponseFormat
from ..models.fibrations import PlatformSecret
from ..server import mcp
from ..utils.api_helpers import get_database, parse_phi
from ..utils.error_handling import handle_fibernorm_errors
from ..utils.formatting import format_response


@mcp.tool(
    name="fibernorm_keymap",
    description="Map the normal-form length |g| of a shared platform secret to its fibered class f(g) = D(g)·(1/2, |g|/(|g|+1) - 1/2), with D(g) the smallest integer making f(g) integral. REQUIRED: length (integer >= 1). Example: length=3 gives (2,1) with D=4.",
    annotations={
        "readOnlyHint": True,
        "destructiveHint": False,
        "idempotentHint": True,
        "openWorldHint": False
    }
)
@handle_fibernorm_errors
async def fibernorm_keymap(
    length: int = Field(ge=1, description="Normal-form length |g| of the platform secret"),
    format: ResponseFormat = Field(default=ResponseFormat.MARKDOWN, description="Output format"),
    ctx: Context = None
) -> str:
    """
    Compute f(g) and D(g) from |g|.

    Example use cases:
        - "Which fibration does a secret of length 5 select?"
    """
    secret = PlatformSecret(token="", length=length)
    phi = keymap(secret)
    data = {"length": length, "phi": str(phi), "D": keymap_denominator(length)}
    return format_response(data, f"Keymap for |g| = {length}", format)


@mcp.tool(
    name="fibernorm_lookup",
    description="Look up a fibered class in the server's fibration database. Returns rank, stretch factor and, when present, the fiber presentation (generators, monodromy images, stable letter). REQUIRED: phi as 'a,b'. Reports absence for classes not in the database (e.g. non-fibered ones).",
    annotations={
        "readOnlyHint": True,
        "destructiveHint": False,
        "idempotentHint": True,
        "openWorldHint": False
    }
)
@handle_fibernorm_errors
async def fibernorm_lookup(
    phi: str = Field(description="Cohomology class as 'a,b'"),
    format: ResponseFormat = Field(default=ResponseFormat.MARKDOWN, description="Output format"),
    ctx: Context = None
) -> str:
    """
    Find a database entry by exact class.

    Example use cases:
        - "Is (2,1) in the database?"
        - "Show the fiber data of the canonical class"
    """
    cls = parse_phi(phi)
    db = get_database(ctx)
    entry = db.lookup(cls)
    if entry is None:
        return f"No entry for {cls} in the database ({len(db)} entries)."
    return format_response(entry.model_dump_file(), f"Fibration {cls}", format)
