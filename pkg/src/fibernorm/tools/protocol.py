"""
Key computation and protocol simulation tools.
"""

from fastmcp import Context
from pydantic import Field

from ..core.exceptions import DatabaseError
from ..core.protocol import lmax, symmetric_session
from ..models.base import ResponseFormat
from ..models.classes import CohomologyClass
from ..server import mcp
from ..utils.api_helpers import get_database, get_settings, parse_phi
from ..utils.error_handling import handle_fibernorm_errors
from ..utils.formatting import format_response


def _entry(ctx: Context, phi: str):
    cls = parse_phi(phi) if phi else CohomologyClass(a=1, b=0)
    entry = get_database(ctx).lookup(cls)
    if entry is None:
        raise DatabaseError(f"Class {cls} is not in the database")
    return entry


@mcp.tool(
    name="fibernorm_lmax",
    description="Compute the shared key l_max = max over fiber generators s of the reduced length of psi^N(s), for a database class with fiber data (default: the canonical class 1,0). REQUIRED: N (integer >= 0). Optional: phi ('a,b'). Large N grows like 2.618^N letters and may hit the letter budget.",
    annotations={
        "readOnlyHint": True,
        "destructiveHint": False,
        "idempotentHint": True,
        "openWorldHint": False
    }
)
@handle_fibernorm_errors
async def fibernorm_lmax(
    N: int = Field(ge=0, description="Exponent N"),
    phi: str | None = Field(None, description="Class as 'a,b' (default '1,0')"),
    format: ResponseFormat = Field(default=ResponseFormat.MARKDOWN, description="Output format"),
    ctx: Context = None
) -> str:
    """
    Compute l_max and the generator attaining it.

    Example use cases:
        - "What is the key for N=10?"
    """
    entry = _entry(ctx, phi)
    key = lmax(entry, N, max_letters=get_settings(ctx).max_letters)
    return format_response(key, f"Key for {entry.phi}, N = {N}", format)


@mcp.tool(
    name="fibernorm_simulate_symmetric",
    description="Run the symmetric-key scheme: Alice announces N in the clear and both parties compute l_max for the shared class. Returns the public transcript and both keys. REQUIRED: N. Optional: phi ('a,b', default '1,0').",
    annotations={
        "readOnlyHint": True,
        "destructiveHint": False,
        "idempotentHint": True,
        "openWorldHint": False
    }
)
@handle_fibernorm_errors
async def fibernorm_simulate_symmetric(
    N: int = Field(ge=0, description="Exponent Alice announces"),
    phi: str | None = Field(None, description="Shared class as 'a,b' (default '1,0')"),
    format: ResponseFormat = Field(default=ResponseFormat.MARKDOWN, description="Output format"),
    ctx: Context = None
) -> str:
    """
    Simulate one symmetric session.

    Example use cases:
        - "Simulate the symmetric scheme with N=8"
    """
    entry = _entry(ctx, phi)
    alice, bob, transcript = symmetric_session(
        entry, N, max_letters=get_settings(ctx).max_letters
    )
    data = {
        "transcript": transcript.model_dump(mode='json'),
        "alice": alice.model_dump(),
        "bob": bob.model_dump(),
        "keys_match": alice == bob,
    }
    return format_response(data, "Symmetric session", format)
