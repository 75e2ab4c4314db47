"""
Main entry point for the fibernorm MCP server with lifespan management.

The lifespan loads the fibration database once; every tool reads it through
ctx.request_context.lifespan_context.
"""

import sys
from contextlib import asynccontextmanager
from pathlib import Path
from typing import AsyncGenerator

# Running this file directly needs src/ on the path
src_dir = Path(__file__).parent.parent
if str(src_dir) not in sys.path:
    sys.path.insert(0, str(src_dir))

from fastmcp import FastMCP

from fibernorm.core.config import FibernormConfig, get_config
from fibernorm.core.database import FibrationDatabase, generate_metadata_db, load
from fibernorm.core.exceptions import DatabaseError


def open_database(config: FibernormConfig) -> FibrationDatabase:
    """The configured database file, or a generated metadata database."""
    if config.has_database_file:
        return load(config.database_path)
    if config.database_path is not None:
        print(f"⚠ Database {config.database_path} not found, generating one instead", file=sys.stderr)
    return generate_metadata_db(config.default_db_max_a)


@asynccontextmanager
async def lifespan(server: FastMCP) -> AsyncGenerator[dict, None]:
    """
    Load configuration and the database on startup.

    Yields:
        dict: Context dictionary with 'database' and 'config' keys
    """
    config = get_config()

    print("Initializing fibernorm MCP server...", file=sys.stderr)
    try:
        database = open_database(config)
    except DatabaseError as e:
        print(f"⚠ Could not load {config.database_path}: {e}", file=sys.stderr)
        print("  Falling back to a generated metadata database.", file=sys.stderr)
        database = generate_metadata_db(config.default_db_max_a)

    print(f"✓ Database: {database!r}", file=sys.stderr)
    print(f"✓ Letter budget: {config.max_letters:,}", file=sys.stderr)

    tool_count = len(server._tool_manager._tools) if hasattr(server, '_tool_manager') else 0
    print(f"Server ready with {tool_count} tools registered.\n", file=sys.stderr)

    yield {
        "database": database,
        "config": config
    }

    print("\n✓ fibernorm MCP server shutdown complete", file=sys.stderr)

# The server must exist before any tool module is imported
mcp = FastMCP(
    name="fibernorm",
    instructions="Thurston norm, stretch factors and key agreement on the fibered 3-manifold of the simplest pseudo-Anosov braid",
    lifespan=lifespan
)

import fibernorm.server
fibernorm.server.mcp = mcp

# Importing the tool modules registers their tools on mcp
from fibernorm.tools import analysis, database, norm, protocol  # noqa: E402,F401


def main():
    """Run the server over stdio, or HTTP with --http."""
    # stdio by default; --http for local debugging
    if "--http" in sys.argv:
        mcp.run(transport="http", host="localhost", port=8000)
    else:
        mcp.run()


if __name__ == "__main__":
    main()
