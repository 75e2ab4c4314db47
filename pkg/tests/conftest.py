"""
Pytest configuration for fibernorm tests.

IMPORTANT: configuration is pinned through FIBERNORM_* variables before the
package is imported, so a developer's .env never changes test results.
"""

import os
import sys
from pathlib import Path

# PIN CONFIGURATION FOR ALL TESTS
os.environ.pop('FIBERNORM_DB', None)
os.environ['FIBERNORM_MAX_LETTERS'] = str(2**27)
os.environ['FIBERNORM_N_MAX'] = '16'
os.environ['FIBERNORM_SEED'] = '0'
os.environ['FIBERNORM_DEFAULT_DB_MAX_A'] = '4'

# src layout without an install
src_dir = Path(__file__).parent.parent / "src"
sys.path.insert(0, str(src_dir))

# Tools register on import, so the server slot is filled first
from contextlib import asynccontextmanager
from typing import AsyncGenerator

from fastmcp import FastMCP

import fibernorm.server


@asynccontextmanager
async def test_lifespan(server: FastMCP) -> AsyncGenerator[dict, None]:
    """Tests pass their own MockContext, so nothing is loaded here."""
    yield {}

fibernorm.server.mcp = FastMCP(
    name="fibernorm_test",
    instructions="Test server",
    lifespan=test_lifespan
)

from fibernorm.tools import analysis, database, norm, protocol  # noqa: E402,F401

import pytest

from fibernorm.core.automorphisms import PSI
from fibernorm.core.config import get_config, reset_config
from fibernorm.core.database import canonical_entry, generate_metadata_db, load_shipped
from fibernorm.core.mapping_torus import CANONICAL_TORUS

from .test_helpers import MockContext, discover_tools


@pytest.fixture(scope="session")
def all_tools():
    """Registered tools by name. Pass every parameter, including format."""
    return discover_tools(fibernorm.server.mcp)


@pytest.fixture
def config():
    """Fresh settings read from the pinned environment."""
    reset_config()
    yield get_config()
    reset_config()


@pytest.fixture(scope="session")
def psi():
    return PSI


@pytest.fixture(scope="session")
def torus():
    return CANONICAL_TORUS


@pytest.fixture(scope="session")
def entry():
    """The canonical fibration (1, 0) with its fiber presentation."""
    return canonical_entry()


@pytest.fixture(scope="session")
def small_db():
    """Metadata database for 1 <= a <= 4; only (1, 0) carries full data."""
    return generate_metadata_db(4)


@pytest.fixture(scope="session")
def shipped_db():
    return load_shipped()


@pytest.fixture
def ctx(small_db, config):
    """Context over the small database and pinned settings."""
    return MockContext(small_db, config)
