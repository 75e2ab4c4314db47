"""
Base Pydantic models for fibernorm values.
"""

from enum import Enum

from pydantic import BaseModel, ConfigDict


class FibernormBaseModel(BaseModel):
    """
    Base model for all serialized fibernorm values.

    Configuration:
    - Frozen: values are immutable and hashable, safe to share across threads
    - Reject unknown fields so malformed files fail loudly
    - Accept both field name and alias
    """
    model_config = ConfigDict(
        frozen=True,
        extra='forbid',
        populate_by_name=True,
        str_strip_whitespace=True
    )


class ResponseFormat(str, Enum):
    """Output format for reports."""
    TEXT = "text"
    MARKDOWN = "markdown"
    JSON = "json"
