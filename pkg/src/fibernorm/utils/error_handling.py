"""
Error handling utilities and decorators for consistent error messages.
"""

from functools import wraps
from typing import Any, Callable

from fastmcp.exceptions import ToolError
from fastmcp.utilities.logging import get_logger

from ..core.exceptions import (
    BudgetExceededError,
    DatabaseError,
    FibernormException,
    FibernormValidationError,
    InversionUnavailableError,
    MetadataOnlyEntryError,
    NegativeExponentError,
    NoRootError,
    RecoveryFailureError,
)

logger = get_logger(__name__)


def handle_fibernorm_errors(func: Callable) -> Callable:
    """
    Decorator to convert fibernorm errors into ToolError.

    Ensures user-friendly, actionable error messages reach the LLM client.

    Usage:
        @mcp.tool()
        @handle_fibernorm_errors
        async def my_tool(...):
            ...
    """
    @wraps(func)
    async def wrapper(*args, **kwargs) -> Any:
        try:
            return await func(*args, **kwargs)
        except BudgetExceededError as e:
            # Resource condition, not a mathematical answer
            raise ToolError(
                f"Letter budget exceeded: {e}\n{e.reason_line}\n\n"
                "Lower N, or raise FIBERNORM_MAX_LETTERS if memory allows. "
                "This says nothing about equality or membership."
            )
        except MetadataOnlyEntryError as e:
            raise ToolError(
                f"{e}\n\n"
                "Only classes with a fiber presentation can produce keys; "
                "the shipped database has one for (1,0)."
            )
        except RecoveryFailureError as e:
            raise ToolError(f"Recovery failed: {e}\n\nTry a larger n_max.")
        except (NegativeExponentError, NoRootError) as e:
            raise ToolError(
                f"Stretch factor unavailable: {e}\n\n"
                "Use a class in the cone over F (a > |b|)."
            )
        except InversionUnavailableError as e:
            raise ToolError(f"Inversion unavailable: {e}")
        except DatabaseError as e:
            raise ToolError(f"Database error: {e}")
        except FibernormValidationError as e:
            raise ToolError(f"Invalid input: {e}")
        except FibernormException as e:
            raise ToolError(f"fibernorm error: {e}")
        except ValueError as e:
            # Validation errors from Pydantic or other sources
            raise ToolError(f"Validation error: {e}")
        except Exception as e:
            logger.exception(f"Unexpected error in {func.__name__}")
            raise ToolError(
                f"An unexpected error occurred: {type(e).__name__}\n\n"
                "Please try again or report the issue with the inputs used."
            )

    return wrapper
