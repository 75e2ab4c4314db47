"""
Custom exception hierarchy for the fibernorm package.
"""


class FibernormException(Exception):
    """Base exception for all fibernorm errors."""
    pass


class FibernormValidationError(FibernormException, ValueError):
    """Input validation failed."""
    pass


class WordSyntaxError(FibernormValidationError):
    """A serialized word could not be parsed."""
    pass


class UnknownGeneratorError(FibernormValidationError):
    """A letter names a generator outside the alphabet in use."""
    pass


class AlphabetMismatchError(FibernormValidationError):
    """Two operands live over different alphabets."""
    pass


class ZeroClassError(FibernormValidationError):
    """The zero cohomology class has no fiber."""
    pass


class BudgetExceededError(FibernormException):
    """A word grew past the letter budget.

    This is a resource condition, not a mathematical answer: callers must
    never read it as inequality or non-membership.
    """

    def __init__(self, limit: int, attempted: int, context: str = ""):
        self.limit = limit
        self.attempted = attempted
        self.context = context
        where = f" while {context}" if context else ""
        super().__init__(
            f"letter budget exceeded{where}: {attempted} > {limit} letters"
        )

    @property
    def reason_line(self) -> str:
        """Machine-readable one-line summary used by the CLI."""
        return f"reason=budget-exceeded limit={self.limit} attempted={self.attempted}"


class InversionUnavailableError(FibernormException):
    """Automorphism has neither a braid factorization nor a supplied inverse."""
    pass


class NegativeExponentError(FibernormException):
    """Specialization produced a negative exponent (class outside the cone)."""
    pass


class NoRootError(FibernormException):
    """No sign change was found in the root bracket."""
    pass


class DatabaseError(FibernormException):
    """Base class for fibration database problems."""
    pass


class MalformedDatabaseError(DatabaseError):
    """Database file is not valid JSON or does not match the schema."""
    pass


class DatabaseInvariantError(DatabaseError):
    """An entry contradicts the norm, rank or stretch data it claims."""
    pass


class MetadataOnlyEntryError(FibernormException):
    """Entry carries no fiber presentation, so keys cannot be computed from it."""
    pass


class RecoveryFailureError(FibernormException):
    """No exponent up to the search cap reproduces the channel members."""
    pass


class TranscriptError(FibernormException):
    """Transcript file is malformed."""
    pass
