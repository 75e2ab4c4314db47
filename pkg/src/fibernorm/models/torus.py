"""
Pydantic model for normal forms of mapping-torus elements.
"""

from typing import Any

from pydantic import ConfigDict, Field, field_serializer

from ..core.words import Alphabet, Word
from .base import FibernormBaseModel


class TorusElement(FibernormBaseModel):
    """
    Normal form t^t_exp · fiber of an element of F ⋊ Z.

    Two elements are equal iff both fields are equal; the fiber is always
    reduced. Serializes as ``{"t_exp": k, "fiber": "<word>"}``.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    t_exp: int = Field(description="Exponent of the stable letter")
    fiber: Word = Field(description="Reduced fiber word")

    @field_serializer('fiber')
    def _serialize_fiber(self, fiber: Word) -> str:
        return str(fiber)

    @classmethod
    def parse(cls, data: dict[str, Any], fiber_alphabet: Alphabet) -> "TorusElement":
        return cls(
            t_exp=int(data["t_exp"]),
            fiber=Word.parse(str(data["fiber"]), fiber_alphabet).reduce(),
        )

    def is_identity(self) -> bool:
        return self.t_exp == 0 and not self.fiber.code

    def __str__(self) -> str:
        return f"({self.t_exp}, {self.fiber})"
