"""
Pydantic model for integral cohomology classes of the mapping torus.
"""

from pydantic import Field

from .base import FibernormBaseModel


class CohomologyClass(FibernormBaseModel):
    """
    Integral class phi = (a, b) with phi(t) = a and phi(x) = phi(y) = phi(z) = b.

    The monodromy permutes the punctures transitively, so H^1 has rank two
    and these two values determine phi.
    """
    a: int = Field(description="Value on the stable letter t")
    b: int = Field(description="Value on each fiber generator x, y, z")

    @classmethod
    def parse(cls, text: str) -> "CohomologyClass":
        """Parse ``"a,b"`` (optionally parenthesised)."""
        parts = text.strip().strip("()").split(",")
        if len(parts) != 2:
            raise ValueError(f"Expected 'a,b', got {text!r}")
        return cls(a=int(parts[0]), b=int(parts[1]))

    @property
    def pair(self) -> tuple[int, int]:
        return (self.a, self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        return CohomologyClass(a=self.a + other.a, b=self.b + other.b)

    def scaled(self, m: int) -> "CohomologyClass":
        return CohomologyClass(a=m * self.a, b=m * self.b)

    def __str__(self) -> str:
        return f"({self.a},{self.b})"
