"""
Pydantic models for the public fibration database.
"""

import hashlib
from typing import Literal

from pydantic import Field, field_validator

from .base import FibernormBaseModel
from .classes import CohomologyClass


class AutomorphismData(FibernormBaseModel):
    """Serialized monodromy: generator images, plus a braid word or inverse images."""
    images: dict[str, str] = Field(description="Generator name -> image word")
    braid: tuple[int, ...] | None = Field(
        None, description="Braid factorization, leftmost letter applied first"
    )
    inverse_images: dict[str, str] | None = Field(
        None, description="Images of the inverse automorphism, when no braid is known"
    )


class FullFiberData(FibernormBaseModel):
    """Everything needed to run the protocol for one fibered class."""
    generators: tuple[str, ...] = Field(description="Fiber generator names")
    automorphism: AutomorphismData = Field(description="Monodromy on the fiber")
    stable_letter: str = Field(description="Word in {t,x,y,z} with phi-value 1")
    generator_words: dict[str, str] | None = Field(
        None, description="Fiber generators written in {t,x,y,z}, when known"
    )


class FibrationEntry(FibernormBaseModel):
    """One fibered class with its fiber rank and stretch factor."""
    phi: CohomologyClass = Field(description="Fibered cohomology class (a, b)")
    rank: int = Field(gt=0, description="Rank of the free fiber group")
    stretch: float = Field(gt=1.0, description="Stretch factor of the monodromy")
    full_data: FullFiberData | None = Field(
        None, description="Fiber presentation, or None for metadata-only entries"
    )

    @field_validator('phi', mode='before')
    @classmethod
    def _phi_from_pair(cls, value):
        if isinstance(value, (list, tuple)):
            if len(value) != 2:
                raise ValueError(f"phi must be a pair [a, b], got {value!r}")
            return {"a": value[0], "b": value[1]}
        return value

    def model_dump_file(self) -> dict:
        """Entry as it appears in the JSON file (phi as ``[a, b]``)."""
        data = self.model_dump(mode='json', exclude_none=False)
        data["phi"] = [self.phi.a, self.phi.b]
        return data

    @property
    def has_full_data(self) -> bool:
        return self.full_data is not None


class DatabaseFile(FibernormBaseModel):
    """Versioned on-disk container."""
    version: Literal[1] = 1
    manifold: str = "simplest-pA-braid"
    entries: tuple[FibrationEntry, ...] = ()


class PlatformSecret(FibernormBaseModel):
    """
    Opaque shared secret with a declared normal-form length |g|.

    Only the length reaches the keymap, so any group's secrets plug in.
    """
    token: str = Field(description="Opaque hex token")
    length: int = Field(ge=0, description="Normal-form length |g|")

    @classmethod
    def from_bytes(cls, data: bytes, length: int | None = None) -> "PlatformSecret":
        """Wrap raw bytes; the length defaults to the byte count."""
        return cls(
            token=hashlib.sha256(data).hexdigest(),
            length=len(data) if length is None else length,
        )
