"""
Pydantic models for protocol channel contents, keys and reports.
"""

from typing import Literal

from pydantic import Field, model_validator

from .base import FibernormBaseModel
from .classes import CohomologyClass
from .fibrations import PlatformSecret


class ChannelMessage(FibernormBaseModel):
    """Alice's public set {x_1, ..., x_T}, serialized in the generators t, x, y, z."""
    elements: tuple[str, ...] = Field(description="Serialized torus words, in send order")
    decoy_count: int | None = Field(
        None, exclude=True, description="Number of decoys; never serialized"
    )

    def public_view(self) -> "ChannelMessage":
        """What Bob and an eavesdropper see."""
        return ChannelMessage(elements=self.elements)

    @property
    def letter_count(self) -> int:
        """Total letters on the wire, counting x^k as k letters."""
        total = 0
        for element in self.elements:
            for token in element.split():
                if token == "1":
                    continue
                _, _, exponent = token.partition("^")
                total += abs(int(exponent)) if exponent else 1
        return total


class SharedKey(FibernormBaseModel):
    """l_max = max_s |psi^N(s)|, attained first at generator s_max."""
    l_max: int = Field(ge=0, description="Maximal reduced length of psi^N(s)")
    s_max: str = Field(description="Generator attaining l_max (first in generator order)")
    N: int = Field(ge=0, description="Exponent Alice chose")

    def __str__(self) -> str:
        return str(self.l_max)


class Transcript(FibernormBaseModel):
    """Public channel contents only: N for the symmetric scheme, elements for the public one."""
    scheme: Literal["symmetric", "public"]
    N: int | None = None
    elements: tuple[str, ...] | None = None

    @model_validator(mode='after')
    def _one_payload(self) -> "Transcript":
        if self.scheme == "symmetric" and (self.N is None or self.elements is not None):
            raise ValueError("symmetric transcripts carry N and no elements")
        if self.scheme == "public" and (self.elements is None or self.N is not None):
            raise ValueError("public transcripts carry elements and no N")
        return self

    def message(self) -> ChannelMessage:
        if self.elements is None:
            raise ValueError("symmetric transcripts carry no channel message")
        return ChannelMessage(elements=self.elements)


class SessionReport(FibernormBaseModel):
    """Private outcome of a session; never written next to the transcript contents."""
    scheme: Literal["symmetric", "public"]
    phi: CohomologyClass
    alice: SharedKey
    bob: SharedKey
    secret: PlatformSecret | None = None
    members: int | None = Field(None, description="Channel elements Bob found in the fiber")

    @property
    def keys_match(self) -> bool:
        return self.alice == self.bob


class PublicSession(FibernormBaseModel):
    """Everything one run of the public-key scheme produced."""
    transcript: Transcript
    report: SessionReport
