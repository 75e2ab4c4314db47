"""
Pydantic models for analysis tables.
"""

from pydantic import Field

from .base import FibernormBaseModel


class DistortionRow(FibernormBaseModel):
    N: int
    length: int = Field(description="l(N), maximal reduced fiber length of psi^N(s)")
    ratio: float | None = Field(None, description="l(N) / l(N-1); empty for N = 0")
    predicted: float = Field(description="stretch ** N")
    raw_length: int = Field(description="Letters in the literal conjugate t^-N s t^N")


class DistortionReport(FibernormBaseModel):
    rows: tuple[DistortionRow, ...]
    truncated: bool = False
    reason: str | None = Field(None, description="Why the table stops before N_max")


class ScanRow(FibernormBaseModel):
    a: int
    b: int
    recovered_N: int | None = None
    success: bool
    reason: str | None = Field(
        None, description="Budget line when the search stopped early; empty for a completed search"
    )
    ms: float


class TimingRow(FibernormBaseModel):
    size: int = Field(description="Word length or database size")
    ms: float


class LinearFit(FibernormBaseModel):
    slope: float
    intercept: float
    r_squared: float
