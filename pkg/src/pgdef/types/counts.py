"""Block multiplicities of a product ``A_p^r x B_p^s x C_p^t``."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_validator


class BlockCounts(BaseModel):
    """Multiplicities ``(r, s, t)`` with the solver's trace values ``(m, d)``.

    Attributes:
        p: The prime, or None when only the combinatorics is known.
        r: Number of ``A_p`` factors.
        s: Number of ``B_p`` factors.
        t: Number of ``C_p`` factors.
        trace_m: Total generator count ``2r + 2s + t``.
        trace_d: ``s - r``.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    p: int | None = Field(default=None, ge=2, description="The prime, if fixed.")
    r: int = Field(..., ge=0)
    s: int = Field(..., ge=0)
    t: int = Field(..., ge=0)
    trace_m: int = Field(..., ge=1)
    trace_d: int

    @model_validator(mode="after")
    def _check_invariants(self) -> BlockCounts:
        if self.r * self.s != 0:
            raise ValueError("r and s cannot both be positive")
        if self.t != self.trace_m - 2 * self.r - 2 * self.s:
            raise ValueError("t must equal trace_m - 2r - 2s")
        if self.trace_d != self.s - self.r:
            raise ValueError("trace_d must equal s - r")
        half = self.trace_m // 2
        if not -half <= self.trace_d <= half:
            raise ValueError("trace_d out of range [-m//2, m//2]")
        return self

    @classmethod
    def of(cls, r: int, s: int, t: int, p: int | None = None) -> BlockCounts:
        """Build counts from multiplicities, deriving the trace values."""
        return cls(p=p, r=r, s=s, t=t, trace_m=2 * r + 2 * s + t, trace_d=s - r)

    @property
    def factors(self) -> int:
        return self.r + self.s + self.t

    def with_prime(self, p: int) -> BlockCounts:
        return self.model_copy(update={"p": p})
