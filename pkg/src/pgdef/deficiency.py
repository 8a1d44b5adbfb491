"""Deficiency bounds, the block-count solver, the constructor and the certifier.

For a finite group ``G`` with presentation ``P``::

    gens(P) - rels(P)  <=  def(G)  <=  rk(H1(G)) - d(H2(G))

The constructor builds ``A_p^r x B_p^s x C_p^t`` with presentation deficiency
exactly ``-n``; the certifier closes the sandwich by computing the right-hand
side.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from math import comb

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ._config import PgdefConfig
from ._exceptions import CosetLimitExceeded, PgdefError
from .coset_enum import group_table
from .homology import (
    BLOCK_DATA_PROVENANCE,
    checked_pedigree,
    h1_from_presentation,
    h2_from_table,
    h2_of_block_product,
)
from .int_linalg import FinAbGroup, min_generators
from .presentations.blocks import block_name, require_prime
from .presentations.model import Presentation, presentation_deficiency
from .presentations.products import block_product
from .types.counts import BlockCounts
from .types.enums import BlockKind, CertificationMode

logger = logging.getLogger(__name__)


class DeficiencyCertificate(BaseModel):
    """Lower and upper deficiency bounds for one presentation.

    ``certified_value`` is set exactly when the bounds meet. When an oracle
    fails, ``upper_bound`` is None, the interval is open above and ``error``
    says why.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    presentation: Presentation
    mode: CertificationMode
    lower_bound: int
    upper_bound: int | None = None
    certified_value: int | None = None
    h1: FinAbGroup | None = None
    h2: FinAbGroup | None = None
    provenance: str = ""
    minimal_presentation: bool | None = Field(
        default=None, description="Generator count equals d(H1), the rank of a finite p-group."
    )
    error: str | None = None
    error_type: str | None = None

    @model_validator(mode="after")
    def _check_bounds(self) -> DeficiencyCertificate:
        if self.upper_bound is not None and self.lower_bound > self.upper_bound:
            raise ValueError(f"lower bound {self.lower_bound} exceeds upper bound {self.upper_bound}")
        certified = self.upper_bound is not None and self.lower_bound == self.upper_bound
        if certified != (self.certified_value is not None):
            raise ValueError("certified_value must be set exactly when the bounds agree")
        if certified and self.certified_value != self.lower_bound:
            raise ValueError("certified_value must equal the bounds")
        return self

    @property
    def certified(self) -> bool:
        return self.certified_value is not None

    @property
    def interval(self) -> tuple[int, int | None]:
        return self.lower_bound, self.upper_bound


class GolodShafarevichVerdict(BaseModel):
    """Whether ``deficiency < -d^2/4 + d`` holds for a p-group of rank ``d``."""

    model_config = ConfigDict(frozen=True)

    rank: int
    deficiency: int
    threshold: str
    consistent: bool


class FigureRow(BaseModel):
    """One row of the deficiency table: ``n``, the block counts and the group label."""

    model_config = ConfigDict(frozen=True)

    n: int
    counts: BlockCounts
    name: str


def upper_bound(h1: FinAbGroup, h2: FinAbGroup) -> int:
    """``rk(H1) - d(H2)``."""
    return h1.torsion_free_rank - min_generators(h2)


def _excess(m: int) -> int:
    return comb(m, 2) + m // 2


def solve(n: int) -> BlockCounts:
    """Block counts ``(r, s, t)`` with ``C(2r+2s+t, 2) + s - r = n``.

    ``m`` is the smallest positive integer with ``C(m,2) + floor(m/2) >= n``
    and ``d = n - C(m,2)``. A negative ``d`` becomes ``-d`` copies of ``A``,
    a positive one ``d`` copies of ``B``; cyclic blocks make up the rest of
    the ``m`` generators.

    Example:
        ```python
        counts = solve(7)
        print(counts.r, counts.s, counts.t)
        # 0 1 2
        ```

    Raises:
        ValueError: If ``n`` is negative.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    m = 1
    while _excess(m) < n:
        m += 1
    d = n - comb(m, 2)
    r, s = (0, d) if d >= 0 else (-d, 0)
    return BlockCounts(r=r, s=s, t=m - 2 * r - 2 * s, trace_m=m, trace_d=d)


def deficiency_of_counts(counts: BlockCounts | tuple[int, int, int]) -> int:
    """Deficiency ``-(C(2r+2s+t, 2) + s - r)`` of ``A^r x B^s x C^t``.

    Accepts a tuple so that ``r`` and ``s`` may both be positive.
    """
    r, s, t = (counts.r, counts.s, counts.t) if isinstance(counts, BlockCounts) else counts
    return -(comb(2 * r + 2 * s + t, 2) + s - r)


def construct(p: int, n: int) -> Presentation:
    """A presentation of a finite p-group with deficiency ``-n``.

    Factors come in the order A-blocks, B-blocks, C-blocks. The result
    carries the block counts as its pedigree.

    Raises:
        NotPrimeError: If ``p`` is not prime.
        ValueError: If ``n`` is negative.
    """
    require_prime(p)
    result = block_product(solve(n).with_prime(p))
    if presentation_deficiency(result) != -n:
        raise PgdefError(f"constructed presentation has deficiency {presentation_deficiency(result)}, expected {-n}")
    return result


def certify(
    presentation: Presentation,
    mode: CertificationMode | str = CertificationMode.KUNNETH,
    *,
    max_cosets: int | None = None,
    ceiling: int | None = None,
    config: PgdefConfig | None = None,
) -> DeficiencyCertificate:
    """Pin the deficiency between the presentation count and ``rk(H1) - d(H2)``.

    In ``table`` mode H2 comes from the bar complex of the enumerated group;
    a coset-limit failure is reported as an unknown certificate with the
    error attached. In ``kunneth`` mode H2 comes from the pedigree.

    Raises:
        OrderCeilingExceeded: Table mode on a group above the H2 ceiling.
        MissingPedigreeError: Kunneth mode on a presentation without a pedigree.
        PedigreeMismatchError: Kunneth mode on a presentation its pedigree does not describe.
    """
    mode = CertificationMode(mode)
    config = (config or PgdefConfig()).with_overrides(max_cosets=max_cosets, h2_order_ceiling=ceiling)
    lower = presentation_deficiency(presentation)
    h1 = h1_from_presentation(presentation)

    if mode is CertificationMode.KUNNETH:
        pedigree = checked_pedigree(presentation)
        h2 = h2_of_block_product(pedigree.p, pedigree.r, pedigree.s, pedigree.t)
        provenance = f"kunneth over {group_name(pedigree, ascii=True)} at p = {pedigree.p}; {BLOCK_DATA_PROVENANCE}"
    else:
        try:
            table = group_table(presentation, config=config)
        except CosetLimitExceeded as e:
            logger.info("certification unknown: %s", e)
            return DeficiencyCertificate(
                presentation=presentation,
                mode=mode,
                lower_bound=lower,
                h1=h1,
                provenance="table",
                error=str(e),
                error_type=type(e).__name__,
            )
        h2 = h2_from_table(table, config=config)
        provenance = f"bar complex of a group of order {table.order}"

    upper = upper_bound(h1, h2)
    certificate = DeficiencyCertificate(
        presentation=presentation,
        mode=mode,
        lower_bound=lower,
        upper_bound=upper,
        certified_value=lower if lower == upper else None,
        h1=h1,
        h2=h2,
        provenance=provenance,
        minimal_presentation=presentation.num_generators == min_generators(h1),
    )
    if certificate.certified:
        logger.info("certified deficiency %d (%s)", lower, mode)
    else:
        logger.info("deficiency in [%d, %d] (%s)", lower, upper, mode)
    return certificate


def golod_shafarevich_check(rank_d: int, def_value: int) -> GolodShafarevichVerdict:
    """Exact check of ``def_value < -rank_d^2/4 + rank_d``.

    Every finite p-group of rank ``d`` satisfies it, so a failure flags an
    impossible claim.

    Raises:
        ValueError: If ``rank_d < 1``.
    """
    if rank_d < 1:
        raise ValueError(f"rank must be positive, got {rank_d}")
    threshold = Fraction(-(rank_d**2), 4) + rank_d
    return GolodShafarevichVerdict(
        rank=rank_d, deficiency=def_value, threshold=str(threshold), consistent=def_value < threshold
    )


def group_name(counts: BlockCounts, *, ascii: bool = False) -> str:
    """Label such as ``A×C²`` (``A x C^2`` with ``ascii``)."""
    parts = [
        block_name(kind, k, ascii=ascii)
        for kind, k in ((BlockKind.A, counts.r), (BlockKind.B, counts.s), (BlockKind.C, counts.t))
        if k
    ]
    return (" x " if ascii else "×").join(parts) or "1"


def figure_one_table(p: int, max_n: int, *, ascii: bool = False) -> list[FigureRow]:
    """The witness group for each deficiency ``0, -1, ..., -max_n``."""
    require_prime(p)
    rows = []
    for n in range(max_n + 1):
        counts = solve(n).with_prime(p)
        rows.append(FigureRow(n=n, counts=counts, name=group_name(counts, ascii=ascii)))
    return rows


__all__ = [
    "DeficiencyCertificate",
    "FigureRow",
    "GolodShafarevichVerdict",
    "certify",
    "construct",
    "deficiency_of_counts",
    "figure_one_table",
    "golod_shafarevich_check",
    "group_name",
    "solve",
    "upper_bound",
]
