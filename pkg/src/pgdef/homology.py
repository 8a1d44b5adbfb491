"""H1 and H2 with trivial integer coefficients.

Three pipelines:

- from a presentation: ``H1 = coker(abelianization matrix)``;
- from a multiplication table through the normalized bar complex (H1 and H2),
  feasible up to a configurable order ceiling;
- compositionally for products, through ``H2(GxH) = H2G + H2H + H1G (x) H1H``.
"""

from __future__ import annotations

import logging
from typing import Literal

from pydantic import BaseModel, ConfigDict

from ._config import PgdefConfig
from ._exceptions import MissingPedigreeError, OrderCeilingExceeded, PedigreeMismatchError
from .coset_enum import GroupTable, group_table
from .int_linalg import (
    FinAbGroup,
    IntMatrix,
    cokernel,
    direct_sum,
    direct_sum_all,
    homology_quotient,
    matrix_summary,
    min_generators,
    tensor,
)
from .presentations.blocks import building_block, require_prime
from .presentations.model import Presentation, abelianization_matrix
from .presentations.products import block_product
from .types.counts import BlockCounts
from .types.enums import BlockKind, HomologyVia

logger = logging.getLogger(__name__)

# Schur multipliers of the blocks, as (Z/p)^k exponents. Re-derived by the
# bar-complex oracle in the test suite for p = 2, 3.
BLOCK_MULTIPLIER_RANK: dict[BlockKind, int] = {
    BlockKind.A: 0,
    BlockKind.B: 2,
    BlockKind.C: 0,
}

BLOCK_DATA_PROVENANCE = "block H2 values: A, C trivial; B (Z/p)^2; re-derived by the bar-complex oracle for p = 2, 3"


class BarComplexSlice(BaseModel):
    """Boundary maps ``d1, d2, d3`` of the normalized bar complex.

    Degree-k chains have one basis vector per k-tuple of nonidentity
    elements, indexed lexicographically with element ``g`` at position
    ``g - 1``. Matrices act on row vectors: ``d_k`` has one row per degree-k
    basis tuple.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    order: int
    d1: IntMatrix
    d2: IntMatrix
    d3: IntMatrix


class EfficiencyReport(BaseModel):
    """How close a presentation comes to the bound ``rk(H1) - d(H2)``."""

    model_config = ConfigDict(frozen=True)

    generators: int
    relators: int
    h1: FinAbGroup
    h2: FinAbGroup
    rank_h1: int
    rank_h2: int
    efficiency_gap: int
    efficient: bool
    minimal_presentation: bool


# ---------------------------------------------------------------------------
# Presentations
# ---------------------------------------------------------------------------


def h1_from_presentation(presentation: Presentation) -> FinAbGroup:
    """The abelianization, as the cokernel of the exponent-sum matrix."""
    return cokernel(abelianization_matrix(presentation))


# ---------------------------------------------------------------------------
# Bar complex
# ---------------------------------------------------------------------------


def bar_complex(table: GroupTable) -> BarComplexSlice:
    """Normalized bar boundary maps in degrees 1 to 3.

    ``d2(g,h) = (h) - (gh) + (g)`` and
    ``d3(g,h,k) = (h,k) - (gh,k) + (g,hk) - (g,h)``; terms containing the
    identity vanish.
    """
    n = table.order
    m = n - 1
    mul = table.product
    e = table.identity
    # Nonidentity elements in index order; element x sits at position pos[x].
    elements = [x for x in range(n) if x != e]
    pos = {x: i for i, x in enumerate(elements)}

    d1 = IntMatrix.zeros(m, 1)

    entries2: list[tuple[int, int, int]] = []
    for i, g in enumerate(elements):
        for j, h in enumerate(elements):
            row = i * m + j
            entries2.append((row, j, 1))
            entries2.append((row, i, 1))
            gh = mul[g][h]
            if gh != e:
                entries2.append((row, pos[gh], -1))
    d2 = IntMatrix.from_entries(m * m, m, entries2)

    entries3: list[tuple[int, int, int]] = []
    for i, g in enumerate(elements):
        for j, h in enumerate(elements):
            gh = mul[g][h]
            for k, x in enumerate(elements):
                row = (i * m + j) * m + k
                entries3.append((row, j * m + k, 1))
                entries3.append((row, i * m + j, -1))
                if gh != e:
                    entries3.append((row, pos[gh] * m + k, -1))
                hx = mul[h][x]
                if hx != e:
                    entries3.append((row, i * m + pos[hx], 1))
    d3 = IntMatrix.from_entries(m * m * m, m * m, entries3)

    logger.debug("bar complex of order %d: d2 %s, d3 %s", n, matrix_summary(d2), matrix_summary(d3))
    return BarComplexSlice(order=n, d1=d1, d2=d2, d3=d3)


def h1_from_table(table: GroupTable) -> FinAbGroup:
    """``ker d1 / im d2``, which is ``coker d2`` since ``d1 = 0``."""
    bar = bar_complex(table)
    return homology_quotient(bar.d1, bar.d2)


def h2_from_table(
    table: GroupTable,
    *,
    ceiling: int | None = None,
    route: Literal["auto", "kernel", "summand"] = "auto",
    config: PgdefConfig | None = None,
) -> FinAbGroup:
    """The Schur multiplier ``ker d2 / im d3`` of the bar complex.

    Raises:
        OrderCeilingExceeded: If the group order is above ``ceiling``
            (default from the config, 32).
    """
    config = (config or PgdefConfig()).with_overrides(h2_order_ceiling=ceiling)
    if table.order > config.h2_order_ceiling:
        raise OrderCeilingExceeded(table.order, config.h2_order_ceiling)
    bar = bar_complex(table)
    return homology_quotient(bar.d2, bar.d3, route=route)


# ---------------------------------------------------------------------------
# Kunneth
# ---------------------------------------------------------------------------


def h2_kunneth(h2_g: FinAbGroup, h2_h: FinAbGroup, h1_g: FinAbGroup, h1_h: FinAbGroup) -> FinAbGroup:
    """``H2(G x H) = H2(G) + H2(H) + H1(G) (x) H1(H)``.

    Raises:
        InfiniteAbelianError: If an H1 argument is infinite.
    """
    return direct_sum_all([h2_g, h2_h, tensor(h1_g, h1_h)])


def block_homology(kind: BlockKind | str, p: int) -> tuple[FinAbGroup, FinAbGroup]:
    """``(H1, H2)`` of a building block: H1 computed, H2 from the block data."""
    kind = BlockKind(kind)
    h1 = h1_from_presentation(building_block(kind, p))
    return h1, FinAbGroup.elementary(p, BLOCK_MULTIPLIER_RANK[kind])


def h2_of_block_product(p: int, r: int, s: int, t: int) -> FinAbGroup:
    """H2 of ``A_p^r x B_p^s x C_p^t`` by folding :func:`h2_kunneth` over the factors.

    Example:
        ```python
        h2 = h2_of_block_product(2, 1, 0, 2)
        print(min_generators(h2))
        # 5
        ```

    Raises:
        ValueError: If there are no factors or a count is negative.
    """
    require_prime(p)
    if min(r, s, t) < 0 or r + s + t < 1:
        raise ValueError(f"need at least one factor, got (r, s, t) = ({r}, {s}, {t})")
    factors = [BlockKind.A] * r + [BlockKind.B] * s + [BlockKind.C] * t
    data = {kind: block_homology(kind, p) for kind in set(factors)}

    h1, h2 = data[factors[0]]
    for kind in factors[1:]:
        h1_f, h2_f = data[kind]
        h2 = h2_kunneth(h2, h2_f, h1, h1_f)
        h1 = direct_sum(h1, h1_f)
    return h2


def checked_pedigree(presentation: Presentation) -> BlockCounts:
    """The pedigree of ``presentation``, once it is confirmed to describe exactly these generators and relators.

    The presentation must be the standard block product the pedigree names
    (relator order aside) and carry the same prime.

    Raises:
        MissingPedigreeError: If there is no pedigree or it has no prime.
        PedigreeMismatchError: If the pedigree describes a different presentation.
    """
    pedigree = presentation.pedigree
    if pedigree is None or pedigree.p is None:
        raise MissingPedigreeError("the Kunneth pipeline needs a presentation built by construct")
    label = f"(r, s, t) = ({pedigree.r}, {pedigree.s}, {pedigree.t}) at p = {pedigree.p}"
    if presentation.prime != pedigree.p:
        raise PedigreeMismatchError(f"presentation prime {presentation.prime} does not match the pedigree {label}")
    expected = block_product(pedigree)
    if presentation.num_generators != expected.num_generators:
        raise PedigreeMismatchError(
            f"{presentation.num_generators} generators, but the pedigree {label} has {expected.num_generators}"
        )
    if presentation.sorted_relators() != expected.sorted_relators():
        raise PedigreeMismatchError(f"relators are not those of the standard presentation for the pedigree {label}")
    return pedigree


def _pedigree_h2(presentation: Presentation) -> FinAbGroup:
    pedigree = checked_pedigree(presentation)
    return h2_of_block_product(pedigree.p, pedigree.r, pedigree.s, pedigree.t)


def homology(
    presentation: Presentation,
    degree: Literal[1, 2],
    *,
    via: HomologyVia | str = HomologyVia.PRESENTATION,
    config: PgdefConfig | None = None,
) -> FinAbGroup:
    """H1 or H2 of the group of ``presentation`` through the chosen pipeline.

    H2 is available from the ``table`` and ``kunneth`` pipelines only.

    Raises:
        OrderCeilingExceeded: Table pipeline on a group above the ceiling.
        CosetLimitExceeded: Table pipeline on a group that does not enumerate.
        MissingPedigreeError: Kunneth pipeline without a pedigree.
        PedigreeMismatchError: Kunneth pipeline on a presentation its pedigree does not describe.
    """
    via = HomologyVia(via)
    if degree not in (1, 2):
        raise ValueError(f"only degrees 1 and 2 are supported, got {degree}")
    if via is HomologyVia.TABLE:
        table = group_table(presentation, config=config)
        return h1_from_table(table) if degree == 1 else h2_from_table(table, config=config)
    if degree == 1:
        return h1_from_presentation(presentation)
    if via is HomologyVia.KUNNETH:
        return _pedigree_h2(presentation)
    raise ValueError("H2 needs the table or kunneth pipeline")


def efficiency_report(
    presentation: Presentation,
    *,
    h2: FinAbGroup | None = None,
    config: PgdefConfig | None = None,
) -> EfficiencyReport:
    """Compare a presentation of a finite p-group with ``rk(H1) - d(H2)``.

    H2 comes from the argument, else from the pedigree, else from the table
    oracle. The presentation is reported minimal when its generator count
    equals ``d(H1)``, which for finite p-groups is the rank ``d(G)``.
    """
    h1 = h1_from_presentation(presentation)
    if h2 is None:
        if presentation.pedigree is not None and presentation.pedigree.p is not None:
            h2 = _pedigree_h2(presentation)
        else:
            h2 = h2_from_table(group_table(presentation, config=config), config=config)
    generators, relators = presentation.counts
    rank_h1, rank_h2 = min_generators(h1), min_generators(h2)
    gap = (h1.torsion_free_rank - rank_h2) - (generators - relators)
    return EfficiencyReport(
        generators=generators,
        relators=relators,
        h1=h1,
        h2=h2,
        rank_h1=rank_h1,
        rank_h2=rank_h2,
        efficiency_gap=gap,
        efficient=gap == 0,
        minimal_presentation=generators == rank_h1,
    )


__all__ = [
    "BLOCK_DATA_PROVENANCE",
    "BLOCK_MULTIPLIER_RANK",
    "BarComplexSlice",
    "EfficiencyReport",
    "bar_complex",
    "block_homology",
    "checked_pedigree",
    "efficiency_report",
    "h1_from_presentation",
    "h1_from_table",
    "h2_from_table",
    "h2_kunneth",
    "h2_of_block_product",
    "homology",
]
