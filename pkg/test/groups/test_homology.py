"""Tests for H1 and H2 through the presentation, bar-complex and Kunneth pipelines."""

from math import comb

import pytest

from pgdef import MissingPedigreeError, OrderCeilingExceeded, PedigreeMismatchError
from pgdef.coset_enum import cyclic_table, group_table
from pgdef.deficiency import construct
from pgdef.homology import (
    BLOCK_MULTIPLIER_RANK,
    bar_complex,
    block_homology,
    checked_pedigree,
    efficiency_report,
    h1_from_presentation,
    h1_from_table,
    h2_from_table,
    h2_kunneth,
    h2_of_block_product,
    homology,
)
from pgdef.int_linalg import FinAbGroup, min_generators
from pgdef.presentations import building_block, parse_presentation, power_product, product_of
from pgdef.types import BlockCounts, BlockKind, HomologyVia
from pgdef_unittest.config import get_corpus

Z2 = FinAbGroup.cyclic(2)
Z3 = FinAbGroup.cyclic(3)
TRIVIAL = FinAbGroup.trivial()


def _block_product(p: int, r: int, s: int, t: int):
    kinds = [BlockKind.A] * r + [BlockKind.B] * s + [BlockKind.C] * t
    return product_of([building_block(kind, p) for kind in kinds])


# (p, r, s, t) with group order at most 16
SMALL_PRODUCTS = [
    (2, 0, 0, 1),
    (2, 0, 0, 2),
    (2, 0, 0, 3),
    (2, 0, 0, 4),
    (2, 1, 0, 0),
    (2, 1, 0, 1),
    (2, 0, 1, 0),
    (3, 0, 0, 1),
    (3, 0, 0, 2),
]

# every (r, s, t) with at most six generators, A and B mixed
COUNTS_UP_TO_SIX = [
    (r, s, t)
    for r in range(4)
    for s in range(4)
    for t in range(7)
    if r + s + t >= 1 and 2 * r + 2 * s + t <= 6
]


class TestBarComplex:
    """Shape and chain conditions of the normalized bar complex."""

    def test_cyclic_of_order_two(self):
        bar = bar_complex(cyclic_table(2))
        assert bar.d1.tolist() == [[0]]
        assert bar.d2.tolist() == [[2]]
        assert bar.d3.tolist() == [[0]]

    def test_shapes(self):
        bar = bar_complex(cyclic_table(4))
        assert bar.d1.shape == (3, 1)
        assert bar.d2.shape == (9, 3)
        assert bar.d3.shape == (27, 9)

    @pytest.mark.parametrize("name", ["C3", "Z4", "S3", "C2^2", "A2", "C2^3"])
    def test_chain_conditions(self, name):
        bar = bar_complex(group_table(get_corpus()[name].presentation))
        assert (bar.d2 @ bar.d1).is_zero()
        assert (bar.d3 @ bar.d2).is_zero()


class TestH1:
    """The abelianization from presentations and from tables."""

    def test_blocks(self):
        assert h1_from_presentation(building_block(BlockKind.C, 5)) == FinAbGroup.cyclic(5)
        assert h1_from_presentation(building_block(BlockKind.A, 2)) == FinAbGroup.elementary(2, 2)
        assert h1_from_presentation(building_block(BlockKind.B, 2)) == FinAbGroup.from_orders([2, 4])
        assert h1_from_presentation(building_block(BlockKind.B, 3)) == FinAbGroup.elementary(3, 2)
        assert h1_from_presentation(building_block(BlockKind.A, 3)) == FinAbGroup.from_orders([3, 3])

    def test_infinite_abelianization(self):
        assert h1_from_presentation(parse_presentation("< a, b | a^2 >")) == FinAbGroup.from_orders([2], 1)

    @pytest.mark.parametrize("name", ["A2", "B2", "C2", "A3", "B3", "C3", "C2^2", "C2^3", "S3", "Z4"])
    def test_table_agrees_with_presentation(self, name):
        presentation = get_corpus()[name].presentation
        assert h1_from_table(group_table(presentation)) == h1_from_presentation(presentation)

    def test_order_of_abelianization_matches_table(self):
        for name, entry in get_corpus().items():
            table = group_table(entry.presentation)
            assert h1_from_presentation(entry.presentation).order == table.abelianization_order(), name


class TestH2FromTable:
    """Schur multipliers from the bar complex."""

    def test_cyclic_groups_are_trivial(self):
        assert h2_from_table(cyclic_table(2)).is_trivial
        assert h2_from_table(cyclic_table(3)).is_trivial
        assert h2_from_table(cyclic_table(8)).is_trivial

    def test_quaternion_is_trivial(self):
        assert h2_from_table(group_table(building_block(BlockKind.A, 2))).is_trivial

    def test_klein_four(self):
        assert h2_from_table(group_table(power_product(building_block(BlockKind.C, 2), 2))) == Z2

    def test_elementary_of_rank_three(self):
        c2 = building_block(BlockKind.C, 2)
        assert h2_from_table(group_table(power_product(c2, 3))) == FinAbGroup.elementary(2, 3)

    def test_symmetric_group(self):
        assert h2_from_table(group_table(get_corpus()["S3"].presentation)).is_trivial

    def test_b2_block(self):
        assert h2_from_table(group_table(building_block(BlockKind.B, 2))) == FinAbGroup.elementary(2, 2)

    def test_routes_agree(self):
        table = group_table(building_block(BlockKind.A, 2))
        kernel = h2_from_table(table, route="kernel")
        summand = h2_from_table(table, route="summand")
        assert kernel == summand == TRIVIAL

    def test_a2_times_c2_matches_kunneth(self):
        presentation = get_corpus()["A2xC2"].presentation
        assert h2_from_table(group_table(presentation)) == h2_of_block_product(2, 1, 0, 1)
        assert h2_of_block_product(2, 1, 0, 1) == FinAbGroup.elementary(2, 2)

    def test_order_ceiling(self):
        table = group_table(building_block(BlockKind.B, 2))
        with pytest.raises(OrderCeilingExceeded) as exc_info:
            h2_from_table(table, ceiling=8)
        assert (exc_info.value.order, exc_info.value.ceiling) == (16, 8)

    @pytest.mark.slow
    def test_b3_block(self):
        assert h2_from_table(group_table(building_block(BlockKind.B, 3))) == FinAbGroup.elementary(3, 2)

    @pytest.mark.slow
    def test_a3_block(self):
        assert h2_from_table(group_table(building_block(BlockKind.A, 3))).is_trivial

    @pytest.mark.slow
    def test_b2_times_c2(self):
        presentation = get_corpus()["B2xC2"].presentation
        assert h2_from_table(group_table(presentation)) == h2_of_block_product(2, 0, 1, 1)


class TestKunneth:
    """The compositional H2 of products."""

    def test_two_cyclic_groups(self):
        assert h2_kunneth(TRIVIAL, TRIVIAL, Z2, Z2) == Z2

    def test_coprime_factors(self):
        assert h2_kunneth(TRIVIAL, TRIVIAL, Z2, Z3).is_trivial

    def test_tensor_of_cyclic_groups(self):
        assert h2_kunneth(TRIVIAL, Z2, FinAbGroup.cyclic(4), FinAbGroup.cyclic(8)) == FinAbGroup.from_orders([2, 4])

    def test_block_homology(self):
        for p in (2, 3, 5):
            for kind in BlockKind:
                h1, h2 = block_homology(kind, p)
                assert h1 == h1_from_presentation(building_block(kind, p))
                assert h2 == FinAbGroup.elementary(p, BLOCK_MULTIPLIER_RANK[kind])

    def test_block_products(self):
        assert min_generators(h2_of_block_product(2, 1, 0, 2)) == 5
        assert min_generators(h2_of_block_product(3, 0, 1, 2)) == 7
        assert h2_of_block_product(5, 0, 0, 1).is_trivial
        assert h2_of_block_product(3, 0, 0, 3) == FinAbGroup.elementary(3, 3)

    @pytest.mark.parametrize("p", [2, 3])
    @pytest.mark.parametrize("r,s,t", COUNTS_UP_TO_SIX)
    def test_multiplier_rank_formula(self, p, r, s, t):
        m = 2 * r + 2 * s + t
        assert min_generators(h2_of_block_product(p, r, s, t)) == comb(m, 2) + s - r

    def test_mixed_blocks_pair_through_tensor(self):
        # A_2 x B_2: (Z/2)^2 (x) (Z/2 + Z/4) adds four Z/2 to the (Z/2)^2 of B_2
        assert h2_of_block_product(2, 1, 1, 0) == FinAbGroup.elementary(2, 6)

    def test_rejects_empty_product(self):
        with pytest.raises(ValueError):
            h2_of_block_product(2, 0, 0, 0)
        with pytest.raises(ValueError):
            h2_of_block_product(2, -1, 0, 2)

    @pytest.mark.parametrize("p,r,s,t", SMALL_PRODUCTS)
    def test_agrees_with_table(self, p, r, s, t):
        table = group_table(_block_product(p, r, s, t))
        assert h2_from_table(table) == h2_of_block_product(p, r, s, t)


class TestCheckedPedigree:
    """A pedigree must describe the presentation that carries it."""

    def test_constructions_pass(self):
        for n in range(12):
            presentation = construct(3, n)
            assert checked_pedigree(presentation) == presentation.pedigree

    def test_relator_order_is_ignored(self):
        presentation = construct(2, 5)
        shuffled = presentation.model_copy(update={"relators": tuple(reversed(presentation.relators))})
        assert checked_pedigree(shuffled) == presentation.pedigree

    def test_pedigree_needs_a_prime(self):
        presentation = building_block(BlockKind.C, 2).model_copy(update={"pedigree": BlockCounts.of(0, 0, 1)})
        with pytest.raises(MissingPedigreeError):
            checked_pedigree(presentation)

    def test_prime_must_match(self):
        with pytest.raises(PedigreeMismatchError):
            checked_pedigree(construct(3, 2).model_copy(update={"prime": 5}))

    def test_generator_count_must_match(self):
        presentation = construct(2, 2).model_copy(update={"pedigree": construct(2, 5).pedigree})
        with pytest.raises(PedigreeMismatchError, match="generators"):
            checked_pedigree(presentation)

    def test_relators_must_match(self):
        presentation = construct(2, 1).model_copy(update={"pedigree": construct(2, 2).pedigree})
        with pytest.raises(PedigreeMismatchError, match="relators"):
            checked_pedigree(presentation)


class TestHomologyDispatch:
    """The ``homology`` entry point."""

    def test_degree_one_routes_agree(self):
        presentation = building_block(BlockKind.B, 2)
        assert homology(presentation, 1) == homology(presentation, 1, via=HomologyVia.TABLE)

    def test_degree_two_via_table(self):
        assert homology(building_block(BlockKind.B, 2), 2, via="table") == FinAbGroup.elementary(2, 2)

    def test_degree_two_via_kunneth(self):
        assert homology(construct(3, 7), 2, via="kunneth") == FinAbGroup.elementary(3, 7)

    def test_degree_two_needs_an_oracle(self):
        with pytest.raises(ValueError):
            homology(building_block(BlockKind.C, 2), 2)

    def test_kunneth_needs_pedigree(self):
        with pytest.raises(MissingPedigreeError):
            homology(building_block(BlockKind.C, 2), 2, via="kunneth")

    def test_kunneth_rejects_foreign_pedigree(self):
        presentation = construct(2, 1).model_copy(update={"pedigree": construct(2, 2).pedigree})
        with pytest.raises(PedigreeMismatchError):
            homology(presentation, 2, via="kunneth")

    def test_unsupported_degree(self):
        with pytest.raises(ValueError):
            homology(building_block(BlockKind.C, 2), 3)


class TestEfficiencyReport:
    """Comparison with ``rk(H1) - d(H2)``."""

    def test_constructed_presentations_are_efficient(self):
        for n in range(8):
            report = efficiency_report(construct(2, n))
            assert report.efficient, n
            assert report.efficiency_gap == 0
            assert report.rank_h2 == n
            assert report.minimal_presentation

    def test_redundant_presentation(self):
        report = efficiency_report(get_corpus()["S3"].presentation)
        assert report.h1 == Z2
        assert report.h2.is_trivial
        assert report.efficiency_gap == 1
        assert not report.efficient
        assert not report.minimal_presentation

    def test_explicit_h2(self):
        report = efficiency_report(building_block(BlockKind.B, 3), h2=FinAbGroup.elementary(3, 2))
        assert (report.generators, report.relators) == (2, 4)
        assert report.efficient
