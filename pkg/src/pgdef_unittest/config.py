import os
from dataclasses import dataclass
from functools import cache

from pgdef.presentations import building_block, direct_product, parse_presentation, power_product
from pgdef.presentations.model import Presentation
from pgdef.types.enums import BlockKind

DEFAULT_TEST_SEED = 20240229


@dataclass(frozen=True)
class CorpusEntry:
    presentation: Presentation
    order: int


@dataclass
class TestConfig:
    seed: int
    max_cosets: int

    def rng_seed(self, offset: int = 0) -> int:
        return self.seed + offset


def get_test_config() -> TestConfig:
    seed = int(os.getenv("PGDEF_TEST_SEED", str(DEFAULT_TEST_SEED)))
    max_cosets = int(os.getenv("PGDEF_TEST_MAX_COSETS", "4096"))
    return TestConfig(seed=seed, max_cosets=max_cosets)


@cache
def get_corpus() -> dict[str, CorpusEntry]:
    """Named presentations of small finite groups with their known orders."""
    corpus: dict[str, CorpusEntry] = {}
    for p in (2, 3):
        corpus[f"A{p}"] = CorpusEntry(building_block(BlockKind.A, p), 8 if p == 2 else p**3)
        corpus[f"B{p}"] = CorpusEntry(building_block(BlockKind.B, p), 16 if p == 2 else p**3)
        corpus[f"C{p}"] = CorpusEntry(building_block(BlockKind.C, p), p)
    c2 = building_block(BlockKind.C, 2)
    corpus["C2^2"] = CorpusEntry(power_product(c2, 2), 4)
    corpus["C2^3"] = CorpusEntry(power_product(c2, 3), 8)
    corpus["C3^2"] = CorpusEntry(power_product(building_block(BlockKind.C, 3), 2), 9)
    corpus["C3^3"] = CorpusEntry(power_product(building_block(BlockKind.C, 3), 3), 27)
    corpus["A2xC2"] = CorpusEntry(direct_product(building_block(BlockKind.A, 2), c2), 16)
    corpus["B2xC2"] = CorpusEntry(direct_product(building_block(BlockKind.B, 2), c2), 32)
    corpus["Z4"] = CorpusEntry(parse_presentation("< a | a^4 >"), 4)
    corpus["S3"] = CorpusEntry(parse_presentation("< a, b | a^3, b^2, (a*b)^2 >"), 6)
    return corpus
