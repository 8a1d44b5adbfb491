"""The presentation data model."""

from __future__ import annotations

import re

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..int_linalg import IntMatrix
from ..types.counts import BlockCounts
from ..words import Word, exponent_sums

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class Presentation(BaseModel):
    """A finite presentation ``<X | R>``.

    Relators are stored as freely reduced, nonempty words over the generator
    indices. The JSON form (``model_dump_json(by_alias=True)``) is the native
    file format::

        {"generators": ["a", "b"], "relators": [[[0, 1], [0, 1]], ...], "prime": 2, "pedigree": null}
    """

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    generator_names: tuple[str, ...] = Field(..., alias="generators", description="Display names of the generators.")
    relators: tuple[Word, ...] = Field(default=(), description="Relator words.")
    prime: int | None = Field(default=None, ge=2, description="The prime p when this presents a p-group.")
    pedigree: BlockCounts | None = Field(
        default=None, description="Block multiplicities when built as a product of building blocks."
    )

    @model_validator(mode="after")
    def _check_relators(self) -> Presentation:
        if len(set(self.generator_names)) != len(self.generator_names):
            raise ValueError("generator names must be distinct")
        for name in self.generator_names:
            if not _NAME.fullmatch(name):
                raise ValueError(f"invalid generator name {name!r}")
        n = len(self.generator_names)
        for k, relator in enumerate(self.relators):
            if relator.is_identity():
                raise ValueError(f"relator {k} is the empty word")
            if relator.max_index() >= n:
                raise ValueError(f"relator {k} uses generator {relator.max_index()} but only {n} exist")
        return self

    @property
    def num_generators(self) -> int:
        return len(self.generator_names)

    @property
    def num_relators(self) -> int:
        return len(self.relators)

    @property
    def counts(self) -> tuple[int, int]:
        """``(generators, relators)``."""
        return self.num_generators, self.num_relators

    def sorted_relators(self) -> list[tuple[tuple[int, int], ...]]:
        """Relators as letter tuples in sorted order, for order-insensitive comparisons."""
        return sorted(r.letters for r in self.relators)


def presentation_deficiency(presentation: Presentation) -> int:
    """Generators minus relators; a lower bound for the deficiency of the group."""
    return presentation.num_generators - presentation.num_relators


def abelianization_matrix(presentation: Presentation) -> IntMatrix:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    n = presentation.num_generators
    return IntMatrix.from_rows([exponent_sums(r, n) for r in presentation.relators], ncols=n)
