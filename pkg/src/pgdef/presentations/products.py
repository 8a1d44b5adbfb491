"""Direct products of presentations.

``<X | R> x <Y | S> = <X u Y | R u S u {[x, y] : x in X, y in Y}>``
"""

from __future__ import annotations

import re
from math import comb

from ..types.counts import BlockCounts
from ..types.enums import BlockKind
from ..words import Word, commutator
from .blocks import building_block, require_prime
from .model import Presentation

_STAMPED = re.compile(r"(.*?[A-Za-z_])(\d+)")


def _split(name: str) -> tuple[str, int | None]:
    match = _STAMPED.fullmatch(name)
    if match is None:
        return name, None
    return match.group(1), int(match.group(2))


def _stamp(names: tuple[str, ...], offset: int) -> tuple[list[str], int]:
    """Factor-stamp ``names`` after ``offset`` earlier factors; returns the names and the last stamp used."""
    parts = [_split(n) for n in names]
    if names and all(k is not None for _, k in parts):
        stamped = [f"{base}{k + offset}" for base, k in parts]
        return stamped, offset + max(k for _, k in parts if k is not None)
    return [f"{n}{offset + 1}" for n in names], offset + 1


def direct_product(first: Presentation, second: Presentation) -> Presentation:
    """The standard presentation of ``G x H`` from presentations of ``G`` and ``H``.

    Generators of ``second`` are shifted past those of ``first``. Relators come
    in the order: ``first``'s, ``second``'s, then the commutators ``[x, y]``
    ordered by ``(x, y)``. Generator names are stamped with factor numbers
    (``a1, b1, a2, ...``).
    """
    left_names, last = _stamp(first.generator_names, 0)
    right_names, _ = _stamp(second.generator_names, last)
    shift = first.num_generators
    relators = (
        list(first.relators)
        + [r.shifted(shift) for r in second.relators]
        + [
            commutator(Word.generator(x), Word.generator(shift + y))
            for x in range(first.num_generators)
            for y in range(second.num_generators)
        ]
    )
    prime = first.prime if first.prime == second.prime else None
    return Presentation(generator_names=tuple(left_names + right_names), relators=tuple(relators), prime=prime)


def power_product(presentation: Presentation, k: int) -> Presentation:
    """``P x P x ... x P`` with ``k`` factors, folded from the left.

    Raises:
        ValueError: If ``k < 1``.
    """
    if k < 1:
        raise ValueError(f"power_product needs at least one factor, got {k}")
    result = presentation
    for _ in range(k - 1):
        result = direct_product(result, presentation)
    return result


def product_of(factors: list[Presentation]) -> Presentation:
    """Left fold of :func:`direct_product` over a nonempty list."""
    if not factors:
        raise ValueError("product_of needs at least one factor")
    result = factors[0]
    for factor in factors[1:]:
        result = direct_product(result, factor)
    return result


def block_product_counts(r: int, s: int, t: int) -> tuple[int, int]:
    """Closed-form ``(generators, relators)`` of the standard presentation of ``A^r x B^s x C^t``."""
    m = 2 * r + 2 * s + t
    return m, 2 * r + 4 * s + t + comb(m, 2) - r - s


def block_product(counts: BlockCounts) -> Presentation:
    """The standard presentation of ``A_p^r x B_p^s x C_p^t``, factors in A, B, C order, with ``counts`` as pedigree.

    Raises:
        ValueError: If ``counts`` carries no prime.
        NotPrimeError: If its prime is not prime.
    """
    if counts.p is None:
        raise ValueError("block_product needs counts with a prime")
    p = require_prime(counts.p)
    kinds = [BlockKind.A] * counts.r + [BlockKind.B] * counts.s + [BlockKind.C] * counts.t
    blocks = {kind: building_block(kind, p) for kind in set(kinds)}
    result = product_of([blocks[kind] for kind in kinds])
    return result.model_copy(update={"prime": p, "pedigree": counts})
