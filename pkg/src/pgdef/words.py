"""Free-group words.

A word is a freely reduced sequence of letters ``(generator index, sign)``
with sign ``+1`` or ``-1``. The empty word is the identity. All operations are
pure and return new immutable words.

Commutators and conjugates follow one fixed convention throughout pgdef::

    [u, v] = u^-1 v^-1 u v        u^v = v^-1 u v
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import Annotated, Any, Literal, TypeAlias

from pydantic import BaseModel, ConfigDict, Field, model_serializer, model_validator

from ._exceptions import GeneratorIndexError

Sign: TypeAlias = Literal[1, -1]
Letter: TypeAlias = tuple[Annotated[int, Field(ge=0)], Sign]


class Word(BaseModel):
    """A freely reduced word over abstract generators ``0, 1, 2, ...``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    letters: tuple[Letter, ...] = Field(default=(), description="Letters as (generator index, sign) pairs.")

    @model_validator(mode="before")
    @classmethod
    def _accept_bare_letters(cls, data: Any) -> Any:
        # The native JSON format stores a word as a bare list of [index, sign] pairs.
        if isinstance(data, (list, tuple)):
            return {"letters": data}
        return data

    @model_serializer(mode="plain")
    def _dump_bare_letters(self) -> list[list[int]]:
        return [[g, s] for g, s in self.letters]

    @model_validator(mode="after")
    def _check_reduced(self) -> Word:
        for (g1, s1), (g2, s2) in zip(self.letters, self.letters[1:]):
            if g1 == g2 and s1 == -s2:
                raise ValueError(f"word is not freely reduced: ({g1},{s1}) is followed by its inverse")
        return self

    @classmethod
    def _trusted(cls, letters: tuple[Letter, ...]) -> Word:
        """Wrap letters already known to be reduced, skipping validation."""
        return cls.model_construct(letters=letters)

    @classmethod
    def identity(cls) -> Word:
        return cls._trusted(())

    @classmethod
    def generator(cls, index: int, sign: Sign = 1) -> Word:
        """The one-letter word ``x_index`` (or its inverse)."""
        if index < 0:
            raise GeneratorIndexError(index, 0)
        return cls._trusted(((index, sign),))

    def is_identity(self) -> bool:
        return not self.letters

    def max_index(self) -> int:
        """Largest generator index used, or -1 for the identity."""
        return max((g for g, _ in self.letters), default=-1)

    def shifted(self, offset: int) -> Word:
        """Rename generator ``i`` to ``i + offset``."""
        return Word._trusted(tuple((g + offset, s) for g, s in self.letters))

    def columns(self) -> list[int]:
        """Coset-table columns of the letters: ``2*g`` for ``x_g``, ``2*g + 1`` for its inverse."""
        return [2 * g + (0 if s > 0 else 1) for g, s in self.letters]

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: Word) -> Word:
        return multiply(self, other)

    def __invert__(self) -> Word:
        return invert(self)

    def __pow__(self, k: int) -> Word:
        return power(self, k)


def reduce(raw: Iterable[tuple[int, int]]) -> Word:
    """Freely reduce a letter sequence.

    Examples:
        ```python
        reduce([(0, 1), (1, 1), (1, -1), (0, 1)]).letters
        # ((0, 1), (0, 1))
        ```
    """
    stack: list[Letter] = []
    for g, s in raw:
        if s not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {s}")
        if g < 0:
            raise GeneratorIndexError(g, 0)
        if stack and stack[-1][0] == g and stack[-1][1] == -s:
            stack.pop()
        else:
            stack.append((g, s))
    return Word._trusted(tuple(stack))


def invert(w: Word) -> Word:
    return Word._trusted(tuple((g, -s) for g, s in reversed(w.letters)))


def multiply(u: Word, v: Word) -> Word:
    # Cancellation only happens at the seam.
    left = list(u.letters)
    right = v.letters
    i = 0
    while left and i < len(right) and left[-1][0] == right[i][0] and left[-1][1] == -right[i][1]:
        left.pop()
        i += 1
    return Word._trusted(tuple(left) + right[i:])


def product(words: Sequence[Word]) -> Word:
    result = Word.identity()
    for w in words:
        result = multiply(result, w)
    return result


def power(w: Word, k: int) -> Word:
    """The ``k``-fold product of ``w``; negative ``k`` uses the inverse."""
    base = w if k >= 0 else invert(w)
    result = Word.identity()
    for _ in range(abs(k)):
        result = multiply(result, base)
    return result


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u^-1 v^-1 u v``."""
    return product([invert(u), invert(v), u, v])


def conjugate(u: Word, v: Word) -> Word:
    """``u^v = v^-1 u v``."""
    return product([invert(v), u, v])


def exponent_sums(w: Word, num_generators: int) -> list[int]:
    """Signed count of each generator in ``w``.

    Raises:
        GeneratorIndexError: If ``w`` uses an index ``>= num_generators``.
    """
    sums = [0] * num_generators
    for g, s in w.letters:
        if g >= num_generators:
            raise GeneratorIndexError(g, num_generators)
        sums[g] += s
    return sums


__all__ = [
    "Letter",
    "Sign",
    "Word",
    "commutator",
    "conjugate",
    "exponent_sums",
    "invert",
    "multiply",
    "power",
    "product",
    "reduce",
]
