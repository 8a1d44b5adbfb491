"""Custom exception hierarchy for pgdef."""

from __future__ import annotations


class PgdefError(Exception):
    """Base exception for all pgdef errors."""


class PresentationSyntaxError(PgdefError):
    """Raised when presentation text does not match the grammar.

    Attributes:
        line: 1-based line of the offending token, if known.
        column: 1-based column of the offending token, if known.
        source_snippet: The offending source line, if known.
    """

    def __init__(
        self,
        message: str,
        line: int | None = None,
        column: int | None = None,
        source_snippet: str | None = None,
    ):
        self.line = line
        self.column = column
        self.source_snippet = source_snippet
        super().__init__(self._format_message(message, line, column, source_snippet))

    @staticmethod
    def _format_message(
        message: str,
        line: int | None,
        column: int | None,
        source_snippet: str | None,
    ) -> str:
        parts = [message]
        if line is not None:
            loc = f"at line {line}"
            if column is not None:
                loc += f", column {column}"
            parts.append(loc)

        full_msg = " ".join(parts)
        if source_snippet is not None:
            full_msg += f"\n\n  {source_snippet}"
            if column is not None:
                full_msg += f"\n  {' ' * (column - 1)}^"
        return full_msg


class UnknownGeneratorError(PresentationSyntaxError):
    """A relator mentions a name that is not in the generator list."""

    def __init__(
        self,
        name: str,
        line: int | None = None,
        column: int | None = None,
        source_snippet: str | None = None,
    ):
        self.name = name
        super().__init__(f"Unknown generator {name!r}", line=line, column=column, source_snippet=source_snippet)


class NotPrimeError(PgdefError, ValueError):
    """A prime parameter was given a non-prime value."""

    def __init__(self, value: int):
        self.value = value
        super().__init__(f"{value} is not a prime")


class GeneratorIndexError(PgdefError, IndexError):
    """A word refers to a generator index outside the presentation."""

    def __init__(self, index: int, num_generators: int):
        self.index = index
        self.num_generators = num_generators
        super().__init__(f"generator index {index} out of range for {num_generators} generators")


class CosetLimitExceeded(PgdefError):
    """Coset enumeration ran out of room.

    The group may be infinite, or ``max_cosets`` is too small. The table is
    never truncated silently.
    """

    def __init__(self, max_cosets: int, live_cosets: int):
        self.max_cosets = max_cosets
        self.live_cosets = live_cosets
        super().__init__(f"coset limit {max_cosets} exceeded ({live_cosets} live cosets after lookahead)")


class TableNotClosedError(PgdefError):
    """A coset table still has undefined entries."""

    def __init__(self, row: int, column: int):
        self.row = row
        self.column = column
        super().__init__(f"coset table entry ({row}, {column}) is undefined")


class ChainConditionViolated(PgdefError):
    """Two consecutive boundary maps do not compose to zero."""


class OrderCeilingExceeded(PgdefError):
    """A group is too large for the bar-complex H2 oracle."""

    def __init__(self, order: int, ceiling: int):
        self.order = order
        self.ceiling = ceiling
        super().__init__(
            f"group of order {order} exceeds the H2 table ceiling {ceiling}; use the Kunneth pipeline instead"
        )


class MissingPedigreeError(PgdefError):
    """Kunneth certification needs a presentation built by ``construct``."""


class InfiniteAbelianError(PgdefError):
    """The operation only supports finite abelian groups."""


class PedigreeMismatchError(PgdefError):
    """A pedigree does not describe the presentation that carries it."""
