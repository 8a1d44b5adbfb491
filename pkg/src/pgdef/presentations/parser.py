"""
Presentation parser.

Reads the text grammar in ``grammar.lark`` (``< a, b | a^4, [a,b] >``) or the
native JSON format, and returns a :class:`Presentation`. Syntax errors carry
the line and column of the offending token.
"""

from functools import cache
from pathlib import Path
from typing import NamedTuple

from lark import Lark, Token, Transformer, Tree, v_args
from lark.exceptions import LarkError, UnexpectedCharacters, UnexpectedInput, UnexpectedToken, VisitError
from pydantic import ValidationError

from .._exceptions import PresentationSyntaxError, UnknownGeneratorError
from ..words import Word, commutator, multiply, power, product
from .model import Presentation


class ParseResult(NamedTuple):
    """Result of parsing presentation text."""

    valid: bool
    """Whether the text is a well-formed presentation."""

    presentation: Presentation | None
    """The presentation if valid, None otherwise."""

    error: PresentationSyntaxError | None
    """The error if invalid, None otherwise."""


@cache
def _get_parser() -> Lark:
    """Get or create the Lark parser (lazy initialization)."""
    grammar_path = Path(__file__).parent / "grammar.lark"
    with open(grammar_path) as f:
        grammar = f.read()

    return Lark(
        grammar,
        parser="lalr",
        start="start",
        propagate_positions=True,
    )


def _get_source_line(source: str, line: int) -> str | None:
    """Extract a specific line from source text (1-indexed)."""
    lines = source.splitlines()
    if 1 <= line <= len(lines):
        return lines[line - 1]
    return None


@v_args(inline=True)
class _WordBuilder(Transformer):
    """Turns relator subtrees into words over a fixed generator list."""

    def __init__(self, names: dict[str, int], source: str):
        super().__init__()
        self._names = names
        self._source = source

    def letter(self, token: Token) -> Word:
        index = self._names.get(str(token))
        if index is None:
            raise UnknownGeneratorError(
                str(token),
                line=token.line,
                column=token.column,
                source_snippet=_get_source_line(self._source, token.line) if token.line else None,
            )
        return Word.generator(index)

    def word(self, *factors: Word) -> Word:
        return product(factors)

    def factor(self, atom: Word) -> Word:
        return atom

    def raised(self, atom: Word, exponent: Token) -> Word:
        return power(atom, int(exponent))

    def bracket(self, u: Word, v: Word) -> Word:
        return commutator(u, v)

    def equation(self, left: Word, right: Word) -> Word:
        return multiply(left, power(right, -1))


def _build(tree: Tree, source: str) -> Presentation:
    generators_tree, relators_tree = tree.children
    names: list[str] = [str(t) for t in generators_tree.children]
    index: dict[str, int] = {}
    for token in generators_tree.children:
        if str(token) in index:
            raise PresentationSyntaxError(
                f"Duplicate generator {str(token)!r}",
                line=token.line,
                column=token.column,
                source_snippet=_get_source_line(source, token.line) if token.line else None,
            )
        index[str(token)] = len(index)

    relators: list[Word] = []
    if relators_tree is not None:
        builder = _WordBuilder(index, source)
        for child in relators_tree.children:
            try:
                word = builder.transform(child)
            except VisitError as e:
                raise e.orig_exc from None
            if word.is_identity():
                line = getattr(child.meta, "line", None)
                raise PresentationSyntaxError(
                    "Relator reduces to the empty word",
                    line=line,
                    column=getattr(child.meta, "column", None) if line else None,
                    source_snippet=_get_source_line(source, line) if line else None,
                )
            relators.append(word)
    return Presentation(generator_names=tuple(names), relators=tuple(relators))


def _parse_json(text: str) -> Presentation:
    try:
        return Presentation.model_validate_json(text)
    except ValidationError as e:
        raise PresentationSyntaxError(f"Invalid presentation JSON: {e}") from e


def parse(text: str) -> ParseResult:
    """Parse presentation text (grammar or native JSON) and return the result.

    Example:
        ```python
        result = parse("< a | a^2 >")
        print(result.presentation.counts)
        # (1, 1)
        ```
    """
    try:
        return ParseResult(valid=True, presentation=parse_presentation(text), error=None)
    except PresentationSyntaxError as e:
        return ParseResult(valid=False, presentation=None, error=e)


def parse_presentation(text: str) -> Presentation:
    """Parse presentation text, raising on errors.

    Text starting with ``{`` is read as native JSON.

    Raises:
        PresentationSyntaxError: On malformed input, with the position of the offending token.
        UnknownGeneratorError: If a relator names an undeclared generator.
    """
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    try:
        tree = _get_parser().parse(text)
    except (UnexpectedCharacters, UnexpectedToken, UnexpectedInput) as e:
        line = getattr(e, "line", None)
        column = getattr(e, "column", None)
        if not isinstance(line, int) or line < 1:
            line, column = None, None
        source_snippet = _get_source_line(text, line) if line else None
        message = (str(e).strip().splitlines() or ["Syntax error"])[0]
        raise PresentationSyntaxError(message, line=line, column=column, source_snippet=source_snippet) from None
    except LarkError as e:
        raise PresentationSyntaxError(str(e)) from None
    return _build(tree, text)


def validate(text: str) -> bool:
    """Return True if ``text`` parses as a presentation."""
    return parse(text).valid


def parse_presentation_file(file_path: str | Path) -> Presentation:
    """Parse a presentation file.

    Raises:
        FileNotFoundError: If the file doesn't exist.
        PresentationSyntaxError: If the contents are malformed.
    """
    file_path = Path(file_path)
    with open(file_path, encoding="utf-8") as f:
        return parse_presentation(f.read())


__all__ = [
    "ParseResult",
    "parse",
    "parse_presentation",
    "parse_presentation_file",
    "validate",
]
