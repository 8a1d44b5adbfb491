"""Render presentations as text, native JSON, or scripts for GAP and Magma."""

from __future__ import annotations

from collections.abc import Callable
from itertools import groupby

from ..types.enums import OutputFormat, OutputFormatStr
from ..words import Word
from .model import Presentation


def _syllables(word: Word) -> list[tuple[int, int]]:
    """Runs of equal letters as ``(generator, signed exponent)``."""
    return [(g, s * len(list(run))) for (g, s), run in groupby(word.letters)]


def render_word(word: Word, name: Callable[[int], str], *, separator: str = "*") -> str:
    parts = []
    for g, k in _syllables(word):
        parts.append(name(g) if k == 1 else f"{name(g)}^{k}")
    return separator.join(parts)


def _render_text(presentation: Presentation) -> str:
    names = presentation.generator_names
    relators = ", ".join(render_word(r, names.__getitem__) for r in presentation.relators)
    return f"< {', '.join(names)} | {relators} >"


def _render_gap(presentation: Presentation) -> str:
    names = ", ".join(f'"{n}"' for n in presentation.generator_names)
    relators = ", ".join(render_word(r, lambda g: f"F.{g + 1}") for r in presentation.relators)
    return f"F := FreeGroup({names});; G := F / [ {relators} ];;"


def _render_magma(presentation: Presentation) -> str:
    names = presentation.generator_names
    relators = ", ".join(render_word(r, names.__getitem__) for r in presentation.relators)
    generators = ",".join(names)
    return f"G<{generators}> := Group<{generators} | {relators}>;"


def render_presentation(presentation: Presentation, fmt: OutputFormat | OutputFormatStr = OutputFormat.TEXT) -> str:
    """Render ``presentation`` in the given format.

    ``text`` is the grammar read by :func:`parse_presentation`; ``json`` is the
    native JSON format and round-trips every field; ``gap`` and ``magma``
    are one-line scripts for cross-checking in those systems.
    """
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.JSON:
        return presentation.model_dump_json(by_alias=True)
    if fmt is OutputFormat.GAP:
        return _render_gap(presentation)
    if fmt is OutputFormat.MAGMA:
        return _render_magma(presentation)
    return _render_text(presentation)
