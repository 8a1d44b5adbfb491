"""
Tests for the presentation parser and renderers.
"""

import pytest

from pgdef import PresentationSyntaxError, UnknownGeneratorError
from pgdef.deficiency import construct
from pgdef.presentations import (
    ParseResult,
    building_block,
    parse,
    parse_presentation,
    parse_presentation_file,
    render_presentation,
    validate,
)
from pgdef.types import BlockKind
from pgdef.words import Word, commutator, power


class TestValidate:
    """Test the validate() convenience function."""

    def test_valid_single_generator(self):
        assert validate("< a | a^2 >") is True

    def test_valid_without_relators(self):
        assert validate("< a, b | >") is True

    def test_valid_with_comment(self):
        assert validate("# Q8\n< a, b | a^2 = b^2, b^-1 a b = a^3 >") is True

    def test_invalid_missing_bracket(self):
        assert validate("< a | a^2") is False

    def test_invalid_unknown_generator(self):
        assert validate("< a | b >") is False

    def test_invalid_exponent(self):
        assert validate("< a | a^ >") is False


class TestParse:
    """Test parse() and parse_presentation()."""

    def test_parse_valid_returns_presentation(self):
        result = parse("< a | a^2 >")
        assert isinstance(result, ParseResult)
        assert result.valid is True
        assert result.presentation.counts == (1, 1)
        assert result.error is None

    def test_parse_invalid_returns_error(self):
        result = parse("< a | a^2")
        assert result.valid is False
        assert result.presentation is None
        assert isinstance(result.error, PresentationSyntaxError)

    def test_b2(self):
        assert parse_presentation("< a,b | a^4, b^4, (a*b)^2, (a^-1*b)^2 >") == parse_presentation(
            render_presentation(building_block(BlockKind.B, 2))
        )
        assert parse_presentation("< a,b | a^4, b^4, (a*b)^2, (a^-1*b)^2 >").relators == (
            building_block(BlockKind.B, 2).relators
        )

    def test_juxtaposition_and_star_agree(self):
        assert parse_presentation("< a, b | a b a^-1 >") == parse_presentation("< a, b | a*b*a^-1 >")

    def test_equation_stored_as_relator(self):
        p = parse_presentation("< a, b | a^3 = b^3 >")
        assert p.relators == (power(Word.generator(0), 3) * power(Word.generator(1), -3),)

    def test_commutator_brackets(self):
        p = parse_presentation("< a, b | [[a,b],a] >")
        a, b = Word.generator(0), Word.generator(1)
        assert p.relators == (commutator(commutator(a, b), a),)

    def test_nested_powers(self):
        p = parse_presentation("< a, b | (a b^2)^-2 >")
        expected = power(Word.generator(0) * power(Word.generator(1), 2), -2)
        assert p.relators == (expected,)

    def test_a3_from_text(self):
        assert parse_presentation("< a, b | a^3 = b^3, b^-1 a b = a^4 >").relators == (
            building_block(BlockKind.A, 3).relators
        )


class TestParseErrors:
    """Errors carry positions."""

    def test_unknown_generator_position(self):
        with pytest.raises(UnknownGeneratorError) as exc_info:
            parse_presentation("< a | b^2 >")
        error = exc_info.value
        assert error.name == "b"
        assert error.line == 1
        assert error.column == 7
        assert error.source_snippet == "< a | b^2 >"

    def test_syntax_error_has_line(self):
        with pytest.raises(PresentationSyntaxError) as exc_info:
            parse_presentation("< a |\n a^ >")
        assert exc_info.value.line == 2

    def test_duplicate_generator(self):
        with pytest.raises(PresentationSyntaxError) as exc_info:
            parse_presentation("< a, a | a >")
        assert "Duplicate" in str(exc_info.value)

    def test_empty_relator(self):
        with pytest.raises(PresentationSyntaxError):
            parse_presentation("< a | a a^-1 >")

    def test_bad_json(self):
        with pytest.raises(PresentationSyntaxError):
            parse_presentation('{"generators": ["a"], "relators": [[[3, 1]]]}')

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            parse_presentation_file(tmp_path / "missing.gp")


class TestRender:
    """Text, JSON and export dialects."""

    def test_text(self):
        assert render_presentation(building_block(BlockKind.B, 2)) == "< a, b | a^4, b^4, a*b*a*b, a^-1*b*a^-1*b >"

    def test_gap(self):
        script = render_presentation(building_block(BlockKind.C, 3), "gap")
        assert script == 'F := FreeGroup("a");; G := F / [ F.1^3 ];;'

    def test_magma(self):
        assert render_presentation(building_block(BlockKind.C, 3), "magma") == "G<a> := Group<a | a^3>;"

    def test_text_round_trip_corpus(self):
        for p in (2, 3, 5, 7):
            for kind in BlockKind:
                block = building_block(kind, p)
                parsed = parse_presentation(render_presentation(block))
                assert parsed.generator_names == block.generator_names
                assert parsed.relators == block.relators

    def test_json_round_trip_keeps_annotations(self):
        presentation = construct(3, 7)
        assert parse_presentation(render_presentation(presentation, "json")) == presentation

    def test_file(self, tmp_path):
        path = tmp_path / "c4.gp"
        path.write_text("< a | a^4 >\n", encoding="utf-8")
        assert parse_presentation_file(path).counts == (1, 1)
