from .blocks import BLOCK_COUNTS, block_name, building_block, require_prime
from .model import Presentation, abelianization_matrix, presentation_deficiency
from .parser import ParseResult, parse, parse_presentation, parse_presentation_file, validate
from .products import block_product, block_product_counts, direct_product, power_product, product_of
from .render import render_presentation, render_word

__all__ = [
    "BLOCK_COUNTS",
    "ParseResult",
    "Presentation",
    "abelianization_matrix",
    "block_name",
    "block_product",
    "block_product_counts",
    "building_block",
    "direct_product",
    "parse",
    "parse_presentation",
    "parse_presentation_file",
    "power_product",
    "presentation_deficiency",
    "product_of",
    "render_presentation",
    "render_word",
    "require_prime",
    "validate",
]
