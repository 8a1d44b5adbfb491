"""Enumerations for pgdef."""

from enum import StrEnum
from typing import Literal


class BlockKind(StrEnum):
    """The three building blocks of the construction.

    Attributes:
        A: ``<a,b | a^p = b^p, a^b = a^(p+1)>``, counts (2, 2).
        B: ``<a,b | a^p, b^p, [[a,b],a], [[a,b],b]>`` (special form at p = 2), counts (2, 4).
        C: ``<a | a^p>``, counts (1, 1).
    """

    A = "A"
    B = "B"
    C = "C"


class EnumerationStrategy(StrEnum):
    """Coset enumeration strategy."""

    HLT = "hlt"
    FELSCH = "felsch"


class CertificationMode(StrEnum):
    """Where the H2 value of a certificate comes from."""

    TABLE = "table"
    KUNNETH = "kunneth"


class HomologyVia(StrEnum):
    """Pipeline used by the ``homology`` command."""

    PRESENTATION = "presentation"
    TABLE = "table"
    KUNNETH = "kunneth"


class OutputFormat(StrEnum):
    """Presentation output formats."""

    TEXT = "text"
    JSON = "json"
    GAP = "gap"
    MAGMA = "magma"


OutputFormatStr = Literal["text", "json", "gap", "magma"]
