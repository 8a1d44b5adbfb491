from .counts import BlockCounts
from .enums import BlockKind, CertificationMode, EnumerationStrategy, HomologyVia, OutputFormat, OutputFormatStr

__all__ = [
    "BlockCounts",
    "BlockKind",
    "CertificationMode",
    "EnumerationStrategy",
    "HomologyVia",
    "OutputFormat",
    "OutputFormatStr",
]
