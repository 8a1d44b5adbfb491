"""Finite p-groups of every non-positive deficiency.

Builds presentations of finite p-groups ``A_p^r x B_p^s x C_p^t`` with
deficiency exactly ``-n`` and certifies them by computing orders,
abelianizations and Schur multipliers::

    from pgdef import construct, certify

    certificate = certify(construct(2, 5))
    print(certificate.certified_value)  # -5
"""

from ._config import PgdefConfig
from ._exceptions import (
    ChainConditionViolated,
    CosetLimitExceeded,
    GeneratorIndexError,
    InfiniteAbelianError,
    MissingPedigreeError,
    NotPrimeError,
    OrderCeilingExceeded,
    PedigreeMismatchError,
    PgdefError,
    PresentationSyntaxError,
    TableNotClosedError,
    UnknownGeneratorError,
)
from .coset_enum import (
    CosetTable,
    GroupTable,
    enumerate_cosets,
    group_table,
    multiplication_table,
    order,
    validate_group,
)
from .deficiency import (
    DeficiencyCertificate,
    certify,
    construct,
    deficiency_of_counts,
    figure_one_table,
    golod_shafarevich_check,
    solve,
    upper_bound,
)
from .homology import (
    efficiency_report,
    h1_from_presentation,
    h1_from_table,
    h2_from_table,
    h2_kunneth,
    h2_of_block_product,
)
from .int_linalg import FinAbGroup, IntMatrix, cokernel, smith_normal_form
from .presentations import Presentation, building_block, direct_product, parse_presentation, render_presentation
from .types import BlockCounts, BlockKind, CertificationMode, EnumerationStrategy
from .words import Word

try:
    from ._version import __version__
except ImportError:
    __version__ = "0.0.0.dev0"

__all__ = [
    # Config
    "PgdefConfig",
    # Exceptions
    "PgdefError",
    "PresentationSyntaxError",
    "UnknownGeneratorError",
    "NotPrimeError",
    "GeneratorIndexError",
    "CosetLimitExceeded",
    "TableNotClosedError",
    "ChainConditionViolated",
    "OrderCeilingExceeded",
    "MissingPedigreeError",
    "PedigreeMismatchError",
    "InfiniteAbelianError",
    # Values
    "Word",
    "Presentation",
    "BlockCounts",
    "BlockKind",
    "CertificationMode",
    "EnumerationStrategy",
    "IntMatrix",
    "FinAbGroup",
    "CosetTable",
    "GroupTable",
    "DeficiencyCertificate",
    # Operations
    "building_block",
    "direct_product",
    "parse_presentation",
    "render_presentation",
    "enumerate_cosets",
    "order",
    "group_table",
    "multiplication_table",
    "validate_group",
    "smith_normal_form",
    "cokernel",
    "h1_from_presentation",
    "h1_from_table",
    "h2_from_table",
    "h2_kunneth",
    "h2_of_block_product",
    "efficiency_report",
    "solve",
    "deficiency_of_counts",
    "construct",
    "certify",
    "upper_bound",
    "golod_shafarevich_check",
    "figure_one_table",
    # Version
    "__version__",
]
