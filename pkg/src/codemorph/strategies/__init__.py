"""Semantic-preserving transformation strategies.

Importing this package registers all 32 strategies; the public surface is
the catalog plus the applicability/apply drivers.
"""

from codemorph.strategies.base import (
    Applicability,
    Category,
    InsertLocation,
    Plan,
    Site,
    SitePolicy,
    Status,
    Strategy,
    TransformConfig,
    TransformOutcome,
    apply,
    apply_category,
    get_strategy,
    is_applicable,
    list_strategies,
)

# registration side effects
from codemorph.strategies import block as _block  # noqa: F401
from codemorph.strategies import identifiers as _identifiers  # noqa: F401
from codemorph.strategies import insert_delete as _insert_delete  # noqa: F401
from codemorph.strategies import statements as _statements  # noqa: F401
from codemorph.strategies import tokens as _tokens  # noqa: F401

__all__ = [
    "Applicability", "Category", "InsertLocation", "Plan", "Site",
    "SitePolicy", "Status", "Strategy", "TransformConfig", "TransformOutcome",
    "apply", "apply_category", "get_strategy", "is_applicable", "list_strategies",
]
