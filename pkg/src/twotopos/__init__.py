"""Finite 2-categorical toolkit.

Small categories with total composition tables, comma objects, fibrations,
spans and their classifiers, Kan extensions, a cardinality-bounded Yoneda
structure, and truncated globular categories.  Submodules carry the full
API; the names below are the ones most scripts start from.
"""

from .core import (
    FinCategory,
    FinFunctor,
    NatTrans,
    SetFunctor,
    chain,
    compose_functors,
    discrete,
    free_category,
    functor_category,
    functors,
    identity_functor,
    monoid,
    nattrans,
    opposite,
    preorder,
    product,
    terminal,
    validate_category,
    validate_functor,
)
from .comma import comma, pseudo_pullback, strict_pullback, verify_lax_pullback
from .errors import (
    BadConfig,
    CardinalityExceeded,
    CategoryError,
    MissingCorpus,
    NoColimit,
    NoLimit,
    NotAdmissible,
)
from .fib import chevalley_check, is_discrete_opfibration, is_fibration, is_opfibration
from .kan import colimit_in, lan_pointwise, ran_pointwise, weighted_colimit
from .omega import build_omega
from .report import Check, Report
from .span import Span, check_classifying, classify, span_compose
from .suites import SuiteConfig, run_suite
from .yoneda import YonedaContext, chi, is_admissible

__version__ = "0.1.0"

__all__ = [
    "FinCategory", "FinFunctor", "NatTrans", "SetFunctor", "chain", "compose_functors", "discrete",
    "free_category", "functor_category", "functors", "identity_functor", "monoid", "nattrans",
    "opposite", "preorder", "product", "terminal", "validate_category", "validate_functor",
    "comma", "pseudo_pullback", "strict_pullback", "verify_lax_pullback",
    "BadConfig", "CardinalityExceeded", "CategoryError", "MissingCorpus", "NoColimit", "NoLimit",
    "NotAdmissible", "chevalley_check", "is_discrete_opfibration", "is_fibration", "is_opfibration",
    "colimit_in", "lan_pointwise", "ran_pointwise", "weighted_colimit", "build_omega",
    "Check", "Report", "Span", "check_classifying", "classify", "span_compose",
    "SuiteConfig", "run_suite", "YonedaContext", "chi", "is_admissible",
]
