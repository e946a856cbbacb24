"""Evaluate, normalize and compare weighted configuration formulas with exact values."""

from .errors import (
    ConfigurationError,
    DomainError,
    HypothesisError,
    ParseError,
    ResourceLimitError,
    UsageError,
    WpclError,
)
from .config import DEFAULT_LIMITS, Limits, RunConfig
from .pvm import (
    MAX_AVG_PLUS,
    MIN_AVG_PLUS,
    MIN_MAJ_MAX,
    NEG_INF,
    POS_INF,
    PvMonoid,
    builtin_monoid,
    value,
)
from .semantics import closure_eval, pcl_sat, pil_sat, semantic_table, wpcl_eval, wpil_eval
from .normal_form import Constant, FnfTerm, Terms, equivalent, normalize
from .textio import parse_configuration, parse_wpcl, print_fnf, print_wpcl

__version__ = "0.1.0"
