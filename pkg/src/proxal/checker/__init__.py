"""Theorem registry, relation searches and sweep reporting."""

from .registry import (
    THEOREMS,
    Context,
    MissingPartError,
    TheoremVerdict,
    UnknownTheoremError,
    minimize_witness,
    recheck,
    run_theorem,
    theorem_ids,
)
from .search import exhaustive_relation_search, random_relation_sample
from .suite import ConfigError, SuiteConfig, audit_report, parse_sweep, run_suite

__all__ = [
    "THEOREMS",
    "ConfigError",
    "Context",
    "MissingPartError",
    "SuiteConfig",
    "TheoremVerdict",
    "UnknownTheoremError",
    "audit_report",
    "exhaustive_relation_search",
    "minimize_witness",
    "parse_sweep",
    "random_relation_sample",
    "recheck",
    "run_suite",
    "run_theorem",
    "theorem_ids",
]
