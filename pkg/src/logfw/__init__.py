"""Logarithmic FW-differentials and the log regularity criterion at desk scale."""

from __future__ import annotations

from .config import Budgets, budgets
from .errors import BudgetError, InputError, LogFWError
from .fwdiff import fw_criterion_verdict, fw_expand, is_free_of_rank, presentation, rank_at_closed_point
from .monoid import AffineMonoid
from .prelog import PrelogRing, log_regular_by_definition, sharp_reduce, validate
from .ring import BaseSpec, PresentedRing

__all__ = [
    "AffineMonoid",
    "BaseSpec",
    "BudgetError",
    "Budgets",
    "InputError",
    "LogFWError",
    "PrelogRing",
    "PresentedRing",
    "budgets",
    "fw_criterion_verdict",
    "fw_expand",
    "is_free_of_rank",
    "log_regular_by_definition",
    "presentation",
    "rank_at_closed_point",
    "sharp_reduce",
    "validate",
]
