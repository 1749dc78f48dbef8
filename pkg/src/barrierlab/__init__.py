"""Barriers, plegma families and asymptotic models at desk scale."""
from . import barrier, finset, models, normspace, ordinal, plegma, ramsey

__version__ = "0.1.0"
__all__ = ["barrier", "finset", "models", "normspace", "ordinal", "plegma", "ramsey"]
