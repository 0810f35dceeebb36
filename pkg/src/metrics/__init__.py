"""GOSPA scoring and Monte Carlo aggregation."""

from src.metrics.aggregate import MeanStd, MethodRun, MethodSummary, aggregate
from src.metrics.gospa import GospaBreakdown, gospa

__all__ = ["MeanStd", "MethodRun", "MethodSummary", "aggregate", "GospaBreakdown", "gospa"]
