"""Combinatorial and numerical tools around trisections, braids and Khovanov-Lee homology."""

from .verdict import BudgetExceeded, InputError, Verdict

__version__ = "0.1.0"

__all__ = ["BudgetExceeded", "InputError", "Verdict", "__version__"]
