"""Cactus group words and Gauss diagrams of cactus doodles."""

from ._core import BudgetExceeded, Diagram, ParseError, normalize_word, perm

__all__ = ["BudgetExceeded", "Diagram", "ParseError", "normalize_word", "perm"]
