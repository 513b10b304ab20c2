"""Stanley depth and depth of squarefree monomial quotients."""

__version__ = "0.1.0"
