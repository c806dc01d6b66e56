"""Independent cross-validation of sumrank JSON artifacts (no shared code)."""

__version__ = "0.1.0"
