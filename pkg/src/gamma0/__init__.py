"""Ordinal notations up to Gamma_0 with a truth-theory hierarchy toolkit."""

from . import ordinals

__all__ = ["ordinals"]
