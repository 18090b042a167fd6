"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class FitsetError(Exception):
    """Base class for all library errors."""


class ParseError(FitsetError, ValueError):
    """A group, class or fitting-set document is malformed."""


class SizeError(FitsetError):
    """A group or lattice exceeds the configured cap."""


class ArgumentError(FitsetError, ValueError):
    """An operation was called with arguments violating its precondition."""


class ConfigError(FitsetError, KeyError):
    """Unknown catalog name or bad configuration value."""

    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return str(self.args[0]) if self.args else ""


class PreconditionError(ArgumentError):
    """A mathematical precondition (e.g. pi-solubility) does not hold."""


class ConsistencyError(FitsetError, AssertionError):
    """An internal postcondition failed; indicates a bug or a false theorem."""


class HypothesesUnmet(FitsetError):
    """A constructive route was asked for outside its hypotheses."""

    def __init__(self, failed: list[str]):
        super().__init__("hypotheses unmet: " + ", ".join(failed))
        self.failed = failed
