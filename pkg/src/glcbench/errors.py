"""Exception types shared across the workbench."""


class GlcError(Exception):
    """Base class for all workbench errors."""


class CsvParseError(GlcError):
    """Malformed CSV input. Carries 1-based row/column location when known."""

    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


class ConfigError(GlcError):
    """Invalid configuration: missing class column, model required for a view, ..."""


class ValidationError(GlcError):
    """Input data violates a documented precondition (range, emptiness, bounds)."""


class ContractError(GlcError):
    """Caller broke an interface contract, e.g. a dimensionality mismatch."""


class UnknownPresetError(GlcError, KeyError):
    """Camera preset lookup failed; message lists the valid preset names."""
