class ConcordkitError(Exception):
    """Base class for library errors."""


class SeifertError(ConcordkitError, ValueError):
    """Integer grid is not a valid Seifert matrix."""


class MatrixFileError(ConcordkitError, ValueError):
    """Malformed matrix file; ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class UnsupportedModuleError(ConcordkitError):
    """Module lies outside the supported class (cyclic with prime-power order)."""


class HypothesisError(UnsupportedModuleError):
    """The unique-proper-submodule hypothesis fails for the module."""


class ArcResolutionError(ConcordkitError):
    """Two jump points of the signature function are too close to separate."""
