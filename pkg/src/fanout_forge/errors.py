"""Exception types shared across the package."""


class FanoutForgeError(Exception):
    """Base class for all package errors."""


class DimensionError(FanoutForgeError, ValueError):
    """Operands disagree on qubit count."""


class UnsupportedContextError(FanoutForgeError, ValueError):
    """Context requested for an odd (or too small) number of qubits."""


class ResourceGuardError(FanoutForgeError):
    """Refused to run a computation that exceeds a configured size cap."""


class CoverageError(FanoutForgeError):
    """Coupling graph does not reach every qubit from the root."""

    def __init__(self, unreachable):
        self.unreachable = sorted(unreachable)
        super().__init__(f"unreachable qubits from root: {self.unreachable}")


class UnsupportedInputError(FanoutForgeError, ValueError):
    """CNOT list is not a tree-structured GHZ preparation."""


class PreconditionError(FanoutForgeError):
    pass


class RankError(FanoutForgeError, ValueError):
    """Generator list is linearly dependent."""


class ConsistencyError(FanoutForgeError):
    """Internal sanity check failed (e.g. a measured observable is not diagonal)."""


class ParseError(FanoutForgeError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
