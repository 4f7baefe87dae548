"""Exception types shared across the package."""


class RspBenchError(Exception):
    """Base class for all domain errors raised by this package."""


class NormalizationError(RspBenchError):
    """State vector norm deviates too far from 1 to be repaired."""


class DimensionMismatchError(RspBenchError):
    """Operands live in different Hilbert-space dimensions."""


class NotHermitianError(RspBenchError):
    """Matrix fails the Hermitian symmetry tolerance."""


class NonUniformEnsembleError(RspBenchError):
    """Operation requires a uniform target ensemble and got a non-uniform one."""


class CombinatorialBlowupError(RspBenchError):
    """Requested enumeration exceeds the hard size guard."""


class FormatError(RspBenchError):
    """Input file is malformed; carries a human-readable position."""

    def __init__(self, message: str, *, path: str | None = None,
                 line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where += f"{path}: "
        if line is not None:
            where += f"line {line}: "
        super().__init__(where + message)
