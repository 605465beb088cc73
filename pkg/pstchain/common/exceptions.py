class PSTChainError(Exception):
    """Base class for every error raised by the toolkit."""


class InvalidParameterError(PSTChainError, ValueError):
    pass


class DisconnectedChainError(InvalidParameterError):
    pass


class NonSymmetricMatrixError(InvalidParameterError):
    pass


class ConvergenceError(PSTChainError):
    pass


class SpectralInconsistencyError(PSTChainError):
    pass


class UsageError(PSTChainError):
    pass
