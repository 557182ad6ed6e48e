"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument violates an operation's precondition."""


class ParseError(ParameterError):
    """Malformed input file or string; message carries line/position info."""


class ContractError(ParameterError):
    """A caller invoked an operation whose contract precondition is false."""


class ReductionFailed(RuntimeError):
    """A finite-instance hypothesis breach detected by an exact audit.

    Carries the offending witness pair so callers can degrade gracefully.
    """

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class VerificationFailure(RuntimeError):
    """A pipeline output failed re-verification (internal error, CLI exit 4)."""
