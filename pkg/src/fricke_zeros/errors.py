"""Exception types shared across the package."""


class FrickeError(Exception):
    """Base class for all package-specific errors."""


class TailBoundError(FrickeError, ArithmeticError):
    """A truncated evaluation cannot meet the requested tolerance."""


class IndeterminateSignError(FrickeError, ArithmeticError):
    """A sample value is too small relative to the truncation tail to trust its sign."""


class CountMismatchError(FrickeError):
    """The number of sign alternations disagrees with the predicted zero count."""


class UnstableWindingError(FrickeError, ArithmeticError):
    """The winding number did not stabilize under radius shrinking."""


class ReductionError(FrickeError):
    """Fundamental-domain reduction exceeded its step budget."""


class EchelonError(FrickeError):
    """Two basis elements share a leading exponent."""


class LevelMismatchError(FrickeError, ValueError):
    """Arithmetic was attempted on series of different levels."""
