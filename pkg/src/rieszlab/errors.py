"""Exception types shared across the package."""


class RieszLabError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(RieszLabError):
    """Shapes or lengths of the supplied arrays do not fit together."""


class LevelError(RieszLabError):
    """A seminorm level outside the ladder of the triplet was requested."""


class MissingDualError(RieszLabError):
    """The requested diagnostic needs a dual family that is not present."""


class InjectivityError(RieszLabError):
    """A map required to be injective is singular at this truncation."""


class ContinuityError(RieszLabError):
    """A continuity certificate could not be produced (overflow or NaN)."""


class SupportError(RieszLabError):
    """A sampled function does not fit inside the grid window."""


class StateError(RieszLabError):
    """The operation needs a verdict or state the object does not carry."""


class ValidationError(RieszLabError):
    """Input values violate a documented precondition."""


class ConfigError(RieszLabError):
    """The run configuration is incomplete or inconsistent."""


class ParseError(RieszLabError):
    """A CSV input could not be parsed.

    Carries the file path plus 1-based line and column of the offending
    cell so the message pinpoints the problem.
    """

    def __init__(self, path, line, column, reason):
        self.path = path
        self.line = line
        self.column = column
        super().__init__(f"{path}:{line}:{column}: {reason}")
