"""Exception hierarchy shared by every homcmc module."""


class HomCMCError(Exception):
    """Base class for all library errors."""


class FormatError(HomCMCError, ValueError):
    """Malformed or invalid input document."""

    def __init__(self, message, locus=None):
        self.locus = locus
        if locus:
            message = f"{locus}: {message}"
        super().__init__(message)


class UnknownIdError(HomCMCError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class CapExceededError(HomCMCError):
    """Instance too large for exhaustive enumeration."""


class TrivialClassError(HomCMCError):
    """The surface bounds a region, so [S] = 0 and class machinery is undefined."""


class SeparatingSurfaceError(HomCMCError):
    """Cutting along the surface disconnects the complex."""


class NonCoherentError(HomCMCError):
    """Side assignment of a cut surface cannot be made consistent."""


class BarrierError(HomCMCError):
    """Barrier region is empty, not proper, or fails to separate the terminals."""
