"""Exception types shared across the engine."""


class LnaForgeError(Exception):
    """Base class for all engine errors."""


class ParseError(LnaForgeError):
    """Technology card file could not be parsed or is missing keys."""


class InvalidBand(LnaForgeError):
    """Band edges are inconsistent with each other or with f0."""


class InconsistentLimits(LnaForgeError):
    """A min/max pair in the passive limits is out of order."""


class InvalidField(LnaForgeError):
    """A card field violates its sign/positivity constraint."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class UnrealizableGeometry(LnaForgeError):
    """Spiral geometry cannot be built (inner diameter would collapse)."""


class EmptyLibrary(LnaForgeError):
    """An inductor library operation received no members."""


class LimitViolation(LnaForgeError):
    """A requested passive value lies outside the technology limits."""

    def __init__(self, limit: str, message: str = ""):
        self.limit = limit
        super().__init__(f"{limit}{': ' + message if message else ''}")


class ModeUnsupported(LnaForgeError):
    """Operation requires a device model mode that was not used."""


class NoConvergeError(LnaForgeError):
    """Refinement failed to meet its residual targets within budget."""
