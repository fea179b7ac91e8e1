"""Exception hierarchy shared by every birdyn module."""


class BirdynError(Exception):
    """Base class for all library errors."""


class IncompatibleFieldError(BirdynError, TypeError):
    """Coefficients from two different number fields were combined."""


class FieldError(BirdynError):
    """A coefficient field cannot represent what an operation needs."""


class DimensionError(BirdynError, ValueError):
    pass


class UndefinedRootsError(BirdynError, ValueError):
    pass


class DegenerateMapError(BirdynError):
    """An iterate has a block whose components all vanish identically."""


class InconclusiveError(BirdynError):
    pass


class ValidationError(BirdynError, ValueError):
    pass


class InvalidParameterError(BirdynError, ValueError):
    pass


class MissingInverseError(BirdynError):
    pass


class ParseError(BirdynError, ValueError):
    pass


class NoConvergence(BirdynError):
    """A numerical solver failed; ``diagnostic`` says where and why."""

    def __init__(self, message, diagnostic=None):
        super().__init__(message)
        self.diagnostic = diagnostic or {}


class CertificationFailure(BirdynError):
    """An ``L o J`` orbit did not realize valid orbit data.

    ``reason`` is ``"on_exceptional"`` (the orbit met some hyperplane
    ``x_i = 0`` before landing) or ``"no_landing"``.
    """

    def __init__(self, reason, orbit, step=None):
        where = f"orbit {orbit}" + ("" if step is None else f", step {step}")
        super().__init__(f"{reason} ({where})")
        self.reason = reason
        self.orbit = orbit
        self.step = step


class NonDominantError(InvalidParameterError):
    """The exponent matrix of a monomial map is singular."""
