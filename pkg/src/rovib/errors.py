"""Exception types raised across the package."""


class RovibError(Exception):
    """Base class for all package errors."""


class RegistryError(RovibError, ValueError):
    """A registry file could not be parsed or is missing a field."""

    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class UnknownMoleculeError(RovibError, KeyError):
    def __str__(self):
        return f"unknown molecule: {self.args[0]!r}"


class PoleError(RovibError, ArithmeticError):
    """Deformed hyperbolic function evaluated at (or next to) its pole."""

    def __init__(self, r):
        self.r = r
        super().__init__(f"deformed coth has a pole near r = {r!r}")


class DomainError(RovibError, ValueError):
    pass


class NoBoundStateError(RovibError):
    """The requested quantum numbers have no real bound-state solution."""


class InadmissibleError(RovibError, ValueError):
    """NU constants with negative square-root arguments."""


class InvalidStateError(RovibError, ValueError):
    pass


class DegenerateGeometryError(RovibError, ArithmeticError):
    pass


class ResolutionError(RovibError):
    """Finite-difference grid not converged to the requested tolerance."""

    def __init__(self, message, suggested_points=None):
        self.suggested_points = suggested_points
        super().__init__(message)


class AlignmentError(RovibError, ValueError):
    pass
