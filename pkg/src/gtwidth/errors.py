"""Exception hierarchy shared by every module."""


class GTWidthError(Exception):
    """Base class for all errors raised by gtwidth."""


class InvalidWeight(GTWidthError, ValueError):
    """The entries do not describe a point of the positive Weyl chamber."""


class PointOrbit(GTWidthError):
    """Every coroot pairing vanishes, so the coadjoint orbit is a single point."""


class WrongFamily(GTWidthError, ValueError):
    pass


class NotRegular(GTWidthError, ValueError):
    pass


class UnknownBox(GTWidthError, KeyError):
    pass


class DimensionMismatch(GTWidthError, ValueError):
    pass


class ShapeMismatch(GTWidthError, ValueError):
    pass


class DomainViolation(GTWidthError, ValueError):
    pass


class InternalInvariantError(GTWidthError, AssertionError):
    """A construction that is a theorem failed to hold; always a bug."""


class UnimodularityFailure(InternalInvariantError):
    pass


class ContainmentFailure(InternalInvariantError):
    pass


class ConstantMismatch(InternalInvariantError):
    """A Gelfand-Tsetlin function that should be constant on the orbit was not."""


class LPInfeasible(InternalInvariantError):
    pass
