"""Exception hierarchy shared across the package."""


class TorcrepError(Exception):
    """Base class for every package-specific error."""


class InputError(TorcrepError):
    """Malformed or inconsistent user-supplied data (CLI exit code 2)."""


class GroupSyntaxError(InputError):
    """Group grammar violation, with 1-based line/column when known."""

    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = f"line {line}, col {col}: {message}"
        super().__init__(message)
        self.line = line
        self.col = col


class NotInSL(InputError):
    """Generator coordinates do not sum to 0 mod r (determinant != 1)."""


class InvalidGenerator(InputError):
    """Generator violates the lattice construction preconditions."""


class DimensionMismatch(InputError):
    """Generators of different ambient dimensions were mixed."""


class DimensionUnsupported(InputError):
    """Operation only implemented for a specific ambient dimension."""


class InvalidFan(InputError):
    """Imported fan data fails structural validation."""


class ExplosionGuard(TorcrepError):
    """Group closure exceeded the configured element bound."""


class DenomMismatch(TorcrepError):
    """Lattice point denominator differs from the ambient lattice's."""


class NotInLattice(TorcrepError):
    """Point is not an element of the lattice."""


class NotPrimitive(TorcrepError):
    """Point is a proper integer multiple of a lattice point."""


class NotInSupport(TorcrepError):
    """Point lies outside the support of the fan."""


class NotInCone(TorcrepError):
    """Point lies outside the cone."""


class RayAbsent(TorcrepError):
    """The requested ray is not a ray of the fan."""


class LiftAmbiguous(TorcrepError):
    """Two distinct fan rays project onto the same star-fan ray."""


class NotInDualLattice(TorcrepError):
    """Vector pairs non-integrally with a ray generator."""


class PreconditionNotCrepant(TorcrepError):
    """Operation requires a smooth crepant resolution result."""


class ResolutionNotFound(TorcrepError):
    """Search exhausted its budget without finding a resolution."""


class CertificateFailure(TorcrepError):
    """A normal-embedding certificate check failed."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NotComplete(TorcrepError):
    """Fan is not complete."""


class NotSmooth(TorcrepError):
    """Fan or cone is not smooth."""


class NotSurface(TorcrepError):
    """Fan is not two-dimensional."""
