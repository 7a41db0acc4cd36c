"""Exception hierarchy shared by every module of the package."""


class LiouvilleError(Exception):
    """Base class for all errors raised by this package."""


class NonzeroConstantTerm(LiouvilleError):
    """Composition of germs at the origin requires the inner germ to vanish there."""


class ZeroConstantTerm(LiouvilleError):
    """Reciprocal of a jet requires a nonzero constant term."""


class ZeroGerm(LiouvilleError):
    """The germ is zero through its truncation order; the operation is undecidable."""


class NotLiouville(LiouvilleError):
    """The operation requires a plane field of Liouville kind."""


# Alias used where the mismatch is between field kinds rather than a missing germ.
KindMismatch = NotLiouville


class HamiltonianDependsOnZ(LiouvilleError):
    """Contact Hamiltonians of strictly contact fields must not involve z."""


class ComponentsDependOnZ(LiouvilleError):
    """Projection to the plane requires z-independent x/y components."""


class ResonantMultiplier(LiouvilleError):
    """Diffeomorphism multiplier is +-1; no formal linearization exists."""


class ZeroLinearPart(LiouvilleError):
    """Normal-form linearization needs a nonzero linear part."""


class NotInSpan(LiouvilleError):
    """The field is not a combination of the homogeneous Liouville generators."""


class FamilyMismatch(LiouvilleError):
    """The unfolding family does not pass through the stated model at parameter 0."""


class ParseError(LiouvilleError):
    """Expression syntax error, with byte offset and the expected token set."""

    def __init__(self, message, offset, expected=()):
        super().__init__(message)
        self.offset = offset
        self.expected = tuple(sorted(expected))

    def __str__(self):
        base = super().__str__()
        if self.expected:
            return f"{base} at offset {self.offset} (expected {', '.join(self.expected)})"
        return f"{base} at offset {self.offset}"


class InternalInvariantError(LiouvilleError):
    """A structural identity the library guarantees failed to hold."""
