"""Exception types shared across the package."""


class PartitionError(ValueError):
    """Base class for all domain errors raised by this package."""


class NonPositivePart(PartitionError):
    """A part was zero or negative."""


class DuplicatePart(PartitionError):
    """The same value appeared twice in a would-be distinct partition."""


class DomainError(PartitionError):
    """An argument fell outside the range where the operation is defined."""


class NotTriangularSum(PartitionError):
    """The partition does not sum to the expected triangular number."""


class IsComplete(PartitionError):
    """The partition is (1, 2, ..., n); it has no removal structure."""


class NotMaximal(PartitionError):
    """The largest part does not attain the maximum over unrefinable partitions."""


class NotUnrefinable(PartitionError):
    """A part equals the sum of two distinct missing values."""


class InvalidMissingSet(PartitionError):
    """A list of missing values is not consistent with any source partition."""


class NotInDomain(PartitionError):
    """The input is outside the domain of the correspondence map."""


class ReconstructionFailure(PartitionError):
    """An inverted partition failed re-verification; indicates an internal bug."""
