"""Exception hierarchy shared by all modules."""


class EquigeodesicError(ValueError):
    """Base class for every error raised by this package."""


class InvalidDimensionError(EquigeodesicError):
    pass


class IncompatibleElementsError(EquigeodesicError):
    pass


class InvalidParametersError(EquigeodesicError):
    pass


class InternalConsistencyError(EquigeodesicError):
    """A constructed object violates one of its structural invariants."""


class NotApplicableError(EquigeodesicError):
    pass


class InvalidMetricError(EquigeodesicError):
    pass


class InvalidPartitionError(EquigeodesicError):
    pass


class InvalidInputError(EquigeodesicError):
    pass


class ConstraintViolationError(EquigeodesicError):
    """A family parameter that must be nonzero is (numerically) zero."""


class FamilyNotFoundError(EquigeodesicError):
    pass


class CatalogSchemaError(EquigeodesicError):
    pass
