class CliffordError(ValueError):
    """Base class for errors raised by fastclifford."""


class DimensionError(CliffordError):
    """Operands disagree in n, length or matrix shape."""


class BasisError(CliffordError):
    """A representation matrix carries the wrong spinor basis tag."""


class ScalarDomainError(CliffordError):
    """The scalar type cannot support the requested operation."""
