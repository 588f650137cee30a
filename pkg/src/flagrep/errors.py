"""Exception hierarchy shared by every flagrep module."""

from __future__ import annotations


class FlagrepError(Exception):
    """Base class for all errors raised by flagrep."""


class DimensionError(FlagrepError, ValueError):
    """Tuples or arrays of incompatible lengths were combined."""


class CapacityError(FlagrepError, ValueError):
    """A requested count exceeds what the underlying set can hold."""


class DomainError(FlagrepError, ValueError):
    """An argument lies outside the domain of the operation."""


class ColoringError(FlagrepError, ValueError):
    """A face meets some color class in more vertices than the type allows."""


class PartitionError(FlagrepError, ValueError):
    """A vertex is inconsistent with the declared color partition."""


class FaceError(FlagrepError, ValueError):
    """An argument that must be a face of the complex is not one."""


class PreconditionError(FlagrepError, ValueError):
    """An input violates a documented precondition."""


class StructureError(PreconditionError):
    """A complex lacks the structure (purity, balance, shiftedness) required."""


class MalformedTreeError(FlagrepError, ValueError):
    """A labeled tree is not a valid Macaulay tree for the requested operation."""


class ResourceError(FlagrepError, RuntimeError):
    """A search space exceeds the configured desk-scale limits."""


class ParseError(FlagrepError, ValueError):
    """Input JSON is malformed or does not follow the expected schema."""
