"""Exception hierarchy; the CLI maps these onto exit codes."""


class RoughSynthError(Exception):
    """Base class for all package errors."""


class InputDataError(RoughSynthError, ValueError):
    """Bad input data: unreadable files, invalid ranges, wrong shapes."""


class ImageReadError(InputDataError):
    pass


class DomainError(InputDataError):
    """A query point lies outside the field's physical domain."""


class InvariantViolation(RoughSynthError, RuntimeError):
    """An internal consistency check failed (e.g. a non-Hermitian spectrum
    was asked to produce a real field)."""
