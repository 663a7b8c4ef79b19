"""Exception hierarchy shared by every module."""


class LoccError(Exception):
    """Base class for all package errors."""


class InputError(LoccError, ValueError):
    """Argument outside its admissible domain (norm, probability, range)."""


class ShapeError(LoccError, ValueError):
    """Incompatible array shapes or declared dimensions."""


class SizeError(LoccError, ValueError):
    """Result would exceed the configured entry cap."""


class ConvergenceError(LoccError, RuntimeError):
    """Iterative routine hit its iteration cap."""


class ValidationError(LoccError):
    """Object fails a structural check it is required to pass (e.g. a
    defective channel used without the ``unchecked`` flag)."""
