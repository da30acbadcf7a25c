class CellresError(Exception):
    """Base class for all errors raised by this package."""


class InputError(CellresError):
    """Malformed or inconsistent user input."""


class PreconditionError(CellresError):
    """An operation was called outside its contract."""
