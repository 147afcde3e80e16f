"""Exception hierarchy shared by every module."""


class AdiabaticGIError(Exception):
    """Base class for all package errors."""


class InputError(AdiabaticGIError, ValueError):
    """Malformed or out-of-range user input."""


class CapacityError(AdiabaticGIError):
    """Requested problem exceeds a configured size limit."""


class NumericalError(AdiabaticGIError):
    """An eigensolver or integrator failed to meet its accuracy contract."""


class ContractError(AdiabaticGIError):
    """A precondition on intermediate results does not hold."""
