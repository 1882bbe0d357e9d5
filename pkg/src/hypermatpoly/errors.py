"""Exception hierarchy shared by all analysis modules."""


class HyperbolicError(Exception):
    """Base class for every error raised by :mod:`hypermatpoly`."""


class ConvergenceError(HyperbolicError, ArithmeticError):
    """An iterative eigenvalue solver hit its iteration cap."""


class ShapeError(HyperbolicError, ValueError):
    """Operands have incompatible sizes or degrees."""


class PreconditionError(HyperbolicError, ValueError):
    """An input violates a documented precondition of an operation."""


class NotMonicError(PreconditionError):
    pass


class NotCoprimeError(PreconditionError):
    pass


class MultipleRootError(PreconditionError):
    pass


class NonRealRootError(PreconditionError):
    """Roots expected to be real are not.

    ``witness`` optionally carries the offending vector or parameter.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class MixedSignError(PreconditionError):
    pass


class VerificationError(HyperbolicError, ArithmeticError):
    """A constructed object failed its own a-posteriori check."""
