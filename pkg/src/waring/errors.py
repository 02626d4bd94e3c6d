"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class WaringError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class ParseError(WaringError):
    """Malformed polynomial, scalar or decomposition text."""

    exit_code = 2


class PreconditionError(WaringError):
    """An input violates a documented precondition."""

    exit_code = 3


class FieldMismatch(PreconditionError):
    """Operands live over different coefficient fields."""


class InexactField(PreconditionError):
    """An exact computation was requested over a floating field."""


class LimitExceeded(WaringError):
    """A size cap guarding an exponential computation was hit."""

    exit_code = 4
