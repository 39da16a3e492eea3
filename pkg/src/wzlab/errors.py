"""Exception hierarchy shared by all wzlab layers."""


class WZLabError(Exception):
    """Base class for every error raised by wzlab."""


class NonPositiveArgument(WZLabError, ValueError):
    pass


class NonPositiveBase(WZLabError, ValueError):
    pass


class PoleError(WZLabError, ArithmeticError):
    """A quantity is evaluated exactly at (or numerically on top of) a pole."""


class PoleAtX(PoleError):
    pass


class PoleAtCenter(PoleError):
    pass


class PoleAtPoint(PoleError):
    pass


class PochhammerSingularity(PoleError):
    pass


class DivisionByZeroConstantTerm(WZLabError, ZeroDivisionError):
    pass


class KernelMismatch(WZLabError, ValueError):
    pass


class NoConvergence(WZLabError, ArithmeticError):
    pass


class MethodDisagreement(WZLabError, ArithmeticError):
    def __init__(self, message, values=None):
        super().__init__(message)
        self.values = values or {}


class SchemaError(WZLabError, ValueError):
    pass


class InvariantViolation(WZLabError, ValueError):
    def __init__(self, record_id, field, message):
        super().__init__(f"{record_id}: {field}: {message}")
        self.record_id = record_id
        self.field = field


class ParameterOutOfDomain(WZLabError, ValueError):
    pass


class RankDeficient(WZLabError, ValueError):
    pass


class RationalizationFailed(WZLabError, ArithmeticError):
    pass


class NoMatch(WZLabError, LookupError):
    pass


class UnknownRecord(WZLabError, KeyError):
    def __str__(self):
        # KeyError would repr() the message
        return str(self.args[0]) if self.args else ""
