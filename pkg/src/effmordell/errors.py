"""Exception hierarchy shared by every module of the package."""


class EffMordellError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParams(EffMordellError, ValueError):
    pass


class DimensionMismatch(EffMordellError, ValueError):
    pass


class NoSolution(EffMordellError, ArithmeticError):
    """The linear system is inconsistent."""


class NonUniqueSolution(EffMordellError, ArithmeticError):
    """The linear system has a nontrivial kernel."""


class NegativeInput(EffMordellError, ValueError):
    pass


class DegreeNotZero(EffMordellError, ValueError):
    """The divisor handed to the fibral correction does not have fibre-degree 0."""


class MultiplicityNotOne(EffMordellError, ValueError):
    pass


class EmptyJp(EffMordellError, ValueError):
    """No fibre component has multiplicity one."""


class NegativePhip(EffMordellError, ValueError):
    pass


class TauNotPositive(EffMordellError):
    """tau <= 0, so the main height bound is not applicable."""

    def __init__(self, tau):
        super().__init__(f"tau = {tau!r} <= 0: main height bound does not apply")
        self.tau = tau


class DegeneratePoint(EffMordellError, ValueError):
    pass


class CapExceeded(EffMordellError, RuntimeError):
    pass


class ParseError(EffMordellError, ValueError):
    def __init__(self, message, field=None, line=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)
        self.field = field
        self.line = line


class ValidationError(EffMordellError, ValueError):
    """Aggregates every failed check found while validating a dossier."""

    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__("; ".join(self.failures))
