"""Exception hierarchy. Every error raised by the package derives from PPQCError."""


class PPQCError(Exception):
    pass


class DimensionError(PPQCError, ValueError):
    pass


class SizeError(PPQCError, ValueError):
    pass


class ParameterError(PPQCError, ValueError):
    pass


class NotHermitianError(PPQCError, ValueError):
    pass


class NotUnitaryError(PPQCError, ValueError):
    pass


class NormalizationError(PPQCError, ValueError):
    pass


class StateError(PPQCError, ValueError):
    pass


class OracleError(PPQCError, ValueError):
    pass


class ConstantFunctionError(OracleError):
    pass


class ProjectionError(PPQCError, ArithmeticError):
    pass


class ConfigError(PPQCError, ValueError):
    pass


class IoError(PPQCError, OSError):
    """File access failure; ``path`` names the offending file."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path
