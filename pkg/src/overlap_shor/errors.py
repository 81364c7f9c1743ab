"""Exception types shared across the package."""


class InvalidParameter(ValueError):
    """A construction or routine was called with parameters outside its domain."""


class DimensionError(ValueError):
    """Operands disagree on qubit count or vector width."""


class PauliParseError(ValueError):
    pass


class CapacityError(RuntimeError):
    """An exhaustive enumeration would exceed its configured budget."""


class UnsupportedCode(ValueError):
    """The code lacks the construction metadata a routine depends on."""
