"""Exceptions raised by the probregex library.

The command-line layer maps each family to an exit code (see ``constants``).
"""


class ExprSyntaxError(ValueError):
    """Raised when expression text does not conform to the grammar."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class ProbabilityRangeError(ValueError):
    """Raised when a probability lies outside [0, 1]."""

    pass


class AlphabetError(ValueError):
    """Raised when a letter is not part of the declared alphabet."""

    pass


class WeightSumError(ValueError):
    """Raised when the weights of an n-ary convex sum exceed 1."""

    pass


class SubDistError(ValueError):
    """Raised when a subdistribution would carry a non-positive entry or mass above 1."""

    pass


class AxiomInstantiationError(ValueError):
    """Base class for failures while instantiating an axiom schema."""

    pass


class UndefinedInstanceError(AxiomInstantiationError):
    """Raised when a schema with divided probabilities hits a zero denominator."""

    pass


class SideConditionError(AxiomInstantiationError):
    """Raised when the productivity side condition E(e) = 0 does not hold."""

    pass


class UnknownStateError(KeyError):
    """Raised when a state identifier is not declared in the transition system."""

    def __str__(self) -> str:
        return f"Unknown state: {self.args[0]!r}"


class InvalidGptsError(ValueError):
    """Raised when an operation requires a valid transition system and gets an invalid one."""

    def __init__(self, violations: list[str]) -> None:
        super().__init__("; ".join(violations))
        self.violations = violations


class GptsSchemaError(ValueError):
    """Raised when a transition-system document violates the file schema."""

    def __init__(self, message: str, pointer: str = "") -> None:
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


class SystemInvariantError(ValueError):
    """Raised when a left-affine system breaks the row-sum or productivity constraint."""

    def __init__(self, violations: list[str]) -> None:
        super().__init__("; ".join(violations))
        self.violations = violations
