"""
Error hierarchy for the semiring kernel.
Every error carries its witness as attributes so reports can replay it.
"""

from typing import Any, List, Optional, Tuple


class SemiringError(Exception):
    """Base class for every error raised by the kernel."""


class ConfigurationError(SemiringError):
    """Invalid settings or environment overrides."""


class TableShapeError(SemiringError, ValueError):
    """Operation tables are not n×n with entries in {0..n-1}."""


class SemiringValidationError(SemiringError):
    """The tables violate one or more semiring axioms."""

    def __init__(self, violations: List[Any], name: str = ""):
        self.violations = list(violations)
        self.name = name
        kinds = ", ".join(v.describe() for v in self.violations)
        label = f"{name}: " if name else ""
        super().__init__(f"{label}not a commutative semiring ({kinds})")

    @property
    def kinds(self) -> List[str]:
        return [v.kind.value for v in self.violations]


class UnboundVariable(SemiringError, KeyError):
    """A term mentions a variable the assignment does not cover."""

    def __init__(self, variable: str):
        self.variable = variable
        super().__init__(variable)

    def __str__(self) -> str:
        return f"unbound variable {self.variable!r}"


class TermSyntaxError(SemiringError, ValueError):
    """An identity or term string could not be parsed."""

    def __init__(self, text: str, position: int, message: str):
        self.text = text
        self.position = position
        super().__init__(f"{message} at column {position + 1} in {text!r}")


class NotAHomomorphism(SemiringError):
    """A map fails one of the four preservation laws."""

    def __init__(self, law: str, witness: Tuple[int, ...], detail: str = ""):
        self.law = law
        self.witness = tuple(witness)
        self.detail = detail
        message = f"not a homomorphism: {law} fails at {self.witness}"
        if detail:
            message += f" ({detail})"
        super().__init__(message)


class OrderTooLarge(SemiringError):
    """An exhaustive search was asked to run above its configured bound."""

    def __init__(self, order: int, bound: int, operation: str):
        self.order = order
        self.bound = bound
        self.operation = operation
        super().__init__(f"{operation}: order {order} exceeds the configured bound {bound}")


class SAlgebraError(SemiringError):
    """An S-algebra violates the scalar action laws."""


class NotOverInitial(SemiringError):
    """The S-algebra admits no map from the initial object of the star variety."""

    def __init__(self, name: str, detail: str = ""):
        self.name = name
        message = f"{name or 'algebra'} is not over the initial object"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class BaseMismatch(SemiringError):
    """Two S-algebras were combined over different bases."""


class BoundUnstable(SemiringError):
    """The bounded tensor closure did not stabilise; the result is unknown."""

    def __init__(self, left: str, right: str, bounds: Tuple[int, ...], reason: str):
        self.left = left
        self.right = right
        self.bounds = tuple(bounds)
        self.reason = reason
        super().__init__(
            f"tensor coproduct {left} ⊗ {right} unstable at bounds {list(self.bounds)}: {reason}"
        )


class IllDefined(SemiringError):
    """Two equivalent tensor representatives map to different values."""

    def __init__(self, representatives: Tuple[Any, Any], values: Tuple[int, int]):
        self.representatives = representatives
        self.values = values
        super().__init__(
            f"copair ill-defined: {representatives[0]} ↦ {values[0]} but {representatives[1]} ↦ {values[1]}"
        )


class EmptyDiagram(SemiringError):
    """Only non-empty colimits exist in the varieties we handle."""

    def __init__(self):
        super().__init__("diagram has no objects; only non-empty colimits are computed")


class DiagramError(SemiringError):
    """Arrow endpoints or maps of a diagram are inconsistent."""


class AlgebraSyntaxError(SemiringError):
    """A fixture file is malformed."""

    def __init__(self, message: str, line: int, column: int = 1, source: Optional[str] = None):
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")


class AlgebraValidationError(SemiringError):
    """A fixture file parses but its tables are not a commutative semiring."""

    def __init__(self, cause: SemiringValidationError, source: Optional[str] = None):
        self.cause = cause
        self.source = source
        where = f"{source}: " if source else ""
        super().__init__(f"{where}{cause}")

    @property
    def kinds(self) -> List[str]:
        return self.cause.kinds
