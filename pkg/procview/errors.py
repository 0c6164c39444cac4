from typing import Iterable, List, Optional, Sequence


class NoFirstElementError(ValueError):
    """Raised when `ft` is applied to an empty time interval."""

    pass


class HorizonExceededError(IndexError):
    """Raised when a stream is indexed at or past its horizon."""

    pass


class HorizonMismatchError(ValueError):
    """Raised when streams that must share a horizon do not."""

    pass


class ChannelTypeError(TypeError):
    """Raised when a message does not match the type of its channel."""

    pass


class InvalidSpecError(ValueError):
    """Raised when an elementary process specification fails validation."""

    def __init__(self, name: str, diagnostics: Sequence["object"]):
        self.name = name
        self.diagnostics = list(diagnostics)
        details = "; ".join(str(d) for d in self.diagnostics)
        super().__init__(f"Process {name!r} is invalid: {details}")


class NoEntryPointError(ValueError):
    """Raised when the entry or exit of an autonomous loop is requested."""

    pass


class NameCollisionError(KeyError):
    """Raised when two channels or instances would share a name."""

    pass


class WireTypeMismatchError(TypeError):
    """Raised when a wire connects ports of different message types."""

    pass


class ZenoRiskError(ValueError):
    """Raised when a Delay component is built without a strict delay."""

    pass


class CausalityCycleError(RuntimeError):
    """Raised when same-tick dependencies form a cycle with no strict component."""

    def __init__(self, cycle: Iterable[str]):
        self.cycle: List[str] = list(cycle)
        super().__init__(
            "Same-tick dependency cycle without a strict-causal component: "
            + " -> ".join(self.cycle)
        )


class MissingBoundError(KeyError):
    """Raised when WCET analysis lacks a bound for an elementary process."""

    pass


class MeasurementInconclusiveError(RuntimeError):
    """Raised when a measured activation produces no exit within the horizon."""

    pass


class UnknownStreamError(KeyError):
    """Raised when a channel, port or component name cannot be resolved."""

    pass


class EvaluationError(ArithmeticError):
    """Raised when a behavior expression cannot be evaluated."""

    pass


class SpecSyntaxError(ValueError):
    """Raised when a specification document cannot be parsed."""

    def __init__(
        self,
        message: str,
        line: int,
        column: int,
        expected: Optional[Sequence[str]] = None,
    ):
        self.line = line
        self.column = column
        self.expected = sorted(set(expected or ()))
        location = f"line {line}, column {column}"
        hint = ""
        if self.expected:
            hint = f" (expected one of: {', '.join(self.expected)})"
        super().__init__(f"{location}: {message}{hint}")


class UnresolvedReferenceError(NameError):
    """Raised when a document refers to an undeclared process or composition."""

    pass


class SpecTypeError(TypeError):
    """Raised when declared channel and buffer types disagree in a document."""

    pass
