"""Exception types raised across the package."""

from __future__ import annotations


class MlriskError(Exception):
    """Base class for all package errors."""


class EmptyTargetList(MlriskError):
    """An operation that needs at least one protection target got none."""


class RawValueOutOfRange(MlriskError):
    """A target's raw value is outside the 1..100 scale."""

    def __init__(self, target_id: str, value) -> None:
        super().__init__(f"target {target_id!r}: raw value {value!r} outside [1, 100]")
        self.target_id = target_id
        self.value = value


class UnknownId(MlriskError):
    """A referenced factor or target id is not declared in the assessment."""


class TailoredOutFactor(MlriskError):
    """The operation was asked about a factor that was tailored out."""


class InvalidAssessment(MlriskError):
    """Evaluation refused because the assessment has validation issues."""

    def __init__(self, issues) -> None:
        lines = "; ".join(str(i) for i in issues)
        super().__init__(f"assessment has {len(issues)} validation issue(s): {lines}")
        self.issues = list(issues)


class ScoreOutOfRange(MlriskError):
    """An implementation score fell outside [0, 1]."""


class DimensionMismatch(MlriskError):
    """A score vector's length does not match the active factor count."""


class BudgetExceeded(MlriskError):
    """The exhaustive grid would exceed the configured evaluation budget."""

    def __init__(self, combinations: int, budget: int) -> None:
        super().__init__(
            f"grid of {combinations} combinations exceeds evaluation budget {budget}"
        )
        self.combinations = combinations
        self.budget = budget


class InfeasibleAssessment(MlriskError):
    """No score vector yields positive selected coverage (ratio is +inf everywhere)."""


class UnknownCatalogId(MlriskError):
    """A requested id does not exist in the catalog."""


class IndexOutOfRange(MlriskError):
    """A catalog level index is not 0, 1 or 2."""


class UnknownScopeId(MlriskError):
    """A threshold's scope references an id the assessment does not declare."""


class SameAxis(MlriskError):
    """An efficiency surface was requested with identical x and y factors."""


class ParseError(MlriskError):
    """An assessment document could not be parsed."""

    def __init__(self, line: int | None, message: str) -> None:
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")
        self.line = line
        self.message = message


class ValidationError(MlriskError):
    """A parsed document violates domain invariants."""

    def __init__(self, issues) -> None:
        lines = "; ".join(str(i) for i in issues)
        super().__init__(f"document has {len(issues)} validation issue(s): {lines}")
        self.issues = list(issues)


class IoFailure(MlriskError):
    """Reading or writing a file failed."""


class BindFailure(MlriskError):
    """The HTTP service could not bind its address."""


class LoadFailure(MlriskError):
    """The HTTP service could not load its assessment file."""
