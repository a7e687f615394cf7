"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the range where a formula or bound is valid."""


class FormatError(ValueError):
    """A knowledge-base or witness file could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceeded(RuntimeError):
    """A search ran out of its node budget before reaching a verdict.

    This is not a mathematical claim; the question remains open.
    """

    def __init__(self, budget, nodes):
        self.budget = budget
        self.nodes = nodes
        super().__init__(f"node budget {budget} exceeded after {nodes} nodes")
