"""
Exception hierarchy for the width solver.
"""
from typing import List, Optional


class PitWidthError(Exception):
    """Base class for all solver errors."""


class GraphFormatError(PitWidthError):
    """Raised when a graph, decomposition or order file cannot be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OrderCycleError(GraphFormatError):
    """Raised when a dependency order contains a cycle."""

    def __init__(self, cycle: List[int]):
        self.cycle = cycle
        shown = ' < '.join(str(v) for v in cycle + cycle[:1])
        super().__init__(f"order is cyclic: {shown}")


class StructuralError(PitWidthError):
    """An edge-alternating graph or strategy violates its invariants."""


class NoStrategyError(PitWidthError):
    """No edge-alternating path exists from the requested source."""


class QueryError(PitWidthError):
    """A parameter query was given arguments that do not fit its kind."""


class EnumerationCapExceeded(PitWidthError):
    """The brute-force oracle was asked to enumerate a too large graph."""

    def __init__(self, n: int, cap: int):
        self.n = n
        self.cap = cap
        super().__init__(f"refusing to enumerate configurations of a graph with {n} vertices (cap {cap})")


class MemoryBudgetExceeded(PitWidthError):
    """Pit discovery stored more configurations than the budget allows."""

    def __init__(self, reached: int, k: int, lower_bound: Optional[int] = None):
        self.reached = reached
        self.k = k
        self.lower_bound = lower_bound
        super().__init__(f"memory budget exhausted after {reached} configurations at k={k}")
