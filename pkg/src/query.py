"""
Parameter queries: which width parameter to decide and its extra inputs.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from src.errors import QueryError
from src.graph import PartialOrder


class ParameterKind(Enum):
    TREEWIDTH = 'tw'
    PATHWIDTH = 'pw'
    TREEDEPTH = 'td'
    BRANCHED_TREEWIDTH = 'twq'
    DEPENDENCY_TREEWIDTH = 'dtw'

    @property
    def is_depth(self) -> bool:
        return self is ParameterKind.TREEDEPTH


@dataclass(frozen=True)
class ParameterQuery:
    """A parameter to compute, with the branch budget or order it needs.

    Searcher-count convention: k searchers decide width <= k - 1 for every
    kind except treedepth, where k searchers decide depth <= k.
    """

    kind: ParameterKind
    q: Optional[int] = None
    order: Optional[PartialOrder] = None

    def __post_init__(self):
        if self.kind is ParameterKind.BRANCHED_TREEWIDTH:
            if self.q is None:
                raise QueryError("q-branched treewidth needs a branch budget q")
            if self.q < 0:
                raise QueryError(f"branch budget must be non-negative, got {self.q}")
        elif self.q is not None:
            raise QueryError(f"branch budget q only applies to twq, not {self.kind.value}")
        if self.order is not None and self.kind is not ParameterKind.DEPENDENCY_TREEWIDTH:
            raise QueryError(f"a partial order only applies to dtw, not {self.kind.value}")

    @classmethod
    def parse(cls, name: str, q: Optional[int] = None, order: Optional[PartialOrder] = None) -> 'ParameterQuery':
        try:
            kind = ParameterKind(name)
        except ValueError:
            raise QueryError(f"unknown parameter {name!r}") from None
        return cls(kind, q, order)

    @property
    def name(self) -> str:
        return self.kind.value

    def value_for(self, k: int) -> int:
        """Parameter value certified by a winning run with k searchers."""
        return k if self.kind.is_depth else k - 1
