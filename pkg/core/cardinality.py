# -*- coding: utf-8 -*-
"""
Cardinalities of rank strata: finite counts or countably infinite
"""

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class Cardinality:
    """A finite count, or countably infinite when count is None"""

    count: Optional[int]

    @classmethod
    def of(cls, n: int) -> "Cardinality":
        if n < 0:
            raise ValueError(f"Cardinality must be non-negative, got {n}")
        return cls(n)

    @property
    def is_finite(self) -> bool:
        return self.count is not None

    @property
    def is_zero(self) -> bool:
        return self.count == 0

    @property
    def size_class(self) -> str:
        """zero / finite / infinite: the classes compared by equivalence"""
        if self.count is None:
            return "infinite"
        return "zero" if self.count == 0 else "finite"

    def __add__(self, other: "Cardinality") -> "Cardinality":
        if self.count is None or other.count is None:
            return COUNTABLY_INFINITE
        return Cardinality(self.count + other.count)

    def __mul__(self, other: "Cardinality") -> "Cardinality":
        if self.count == 0 or other.count == 0:
            return ZERO_POINTS
        if self.count is None or other.count is None:
            return COUNTABLY_INFINITE
        return Cardinality(self.count * other.count)

    def __str__(self):
        return "countably infinite" if self.count is None else str(self.count)


COUNTABLY_INFINITE = Cardinality(None)
ZERO_POINTS = Cardinality(0)
