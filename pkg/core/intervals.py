# -*- coding: utf-8 -*-
"""
Clopen intervals of a compact ordinal space [0, top].

Two shapes occur: [0, hi] and (lo, hi]. Both are closed and open in [0, top],
so any map assembled from translations between such pieces is continuous and
open; this is the proof obligation the correspondence checks rely on.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional

from core.ordinal_cnf import ZERO, Ordinal, left_subtract, successor

FROM_ZERO = "from_zero"
HALF_OPEN = "half_open"


@dataclass(frozen=True)
class Interval:
    """[0, hi] when lo is None, else (lo, hi]. Malformed values are representable."""

    hi: Ordinal
    lo: Optional[Ordinal] = None

    @classmethod
    def from_zero(cls, hi: Ordinal) -> "Interval":
        return cls(hi=hi)

    @classmethod
    def half_open(cls, lo: Ordinal, hi: Ordinal) -> "Interval":
        return cls(hi=hi, lo=lo)

    @property
    def kind(self) -> str:
        return FROM_ZERO if self.lo is None else HALF_OPEN

    @property
    def origin(self) -> Ordinal:
        return ZERO if self.lo is None else self.lo

    def is_well_formed(self) -> bool:
        return self.lo is None or self.lo < self.hi

    @property
    def length(self) -> Ordinal:
        """hi for [0, hi]; the left difference hi - lo for (lo, hi]"""
        if self.lo is None:
            return self.hi
        return left_subtract(self.lo, self.hi)

    @property
    def min_point(self) -> Ordinal:
        return ZERO if self.lo is None else successor(self.lo)

    def contains(self, x: Ordinal) -> bool:
        if x > self.hi:
            return False
        return self.lo is None or x > self.lo

    def translate_to(self, other: "Interval", x: Ordinal) -> Ordinal:
        """Image of x under the order isomorphism onto a piece of equal length"""
        if self.lo is None:
            return x
        return other.origin + left_subtract(self.lo, x)

    def __str__(self):
        if self.lo is None:
            return f"[0, {self.hi}]"
        return f"({self.lo}, {self.hi}]"


def coverage_gaps(intervals: Iterable[Interval], top: Ordinal) -> List[Interval]:
    """Maximal subintervals of [0, top] met by none of the given intervals"""
    gaps: List[Interval] = []
    reach: Optional[Ordinal] = None
    for interval in sorted(intervals, key=lambda iv: iv.min_point):
        expected = ZERO if reach is None else successor(reach)
        if interval.min_point > expected:
            gaps.append(Interval(hi=interval.lo, lo=reach))
        if reach is None or interval.hi > reach:
            reach = interval.hi
        if reach >= top:
            break
    if reach is None:
        gaps.append(Interval.from_zero(top))
    elif reach < top:
        gaps.append(Interval.half_open(reach, top))
    return gaps


def merge_intervals(intervals: Iterable[Interval]) -> List[Interval]:
    """Sorted disjoint intervals with the same union; touching pieces are joined"""
    merged: List[Interval] = []
    for interval in sorted(intervals, key=lambda iv: iv.min_point):
        if merged and interval.min_point <= successor(merged[-1].hi):
            last = merged[-1]
            if interval.hi > last.hi:
                merged[-1] = Interval(hi=interval.hi, lo=last.lo)
        else:
            merged.append(interval)
    return merged


def intersect(a: Interval, b: Interval) -> Optional[Interval]:
    """Intersection of two intervals, None when it is empty"""
    hi = min(a.hi, b.hi)
    if a.lo is None and b.lo is None:
        return Interval.from_zero(hi)
    lo = max(x for x in (a.lo, b.lo) if x is not None)
    if lo >= hi:
        return None
    return Interval.half_open(lo, hi)
