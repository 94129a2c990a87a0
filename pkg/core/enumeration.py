# -*- coding: utf-8 -*-
"""
Bijective enumerations of finite and countably infinite sets.

Every enumeration has a ``size`` (an int, or None when infinite), ``at(i)``
returning the i-th element and ``index(v)`` inverting it. The combinators here
are enough to index every rank stratum of a space expression:

- finite sums list their finite parts first, then interleave the infinite ones
- products use row-major order, mod/div when one side is finite, and the
  Cantor pairing function when both are infinite
- finite-support maps on an infinite domain go through the multiset <-> finite
  set <-> binary number bijection
"""

from math import isqrt
from typing import Any, Callable, List, Optional, Sequence, Tuple

from core.errors import IndexOutOfRangeError, InvalidPointError


def cantor_pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def cantor_unpair(z: int) -> Tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


class Enumeration:
    """Base class: a set with a fixed bijection onto an initial segment of N"""

    size: Optional[int] = None

    @property
    def is_finite(self) -> bool:
        return self.size is not None

    def at(self, i: int) -> Any:
        if i < 0 or (self.size is not None and i >= self.size):
            raise IndexOutOfRangeError(
                f"Index {i} out of range for a stratum of size {self.size}",
                details={"index": i, "size": self.size},
            )
        return self._at(i)

    def index(self, value: Any) -> int:
        return self._index(value)

    def _at(self, i: int) -> Any:
        raise NotImplementedError

    def _index(self, value: Any) -> int:
        raise NotImplementedError


class Empty(Enumeration):
    size = 0

    def _index(self, value):
        raise InvalidPointError(f"{value!r} does not belong to an empty set")


class FiniteRange(Enumeration):
    """0, 1, ..., size - 1"""

    def __init__(self, size: int):
        self.size = size

    def _at(self, i):
        return i

    def _index(self, value):
        if not isinstance(value, int) or not 0 <= value < self.size:
            raise InvalidPointError(f"{value!r} is not below {self.size}")
        return value


class Naturals(Enumeration):
    def _at(self, i):
        return i

    def _index(self, value):
        if not isinstance(value, int) or value < 0:
            raise InvalidPointError(f"{value!r} is not a natural number")
        return value


class Mapped(Enumeration):
    """Image of an enumeration under a bijection given with its inverse"""

    def __init__(self, inner: Enumeration, forward: Callable, backward: Callable):
        self.inner = inner
        self.forward = forward
        self.backward = backward
        self.size = inner.size

    def _at(self, i):
        return self.forward(self.inner.at(i))

    def _index(self, value):
        return self.inner.index(self.backward(value))


class DisjointSum(Enumeration):
    """Union of pairwise disjoint enumerations; ``locate`` names the part of a value"""

    def __init__(self, parts: Sequence[Enumeration], locate: Callable[[Any], int]):
        self.parts = list(parts)
        self.locate = locate
        self.finite_parts = [k for k, part in enumerate(self.parts) if part.is_finite]
        self.infinite_parts = [k for k, part in enumerate(self.parts) if not part.is_finite]
        self.finite_total = sum(self.parts[k].size for k in self.finite_parts)
        self.size = None if self.infinite_parts else self.finite_total

    def _at(self, i):
        if i < self.finite_total:
            for k in self.finite_parts:
                part = self.parts[k]
                if i < part.size:
                    return part.at(i)
                i -= part.size
        i -= self.finite_total
        count = len(self.infinite_parts)
        return self.parts[self.infinite_parts[i % count]].at(i // count)

    def _index(self, value):
        k = self.locate(value)
        if not 0 <= k < len(self.parts):
            raise InvalidPointError(f"{value!r} lies in no part of this set")
        local = self.parts[k].index(value)
        if self.parts[k].is_finite:
            offset = 0
            for j in self.finite_parts:
                if j == k:
                    return offset + local
                offset += self.parts[j].size
        position = self.infinite_parts.index(k)
        return self.finite_total + local * len(self.infinite_parts) + position


class CartesianProduct(Enumeration):
    """Pairs (a, b) with a from left and b from right"""

    def __init__(self, left: Enumeration, right: Enumeration):
        self.left = left
        self.right = right
        if left.size == 0 or right.size == 0:
            self.size = 0
        elif left.is_finite and right.is_finite:
            self.size = left.size * right.size
        else:
            self.size = None

    def _at(self, i):
        if self.right.is_finite:
            a, b = divmod(i, self.right.size)
        elif self.left.is_finite:
            b, a = divmod(i, self.left.size)
        else:
            a, b = cantor_unpair(i)
        return self.left.at(a), self.right.at(b)

    def _index(self, value):
        if self.size == 0:
            raise InvalidPointError(f"{value!r} does not belong to an empty product")
        a = self.left.index(value[0])
        b = self.right.index(value[1])
        if self.right.is_finite:
            return a * self.right.size + b
        if self.left.is_finite:
            return b * self.left.size + a
        return cantor_pair(a, b)


class FiniteSupportMaps(Enumeration):
    """
    Maps from the domain to N with finite support, as tuples of
    (domain element, positive count) ordered by domain index
    """

    def __init__(self, domain: Enumeration):
        self.domain = domain
        self.size = 1 if domain.size == 0 else None

    def _at(self, i):
        if self.domain.size == 0:
            return ()
        if self.domain.is_finite:
            counts = self._unpair_counts(i, self.domain.size)
        else:
            counts = {}
            bit = 0
            seen = 0
            while i:
                if i & 1:
                    slot = bit - seen
                    counts[slot] = counts.get(slot, 0) + 1
                    seen += 1
                i >>= 1
                bit += 1
            counts = [counts.get(slot, 0) for slot in range(max(counts, default=-1) + 1)]
        return tuple(
            (self.domain.at(slot), count) for slot, count in enumerate(counts) if count
        )

    def _index(self, value):
        counts = {}
        for element, count in value:
            if count < 1:
                raise InvalidPointError(f"Counts must be positive, got {count}")
            counts[self.domain.index(element)] = count
        if self.domain.size == 0:
            if counts:
                raise InvalidPointError("The empty domain supports no counts")
            return 0
        if self.domain.is_finite:
            return self._pair_counts([counts.get(slot, 0) for slot in range(self.domain.size)])
        # multiset x_1 <= x_2 <= ... maps to the set {x_j + j - 1}
        index = 0
        position = 0
        for slot in sorted(counts):
            for _ in range(counts[slot]):
                index |= 1 << (slot + position)
                position += 1
        return index

    @staticmethod
    def _unpair_counts(i: int, width: int) -> List[int]:
        counts = []
        for _ in range(width - 1):
            head, i = cantor_unpair(i)
            counts.append(head)
        counts.append(i)
        return counts

    @staticmethod
    def _pair_counts(counts: List[int]) -> int:
        index = counts[-1]
        for head in reversed(counts[:-1]):
            index = cantor_pair(head, index)
        return index
