# -*- coding: utf-8 -*-
"""
Space expressions and a symbolic point-level oracle.

Expressions combine canonical spaces with disjoint union, product, derivative
and iterated derivative. ``canonicalize`` evaluates them with the closed-form
algebra; everything else in this module works on points and rank strata
directly, so the two sides can be checked against each other.

Point ranks:
- canonical [0, w^a * d]: 0 for the point 0, otherwise the trailing CNF exponent
- union: rank in the component; product: natural sum of the component ranks
- derivative: r -> the g with 1 + g = r; iterated by b: r -> the g with b + g = r
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from core import space_algebra
from core.cardinality import COUNTABLY_INFINITE, ZERO_POINTS, Cardinality
from core.enumeration import (
    CartesianProduct,
    DisjointSum,
    Empty,
    Enumeration,
    FiniteRange,
    FiniteSupportMaps,
    Mapped,
    Naturals,
)
from core.errors import InvalidPointError, PreconditionError
from core.intervals import Interval, coverage_gaps, intersect
from core.ordinal_cnf import (
    ONE,
    ZERO,
    Ordinal,
    add,
    from_natural,
    is_finite,
    last_exponent,
    leading_exponent,
    left_subtract,
    mul,
    natural_sum,
    bounded_natural_sum_decompositions,
    omega_pow,
    successor,
    to_natural,
)
from core.space_algebra import CanonicalSpace

logger = logging.getLogger(__name__)


# Expressions

class SpaceExpr:
    """Base class of expression nodes"""

    def __str__(self):
        from renderers.expr_renderer import format_space

        return format_space(self)


@dataclass(frozen=True, eq=True)
class Canonical(SpaceExpr):
    space: CanonicalSpace


@dataclass(frozen=True, eq=True)
class DisjointUnion(SpaceExpr):
    left: SpaceExpr
    right: SpaceExpr


@dataclass(frozen=True, eq=True)
class Product(SpaceExpr):
    left: SpaceExpr
    right: SpaceExpr


@dataclass(frozen=True, eq=True)
class Derivative(SpaceExpr):
    inner: SpaceExpr


@dataclass(frozen=True, eq=True)
class IteratedDerivative(SpaceExpr):
    inner: SpaceExpr
    order: Ordinal


# Points

class Point:
    """Base class of symbolic points"""

    def __str__(self):
        from renderers.expr_renderer import format_point

        return format_point(self)


@dataclass(frozen=True, eq=True)
class Ord(Point):
    """A point of a canonical space, as an ordinal of the underlying interval"""

    value: Ordinal


@dataclass(frozen=True, eq=True)
class InLeft(Point):
    point: Point


@dataclass(frozen=True, eq=True)
class InRight(Point):
    point: Point


@dataclass(frozen=True, eq=True)
class Pair(Point):
    left: Point
    right: Point


@dataclass(frozen=True, eq=True)
class Sub(Point):
    """A point of the underlying space that survives a derivative"""

    point: Point


def canonicalize(e: SpaceExpr) -> CanonicalSpace:
    """Homeomorphism class (rank and degree) of the space an expression denotes"""
    if isinstance(e, Canonical):
        return e.space
    if isinstance(e, DisjointUnion):
        return space_algebra.disjoint_sum(canonicalize(e.left), canonicalize(e.right))
    if isinstance(e, Product):
        return space_algebra.product(canonicalize(e.left), canonicalize(e.right))
    if isinstance(e, Derivative):
        return space_algebra.derivative(canonicalize(e.inner))
    if isinstance(e, IteratedDerivative):
        return space_algebra.iterated_derivative(canonicalize(e.inner), e.order)
    raise TypeError(f"Not a space expression: {e!r}")


def _invalid(e: SpaceExpr, p: Point, reason: str) -> InvalidPointError:
    return InvalidPointError(
        f"{p!r} is not a point of {e}: {reason}",
        details={"reason": reason},
    )


def point_rank(e: SpaceExpr, p: Point) -> Ordinal:
    """Cantor-Bendixson rank of p in e; validates p on the way down"""
    if isinstance(e, Canonical):
        if not isinstance(p, Ord):
            raise _invalid(e, p, "canonical spaces have ordinal points")
        s = e.space
        if s.is_empty:
            raise _invalid(e, p, "the empty space has no points")
        if p.value > space_algebra.underlying_top(s):
            raise _invalid(e, p, "outside the underlying interval")
        if not s.cb_star or not p.value:
            return ZERO
        return last_exponent(p.value)
    if isinstance(e, DisjointUnion):
        if isinstance(p, InLeft):
            return point_rank(e.left, p.point)
        if isinstance(p, InRight):
            return point_rank(e.right, p.point)
        raise _invalid(e, p, "union points are tagged left or right")
    if isinstance(e, Product):
        if not isinstance(p, Pair):
            raise _invalid(e, p, "product points are pairs")
        return natural_sum(point_rank(e.left, p.left), point_rank(e.right, p.right))
    if isinstance(e, (Derivative, IteratedDerivative)):
        if not isinstance(p, Sub):
            raise _invalid(e, p, "derived-set points wrap an inner point")
        floor = ONE if isinstance(e, Derivative) else e.order
        inner_rank = point_rank(e.inner, p.point)
        if inner_rank < floor:
            raise _invalid(e, p, f"inner rank {inner_rank} is below {floor}")
        return left_subtract(floor, inner_rank)
    raise TypeError(f"Not a space expression: {e!r}")


def validate_point(e: SpaceExpr, p: Point) -> None:
    point_rank(e, p)


def is_isolated(e: SpaceExpr, p: Point) -> bool:
    return not point_rank(e, p)


@lru_cache(maxsize=4096)
def _top_rank(e: SpaceExpr) -> Optional[Ordinal]:
    """Largest rank with a point in e, None when e is empty"""
    if isinstance(e, Canonical):
        return None if e.space.is_empty else e.space.cb_star
    if isinstance(e, DisjointUnion):
        ranks = [r for r in (_top_rank(e.left), _top_rank(e.right)) if r is not None]
        return max(ranks) if ranks else None
    if isinstance(e, Product):
        left, right = _top_rank(e.left), _top_rank(e.right)
        if left is None or right is None:
            return None
        return natural_sum(left, right)
    if isinstance(e, Derivative):
        top = _top_rank(e.inner)
        return None if not top else left_subtract(ONE, top)
    if isinstance(e, IteratedDerivative):
        top = _top_rank(e.inner)
        return None if top is None or e.order > top else left_subtract(e.order, top)
    raise TypeError(f"Not a space expression: {e!r}")


def _product_splits(e: Product, beta: Ordinal) -> List[Tuple[Ordinal, Ordinal]]:
    """Rank splits of beta that can carry points of both factors"""
    left, right = _top_rank(e.left), _top_rank(e.right)
    if left is None or right is None:
        return []
    return list(bounded_natural_sum_decompositions(beta, left, right))


def count_points_of_rank(e: SpaceExpr, beta: Ordinal) -> Cardinality:
    """Cardinality of the rank-beta stratum, computed from the expression tree"""
    return _count(e, beta)


@lru_cache(maxsize=4096)
def _count(e: SpaceExpr, beta: Ordinal) -> Cardinality:
    if isinstance(e, Canonical):
        s = e.space
        if s.is_empty or beta > s.cb_star:
            return ZERO_POINTS
        if beta == s.cb_star:
            return Cardinality.of(s.degree)
        return COUNTABLY_INFINITE
    if isinstance(e, DisjointUnion):
        return _count(e.left, beta) + _count(e.right, beta)
    if isinstance(e, Product):
        left, right = _top_rank(e.left), _top_rank(e.right)
        if left is None or right is None:
            return ZERO_POINTS
        total = ZERO_POINTS
        for left_rank, right_rank in bounded_natural_sum_decompositions(beta, left, right):
            total = total + _count(e.left, left_rank) * _count(e.right, right_rank)
            if not total.is_finite:
                break
        return total
    if isinstance(e, Derivative):
        return _count(e.inner, add(ONE, beta))
    if isinstance(e, IteratedDerivative):
        return _count(e.inner, add(e.order, beta))
    raise TypeError(f"Not a space expression: {e!r}")


# Stratum enumerations

@lru_cache(maxsize=None)
def ordinals_below(delta: Ordinal) -> Enumeration:
    """The ordinals strictly below delta"""
    if is_finite(delta):
        return Mapped(FiniteRange(to_natural(delta)), from_natural, to_natural)
    blocks = []
    prefix = ZERO
    for exponent, coefficient in delta.terms:
        unit = omega_pow(exponent)
        for copy in range(coefficient):
            start = add(prefix, mul(unit, from_natural(copy)))
            blocks.append((start, add(start, unit), exponent))
        prefix = add(prefix, mul(unit, from_natural(coefficient)))

    parts = [
        Mapped(
            ordinals_below_omega_power(exponent),
            lambda u, start=start: add(start, u),
            lambda x, start=start: left_subtract(start, x),
        )
        for start, _, exponent in blocks
    ]

    def locate(x: Ordinal) -> int:
        for k, (start, end, _) in enumerate(blocks):
            if start <= x < end:
                return k
        return -1

    return DisjointSum(parts, locate)


@lru_cache(maxsize=None)
def ordinals_below_omega_power(delta: Ordinal) -> Enumeration:
    """The ordinals below w^delta: finitely supported coefficient maps on [0, delta)"""
    if not delta:
        return Mapped(FiniteRange(1), lambda _: ZERO, _zero_only)

    def from_support(pairs):
        return Ordinal(sorted(pairs, key=lambda term: term[0], reverse=True))

    def to_support(x: Ordinal):
        return x.terms

    return Mapped(FiniteSupportMaps(ordinals_below(delta)), from_support, to_support)


def _zero_only(x: Ordinal) -> int:
    if x:
        raise InvalidPointError(f"{x} is not below 1")
    return 0


def _shift_down(z: Ordinal, shift: Ordinal) -> Ordinal:
    # inverse of u -> w^shift * u on ordinals whose exponents are all >= shift
    try:
        return Ordinal(tuple((left_subtract(shift, e), c) for e, c in z.terms))
    except PreconditionError as e:
        raise InvalidPointError(f"{z} has an exponent below {shift}") from e


def _canonical_stratum(s: CanonicalSpace, beta: Ordinal) -> Enumeration:
    if s.is_empty or beta > s.cb_star:
        return Empty()
    if not s.cb_star:
        return Mapped(
            FiniteRange(s.degree),
            lambda k: Ord(from_natural(k)),
            lambda p: to_natural(p.value),
        )
    alpha = s.cb_star
    base = omega_pow(alpha)
    if beta == alpha:
        return Mapped(
            FiniteRange(s.degree),
            lambda k: Ord(mul(base, from_natural(k + 1))),
            lambda p: p.value.terms[0][1] - 1,
        )

    # A rank-beta point is y + w^beta * k with k >= 1, where
    # y = w^alpha * j + w^(beta+1) * u, j < degree, u < w^delta.
    step = successor(beta)
    delta = left_subtract(step, alpha)
    lift = omega_pow(step)
    tails = Mapped(
        ordinals_below_omega_power(delta),
        lambda u: mul(lift, u),
        lambda z: _shift_down(z, step),
    )

    def join_base(pair):
        j, z = pair
        return add(mul(base, from_natural(j)), z)

    def split_base(y: Ordinal):
        if y and leading_exponent(y) == alpha:
            return y.terms[0][1], Ordinal(y.terms[1:])
        return 0, y

    bases = Mapped(CartesianProduct(FiniteRange(s.degree), tails), join_base, split_base)
    unit = omega_pow(beta)

    def join_point(pair):
        y, n = pair
        return Ord(add(y, mul(unit, from_natural(n + 1))))

    def split_point(p: Ord):
        terms = p.value.terms
        if not terms or terms[-1][0] != beta:
            raise InvalidPointError(f"{p.value} does not have rank {beta}")
        return Ordinal(terms[:-1]), terms[-1][1] - 1

    cells = Mapped(CartesianProduct(bases, Naturals()), join_point, split_point)
    if beta:
        return cells
    origin = Mapped(FiniteRange(1), lambda _: Ord(ZERO), lambda p: 0)
    return DisjointSum([origin, cells], lambda p: 0 if not p.value else 1)


@lru_cache(maxsize=1024)
def stratum(e: SpaceExpr, beta: Ordinal) -> Enumeration:
    """Bijective enumeration of the points of rank beta"""
    if isinstance(e, Canonical):
        return _canonical_stratum(e.space, beta)
    if isinstance(e, DisjointUnion):
        parts = [
            Mapped(stratum(e.left, beta), InLeft, lambda p: p.point),
            Mapped(stratum(e.right, beta), InRight, lambda p: p.point),
        ]
        return DisjointSum(parts, lambda p: 0 if isinstance(p, InLeft) else 1)
    if isinstance(e, Product):
        splits = _product_splits(e, beta)
        parts = [
            Mapped(
                CartesianProduct(stratum(e.left, left_rank), stratum(e.right, right_rank)),
                lambda pair: Pair(*pair),
                lambda p: (p.left, p.right),
            )
            for left_rank, right_rank in splits
        ]

        def locate(p: Pair) -> int:
            ranks = (point_rank(e.left, p.left), point_rank(e.right, p.right))
            return splits.index(ranks) if ranks in splits else -1

        return DisjointSum(parts, locate)
    if isinstance(e, Derivative):
        return Mapped(stratum(e.inner, add(ONE, beta)), Sub, lambda p: p.point)
    if isinstance(e, IteratedDerivative):
        return Mapped(stratum(e.inner, add(e.order, beta)), Sub, lambda p: p.point)
    raise TypeError(f"Not a space expression: {e!r}")


def enumerate_points_of_rank(e: SpaceExpr, beta: Ordinal, i: int) -> Point:
    return stratum(e, beta).at(i)


def index_of_point(e: SpaceExpr, beta: Ordinal, p: Point) -> int:
    rank = point_rank(e, p)
    if rank != beta:
        raise _invalid(e, p, f"its rank is {rank}, not {beta}")
    return stratum(e, beta).index(p)


def map_point_to_canonical(e: SpaceExpr, p: Point) -> Point:
    """
    Send p to a point of the same rank in the canonical form of e.

    Stratum indices are transported directly, modulo the target size on finite
    strata, so the induced relation is a finite correspondence.
    """
    beta = point_rank(e, p)
    i = index_of_point(e, beta, p)
    target = stratum(Canonical(canonicalize(e)), beta)
    if target.is_finite:
        i %= target.size
    logger.debug(f"Transporting rank {beta} point {p} to stratum index {i}")
    return target.at(i)


# Rough partitions

def rough_partition(s: CanonicalSpace) -> List[Interval]:
    """degree-many disjoint clopen pieces, each of maximal rank and degree 1"""
    if s.is_empty:
        raise PreconditionError("The empty space has no rough partition")
    if not s.cb_star:
        # singletons {0}, (0, 1], (1, 2], ...
        return [Interval.from_zero(ZERO)] + [
            Interval.half_open(from_natural(k - 1), from_natural(k)) for k in range(1, s.degree)
        ]
    unit = omega_pow(s.cb_star)
    return [Interval.from_zero(unit)] + [
        Interval.half_open(mul(unit, from_natural(k)), mul(unit, from_natural(k + 1)))
        for k in range(1, s.degree)
    ]


def canonicalize_interval(s: CanonicalSpace, interval: Interval) -> CanonicalSpace:
    """Homeomorphism class of a clopen interval of the underlying ordinal space"""
    if s.is_empty or not interval.is_well_formed():
        raise PreconditionError(f"{interval} is not an interval of {s}")
    if interval.hi > space_algebra.underlying_top(s):
        raise PreconditionError(f"{interval} leaves the underlying interval of {s}")
    if interval.lo is None:
        # [0, hi] has order type hi + 1
        order_type = add(interval.hi, ONE)
    else:
        order_type = interval.length
        if not is_finite(order_type):
            # (lo, hi] and [0, hi - lo] are homeomorphic once the length is infinite
            order_type = add(order_type, ONE)
    if is_finite(order_type):
        return CanonicalSpace(ZERO, to_natural(order_type))
    exponent, coefficient = order_type.terms[0]
    return CanonicalSpace(exponent, coefficient)


def is_rough_partition(s: CanonicalSpace, family: Sequence[Sequence[Interval]]) -> bool:
    """
    Whether a family of finite interval unions covers s, every member has
    maximal rank, and distinct members meet in small rank.

    Intervals are clopen, so a member has maximal rank exactly when it holds a
    top point, and two members meet in small rank when they share none.
    """
    if s.is_empty:
        return not family
    top = space_algebra.underlying_top(s)
    for member in family:
        for interval in member:
            if not interval.is_well_formed() or interval.hi > top:
                return False
    if coverage_gaps([iv for member in family for iv in member], top):
        return False
    tops = space_algebra.top_points(s)
    held = [
        {x for x in tops if any(iv.contains(x) for iv in member)}
        for member in family
    ]
    if not all(held):
        return False
    for a in range(len(held)):
        for b in range(a + 1, len(held)):
            if held[a] & held[b]:
                return False
    return True


def intersect_unions(a: Sequence[Interval], b: Sequence[Interval]) -> List[Interval]:
    """Intersection of two finite interval unions"""
    pieces = [intersect(x, y) for x in a for y in b]
    return [piece for piece in pieces if piece is not None]


# Leibniz fold

def leibniz_source(x: SpaceExpr, y: SpaceExpr) -> SpaceExpr:
    """D(x) * y  (+)  x * D(y)"""
    return DisjointUnion(Product(Derivative(x), y), Product(x, Derivative(y)))


def leibniz_fold(x: SpaceExpr, y: SpaceExpr, p: Point) -> Point:
    """
    The canonical map from D(x)*y (+) x*D(y) onto D(x*y).

    At most two points share an image and the image rank is never smaller.
    """
    validate_point(leibniz_source(x, y), p)
    if isinstance(p, InLeft):
        pair = p.point
        return Sub(Pair(pair.left.point, pair.right))
    pair = p.point
    return Sub(Pair(pair.left, pair.right.point))
