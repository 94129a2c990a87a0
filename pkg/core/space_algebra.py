# -*- coding: utf-8 -*-
"""
Closed-form semiring of compact countable Hausdorff spaces.

By the Mazurkiewicz-Sierpinski classification such a space is determined up to
homeomorphism by its Cantor-Bendixson rank and degree, so a space is stored as
``CanonicalSpace(cb_star, degree)``:

- degree 0: the empty space
- cb_star 0: the discrete space with ``degree`` points (the ordinal ``degree``)
- cb_star a >= 1: the ordinal interval [0, w^a * degree] with the order topology
"""

import itertools
from dataclasses import dataclass
from typing import Callable, FrozenSet, Hashable, Iterable, List, Tuple

from core.cardinality import COUNTABLY_INFINITE, ZERO_POINTS, Cardinality
from core.errors import PreconditionError
from core.ordinal_cnf import (
    ONE,
    ZERO,
    Ordinal,
    add,
    from_natural,
    is_limit,
    left_subtract,
    mul,
    natural_sum,
    omega_pow,
    successor,
)


@dataclass(frozen=True)
class CanonicalSpace:
    """Homeomorphism class of a compact countable Hausdorff space"""

    cb_star: Ordinal = ZERO
    degree: int = 0

    def __post_init__(self):
        if isinstance(self.cb_star, int):
            object.__setattr__(self, "cb_star", from_natural(self.cb_star))
        if self.degree < 0:
            raise PreconditionError(f"Degree must be non-negative, got {self.degree}")
        if self.degree == 0 and self.cb_star:
            raise PreconditionError("The empty space has no rank")

    @property
    def is_empty(self) -> bool:
        return self.degree == 0

    def __str__(self):
        from renderers.expr_renderer import format_canonical

        return format_canonical(self)


EMPTY = CanonicalSpace()
POINT = CanonicalSpace(ZERO, 1)


@dataclass(frozen=True)
class RankProfile:
    """Cardinality of every rank stratum of a non-empty canonical space"""

    top_rank: Ordinal
    top_count: int
    empty: bool = False

    def count_at(self, rank: Ordinal) -> Cardinality:
        if self.empty or rank > self.top_rank:
            return ZERO_POINTS
        if rank == self.top_rank:
            return Cardinality.of(self.top_count)
        return COUNTABLY_INFINITE


def cb_rank(s: CanonicalSpace) -> Ordinal:
    """Least a with the a-th derived set empty"""
    if s.is_empty:
        return ZERO
    return successor(s.cb_star)


def degree(s: CanonicalSpace) -> int:
    return s.degree


def disjoint_sum(x: CanonicalSpace, y: CanonicalSpace) -> CanonicalSpace:
    """Topological disjoint union: the larger rank wins, equal ranks add degrees"""
    if x.is_empty:
        return y
    if y.is_empty:
        return x
    if x.cb_star > y.cb_star:
        return x
    if y.cb_star > x.cb_star:
        return y
    return CanonicalSpace(x.cb_star, x.degree + y.degree)


def product(x: CanonicalSpace, y: CanonicalSpace) -> CanonicalSpace:
    """Cartesian product: ranks combine by natural sum, degrees multiply"""
    if x.is_empty or y.is_empty:
        return EMPTY
    return CanonicalSpace(natural_sum(x.cb_star, y.cb_star), x.degree * y.degree)


def derivative(s: CanonicalSpace) -> CanonicalSpace:
    """Subspace of limit points"""
    if s.is_empty or not s.cb_star:
        return EMPTY
    return CanonicalSpace(left_subtract(ONE, s.cb_star), s.degree)


def iterated_derivative(s: CanonicalSpace, beta: Ordinal) -> CanonicalSpace:
    """The beta-th derived set; limit stages are intersections"""
    if s.is_empty or beta > s.cb_star:
        return EMPTY
    return CanonicalSpace(left_subtract(beta, s.cb_star), s.degree)


def equivalent(x: CanonicalSpace, y: CanonicalSpace) -> bool:
    """
    Whether a finite rank-preserving correspondence exists between x and y.

    Degree is not an invariant: the top points of both sides can be matched
    m-to-n. Only cb_star (and emptiness) matters.
    """
    if x.is_empty or y.is_empty:
        return x.is_empty and y.is_empty
    return x.cb_star == y.cb_star


def rank_profile(s: CanonicalSpace) -> RankProfile:
    if s.is_empty:
        raise PreconditionError("The empty space has no rank profile")
    return RankProfile(top_rank=s.cb_star, top_count=s.degree)


def profile_difference(
    x: CanonicalSpace, y: CanonicalSpace
) -> List[Tuple[Ordinal, Cardinality, Cardinality]]:
    """
    Boundary ranks where the strata of x and y fall in different size classes.

    When cb_star differs, every rank from the smaller cb_star up to the larger
    one differs; only the two ends are listed (the larger one last).
    """
    if equivalent(x, y):
        return []

    def count(s: CanonicalSpace, rank: Ordinal) -> Cardinality:
        return ZERO_POINTS if s.is_empty else rank_profile(s).count_at(rank)

    if x.is_empty or y.is_empty:
        rank = (y if x.is_empty else x).cb_star
        candidates = [ZERO, rank]
    else:
        low, high = sorted((x.cb_star, y.cb_star))
        candidates = [low, high]
    diffs = []
    for rank in dict.fromkeys(candidates):
        left, right = count(x, rank), count(y, rank)
        if left.size_class != right.size_class:
            diffs.append((rank, left, right))
    return diffs


def canonical_from_invariants(rank: Ordinal, degree_: int) -> CanonicalSpace:
    """
    The canonical space of given Cantor-Bendixson rank and degree.

    Compact spaces have successor rank; rank 0 is only the empty space.
    """
    if not rank:
        if degree_:
            raise PreconditionError("Rank 0 forces the empty space (degree 0)")
        return EMPTY
    if is_limit(rank):
        raise PreconditionError(f"Rank {rank} is a limit ordinal; compact spaces have successor rank")
    if degree_ < 1:
        raise PreconditionError("Non-empty spaces have positive degree")
    # rank = predecessor + 1, and the trailing coefficient of rank counts the +1s
    terms = rank.terms
    last_exp, last_coef = terms[-1]
    predecessor = Ordinal(terms[:-1] + (((last_exp, last_coef - 1),) if last_coef > 1 else ()))
    return CanonicalSpace(predecessor, degree_)


def underlying_top(s: CanonicalSpace) -> Ordinal:
    """Largest point of the underlying ordinal interval"""
    if s.is_empty:
        raise PreconditionError("The empty space has no points")
    if not s.cb_star:
        return from_natural(s.degree - 1)
    return mul(omega_pow(s.cb_star), from_natural(s.degree))


def underlying_ordinal(s: CanonicalSpace) -> Ordinal:
    """The ordinal whose order topology realises s: d, or w^a * d + 1"""
    if s.is_empty:
        return ZERO
    return add(underlying_top(s), ONE)


def top_points(s: CanonicalSpace) -> List[Ordinal]:
    """The points of maximal rank, in increasing order"""
    if s.is_empty:
        return []
    if not s.cb_star:
        return [from_natural(k) for k in range(s.degree)]
    base = omega_pow(s.cb_star)
    return [mul(base, from_natural(k)) for k in range(1, s.degree + 1)]


def check_pre_derivation_duality(
    universe_a: Iterable[Hashable],
    universe_b: Iterable[Hashable],
    f_a: Callable[[FrozenSet], FrozenSet],
    f_b: Callable[[FrozenSet], FrozenSet],
) -> bool:
    """
    Exhaustively check that the complement of a multiplicative shrink map is a
    pre-derivation on every rectangle S x T of the two finite universes.

    The multiplicative extension is f(S x T) = f_a(S) x f_b(T); its complement
    must satisfy  S x T minus f(S x T) == (S - f_a(S)) x T  union  S x (T - f_b(T)).
    """
    subsets_a = _powerset(universe_a)
    subsets_b = _powerset(universe_b)
    images_a = {s: frozenset(f_a(s)) for s in subsets_a}
    images_b = {t: frozenset(f_b(t)) for t in subsets_b}
    for s, image in itertools.chain(images_a.items(), images_b.items()):
        if not image <= s:
            raise PreconditionError(
                f"Shrink map sends {sorted(s, key=repr)} to a non-subset",
                details={"input": sorted(map(repr, s)), "image": sorted(map(repr, image))},
            )
    for s in subsets_a:
        for t in subsets_b:
            rectangle = frozenset(itertools.product(s, t))
            multiplicative = frozenset(itertools.product(images_a[s], images_b[t]))
            lhs = rectangle - multiplicative
            rhs = frozenset(itertools.product(s - images_a[s], t)) | frozenset(
                itertools.product(s, t - images_b[t])
            )
            if lhs != rhs:
                return False
    return True


def _powerset(universe: Iterable[Hashable]) -> List[FrozenSet]:
    items = list(dict.fromkeys(universe))
    return [
        frozenset(combo)
        for size in range(len(items) + 1)
        for combo in itertools.combinations(items, size)
    ]
