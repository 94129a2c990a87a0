# -*- coding: utf-8 -*-
"""
Seeded generators for ordinals, spaces, expressions and points
"""

import random
from typing import Optional

from core.ordinal_cnf import ZERO, Ordinal, from_natural
from core.space_algebra import EMPTY, CanonicalSpace
from core.space_expr import (
    Canonical,
    Derivative,
    DisjointUnion,
    IteratedDerivative,
    Point,
    Product,
    SpaceExpr,
    canonicalize,
    count_points_of_rank,
    enumerate_points_of_rank,
)

# Indices drawn from infinite strata stay below this
INFINITE_INDEX_RANGE = 200


def random_ordinal(
    rng: random.Random, max_depth: int = 3, max_coeff: int = 5, max_terms: int = 3
) -> Ordinal:
    """An ordinal whose exponents nest at most max_depth levels"""
    if max_depth <= 0:
        return from_natural(rng.randint(0, max_coeff))
    count = rng.randint(0, max_terms)
    exponents = {random_ordinal(rng, max_depth - 1, max_coeff, max_terms) for _ in range(count)}
    ordered = sorted(exponents, reverse=True)
    return Ordinal((exponent, rng.randint(1, max_coeff)) for exponent in ordered)


def random_ordinal_below_omega4(rng: random.Random, max_coeff: int = 5) -> Ordinal:
    terms = []
    for exponent in (3, 2, 1, 0):
        coefficient = rng.randint(0, max_coeff)
        if coefficient:
            terms.append((from_natural(exponent), coefficient))
    return Ordinal(terms)


def random_space(
    rng: random.Random, max_depth: int = 3, max_coeff: int = 5, allow_empty: bool = True
) -> CanonicalSpace:
    if allow_empty and rng.random() < 0.1:
        return EMPTY
    return CanonicalSpace(random_ordinal(rng, max_depth, max_coeff), rng.randint(1, max_coeff))


def random_expr(
    rng: random.Random, depth: int = 4, max_depth: int = 2, max_coeff: int = 3
) -> SpaceExpr:
    """
    A random expression tree of at most ``depth`` operator levels.

    Leaf ranks use a smaller exponent nesting than the ordinal suites so
    product strata stay cheap to enumerate.
    """
    if depth <= 0 or rng.random() < 0.3:
        return Canonical(random_space(rng, max_depth, max_coeff, allow_empty=False))
    choice = rng.randrange(4)
    if choice == 0:
        return DisjointUnion(
            random_expr(rng, depth - 1, max_depth, max_coeff),
            random_expr(rng, depth - 1, max_depth, max_coeff),
        )
    if choice == 1:
        return Product(
            random_expr(rng, depth - 1, max_depth, max_coeff),
            random_expr(rng, depth - 1, max_depth, max_coeff),
        )
    if choice == 2:
        return Derivative(random_expr(rng, depth - 1, max_depth, max_coeff))
    order = random_ordinal(rng, max(max_depth - 1, 0), max_coeff, max_terms=2)
    return IteratedDerivative(random_expr(rng, depth - 1, max_depth, max_coeff), order)


def random_rank(rng: random.Random, e: SpaceExpr) -> Optional[Ordinal]:
    """A rank with a nonempty stratum in e, None for the empty space"""
    top = canonicalize(e)
    if top.is_empty:
        return None
    roll = rng.random()
    if roll < 0.3:
        return top.cb_star
    if roll < 0.5:
        return ZERO
    candidate = random_ordinal(rng, 2, 3, 2)
    return candidate if candidate <= top.cb_star else ZERO


def random_point(rng: random.Random, e: SpaceExpr) -> Optional[Point]:
    """A point of e drawn through a random stratum, None for the empty space"""
    beta = random_rank(rng, e)
    if beta is None:
        return None
    size = count_points_of_rank(e, beta).count
    index = rng.randrange(size) if size is not None else rng.randrange(INFINITE_INDEX_RANGE)
    return enumerate_points_of_rank(e, beta, index)
