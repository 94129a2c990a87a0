# -*- coding: utf-8 -*-
"""
Independent arithmetic for ordinals below w^4.

Such an ordinal is the tuple (c3, c2, c1, c0) of its coefficients at
w^3, w^2, w, 1. The rules here are written directly on tuples and share
nothing with core.ordinal_cnf, so the two can be checked against each other.
"""

from typing import Tuple

from core.ordinal_cnf import Ordinal, from_natural, is_finite, leading_exponent, to_natural

Quad = Tuple[int, int, int, int]


def to_quad(o: Ordinal) -> Quad:
    if o and (not is_finite(leading_exponent(o)) or to_natural(leading_exponent(o)) > 3):
        raise ValueError(f"{o} is not below w^4")
    coefficients = [0, 0, 0, 0]
    for exponent, coefficient in o.terms:
        coefficients[3 - to_natural(exponent)] = coefficient
    return tuple(coefficients)


def from_quad(q: Quad) -> Ordinal:
    return Ordinal(
        (from_natural(3 - position), coefficient)
        for position, coefficient in enumerate(q)
        if coefficient
    )


def oracle_compare(a: Quad, b: Quad) -> int:
    return (a > b) - (a < b)


def oracle_add(a: Quad, b: Quad) -> Quad:
    """a + b: everything in a below the leading power of b is absorbed"""
    for position, coefficient in enumerate(b):
        if coefficient:
            return a[:position] + (a[position] + coefficient,) + b[position + 1 :]
    return a


def oracle_natural_sum(a: Quad, b: Quad) -> Quad:
    return tuple(x + y for x, y in zip(a, b))
