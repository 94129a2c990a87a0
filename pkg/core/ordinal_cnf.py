# -*- coding: utf-8 -*-
"""
Exact arithmetic on countable ordinals below epsilon_0, in Cantor normal form.

An ordinal is stored as a tuple of (exponent, coefficient) terms, leading term
first. Exponents are ordinals themselves, strictly decreasing; coefficients are
positive integers; the empty tuple is 0. CNF is unique, so equality and hashing
are structural.
"""

import itertools
from enum import IntEnum
from typing import Iterable, Iterator, List, Tuple, Union

from core.errors import PreconditionError

Term = Tuple["Ordinal", int]
OrdinalLike = Union["Ordinal", int]


class Ordering(IntEnum):
    """Result of compare"""

    LESS = -1
    EQUAL = 0
    GREATER = 1


class Ordinal:
    """Immutable ordinal in Cantor normal form"""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Iterable[Term] = ()):
        terms = tuple((_coerce(exponent), coefficient) for exponent, coefficient in terms)
        _check_cnf(terms)
        self._terms = terms
        self._hash = None

    @classmethod
    def _from_cnf(cls, terms: Tuple[Term, ...]) -> "Ordinal":
        # Caller guarantees CNF validity.
        ordinal = cls.__new__(cls)
        ordinal._terms = terms
        ordinal._hash = None
        return ordinal

    @property
    def terms(self) -> Tuple[Term, ...]:
        return self._terms

    def __eq__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __lt__(self, other):
        return compare(self, _coerce(other)) is Ordering.LESS

    def __le__(self, other):
        return compare(self, _coerce(other)) is not Ordering.GREATER

    def __gt__(self, other):
        return compare(self, _coerce(other)) is Ordering.GREATER

    def __ge__(self, other):
        return compare(self, _coerce(other)) is not Ordering.LESS

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other):
        return add(self, _coerce(other))

    def __radd__(self, other):
        return add(_coerce(other), self)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    def __rmul__(self, other):
        return mul(_coerce(other), self)

    def __str__(self):
        from renderers.expr_renderer import format_ordinal

        return format_ordinal(self)

    def __repr__(self):
        return f"Ordinal('{self}')"


def _coerce(value: OrdinalLike) -> Ordinal:
    if isinstance(value, Ordinal):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return from_natural(value)
    raise TypeError(f"Cannot interpret {value!r} as an ordinal")


def _check_cnf(terms: Tuple[Term, ...]) -> None:
    for exponent, coefficient in terms:
        if not isinstance(coefficient, int) or isinstance(coefficient, bool) or coefficient < 1:
            raise ValueError(f"CNF coefficient must be a positive integer, got {coefficient!r}")
    for (upper, _), (lower, _) in zip(terms, terms[1:]):
        if compare(upper, lower) is not Ordering.GREATER:
            raise ValueError("CNF exponents must strictly decrease")


ZERO = Ordinal._from_cnf(())
ONE = Ordinal._from_cnf(((ZERO, 1),))
OMEGA = Ordinal._from_cnf(((ONE, 1),))


def from_natural(n: int) -> Ordinal:
    """Embed a non-negative integer"""
    if n < 0:
        raise PreconditionError(f"Natural numbers are non-negative, got {n}")
    if n == 0:
        return ZERO
    return Ordinal._from_cnf(((ZERO, n),))


def is_finite(a: Ordinal) -> bool:
    return not a._terms or not a._terms[0][0]._terms


def to_natural(a: Ordinal) -> int:
    """Inverse of from_natural; infinite ordinals are rejected"""
    if not is_finite(a):
        raise PreconditionError(f"{a} is not a natural number")
    return a._terms[0][1] if a._terms else 0


def leading_exponent(a: Ordinal) -> Ordinal:
    if not a._terms:
        raise PreconditionError("0 has no leading exponent")
    return a._terms[0][0]


def compare(a: Ordinal, b: Ordinal) -> Ordering:
    """Total order on ordinals (lexicographic on CNF)"""
    for (exp_a, coef_a), (exp_b, coef_b) in zip(a._terms, b._terms):
        order = compare(exp_a, exp_b)
        if order is not Ordering.EQUAL:
            return order
        if coef_a != coef_b:
            return Ordering.LESS if coef_a < coef_b else Ordering.GREATER
    if len(a._terms) == len(b._terms):
        return Ordering.EQUAL
    return Ordering.LESS if len(a._terms) < len(b._terms) else Ordering.GREATER


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum: terms of a below b's leading exponent are absorbed"""
    if not b._terms:
        return a
    lead_exp, lead_coef = b._terms[0]
    kept: List[Term] = []
    for exponent, coefficient in a._terms:
        order = compare(exponent, lead_exp)
        if order is Ordering.GREATER:
            kept.append((exponent, coefficient))
        elif order is Ordering.EQUAL:
            lead_coef += coefficient
            break
        else:
            break
    kept.append((lead_exp, lead_coef))
    kept.extend(b._terms[1:])
    return Ordinal._from_cnf(tuple(kept))


def natural_sum(a: Ordinal, b: Ordinal) -> Ordinal:
    """Hessenberg (Cantor) sum: add coefficients of matching exponents"""
    merged: List[Term] = []
    i = j = 0
    while i < len(a._terms) and j < len(b._terms):
        exp_a, coef_a = a._terms[i]
        exp_b, coef_b = b._terms[j]
        order = compare(exp_a, exp_b)
        if order is Ordering.GREATER:
            merged.append((exp_a, coef_a))
            i += 1
        elif order is Ordering.LESS:
            merged.append((exp_b, coef_b))
            j += 1
        else:
            merged.append((exp_a, coef_a + coef_b))
            i += 1
            j += 1
    merged.extend(a._terms[i:])
    merged.extend(b._terms[j:])
    return Ordinal._from_cnf(tuple(merged))


def _mul_term(a: Ordinal, exponent: Ordinal, coefficient: int) -> Ordinal:
    # a * (w^exponent * coefficient) for a > 0
    lead_exp, lead_coef = a._terms[0]
    if not exponent._terms:
        return Ordinal._from_cnf(((lead_exp, lead_coef * coefficient),) + a._terms[1:])
    return Ordinal._from_cnf(((add(lead_exp, exponent), coefficient),))


def mul(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal product, distributing a over the terms of b from the left"""
    if not a._terms or not b._terms:
        return ZERO
    result = ZERO
    for exponent, coefficient in b._terms:
        result = add(result, _mul_term(a, exponent, coefficient))
    return result


def left_subtract(a: Ordinal, b: Ordinal) -> Ordinal:
    """The unique c with a + c = b; requires a <= b"""
    index = 0
    for (exp_a, coef_a), (exp_b, coef_b) in zip(a._terms, b._terms):
        if exp_a == exp_b and coef_a == coef_b:
            index += 1
            continue
        order = compare(exp_a, exp_b)
        if order is Ordering.LESS:
            return Ordinal._from_cnf(b._terms[index:])
        if order is Ordering.EQUAL and coef_a < coef_b:
            return Ordinal._from_cnf(((exp_b, coef_b - coef_a),) + b._terms[index + 1:])
        raise PreconditionError(f"left_subtract needs a <= b, got a = {a}, b = {b}")
    if index == len(a._terms):
        return Ordinal._from_cnf(b._terms[index:])
    raise PreconditionError(f"left_subtract needs a <= b, got a = {a}, b = {b}")


def omega_pow(a: Ordinal) -> Ordinal:
    return Ordinal._from_cnf(((a, 1),))


def successor(a: Ordinal) -> Ordinal:
    return add(a, ONE)


def last_exponent(a: Ordinal) -> Ordinal:
    """Exponent of the trailing CNF term; this is the rank of a as a point"""
    if not a._terms:
        raise PreconditionError("last_exponent is undefined for 0")
    return a._terms[-1][0]


def is_limit(a: Ordinal) -> bool:
    return bool(a._terms) and bool(a._terms[-1][0]._terms)


def natural_sum_decompositions(beta: Ordinal) -> List[Tuple[Ordinal, Ordinal]]:
    """All (b1, b2) with natural_sum(b1, b2) == beta, split coefficient by coefficient"""
    splits = [range(coefficient + 1) for _, coefficient in beta._terms]
    pairs = []
    for left_coefs in itertools.product(*splits):
        left = []
        right = []
        for (exponent, coefficient), k in zip(beta._terms, left_coefs):
            if k:
                left.append((exponent, k))
            if coefficient - k:
                right.append((exponent, coefficient - k))
        pairs.append((Ordinal._from_cnf(tuple(left)), Ordinal._from_cnf(tuple(right))))
    return pairs


def bounded_natural_sum_decompositions(
    beta: Ordinal, left_bound: Ordinal, right_bound: Ordinal
) -> Iterator[Tuple[Ordinal, Ordinal]]:
    """
    The splits of natural_sum_decompositions(beta) with b1 <= left_bound and
    b2 <= right_bound, generated lazily and in the same order.

    A partial split is dropped as soon as either prefix exceeds its bound:
    appending lower terms never makes an ordinal smaller.
    """
    terms = beta._terms

    def extend(i: int, left: Tuple[Term, ...], right: Tuple[Term, ...]):
        if i == len(terms):
            yield Ordinal._from_cnf(left), Ordinal._from_cnf(right)
            return
        exponent, coefficient = terms[i]
        for k in range(coefficient + 1):
            next_left = left + ((exponent, k),) if k else left
            next_right = right + ((exponent, coefficient - k),) if coefficient - k else right
            if Ordinal._from_cnf(next_left) > left_bound or Ordinal._from_cnf(next_right) > right_bound:
                continue
            yield from extend(i + 1, next_left, next_right)

    return extend(0, (), ())
