# -*- coding: utf-8 -*-
"""
Unit tests for the semiring of canonical spaces
"""

import pytest
from hypothesis import given

from core.cardinality import COUNTABLY_INFINITE, Cardinality
from core.errors import PreconditionError
from core.ordinal_cnf import OMEGA, ONE, ZERO, add, from_natural, natural_sum
from core.space_algebra import (
    EMPTY,
    POINT,
    CanonicalSpace,
    canonical_from_invariants,
    cb_rank,
    check_pre_derivation_duality,
    degree,
    derivative,
    disjoint_sum,
    equivalent,
    iterated_derivative,
    product,
    profile_difference,
    rank_profile,
    top_points,
    underlying_ordinal,
)
from parsers.expr_parser import parse_ordinal as W
from tests.strategies import ordinals, spaces


def can(alpha, d):
    return CanonicalSpace(W(alpha) if isinstance(alpha, str) else from_natural(alpha), d)


class TestCanonicalSpace:
    """Tests for the canonical space value"""

    def test_empty(self):
        """Test the empty space"""
        assert EMPTY.is_empty
        assert degree(EMPTY) == 0

    def test_integer_rank_coerced(self):
        """Test that an int cb_star becomes an ordinal"""
        assert CanonicalSpace(2, 3).cb_star == from_natural(2)

    def test_negative_degree_rejected(self):
        """Test that degrees are non-negative"""
        with pytest.raises(PreconditionError):
            CanonicalSpace(ONE, -1)

    def test_empty_with_rank_rejected(self):
        """Test that degree 0 forces rank 0"""
        with pytest.raises(PreconditionError):
            CanonicalSpace(ONE, 0)

    def test_underlying_ordinal(self):
        """Test d for discrete spaces and w^a*d + 1 otherwise"""
        assert underlying_ordinal(can(0, 4)) == from_natural(4)
        assert underlying_ordinal(can("w", 2)) == W("w^w*2 + 1")
        assert underlying_ordinal(EMPTY) == ZERO

    def test_top_points(self):
        """Test the maximal-rank points of [0, w^2*3]"""
        assert top_points(can(2, 3)) == [W("w^2"), W("w^2*2"), W("w^2*3")]
        assert top_points(can(0, 2)) == [ZERO, ONE]


class TestRanks:
    """Tests for cb_rank and rank profiles"""

    def test_cb_rank(self):
        """Test cb_rank of empty, finite and w-ranked spaces"""
        assert cb_rank(EMPTY) == ZERO
        assert cb_rank(can(0, 5)) == ONE
        assert cb_rank(can("w", 1)) == W("w + 1")

    def test_cb_rank_via_iterated_derivative(self):
        """Test that the w-th derived set of (w, 1) is one point and the next is empty"""
        s = can("w", 1)
        assert iterated_derivative(s, OMEGA) == POINT
        assert iterated_derivative(s, W("w + 1")) == EMPTY

    def test_rank_profile_finite(self):
        """Test the profile of a discrete space"""
        profile = rank_profile(can(0, 4))
        assert profile.top_rank == ZERO
        assert profile.top_count == 4

    def test_rank_profile_counts(self):
        """Test stratum sizes of (2, 3)"""
        profile = rank_profile(can(2, 3))
        assert profile.count_at(from_natural(2)) == Cardinality(3)
        assert profile.count_at(ONE) == COUNTABLY_INFINITE
        assert profile.count_at(ZERO) == COUNTABLY_INFINITE
        assert profile.count_at(from_natural(3)).is_zero

    def test_rank_profile_omega(self):
        """Test that every finite rank of (w, 1) is infinite"""
        profile = rank_profile(can("w", 1))
        assert profile.count_at(OMEGA) == Cardinality(1)
        for k in range(10):
            assert profile.count_at(from_natural(k)) == COUNTABLY_INFINITE

    def test_rank_profile_of_empty(self):
        """Test that the empty space has no profile"""
        with pytest.raises(PreconditionError):
            rank_profile(EMPTY)

    def test_canonical_from_invariants(self):
        """Test rebuilding a space from rank and degree"""
        assert canonical_from_invariants(W("w + 1"), 2) == can("w", 2)
        assert canonical_from_invariants(from_natural(3), 1) == can(2, 1)
        assert canonical_from_invariants(ZERO, 0) == EMPTY

    def test_canonical_from_limit_rank(self):
        """Test that limit ranks are not compact"""
        with pytest.raises(PreconditionError):
            canonical_from_invariants(OMEGA, 1)


class TestSumAndProduct:
    """Tests for disjoint sum and product"""

    def test_sum_identity(self):
        """Test Empty as additive identity"""
        assert disjoint_sum(EMPTY, can("w", 3)) == can("w", 3)

    def test_sum_equal_ranks(self):
        """Test (1,1) + (1,1) = (1,2)"""
        assert disjoint_sum(can(1, 1), can(1, 1)) == can(1, 2)

    def test_sum_larger_rank_wins(self):
        """Test (2,1) + (0,7) = (2,1)"""
        assert disjoint_sum(can(2, 1), can(0, 7)) == can(2, 1)

    def test_product_identity(self):
        """Test the one-point space as multiplicative identity"""
        assert product(POINT, can("w*2", 4)) == can("w*2", 4)

    def test_product_of_convergent_sequences(self):
        """Test (1,1) x (1,1) = (2,1)"""
        assert product(can(1, 1), can(1, 1)) == can(2, 1)

    def test_product_natural_sum_rank(self):
        """Test (1,2) x (w,3) = (w+1, 6)"""
        assert product(can(1, 2), can("w", 3)) == can("w + 1", 6)

    def test_product_degree(self):
        """Test that degrees multiply"""
        assert degree(product(can(1, 2), can(1, 3))) == 6

    def test_empty_annihilates(self):
        """Test x x Empty = Empty"""
        assert product(can(3, 2), EMPTY) == EMPTY


class TestDerivatives:
    """Tests for derivative and iterated derivative"""

    def test_finite_space(self):
        """Test that a finite space has no limit points"""
        assert derivative(can(0, 5)) == EMPTY

    def test_drops_finite_rank(self):
        """Test D(1,2) = (0,2)"""
        assert derivative(can(1, 2)) == can(0, 2)

    def test_fixes_infinite_rank(self):
        """Test D(w,1) = (w,1)"""
        assert derivative(can("w", 1)) == can("w", 1)

    def test_iterated_zero(self):
        """Test X^0 = X"""
        s = can("w^2 + 3", 2)
        assert iterated_derivative(s, ZERO) == s

    def test_iterated_limit(self):
        """Test the w-th derivative of (w*2, 1)"""
        assert iterated_derivative(can("w*2", 1), OMEGA) == can("w", 1)

    def test_iterated_past_rank(self):
        """Test that (2,3) dies at step 3"""
        s = can(2, 3)
        assert iterated_derivative(s, from_natural(3)) == EMPTY
        assert derivative(derivative(derivative(s))) == EMPTY

    def test_finite_iteration_matches_repetition(self):
        """Test n-fold derivative against iterated_derivative up to 10 steps"""
        s = can("w + 4", 3)
        repeated = s
        for n in range(11):
            assert iterated_derivative(s, from_natural(n)) == repeated
            repeated = derivative(repeated)

    def test_cb_rank_drop(self):
        """Test that cb_rank drops exactly when it is finite and nonzero"""
        assert cb_rank(derivative(can(3, 1))) < cb_rank(can(3, 1))
        assert cb_rank(derivative(can("w", 1))) == cb_rank(can("w", 1))


class TestEquivalence:
    """Tests for the finite-correspondence equivalence"""

    def test_degree_is_not_invariant(self):
        """Test (1,1) ~ (1,2)"""
        assert equivalent(can(1, 1), can(1, 2))

    def test_rank_is_invariant(self):
        """Test (1,1) !~ (2,1)"""
        assert not equivalent(can(1, 1), can(2, 1))

    def test_empty_is_alone(self):
        """Test Empty !~ point and Empty ~ Empty"""
        assert not equivalent(EMPTY, POINT)
        assert equivalent(EMPTY, EMPTY)

    def test_profile_difference(self):
        """Test the reported boundary ranks of (1,1) vs (2,1)"""
        diffs = profile_difference(can(1, 1), can(2, 1))
        assert [rank for rank, _, _ in diffs] == [ONE, from_natural(2)]
        rank, left, right = diffs[-1]
        assert left.is_zero
        assert right == Cardinality(1)

    def test_profile_difference_of_equivalent(self):
        """Test that equivalent spaces have no differing strata"""
        assert profile_difference(can(2, 1), can(2, 9)) == []

    def test_profile_difference_with_empty(self):
        """Test the empty space against a point"""
        diffs = profile_difference(EMPTY, POINT)
        assert [rank for rank, _, _ in diffs] == [ZERO]


class TestSemiringLaws:
    """Property tests for the semiring structure modulo equivalence"""

    @given(spaces(), spaces(), spaces())
    def test_sum_laws(self, x, y, z):
        """Test associativity and commutativity of the sum"""
        assert disjoint_sum(disjoint_sum(x, y), z) == disjoint_sum(x, disjoint_sum(y, z))
        assert disjoint_sum(x, y) == disjoint_sum(y, x)

    @given(spaces(), spaces(), spaces())
    def test_product_laws(self, x, y, z):
        """Test associativity, commutativity and distributivity of the product"""
        assert product(product(x, y), z) == product(x, product(y, z))
        assert product(x, y) == product(y, x)
        assert equivalent(
            product(x, disjoint_sum(y, z)), disjoint_sum(product(x, y), product(x, z))
        )

    @given(spaces())
    def test_identities(self, x):
        """Test the additive and multiplicative identities"""
        assert disjoint_sum(x, EMPTY) == x
        assert product(x, POINT) == x
        assert product(x, EMPTY) == EMPTY

    @given(spaces(), spaces())
    def test_integrality(self, x, y):
        """Test that a product is empty only when a factor is"""
        assert product(x, y).is_empty == (x.is_empty or y.is_empty)

    @given(spaces(allow_empty=False), spaces(allow_empty=False))
    def test_rank_homomorphism(self, x, y):
        """Test cb_star of sums and products"""
        assert disjoint_sum(x, y).cb_star == max(x.cb_star, y.cb_star)
        assert product(x, y).cb_star == natural_sum(x.cb_star, y.cb_star)

    @given(spaces(allow_empty=False), spaces(allow_empty=False))
    def test_leibniz_modulo_equivalence(self, x, y):
        """Test D(xy) ~ D(x)y + xD(y)"""
        left = derivative(product(x, y))
        right = disjoint_sum(product(derivative(x), y), product(x, derivative(y)))
        assert equivalent(left, right)

    def test_leibniz_fails_in_degree(self):
        """Test the degree-level counterexample x = y = (1,1)"""
        x = can(1, 1)
        left = derivative(product(x, x))
        right = disjoint_sum(product(derivative(x), x), product(x, derivative(x)))
        assert left == can(1, 1)
        assert right == can(1, 2)
        assert equivalent(left, right)

    @given(spaces(), spaces())
    def test_derivative_additive(self, x, y):
        """Test D(x + y) = D(x) + D(y) up to homeomorphism"""
        assert derivative(disjoint_sum(x, y)) == disjoint_sum(derivative(x), derivative(y))

    @given(spaces(), ordinals(), ordinals())
    def test_iterated_composition(self, s, b1, b2):
        """Test X^(b1 + b2) = (X^b1)^b2"""
        assert iterated_derivative(s, add(b1, b2)) == iterated_derivative(
            iterated_derivative(s, b1), b2
        )

    @given(spaces(), ordinals())
    def test_iterated_limit_orders(self, s, b2):
        """Test composition through the limit orders w and w*2"""
        for b1 in (OMEGA, W("w*2")):
            assert iterated_derivative(s, add(b1, b2)) == iterated_derivative(
                iterated_derivative(s, b1), b2
            )


class TestPreDerivationDuality:
    """Tests for the exhaustive rectangle check on finite universes"""

    def test_identity_maps(self):
        """Test f = identity"""
        assert check_pre_derivation_duality("abc", "xy", lambda s: s, lambda t: t)

    def test_constant_empty_maps(self):
        """Test f = constant empty"""
        assert check_pre_derivation_duality("abc", "xy", lambda s: frozenset(), lambda t: frozenset())

    def test_intersection_maps(self):
        """Test every map S -> S & S0 on 3-element universes"""
        universe = (0, 1, 2)
        for s0 in (frozenset(), frozenset({0}), frozenset({1, 2}), frozenset(universe)):
            for t0 in (frozenset(), frozenset({2}), frozenset({0, 1})):
                assert check_pre_derivation_duality(
                    universe, universe, lambda s, s0=s0: s & s0, lambda t, t0=t0: t & t0
                )

    def test_not_shrinking_rejected(self):
        """Test that maps growing a set violate the precondition"""
        with pytest.raises(PreconditionError):
            check_pre_derivation_duality("ab", "x", lambda s: frozenset("ab"), lambda t: t)

