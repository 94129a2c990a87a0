# -*- coding: utf-8 -*-
"""
Unit tests for finitely presented correspondences
"""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.correspondence import (
    Block,
    BlockCorrespondence,
    BlockMode,
    Piece,
    PiecewiseCorrespondence,
    apply_blocks,
    apply_piecewise,
    check_lemma1_conclusions,
    check_rank_preserving,
    compose_blocks,
    generate_witness,
    image_of_interval,
    inverse,
    preimage_of_interval,
    validate_blocks,
    validate_correspondence,
    validate_piecewise,
)
from core.errors import InvalidPointError, PreconditionError
from core.intervals import Interval
from core.ordinal_cnf import OMEGA, ONE, ZERO, add, from_natural, omega_pow
from core.space_algebra import EMPTY, CanonicalSpace, underlying_top
from core.space_expr import Canonical, Ord, point_rank, rough_partition
from parsers.expr_parser import parse_ordinal as W
from tests.strategies import ordinals

WITNESS_RANKS = (ONE, from_natural(2), OMEGA, add(OMEGA, ONE), omega_pow(OMEGA))


def can(alpha, d):
    return CanonicalSpace(W(alpha) if isinstance(alpha, str) else from_natural(alpha), d)


def identity(s):
    top = Interval.from_zero(underlying_top(s))
    return PiecewiseCorrespondence(s, s, (Piece(top, top),))


@pytest.fixture
def two_to_one():
    """The two-piece correspondence from (1,2) onto (1,1)"""
    return PiecewiseCorrespondence(
        can(1, 2),
        can(1, 1),
        (
            Piece(Interval.from_zero(OMEGA), Interval.from_zero(OMEGA)),
            Piece(Interval.half_open(OMEGA, W("w*2")), Interval.half_open(ZERO, OMEGA)),
        ),
    )


class TestValidatePiecewise:
    """Tests for piecewise validity and multiplicity"""

    def test_identity(self):
        """Test that the identity is valid and 1-to-1"""
        report = validate_piecewise(identity(can("w", 3)))
        assert report.valid
        assert report.multiplicity == "1-to-1"

    def test_two_to_one(self, two_to_one):
        """Test that the target point w has two preimages"""
        report = validate_piecewise(two_to_one)
        assert report.valid
        assert (report.n, report.m) == (2, 1)
        assert report.multiplicity == "2-to-1"

    def test_length_mismatch(self):
        """Test [0, w] <-> (0, w*2]"""
        s = can(1, 2)
        c = PiecewiseCorrespondence(
            s, s, (Piece(Interval.from_zero(OMEGA), Interval.half_open(ZERO, W("w*2"))),)
        )
        report = validate_piecewise(c)
        assert not report.valid
        assert "length_mismatch" in report.failure_kinds()
        assert "type_mismatch" in report.failure_kinds()

    def test_bad_interval(self):
        """Test a piece reaching past the top of the space"""
        s = can(1, 1)
        c = PiecewiseCorrespondence(
            s, s, (Piece(Interval.from_zero(W("w + 1")), Interval.from_zero(W("w + 1"))),)
        )
        report = validate_piecewise(c)
        assert report.failure_kinds().count("bad_interval") == 2
        assert {failure.side for failure in report.failures if failure.kind == "bad_interval"} == {
            "source",
            "target",
        }

    def test_reversed_interval(self):
        """Test that (w, w] is malformed"""
        s = can(1, 1)
        c = PiecewiseCorrespondence(s, s, (Piece(Interval.half_open(OMEGA, OMEGA), Interval.from_zero(OMEGA)),))
        assert "bad_interval" in validate_piecewise(c).failure_kinds()

    def test_coverage_gap(self):
        """Test that dropping a piece leaves an uncovered interval"""
        witness = generate_witness(can(2, 3), can(2, 5))
        c = PiecewiseCorrespondence(witness.source, witness.target, witness.pieces[:-1])
        report = validate_piecewise(c)
        assert not report.valid
        gaps = [failure for failure in report.failures if failure.kind == "coverage_gap"]
        assert gaps
        assert gaps[0].side == "target"
        assert gaps[0].interval == "(w^2*4, w^2*5]"
        assert "coverage gap" in gaps[0].message

    def test_dispatch(self, two_to_one):
        """Test that validate_correspondence picks the presentation"""
        assert validate_correspondence(two_to_one).valid
        assert validate_correspondence(BlockCorrespondence(EMPTY, EMPTY)).valid


class TestApply:
    """Tests for images of points"""

    def test_identity(self):
        """Test apply(p) = {p}"""
        c = identity(can(2, 1))
        assert apply_piecewise(c, W("w*5 + 2")) == frozenset({W("w*5 + 2")})

    def test_translation(self, two_to_one):
        """Test images under the second piece"""
        assert apply_piecewise(two_to_one, W("w*2")) == frozenset({OMEGA})
        assert apply_piecewise(two_to_one, W("w + 3")) == frozenset({from_natural(3)})
        assert apply_piecewise(two_to_one, OMEGA) == frozenset({OMEGA})

    def test_outside_source(self, two_to_one):
        """Test that points past the top are rejected"""
        with pytest.raises(InvalidPointError):
            apply_piecewise(two_to_one, W("w*2 + 1"))


class TestRankPreservation:
    """Tests for check_rank_preserving"""

    def test_identity(self):
        """Test the identity"""
        assert check_rank_preserving(identity(can("w^w", 2)))

    def test_two_to_one(self, two_to_one):
        """Test the two-piece witness, spot-checking w, w*2 and 50 isolated points"""
        assert check_rank_preserving(two_to_one)
        for x in [OMEGA, W("w*2")] + [from_natural(k) for k in range(50)]:
            for image in apply_piecewise(two_to_one, x):
                assert point_rank(Canonical(can(1, 2)), Ord(x)) == point_rank(Canonical(can(1, 1)), Ord(image))

    def test_invalid_rejected(self):
        """Test that invalid correspondences are refused"""
        s = can(1, 1)
        c = PiecewiseCorrespondence(s, s, ())
        with pytest.raises(PreconditionError):
            check_rank_preserving(c)
        with pytest.raises(PreconditionError):
            check_lemma1_conclusions(c)

    @settings(max_examples=200)
    @given(
        ordinals(max_depth=2, max_coeff=3).filter(bool),
        st.integers(min_value=1, max_value=4),
        st.integers(min_value=1, max_value=4),
        st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), max_size=4),
    )
    def test_random_valid_correspondences(self, alpha, dx, dy, extra):
        """Test that valid correspondences assembled from rough partition pieces preserve rank"""
        x, y = CanonicalSpace(alpha, dx), CanonicalSpace(alpha, dy)
        witness = generate_witness(x, y)
        xs, ys = rough_partition(x), rough_partition(y)
        added = tuple(
            Piece(xs[i % dx], ys[j % dy])
            for i, j in extra
            if xs[i % dx].kind == ys[j % dy].kind
        )
        c = PiecewiseCorrespondence(x, y, witness.pieces + added)
        assert validate_piecewise(c).valid
        assert check_rank_preserving(c)
        assert check_lemma1_conclusions(c).ranks_equal


class TestDegreeBounds:
    """Tests for the instantiated rank and degree conclusions"""

    def test_identity(self):
        """Test 3 <= 3 <= 3 on (2, 3)"""
        report = check_lemma1_conclusions(identity(can(2, 3)))
        assert report.ranks_equal
        assert report.inequality == "3 <= 3 <= 3"
        assert report.holds

    def test_two_to_one(self, two_to_one):
        """Test ranks 2 = 2 and 1 <= 2 <= 2"""
        report = check_lemma1_conclusions(two_to_one)
        assert report.source_cb_rank == "2"
        assert report.target_cb_rank == "2"
        assert report.inequality == "1 <= 2 <= 2"
        assert report.upper_bound == 2
        assert report.bounds_hold
        assert report.open_conclusion and report.continuous_conclusion

    def test_generated_witness_bounds(self):
        """Test 5/m <= 3 <= n*5 on the witness (2,3) -> (2,5)"""
        report = check_lemma1_conclusions(generate_witness(can(2, 3), can(2, 5)))
        assert (report.n, report.m) == (1, 2)
        assert report.inequality == "5/2 <= 3 <= 5"
        assert report.holds


class TestGenerateWitness:
    """Tests for witness construction"""

    def test_same_space(self):
        """Test that a space is matched to itself 1-to-1"""
        s = can(2, 3)
        witness = generate_witness(s, s)
        assert validate_piecewise(witness).multiplicity == "1-to-1"
        assert [piece.src for piece in witness.pieces] == rough_partition(s)
        assert [piece.dst for piece in witness.pieces] == rough_partition(s)

    def test_two_to_one(self, two_to_one):
        """Test that (1,2) -> (1,1) is the two-piece correspondence"""
        assert generate_witness(can(1, 2), can(1, 1)) == two_to_one

    def test_bounded_multiplicity(self):
        """Test (2,3) -> (2,5) stays within (3, 5)"""
        report = validate_piecewise(generate_witness(can(2, 3), can(2, 5)))
        assert report.valid
        assert report.n <= 3 and report.m <= 5

    def test_discrete_spaces(self):
        """Test the full bipartite block for finite spaces"""
        witness = generate_witness(can(0, 3), can(0, 5))
        assert witness == BlockCorrespondence(can(0, 3), can(0, 5), (Block(ZERO, ZERO, BlockMode.BIPARTITE),))
        report = validate_blocks(witness)
        assert report.valid
        assert report.multiplicity == "3-to-5"
        assert check_lemma1_conclusions(witness).holds

    def test_empty_spaces(self):
        """Test that the empty space gets an empty block witness"""
        witness = generate_witness(EMPTY, EMPTY)
        assert witness == BlockCorrespondence(EMPTY, EMPTY, ())
        assert check_lemma1_conclusions(witness).holds

    def test_not_equivalent(self):
        """Test that (1,1) and (2,1) have no witness"""
        with pytest.raises(PreconditionError):
            generate_witness(can(1, 1), can(2, 1))

    @pytest.mark.parametrize(
        "alpha,dx,dy", list(itertools.product(WITNESS_RANKS, range(1, 6), range(1, 6)))
    )
    def test_witness_grid(self, alpha, dx, dy):
        """Test validity, rank preservation and degree bounds on all 125 grid cases"""
        witness = generate_witness(CanonicalSpace(alpha, dx), CanonicalSpace(alpha, dy))
        assert validate_correspondence(witness).valid
        assert check_rank_preserving(witness)
        report = check_lemma1_conclusions(witness)
        assert report.ranks_equal
        assert report.bounds_hold

    def test_deterministic(self):
        """Test that witnesses are reproducible"""
        assert generate_witness(can("w", 4), can("w", 3)) == generate_witness(can("w", 4), can("w", 3))


class TestBlocks:
    """Tests for block correspondences"""

    def test_modes(self):
        """Test a bijection on rank 0 and index modulo on rank 1"""
        c = BlockCorrespondence(
            can(1, 3),
            can(1, 2),
            (Block(ZERO, ZERO, BlockMode.BIJECTION), Block(ONE, ONE, BlockMode.MODULO)),
        )
        report = validate_blocks(c)
        assert report.valid
        assert (report.n, report.m) == (2, 1)
        assert check_rank_preserving(c)
        assert check_lemma1_conclusions(c).inequality == "2 <= 3 <= 4"

    def test_apply_modulo(self):
        """Test index modulo in both directions"""
        down = BlockCorrespondence(
            can(1, 3), can(1, 2), (Block(ZERO, ZERO, BlockMode.BIJECTION), Block(ONE, ONE, BlockMode.MODULO))
        )
        assert apply_blocks(down, W("w*3")) == frozenset({OMEGA})
        up = inverse(down)
        assert apply_blocks(up, OMEGA) == frozenset({OMEGA, W("w*3")})

    def test_apply_bipartite(self):
        """Test that a bipartite block relates a point to the whole stratum"""
        witness = generate_witness(can(0, 2), can(0, 3))
        assert apply_blocks(witness, ZERO) == frozenset({ZERO, ONE, from_natural(2)})

    @pytest.mark.parametrize(
        "block",
        [
            Block(ONE, ONE, BlockMode.BIJECTION),
            Block(ZERO, ZERO, BlockMode.BIPARTITE),
            Block(ZERO, ONE, BlockMode.MODULO),
            Block(from_natural(2), from_natural(2), BlockMode.BIJECTION),
        ],
    )
    def test_bad_blocks(self, block):
        """Test size mismatches, infinite bipartite blocks, mixed modulo and empty strata"""
        c = BlockCorrespondence(can(1, 3), can(1, 2), (block,))
        assert "bad_block" in validate_blocks(c).failure_kinds()

    def test_uncovered_stratum(self):
        """Test a missing rank"""
        c = BlockCorrespondence(can(1, 1), can(1, 1), (Block(ZERO, ZERO, BlockMode.BIJECTION),))
        report = validate_blocks(c)
        assert report.failure_kinds() == ["coverage_gap", "coverage_gap"]

    def test_infinite_rank_not_coverable(self):
        """Test that blocks cannot cover infinitely many strata"""
        s = can("w", 1)
        report = validate_blocks(BlockCorrespondence(s, s, (Block(OMEGA, OMEGA, BlockMode.BIJECTION),)))
        assert "coverage_gap" in report.failure_kinds()

    def test_rank_changing_block(self):
        """Test that a valid block between different ranks is not rank preserving"""
        s = can(2, 1)
        c = BlockCorrespondence(
            s,
            s,
            (
                Block(ZERO, ZERO, BlockMode.BIJECTION),
                Block(ONE, ONE, BlockMode.BIJECTION),
                Block(from_natural(2), from_natural(2), BlockMode.BIPARTITE),
                Block(ZERO, ONE, BlockMode.BIJECTION),
            ),
        )
        assert validate_blocks(c).valid
        assert not check_rank_preserving(c)


class TestInverseAndImages:
    """Tests for inverse, images and preimages of intervals"""

    def test_inverse(self, two_to_one):
        """Test that multiplicities swap"""
        report = validate_piecewise(inverse(two_to_one))
        assert report.valid
        assert report.multiplicity == "1-to-2"
        assert inverse(inverse(two_to_one)) == two_to_one

    def test_image(self, two_to_one):
        """Test R((w, w*2]) and R([0, w*2])"""
        assert image_of_interval(two_to_one, Interval.half_open(OMEGA, W("w*2"))) == [
            Interval.half_open(ZERO, OMEGA)
        ]
        assert image_of_interval(two_to_one, Interval.from_zero(W("w*2"))) == [Interval.from_zero(OMEGA)]

    def test_preimage(self, two_to_one):
        """Test that R^-1((0, 3]) is open: (0, 3] and (w, w + 3]"""
        assert preimage_of_interval(two_to_one, Interval.half_open(ZERO, from_natural(3))) == [
            Interval.half_open(ZERO, from_natural(3)),
            Interval.half_open(OMEGA, W("w + 3")),
        ]


class TestComposition:
    """Tests for composing block witnesses"""

    def test_bipartite(self):
        """Test two full bipartite blocks"""
        first = generate_witness(can(0, 2), can(0, 3))
        second = generate_witness(can(0, 3), can(0, 2))
        report = compose_blocks(first, second)
        assert (report.n, report.m) == (2, 2)
        assert (report.bound_n, report.bound_m) == (6, 6)
        assert report.within_bounds
        assert report.onto

    def test_modulo(self):
        """Test index modulo down then up"""
        first = BlockCorrespondence(can(0, 4), can(0, 2), (Block(ZERO, ZERO, BlockMode.MODULO),))
        second = BlockCorrespondence(can(0, 2), can(0, 3), (Block(ZERO, ZERO, BlockMode.MODULO),))
        report = compose_blocks(first, second)
        assert (report.n, report.m) == (2, 2)
        assert (report.bound_n, report.bound_m) == (2, 2)
        assert report.within_bounds
        assert report.onto
        assert ("0", "2") in report.pairs

    def test_mismatched_middle(self):
        """Test that the middle spaces must agree"""
        with pytest.raises(PreconditionError):
            compose_blocks(generate_witness(can(0, 2), can(0, 3)), generate_witness(can(0, 2), can(0, 2)))

    def test_infinite_spaces_rejected(self):
        """Test that composition is only materialized for finite spaces"""
        s = can(1, 1)
        c = BlockCorrespondence(
            s, s, (Block(ZERO, ZERO, BlockMode.BIJECTION), Block(ONE, ONE, BlockMode.BIPARTITE))
        )
        with pytest.raises(PreconditionError):
            compose_blocks(c, c)
