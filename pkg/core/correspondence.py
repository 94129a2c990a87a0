# -*- coding: utf-8 -*-
"""
Finitely presented correspondences between canonical spaces.

Two presentations are supported:

- ``PiecewiseCorrespondence``: finitely many pairs of clopen intervals of the
  underlying ordinal intervals, related by translation. [0, b] and (a, b] are
  both closed and open in [0, top], so every relation assembled from such
  pieces is continuous and open; these properties are never checked pointwise.
- ``BlockCorrespondence``: finitely many pairs of rank strata, related in full
  (finite strata only), by index bijection or by index modulo.

Multiplicity is reported as (n, m): a target point has at most n preimages, a
source point at most m images.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import ceil
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

from pydantic import BaseModel

from core import space_algebra
from core.errors import InvalidPointError, PreconditionError
from core.intervals import Interval, coverage_gaps, intersect, merge_intervals
from core.ordinal_cnf import (
    ONE,
    ZERO,
    Ordinal,
    add,
    from_natural,
    is_finite,
    mul,
    omega_pow,
    to_natural,
)
from core.space_algebra import CanonicalSpace
from core.space_expr import Canonical, Ord, count_points_of_rank, point_rank, rough_partition, stratum

logger = logging.getLogger(__name__)

__all__ = [
    "Interval",
    "Correspondence",
    "Piece",
    "PiecewiseCorrespondence",
    "BlockMode",
    "Block",
    "BlockCorrespondence",
    "ValidityFailure",
    "ValidityReport",
    "Lemma1Report",
    "CompositionReport",
    "validate_piecewise",
    "validate_blocks",
    "validate_correspondence",
    "apply_piecewise",
    "apply_blocks",
    "check_rank_preserving",
    "generate_witness",
    "check_lemma1_conclusions",
    "inverse",
    "image_of_interval",
    "preimage_of_interval",
    "compose_blocks",
]


@dataclass(frozen=True)
class Piece:
    src: Interval
    dst: Interval


@dataclass(frozen=True)
class PiecewiseCorrespondence:
    source: CanonicalSpace
    target: CanonicalSpace
    pieces: Tuple[Piece, ...] = ()


class BlockMode(str, Enum):
    BIPARTITE = "bipartite"
    BIJECTION = "bijection"
    MODULO = "modulo"


@dataclass(frozen=True)
class Block:
    src_rank: Ordinal
    dst_rank: Ordinal
    mode: BlockMode


@dataclass(frozen=True)
class BlockCorrespondence:
    source: CanonicalSpace
    target: CanonicalSpace
    blocks: Tuple[Block, ...] = ()


Correspondence = Union[PiecewiseCorrespondence, BlockCorrespondence]


# Reports

class ValidityFailure(BaseModel):
    """One structured reason a correspondence is invalid"""

    kind: str
    message: str
    index: Optional[int] = None
    side: Optional[str] = None
    interval: Optional[str] = None


class ValidityReport(BaseModel):
    valid: bool
    failures: List[ValidityFailure] = []
    n: int = 0
    m: int = 0

    @property
    def multiplicity(self) -> str:
        return f"{self.n}-to-{self.m}"

    def failure_kinds(self) -> List[str]:
        return [failure.kind for failure in self.failures]


class Lemma1Report(BaseModel):
    """Rank and degree conclusions instantiated on one correspondence"""

    source_cb_rank: str
    target_cb_rank: str
    ranks_equal: bool
    # open => CB(source) >= CB(target); continuous => CB(source) <= CB(target)
    open_conclusion: bool
    continuous_conclusion: bool
    n: int
    m: int
    source_degree: int
    target_degree: int
    lower_bound: str
    upper_bound: int
    bounds_hold: bool
    inequality: str

    @property
    def holds(self) -> bool:
        return self.ranks_equal and self.bounds_hold


class CompositionReport(BaseModel):
    source: str
    target: str
    pairs: List[Tuple[str, str]]
    n: int
    m: int
    bound_n: int
    bound_m: int
    within_bounds: bool
    onto: bool


# Piecewise presentation

def _top(s: CanonicalSpace) -> Optional[Ordinal]:
    return None if s.is_empty else space_algebra.underlying_top(s)


def _bad_interval(interval: Interval, top: Optional[Ordinal]) -> Optional[str]:
    if not interval.is_well_formed():
        return f"{interval} is empty or reversed"
    if top is None:
        return f"{interval} lies in the empty space"
    if interval.hi > top:
        return f"{interval} leaves [0, {top}]"
    return None


def _max_overlap(intervals: List[Interval]) -> int:
    # overlap counts only rise at left ends, so the maximum is attained at a min_point
    candidates = {interval.min_point for interval in intervals}
    return max(
        (sum(1 for interval in intervals if interval.contains(x)) for x in candidates),
        default=0,
    )


def validate_piecewise(c: PiecewiseCorrespondence) -> ValidityReport:
    """Interval bounds, matching shapes and lengths per piece, and coverage of both sides"""
    failures: List[ValidityFailure] = []
    tops = {"source": _top(c.source), "target": _top(c.target)}
    usable: Dict[str, List[Interval]] = {"source": [], "target": []}

    for k, piece in enumerate(c.pieces):
        ok = True
        for side, interval in (("source", piece.src), ("target", piece.dst)):
            problem = _bad_interval(interval, tops[side])
            if problem:
                ok = False
                failures.append(
                    ValidityFailure(
                        kind="bad_interval", message=problem, index=k, side=side, interval=str(interval)
                    )
                )
            else:
                usable[side].append(interval)
        if not ok:
            continue
        if piece.src.kind != piece.dst.kind:
            failures.append(
                ValidityFailure(
                    kind="type_mismatch",
                    message=f"piece {k} pairs {piece.src} with {piece.dst}; shapes differ",
                    index=k,
                )
            )
        if piece.src.length != piece.dst.length:
            failures.append(
                ValidityFailure(
                    kind="length_mismatch",
                    message=(
                        f"piece {k}: left-differences {piece.src.length} and "
                        f"{piece.dst.length} differ"
                    ),
                    index=k,
                )
            )

    for side in ("source", "target"):
        if tops[side] is None:
            continue
        for gap in coverage_gaps(usable[side], tops[side]):
            failures.append(
                ValidityFailure(
                    kind="coverage_gap",
                    message=f"coverage gap: {gap} of the {side} is not covered",
                    side=side,
                    interval=str(gap),
                )
            )

    report = ValidityReport(
        valid=not failures,
        failures=failures,
        n=_max_overlap(usable["target"]),
        m=_max_overlap(usable["source"]),
    )
    logger.debug(f"Piecewise validation: valid={report.valid}, multiplicity {report.multiplicity}")
    return report


def _translate(src: Interval, dst: Interval, x: Ordinal) -> Ordinal:
    return src.translate_to(dst, x)


def apply_piecewise(c: PiecewiseCorrespondence, p: Ordinal) -> FrozenSet[Ordinal]:
    """Images of a source point under every piece containing it"""
    top = _top(c.source)
    if top is None or p > top:
        raise InvalidPointError(f"{p} is not a point of {c.source}")
    return frozenset(
        _translate(piece.src, piece.dst, p) for piece in c.pieces if piece.src.contains(p)
    )


def _space_rank(s: CanonicalSpace, x: Ordinal) -> Ordinal:
    return point_rank(Canonical(s), Ord(x))


def _sample_offsets(length: Ordinal) -> List[Ordinal]:
    """Offsets t in (0, length]: small naturals, CNF prefixes of length and w-powers below it"""
    samples = {from_natural(k) for k in range(1, 51)}
    prefix = ZERO
    for exponent, coefficient in length.terms:
        unit = omega_pow(exponent)
        samples.add(unit)
        samples.add(add(unit, ONE))
        for inner_exponent, _ in exponent.terms:
            samples.add(omega_pow(inner_exponent))
        for c in range(1, coefficient + 1):
            samples.add(add(prefix, mul(unit, from_natural(c))))
        prefix = add(prefix, mul(unit, from_natural(coefficient)))
    samples.add(length)
    return sorted((t for t in samples if ZERO < t <= length), key=lambda t: t)


def _piece_preserves_rank(c: PiecewiseCorrespondence, piece: Piece) -> bool:
    src, dst = piece.src, piece.dst
    # the symbolic argument: same shape and length, so x = origin + t and its
    # image share the trailing exponent of t
    if src.kind != dst.kind or src.length != dst.length:
        return False
    points = [src.origin + t for t in _sample_offsets(src.length)]
    if src.lo is None:
        points.append(ZERO)
    for x in points:
        if not src.contains(x):
            continue
        image = _translate(src, dst, x)
        if _space_rank(c.source, x) != _space_rank(c.target, image):
            logger.error(f"Rank not preserved: {x} -> {image} under {src} -> {dst}")
            return False
    return True


# Block presentation

def _stratum_size(s: CanonicalSpace, rank: Ordinal) -> Optional[int]:
    return count_points_of_rank(Canonical(s), rank).count


def _block_bounds(a: Optional[int], b: Optional[int], mode: BlockMode) -> Tuple[int, int]:
    """(preimages per target point, images per source point) of one valid block"""
    if mode is BlockMode.BIPARTITE:
        return a, b
    if mode is BlockMode.MODULO and a is not None:
        return ceil(a / b), ceil(b / a)
    return 1, 1


def _block_problem(a: Optional[int], b: Optional[int], mode: BlockMode) -> Optional[str]:
    if a == 0 or b == 0:
        return "empty stratum"
    if mode is BlockMode.BIPARTITE and (a is None or b is None):
        return "full bipartite blocks need finite strata"
    if mode is BlockMode.BIJECTION and a != b:
        return f"strata of sizes {_size_text(a)} and {_size_text(b)} admit no index bijection"
    if mode is BlockMode.MODULO and (a is None) != (b is None):
        return "index modulo between a finite and an infinite stratum has unbounded multiplicity"
    return None


def _size_text(size: Optional[int]) -> str:
    return "countably infinite" if size is None else str(size)


def _required_ranks(s: CanonicalSpace) -> Optional[List[Ordinal]]:
    """Ranks of the nonempty strata, None when there are infinitely many"""
    if s.is_empty:
        return []
    if not is_finite(s.cb_star):
        return None
    return [from_natural(k) for k in range(to_natural(s.cb_star) + 1)]


def validate_blocks(c: BlockCorrespondence) -> ValidityReport:
    """Block shapes, coverage of every nonempty stratum, and multiplicity from modes"""
    failures: List[ValidityFailure] = []
    preimages: Dict[Ordinal, int] = {}
    images: Dict[Ordinal, int] = {}
    for k, block in enumerate(c.blocks):
        a = _stratum_size(c.source, block.src_rank)
        b = _stratum_size(c.target, block.dst_rank)
        problem = _block_problem(a, b, block.mode)
        if problem:
            failures.append(
                ValidityFailure(
                    kind="bad_block",
                    message=f"block {k} ({block.src_rank} -> {block.dst_rank}, {block.mode.value}): {problem}",
                    index=k,
                )
            )
            continue
        n_block, m_block = _block_bounds(a, b, block.mode)
        preimages[block.dst_rank] = preimages.get(block.dst_rank, 0) + n_block
        images[block.src_rank] = images.get(block.src_rank, 0) + m_block

    for side, space, covered in (("source", c.source, images), ("target", c.target, preimages)):
        required = _required_ranks(space)
        if required is None:
            failures.append(
                ValidityFailure(
                    kind="coverage_gap",
                    message=f"coverage gap: {space} has infinitely many nonempty strata",
                    side=side,
                )
            )
            continue
        for rank in required:
            if rank not in covered:
                failures.append(
                    ValidityFailure(
                        kind="coverage_gap",
                        message=f"coverage gap: stratum of rank {rank} of the {side} is not covered",
                        side=side,
                    )
                )

    return ValidityReport(
        valid=not failures,
        failures=failures,
        n=max(preimages.values(), default=0),
        m=max(images.values(), default=0),
    )


def apply_blocks(c: BlockCorrespondence, x: Ordinal) -> FrozenSet[Ordinal]:
    """Images of a source point under every block of its rank"""
    rank = _space_rank(c.source, x)
    i = stratum(Canonical(c.source), rank).index(Ord(x))
    a = _stratum_size(c.source, rank)
    images = set()
    for block in c.blocks:
        if block.src_rank != rank:
            continue
        target = stratum(Canonical(c.target), block.dst_rank)
        b = target.size
        if block.mode is BlockMode.BIPARTITE:
            indices: Iterable[int] = range(b)
        elif block.mode is BlockMode.BIJECTION or a is None:
            indices = [i]
        elif a >= b:
            indices = [i % b]
        else:
            indices = range(i, b, a)
        images.update(target.at(j).value for j in indices)
    return frozenset(images)


# Dispatch

def validate_correspondence(c: Correspondence) -> ValidityReport:
    if isinstance(c, BlockCorrespondence):
        return validate_blocks(c)
    return validate_piecewise(c)


def _require_valid(c: Correspondence) -> ValidityReport:
    report = validate_correspondence(c)
    if not report.valid:
        raise PreconditionError(
            "invalid correspondence",
            details={"failures": [failure.model_dump() for failure in report.failures]},
        )
    return report


def check_rank_preserving(c: Correspondence) -> bool:
    """
    Whether every related pair of points has equal rank.

    Always true for valid piecewise correspondences; the check runs the
    trailing-exponent argument per piece and samples points to confirm it.
    """
    _require_valid(c)
    if isinstance(c, BlockCorrespondence):
        return all(block.src_rank == block.dst_rank for block in c.blocks)
    return all(_piece_preserves_rank(c, piece) for piece in c.pieces)


def check_lemma1_conclusions(c: Correspondence) -> Lemma1Report:
    report = _require_valid(c)
    source_rank = space_algebra.cb_rank(c.source)
    target_rank = space_algebra.cb_rank(c.target)
    dx = space_algebra.degree(c.source)
    dy = space_algebra.degree(c.target)
    n, m = report.n, report.m
    lower = Fraction(dy, m) if m else Fraction(0)
    upper = n * dy
    bounds_hold = lower <= dx <= upper
    return Lemma1Report(
        source_cb_rank=str(source_rank),
        target_cb_rank=str(target_rank),
        ranks_equal=source_rank == target_rank,
        open_conclusion=source_rank >= target_rank,
        continuous_conclusion=source_rank <= target_rank,
        n=n,
        m=m,
        source_degree=dx,
        target_degree=dy,
        lower_bound=str(lower),
        upper_bound=upper,
        bounds_hold=bounds_hold,
        inequality=f"{lower} <= {dx} <= {upper}",
    )


# Witnesses

def generate_witness(x: CanonicalSpace, y: CanonicalSpace) -> Correspondence:
    """
    A finite rank-preserving correspondence between equivalent spaces.

    Piece 1 of each rough partition is paired with piece 1 of the other; the
    surplus pieces are cycled in order, with (0, w^a] standing in for the
    missing surplus of a degree-1 side.
    """
    if not space_algebra.equivalent(x, y):
        raise PreconditionError(
            f"{x} and {y} are not equivalent",
            details={"source": str(x), "target": str(y)},
        )
    if x.is_empty:
        return BlockCorrespondence(x, y, ())
    if not x.cb_star:
        return BlockCorrespondence(x, y, (Block(ZERO, ZERO, BlockMode.BIPARTITE),))

    fallback = Interval.half_open(ZERO, omega_pow(x.cb_star))
    xs = rough_partition(x)
    ys = rough_partition(y)
    pieces = [Piece(xs[0], ys[0])]
    for k in range(max(x.degree, y.degree) - 1):
        src = xs[1 + k % (x.degree - 1)] if x.degree > 1 else fallback
        dst = ys[1 + k % (y.degree - 1)] if y.degree > 1 else fallback
        pieces.append(Piece(src, dst))
    logger.debug(f"Witness {x} -> {y}: {len(pieces)} pieces")
    return PiecewiseCorrespondence(x, y, tuple(pieces))


def inverse(c: Correspondence) -> Correspondence:
    """The converse relation; multiplicity bounds swap"""
    if isinstance(c, BlockCorrespondence):
        return BlockCorrespondence(
            c.target,
            c.source,
            tuple(Block(b.dst_rank, b.src_rank, b.mode) for b in c.blocks),
        )
    return PiecewiseCorrespondence(
        c.target, c.source, tuple(Piece(p.dst, p.src) for p in c.pieces)
    )


def _translate_interval(src: Interval, dst: Interval, part: Interval) -> Interval:
    if src.lo is None:
        # from-zero pieces of a valid correspondence translate by the identity
        return part
    # part = (a + s, a + t] inside (a, b] goes to (c + s, c + t]
    return Interval.half_open(_translate(src, dst, part.lo), _translate(src, dst, part.hi))


def image_of_interval(c: PiecewiseCorrespondence, interval: Interval) -> List[Interval]:
    """R(O) for a clopen interval O of the source, as merged clopen intervals"""
    _require_valid(c)
    images = []
    for piece in c.pieces:
        part = intersect(interval, piece.src)
        if part is not None:
            images.append(_translate_interval(piece.src, piece.dst, part))
    return merge_intervals(images)


def preimage_of_interval(c: PiecewiseCorrespondence, interval: Interval) -> List[Interval]:
    """R^-1(O) for a clopen interval O of the target"""
    return image_of_interval(inverse(c), interval)


def compose_blocks(first: BlockCorrespondence, second: BlockCorrespondence) -> CompositionReport:
    """
    Materialize second . first on finite spaces and compare its exact
    multiplicity with the product of the factors' bounds.
    """
    if first.target != second.source:
        raise PreconditionError(f"Cannot compose: {first.target} is not {second.source}")
    for space in (first.source, first.target, second.target):
        if space.cb_star:
            raise PreconditionError(f"Composition is materialized for finite spaces only, got {space}")
    r1 = _require_valid(first)
    r2 = _require_valid(second)

    pairs = set()
    for x in space_algebra.top_points(first.source):
        for y in apply_blocks(first, x):
            for z in apply_blocks(second, y):
                pairs.add((x, z))
    images: Dict[Ordinal, int] = {}
    preimages: Dict[Ordinal, int] = {}
    for x, z in pairs:
        images[x] = images.get(x, 0) + 1
        preimages[z] = preimages.get(z, 0) + 1
    n = max(preimages.values(), default=0)
    m = max(images.values(), default=0)
    bound_n, bound_m = r1.n * r2.n, r1.m * r2.m
    ordered = sorted(pairs, key=lambda pair: (pair[0], pair[1]))
    return CompositionReport(
        source=str(first.source),
        target=str(second.target),
        pairs=[(str(x), str(z)) for x, z in ordered],
        n=n,
        m=m,
        bound_n=bound_n,
        bound_m=bound_m,
        within_bounds=n <= bound_n and m <= bound_m,
        onto=len(images) == first.source.degree and len(preimages) == second.target.degree,
    )
