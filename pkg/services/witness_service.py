# -*- coding: utf-8 -*-
"""
Witness files: JSON serialization of correspondences and their checking
"""

import json
import logging
from pathlib import Path
from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ValidationError, model_validator

from core.correspondence import (
    Block,
    BlockCorrespondence,
    BlockMode,
    Correspondence,
    Interval,
    Lemma1Report,
    Piece,
    PiecewiseCorrespondence,
    ValidityReport,
    check_lemma1_conclusions,
    check_rank_preserving,
    validate_correspondence,
)
from core.errors import CantorError
from core.space_algebra import CanonicalSpace
from core.space_expr import Canonical
from parsers.expr_parser import ParseError, parse_ordinal, parse_space
from renderers.expr_renderer import format_canonical, format_ordinal

logger = logging.getLogger(__name__)


class WitnessError(CantorError):
    """Witness file could not be read, written or understood"""

    error_code = "schema"


# Schema models
class IntervalModel(BaseModel):
    kind: Literal["from_zero", "half_open"]
    lo: Optional[str] = None
    hi: str

    @model_validator(mode="after")
    def check_shape(self):
        if (self.kind == "half_open") != (self.lo is not None):
            raise ValueError("half_open intervals carry lo; from_zero intervals do not")
        return self


class PieceModel(BaseModel):
    src: IntervalModel
    dst: IntervalModel


class BlockModel(BaseModel):
    src_rank: str
    dst_rank: str
    mode: BlockMode


class WitnessFile(BaseModel):
    """On-disk witness; ordinals and spaces use the expression grammar"""

    source: str
    target: str
    pieces: List[PieceModel] = []
    blocks: List[BlockModel] = []

    @model_validator(mode="after")
    def check_not_empty(self):
        if not self.pieces and not self.blocks:
            raise ValueError("a witness needs pieces or blocks")
        return self


class CheckReport(BaseModel):
    """Everything `cantor check` prints"""

    source: str
    target: str
    validity: ValidityReport
    rank_preserving: Optional[bool] = None
    lemma1: Optional[Lemma1Report] = None
    passed: bool


# Conversion
def _interval_model(interval: Interval) -> IntervalModel:
    return IntervalModel(
        kind=interval.kind,
        lo=None if interval.lo is None else format_ordinal(interval.lo),
        hi=format_ordinal(interval.hi),
    )


def witness_to_model(c: Correspondence) -> WitnessFile:
    if isinstance(c, BlockCorrespondence):
        return WitnessFile(
            source=format_canonical(c.source),
            target=format_canonical(c.target),
            blocks=[
                BlockModel(
                    src_rank=format_ordinal(b.src_rank),
                    dst_rank=format_ordinal(b.dst_rank),
                    mode=b.mode,
                )
                for b in c.blocks
            ],
        )
    return WitnessFile(
        source=format_canonical(c.source),
        target=format_canonical(c.target),
        pieces=[PieceModel(src=_interval_model(p.src), dst=_interval_model(p.dst)) for p in c.pieces],
    )


def _ordinal(text: str, where: str):
    try:
        return parse_ordinal(text)
    except ParseError as e:
        raise WitnessError(f"{where}: {e.render()}", details={"field": where}) from e


def _space(text: str, where: str) -> CanonicalSpace:
    try:
        expr = parse_space(text)
    except ParseError as e:
        raise WitnessError(f"{where}: {e.render()}", details={"field": where}) from e
    if not isinstance(expr, Canonical):
        raise WitnessError(f"{where}: {text!r} is not a canonical space", details={"field": where})
    return expr.space


def _interval(model: IntervalModel, where: str) -> Interval:
    hi = _ordinal(model.hi, f"{where}.hi")
    if model.lo is None:
        return Interval.from_zero(hi)
    return Interval.half_open(_ordinal(model.lo, f"{where}.lo"), hi)


def model_to_witness(model: WitnessFile) -> Correspondence:
    source = _space(model.source, "source")
    target = _space(model.target, "target")
    if model.blocks and model.pieces:
        raise WitnessError("a witness has pieces or blocks, not both")
    if model.blocks:
        return BlockCorrespondence(
            source,
            target,
            tuple(
                Block(
                    _ordinal(b.src_rank, f"blocks[{k}].src_rank"),
                    _ordinal(b.dst_rank, f"blocks[{k}].dst_rank"),
                    b.mode,
                )
                for k, b in enumerate(model.blocks)
            ),
        )
    return PiecewiseCorrespondence(
        source,
        target,
        tuple(
            Piece(_interval(p.src, f"pieces[{k}].src"), _interval(p.dst, f"pieces[{k}].dst"))
            for k, p in enumerate(model.pieces)
        ),
    )


def dumps_witness(c: Correspondence) -> str:
    """Deterministic JSON text of a witness"""
    data = witness_to_model(c).model_dump(mode="json", exclude_none=True)
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def loads_witness(text: str) -> Correspondence:
    try:
        model = WitnessFile.model_validate(json.loads(text))
    except json.JSONDecodeError as e:
        raise WitnessError(f"Not JSON: {e.msg} at line {e.lineno}", details={"line": e.lineno}) from e
    except ValidationError as e:
        raise WitnessError(
            f"Witness schema violation: {e.error_count()} error(s)",
            details={"errors": [error["msg"] for error in e.errors()]},
        ) from e
    return model_to_witness(model)


# File IO
def save_witness(c: Correspondence, path: Union[str, Path]) -> None:
    text = dumps_witness(c)
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        logger.error(f"Failed to write witness to {path}: {e}")
        raise WitnessError(f"Cannot write {path}: {e.strerror}", error_code="io") from e
    logger.info(f"Witness written to {path}")


def load_witness(path: Union[str, Path]) -> Correspondence:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise WitnessError(f"Cannot read {path}: {e}", error_code="io") from e
    return loads_witness(text)


def check_witness(c: Correspondence) -> CheckReport:
    """Validity, multiplicity, rank preservation and the degree bounds"""
    validity = validate_correspondence(c)
    rank_preserving = None
    lemma1 = None
    if validity.valid:
        rank_preserving = check_rank_preserving(c)
        lemma1 = check_lemma1_conclusions(c)
    passed = validity.valid and bool(rank_preserving) and lemma1 is not None and lemma1.holds
    logger.info(f"Checked witness {c.source} -> {c.target}: passed={passed}")
    return CheckReport(
        source=format_canonical(c.source),
        target=format_canonical(c.target),
        validity=validity,
        rank_preserving=rank_preserving,
        lemma1=lemma1,
        passed=passed,
    )
