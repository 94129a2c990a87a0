#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Cantor calculus API server
Built with FastAPI; exposes the same operations as the cantor command line
"""

import logging
from typing import Any, Dict, List, Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from core import space_algebra
from core.correspondence import BlockCorrespondence, generate_witness
from core.errors import CantorError
from core.space_expr import canonicalize, count_points_of_rank, enumerate_points_of_rank
from parsers.expr_parser import ParseError, parse_ordinal, parse_ordinal_expression, parse_space
from renderers.expr_renderer import format_canonical, format_ordinal, format_point, format_underlying
from services.law_service import LawReport, law_names, run_laws
from services.witness_service import CheckReport, WitnessFile, check_witness, model_to_witness, witness_to_model
from settings import law_settings

# Initialize FastAPI app
app = FastAPI(
    title="cantor API",
    description="Ordinal arithmetic and the semiring of compact countable spaces",
    version="1.0.0",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

MAX_API_TRIALS = 2000
MAX_API_POINTS = 1000


# Request/Response Models
class OrdinalRequest(BaseModel):
    expr: str = Field(..., description="Ordinal expression; '(+)' is the natural sum")


class OrdinalResponse(BaseModel):
    ordinal: str
    cnf: List[List[Any]]


class SpaceRequest(BaseModel):
    expr: str = Field(..., description="Space expression")


class SpaceResponse(BaseModel):
    canonical: str
    cb_rank: str
    cb_star: Optional[str] = None
    degree: int
    underlying: str


class EquivRequest(BaseModel):
    a: str
    b: str
    witness: bool = Field(default=False, description="Include a witness correspondence")


class RankDifference(BaseModel):
    rank: str
    source: str
    target: str


class EquivResponse(BaseModel):
    equivalent: bool
    source: str
    target: str
    differences: List[RankDifference] = []
    witness: Optional[WitnessFile] = None


class PointsRequest(BaseModel):
    expr: str
    rank: str = "0"
    count: int = Field(default=10, ge=0, le=MAX_API_POINTS)


class PointsResponse(BaseModel):
    space: str
    rank: str
    size: Optional[int] = None
    points: List[Dict[str, Any]]
    exhausted: bool


class LawsRequest(BaseModel):
    trials: int = Field(default=100, ge=0, le=MAX_API_TRIALS)
    seed: Optional[int] = None
    max_depth: Optional[int] = None
    max_coeff: Optional[int] = None
    max_expr_depth: Optional[int] = None
    laws: Optional[List[str]] = None


def handle_cantor_error(error: CantorError):
    """Convert CantorError to HTTPException"""
    detail = error.to_dict()
    if isinstance(error, ParseError):
        detail["rendered"] = error.render()
    raise HTTPException(status_code=400, detail=detail)


@app.get("/api")
async def root():
    """Root endpoint with API information"""
    return {
        "name": "cantor API",
        "version": "1.0.0",
        "description": "Ordinal arithmetic, space canonical forms, equivalence witnesses and law checks",
        "endpoints": {
            "/ord": "POST - Normalize an ordinal expression",
            "/eval": "POST - Canonical form of a space expression",
            "/equiv": "POST - Decide equivalence, optionally with a witness",
            "/check": "POST - Validate a witness correspondence",
            "/points": "POST - List points of one rank",
            "/laws": "POST - Run the seeded law suite",
            "/health": "GET - Health check",
        },
    }


@app.get("/health")
async def health_check():
    """Health check endpoint"""
    return {"status": "healthy", "laws_loaded": len(law_names())}


@app.post("/ord", response_model=OrdinalResponse)
async def evaluate_ordinal(request: OrdinalRequest):
    """Normalize an ordinal expression to Cantor normal form"""
    try:
        value = parse_ordinal_expression(request.expr)
    except CantorError as e:
        handle_cantor_error(e)
    return OrdinalResponse(
        ordinal=format_ordinal(value),
        cnf=[[format_ordinal(exponent), coefficient] for exponent, coefficient in value.terms],
    )


@app.post("/eval", response_model=SpaceResponse)
async def evaluate_space(request: SpaceRequest):
    """Canonical form, ranks, degree and underlying ordinal of a space"""
    try:
        s = canonicalize(parse_space(request.expr))
    except CantorError as e:
        handle_cantor_error(e)
    return SpaceResponse(
        canonical=format_canonical(s),
        cb_rank=format_ordinal(space_algebra.cb_rank(s)),
        cb_star=None if s.is_empty else format_ordinal(s.cb_star),
        degree=s.degree,
        underlying="0" if s.is_empty else format_underlying(s),
    )


@app.post("/equiv", response_model=EquivResponse)
async def decide_equivalence(request: EquivRequest):
    """Decide x ~ y; the witness is included on request"""
    try:
        x = canonicalize(parse_space(request.a))
        y = canonicalize(parse_space(request.b))
        response = EquivResponse(
            equivalent=space_algebra.equivalent(x, y),
            source=format_canonical(x),
            target=format_canonical(y),
        )
        if not response.equivalent:
            response.differences = [
                RankDifference(rank=format_ordinal(rank), source=str(left), target=str(right))
                for rank, left, right in space_algebra.profile_difference(x, y)
            ]
        elif request.witness:
            witness = generate_witness(x, y)
            if isinstance(witness, BlockCorrespondence) and not witness.blocks:
                logger.warning("The empty space needs no witness")
            else:
                response.witness = witness_to_model(witness)
        return response
    except CantorError as e:
        handle_cantor_error(e)


@app.post("/check", response_model=CheckReport)
async def check_witness_endpoint(request: WitnessFile):
    """Validate a witness: validity, multiplicity, rank preservation, degree bounds"""
    try:
        report = check_witness(model_to_witness(request))
        logger.info(f"Checked witness {report.source} -> {report.target}: passed={report.passed}")
        return report
    except CantorError as e:
        handle_cantor_error(e)


@app.post("/points", response_model=PointsResponse)
async def list_points(request: PointsRequest):
    """First points of a rank stratum, with their enumeration indices"""
    try:
        e = parse_space(request.expr)
        beta = parse_ordinal(request.rank)
        size = count_points_of_rank(e, beta)
        if size.is_zero:
            raise HTTPException(
                status_code=400,
                detail={"errcode": "empty_stratum", "errmsg": f"no points of rank {format_ordinal(beta)}"},
            )
        shown = request.count if size.count is None else min(request.count, size.count)
        return PointsResponse(
            space=format_canonical(canonicalize(e)),
            rank=format_ordinal(beta),
            size=size.count,
            points=[
                {"index": i, "point": format_point(enumerate_points_of_rank(e, beta, i))}
                for i in range(shown)
            ],
            exhausted=size.count is not None and request.count > size.count,
        )
    except CantorError as e:
        handle_cantor_error(e)


@app.post("/laws", response_model=LawReport)
def run_law_suite(request: LawsRequest):
    """Run the seeded law suite with bounded trials"""
    unknown = sorted(set(request.laws or ()) - set(law_names()))
    if unknown:
        raise HTTPException(status_code=400, detail={"errcode": "settings", "errmsg": f"unknown laws: {unknown}"})
    try:
        settings = law_settings(
            trials=request.trials,
            seed=request.seed,
            max_depth=request.max_depth,
            max_coeff=request.max_coeff,
            max_expr_depth=request.max_expr_depth,
        )
    except ValueError as e:
        raise HTTPException(status_code=400, detail={"errcode": "settings", "errmsg": str(e)})
    logger.info(f"Running law suite: {settings.trials} trials, seed {settings.seed}")
    return run_laws(settings, request.laws)
