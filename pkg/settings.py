# -*- coding: utf-8 -*-
"""
Runtime configuration read from the environment (and an optional .env file)
"""

import os
from typing import Optional, Tuple

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()

DEFAULT_LOG_LEVEL = "WARNING"


class LawSettings(BaseModel):
    """Bounds for the seeded law suite"""

    trials: int = Field(default=1000, ge=0, description="Random instances per law")
    seed: int = Field(default=0, description="Base seed; reports print it for replay")
    max_depth: int = Field(default=3, ge=0, le=6, description="Exponent nesting of random ordinals")
    max_coeff: int = Field(default=5, ge=1, le=50, description="Largest random coefficient or degree")
    max_expr_depth: int = Field(default=4, ge=0, le=6, description="Operator depth of random expressions")


def _env_int(name: str) -> Optional[int]:
    value = os.getenv(name)
    if value is None or not value.strip():
        return None
    return int(value)


def env_seed() -> Optional[int]:
    """CANTOR_SEED, which takes precedence over a seed given on the command line"""
    return _env_int("CANTOR_SEED")


def log_level() -> str:
    return os.getenv("CANTOR_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()


def law_settings(**overrides) -> LawSettings:
    """
    Defaults, then CANTOR_* environment values, then explicit overrides;
    CANTOR_SEED wins over an explicit seed.
    """
    values = {}
    for field, env_name in (
        ("trials", "CANTOR_TRIALS"),
        ("seed", "CANTOR_SEED"),
        ("max_depth", "CANTOR_MAX_DEPTH"),
        ("max_coeff", "CANTOR_MAX_COEFF"),
        ("max_expr_depth", "CANTOR_MAX_EXPR_DEPTH"),
    ):
        value = _env_int(env_name)
        if value is not None:
            values[field] = value
    values.update({key: value for key, value in overrides.items() if value is not None})
    seed = env_seed()
    if seed is not None:
        values["seed"] = seed
    return LawSettings(**values)


def server_address() -> Tuple[str, int]:
    """Host and port for the API server (CANTOR_HOST, CANTOR_PORT)"""
    port = _env_int("CANTOR_PORT")
    return os.getenv("CANTOR_HOST", "127.0.0.1"), 8000 if port is None else port
