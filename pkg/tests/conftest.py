# -*- coding: utf-8 -*-
"""
Shared fixtures and the hypothesis profile
"""

import pytest
from hypothesis import settings

# reproducible property runs, no per-example deadline
settings.register_profile("cantor", derandomize=True, deadline=None)
settings.load_profile("cantor")

CANTOR_ENV = (
    "CANTOR_TRIALS",
    "CANTOR_SEED",
    "CANTOR_MAX_DEPTH",
    "CANTOR_MAX_COEFF",
    "CANTOR_MAX_EXPR_DEPTH",
    "CANTOR_LOG_LEVEL",
    "CANTOR_HOST",
    "CANTOR_PORT",
)


@pytest.fixture
def clean_env(monkeypatch):
    """Remove CANTOR_* variables so defaults apply"""
    for name in CANTOR_ENV:
        monkeypatch.delenv(name, raising=False)
    return monkeypatch
