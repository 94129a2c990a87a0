# -*- coding: utf-8 -*-
"""
Unit tests for settings
"""

import pytest
from pydantic import ValidationError

from settings import LawSettings, env_seed, law_settings, log_level, server_address


class TestLawSettings:
    """Tests for law suite configuration"""

    def test_defaults(self, clean_env):
        """Test the documented defaults"""
        settings = law_settings()
        assert settings == LawSettings(trials=1000, seed=0, max_depth=3, max_coeff=5, max_expr_depth=4)

    def test_environment(self, clean_env):
        """Test that CANTOR_* variables replace defaults"""
        clean_env.setenv("CANTOR_TRIALS", "50")
        clean_env.setenv("CANTOR_MAX_COEFF", "9")
        settings = law_settings()
        assert settings.trials == 50
        assert settings.max_coeff == 9

    def test_overrides_beat_environment(self, clean_env):
        """Test that explicit values win over the environment, except the seed"""
        clean_env.setenv("CANTOR_TRIALS", "50")
        assert law_settings(trials=7).trials == 7

    def test_env_seed_wins(self, clean_env):
        """Test that CANTOR_SEED takes precedence over an explicit seed"""
        clean_env.setenv("CANTOR_SEED", "42")
        assert env_seed() == 42
        assert law_settings(seed=3).seed == 42

    def test_none_overrides_are_ignored(self, clean_env):
        """Test that unset command-line options keep defaults"""
        assert law_settings(trials=None, seed=None).trials == 1000

    def test_blank_variable(self, clean_env):
        """Test that an empty variable counts as unset"""
        clean_env.setenv("CANTOR_SEED", " ")
        assert env_seed() is None

    @pytest.mark.parametrize(
        "overrides",
        [{"max_depth": 7}, {"max_coeff": 0}, {"trials": -1}, {"max_expr_depth": 9}],
    )
    def test_out_of_range(self, clean_env, overrides):
        """Test that bounds are validated"""
        with pytest.raises(ValidationError):
            law_settings(**overrides)

    def test_not_a_number(self, clean_env):
        """Test that a malformed variable is reported"""
        clean_env.setenv("CANTOR_TRIALS", "many")
        with pytest.raises(ValueError):
            law_settings()


class TestLogLevel:
    """Tests for the log level setting"""

    def test_default(self, clean_env):
        """Test the quiet default"""
        assert log_level() == "WARNING"

    def test_environment(self, clean_env):
        """Test CANTOR_LOG_LEVEL, case-insensitively"""
        clean_env.setenv("CANTOR_LOG_LEVEL", "debug")
        assert log_level() == "DEBUG"


class TestServerAddress:
    """Tests for the API server address"""

    def test_default(self, clean_env):
        """Test the local default"""
        clean_env.delenv("CANTOR_HOST", raising=False)
        clean_env.delenv("CANTOR_PORT", raising=False)
        assert server_address() == ("127.0.0.1", 8000)

    def test_environment(self, clean_env):
        """Test CANTOR_HOST and CANTOR_PORT"""
        clean_env.setenv("CANTOR_HOST", "0.0.0.0")
        clean_env.setenv("CANTOR_PORT", "9001")
        assert server_address() == ("0.0.0.0", 9001)
