"""Tests for configuration module."""

import pytest
from pydantic import ValidationError

from fihom.config import Defaults, Settings, get_settings


def test_settings_defaults():
    """Test that settings loads with defaults."""
    settings = Settings()

    assert settings.workers == 1
    assert settings.defaults.truncation == 8
    assert settings.defaults.p_max == 3
    assert settings.defaults.a_max == 4
    assert settings.defaults.ring == "Z"


def test_settings_from_env(monkeypatch):
    """Test that settings reads the worker count from the environment."""
    monkeypatch.setenv("FIHOM_WORKERS", "4")

    get_settings.cache_clear()
    settings = get_settings()

    assert settings.workers == 4


def test_settings_validation(monkeypatch):
    """Test that an out-of-range worker count is rejected."""
    monkeypatch.setenv("FIHOM_WORKERS", "0")

    with pytest.raises(ValidationError):
        Settings()


def test_settings_cached():
    """Test that get_settings returns one instance until the cache is cleared."""
    assert get_settings() is get_settings()


def test_defaults_frozen():
    """Test that the computational defaults cannot be mutated."""
    defaults = Defaults()

    with pytest.raises(ValidationError):
        defaults.truncation = 3

    assert defaults.corpus_size == 50
    assert defaults.catalan_n_max == 8
